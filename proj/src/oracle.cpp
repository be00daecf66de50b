#include "kitaev_qfi/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "kitaev_qfi/compensated_sum.hpp"

namespace kitaev_qfi {

namespace {

using Complex = std::complex<double>;

constexpr double kMaxStep = 0.1;
constexpr double kMinAmplitudeDifference = 1e-12;
constexpr double kMinInfidelity = 1e-14;
constexpr double kMaxInfidelity = 0.1;
constexpr double kAbsoluteFloor = 1e-12;

ModelParams shifted(ModelParams p, Axis axis, double by) {
  (axis == Axis::mu ? p.mu : p.delta) += by;
  return p;
}

enum class Stencil { central, forward, backward };

Stencil stencil_for(const ModelParams& p, Axis axis, double h) {
  if (axis == Axis::delta) {
    if (p.delta >= 0.0 && p.delta - h <= 0.0) return Stencil::forward;
    if (p.delta < 0.0 && p.delta + h >= 0.0) return Stencil::backward;
  }
  return Stencil::central;
}

struct ModeDerivative {
  Complex du;
  Complex dv;
};

std::vector<ModeDerivative> differentiate(const ModelParams& p, int sites,
                                          Axis axis, double h) {
  const auto state_at = [&](double offset) {
    return ground_state(shifted(p, axis, offset), sites);
  };
  const std::size_t modes = static_cast<std::size_t>(sites / 2);
  std::vector<ModeDerivative> out(modes);
  double max_difference = 0.0;

  const auto accumulate = [&](const BogoliubovState& s, double weight) {
    const auto amps = s.amplitudes();
    for (std::size_t i = 0; i < modes; ++i) {
      out[i].du += weight * amps[i].u;
      out[i].dv += weight * amps[i].v;
    }
  };

  switch (stencil_for(p, axis, h)) {
    case Stencil::central: {
      const auto plus = state_at(h);
      const auto minus = state_at(-h);
      accumulate(plus, 1.0);
      accumulate(minus, -1.0);
      for (auto& d : out) {
        max_difference = std::max({max_difference, std::abs(d.du),
                                   std::abs(d.dv)});
        d.du /= 2.0 * h;
        d.dv /= 2.0 * h;
      }
      break;
    }
    case Stencil::forward:
    case Stencil::backward: {
      const double dir = stencil_for(p, axis, h) == Stencil::forward ? 1 : -1;
      // (-3 f(x) + 4 f(x + h) - f(x + 2h)) / 2h
      accumulate(state_at(0.0), -3.0);
      accumulate(state_at(dir * h), 4.0);
      accumulate(state_at(dir * 2.0 * h), -1.0);
      for (auto& d : out) {
        max_difference = std::max({max_difference, std::abs(d.du),
                                   std::abs(d.dv)});
        d.du /= dir * 2.0 * h;
        d.dv /= dir * 2.0 * h;
      }
      break;
    }
  }
  if (max_difference > 0.0 && max_difference < kMinAmplitudeDifference) {
    throw std::invalid_argument(
        "finite-difference step too small: amplitude differences lost to "
        "cancellation");
  }
  return out;
}

void check_step(const ModelParams& p, double h) {
  if (!(h > 0.0) || h > kMaxStep) {
    throw std::invalid_argument("finite-difference step must lie in (0, 0.1]");
  }
  for (double x : {p.mu, p.delta}) {
    if (std::abs(((x + h) - x) - h) > 1e-3 * h) {
      throw std::invalid_argument(
          "finite-difference step too small to represent at this point");
    }
  }
}

struct FdData {
  std::array<std::vector<ModeDerivative>, 2> derivs;
  std::vector<Amplitudes> amps;
};

FdData collect(const ModelParams& params, int sites, double h) {
  params.validate();
  check_step(params, h);
  const auto centre = ground_state(params, sites);
  FdData data;
  data.derivs[0] = differentiate(params, sites, Axis::mu, h);
  data.derivs[1] = differentiate(params, sites, Axis::delta, h);
  data.amps.assign(centre.amplitudes().begin(), centre.amplitudes().end());
  return data;
}

// <d_a psi|d_b psi> summed over modes.
double metric(const FdData& d, int a, int b) {
  CompensatedSum re;
  for (std::size_t i = d.amps.size(); i-- > 0;) {
    const auto& da = d.derivs[a][i];
    const auto& db = d.derivs[b][i];
    re += std::real(std::conj(da.du) * db.du + std::conj(da.dv) * db.dv);
  }
  return re.value();
}

// <d_a psi|psi>.
Complex connection(const FdData& d, int a) {
  Complex c = 0.0;
  for (std::size_t i = 0; i < d.amps.size(); ++i) {
    const auto& da = d.derivs[a][i];
    c += std::conj(da.du) * d.amps[i].u + std::conj(da.dv) * d.amps[i].v;
  }
  return c;
}

double berry_product(const FdData& d, int a, int b) {
  return 4.0 * std::real(connection(d, a) * std::conj(connection(d, b)));
}

double relative_error(double estimate, double reference, double scale = 0.0) {
  const double diff = std::abs(estimate - reference);
  const double norm = std::max(std::abs(reference), scale);
  return norm < kAbsoluteFloor ? diff : diff / norm;
}

}  // namespace

QfimMatrix qfim_fd(const ModelParams& params, int sites, double h) {
  const auto d = collect(params, sites, h);
  QfimMatrix q;
  q.params = params;
  q.sites = sites;
  q.f_mm = 4.0 * metric(d, 0, 0) - berry_product(d, 0, 0);
  q.f_md = 4.0 * metric(d, 0, 1) - berry_product(d, 0, 1);
  q.f_dd = 4.0 * metric(d, 1, 1) - berry_product(d, 1, 1);
  return q;
}

double berry_term(const ModelParams& params, int sites, double h) {
  const auto d = collect(params, sites, h);
  return std::max({std::abs(berry_product(d, 0, 0)),
                   std::abs(berry_product(d, 0, 1)),
                   std::abs(berry_product(d, 1, 1))});
}

double qfi_fidelity(const ModelParams& params, int sites, Axis axis,
                    double step) {
  params.validate();
  if (!(step > 0.0)) {
    throw std::invalid_argument("fidelity step must be positive");
  }
  const auto centre = ground_state(params, sites);
  const auto infidelity_at = [&](double offset) {
    const double value =
        infidelity(centre, ground_state(shifted(params, axis, offset), sites));
    if (value > kMaxInfidelity) {
      throw std::invalid_argument(
          "fidelity step too large: infidelity exceeds 0.1");
    }
    return value;
  };

  const Stencil stencil = stencil_for(params, axis, step);
  double total = 0.0;
  double scale = 0.0;
  if (stencil == Stencil::central) {
    total = infidelity_at(step) + infidelity_at(-step);
    scale = 4.0;
  } else {
    total = infidelity_at(stencil == Stencil::forward ? step : -step);
    scale = 8.0;
  }
  if (total == 0.0) {
    return 0.0;
  }
  if (total < kMinInfidelity) {
    throw std::invalid_argument(
        "fidelity step too small: infidelity below 1e-14");
  }
  return scale * total / (step * step);
}

CrosscheckReport crosscheck(const ModelParams& params, int sites, double h,
                            double step) {
  CrosscheckReport report;
  report.params = params;
  report.sites = sites;
  report.analytic = qfim(params, sites);
  report.finite_difference = qfim_fd(params, sites, h);
  report.fidelity_mm = qfi_fidelity(params, sites, Axis::mu, step);
  report.fidelity_dd = qfi_fidelity(params, sites, Axis::delta, step);
  report.berry = berry_term(params, sites, h);

  const auto& a = report.analytic;
  const auto& fd = report.finite_difference;
  report.max_rel_error = std::max({
      relative_error(fd.f_mm, a.f_mm),
      // f_md is measured against the matrix scale: it is exponentially
      // small deep in the topological phase, where its own magnitude is noise.
      relative_error(fd.f_md, a.f_md, std::sqrt(a.f_mm * a.f_dd)),
      relative_error(fd.f_dd, a.f_dd),
      relative_error(report.fidelity_mm, a.f_mm),
      relative_error(report.fidelity_dd, a.f_dd),
  });
  return report;
}

}  // namespace kitaev_qfi
