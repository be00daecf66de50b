#include "kitaev_qfi/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kitaev_qfi/compensated_sum.hpp"

namespace kitaev_qfi {

void ModelParams::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(delta)) {
    throw std::invalid_argument("model parameters must be finite");
  }
}

MomentumGrid::MomentumGrid(int sites) : sites_(sites) {
  if (sites < 2 || sites % 2 != 0) {
    throw std::invalid_argument("system size must be even and >= 2, got " +
                                std::to_string(sites));
  }
  const auto modes = static_cast<std::size_t>(sites / 2);
  momenta_.reserve(modes);
  complements_.reserve(modes);
  for (std::size_t i = 1; i <= modes; ++i) {
    const auto odd = static_cast<double>(2 * i - 1);
    const auto l = static_cast<double>(sites);
    momenta_.push_back(odd * std::numbers::pi / l);
    complements_.push_back((l - odd) * std::numbers::pi / l);
  }
}

MomentumGrid build_grid(int sites) { return MomentumGrid(sites); }

namespace {

// z = -mu - 2 cos k rewritten around whichever band edge is closer, so that
// the cancellation between mu and 2 cos k happens on exact inputs:
//   k <= pi/2:  z = -(mu + 2) + 4 sin^2(k/2)
//   k >  pi/2:  z =  (2 - mu) - 4 sin^2((pi - k)/2)
BdgComponents components(const ModelParams& p, double k, double complement) {
  double z = 0.0;
  double sin_k = 0.0;
  if (k <= complement) {
    const double s = std::sin(0.5 * k);
    z = -(p.mu + 2.0) + 4.0 * s * s;
    sin_k = std::sin(k);
  } else {
    const double s = std::sin(0.5 * complement);
    z = (2.0 - p.mu) - 4.0 * s * s;
    sin_k = std::sin(complement);
  }
  const double y = -p.delta * sin_k;
  return {z, y, std::hypot(z, y)};
}

}  // namespace

BdgComponents bdg_components(const ModelParams& params, double k) {
  return components(params, k, std::numbers::pi - k);
}

BdgComponents bdg_components(const ModelParams& params,
                             const MomentumGrid& grid, std::size_t i) {
  return components(params, grid.momenta()[i], grid.complements()[i]);
}

Amplitudes amplitudes(const BdgComponents& c) {
  using namespace std::complex_literals;
  const auto [z, y, eps] = c;
  if (y == 0.0 && z < 0.0) {
    return {0.0, -1.0i};
  }
  if (eps == 0.0) {
    throw DomainError("Bogoliubov amplitudes undefined at a gapless mode");
  }
  if (z < 0.0) {
    // (eps + z)(eps - z) = y^2 removes the subtraction.
    const double sign_y = std::signbit(y) ? -1.0 : 1.0;
    const double u = std::abs(y) / std::sqrt(2.0 * eps * (eps - z));
    const double v = sign_y * std::sqrt((eps - z) / (2.0 * eps));
    return {u, v * 1.0i};
  }
  const double u = std::sqrt((eps + z) / (2.0 * eps));
  const double v = y / std::sqrt(2.0 * eps * (eps + z));
  return {u, v * 1.0i};
}

Amplitudes amplitudes(const ModelParams& params, double k) {
  return amplitudes(bdg_components(params, k));
}

BogoliubovState::BogoliubovState(ModelParams params, MomentumGrid grid)
    : params_(params), grid_(std::move(grid)) {
  params_.validate();
  amplitudes_.reserve(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    amplitudes_.push_back(
        kitaev_qfi::amplitudes(bdg_components(params_, grid_, i)));
  }
}

BogoliubovState ground_state(const ModelParams& params, int sites) {
  return BogoliubovState(params, MomentumGrid(sites));
}

namespace {

void require_same_grid(const BogoliubovState& a, const BogoliubovState& b) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument("states are defined on different grids");
  }
}

}  // namespace

std::complex<double> overlap(const BogoliubovState& a,
                             const BogoliubovState& b) {
  require_same_grid(a, b);
  std::complex<double> result = 1.0;
  const auto amps_a = a.amplitudes();
  const auto amps_b = b.amplitudes();
  for (std::size_t i = 0; i < amps_a.size(); ++i) {
    result *= amps_a[i].u * amps_b[i].u + std::conj(amps_a[i].v) * amps_b[i].v;
  }
  return result;
}

double infidelity(const BogoliubovState& a, const BogoliubovState& b) {
  require_same_grid(a, b);
  const auto amps_a = a.amplitudes();
  const auto amps_b = b.amplitudes();
  CompensatedSum log_fidelity;
  for (std::size_t i = 0; i < amps_a.size(); ++i) {
    const double cross =
        std::norm(amps_a[i].u * amps_b[i].v - amps_a[i].v * amps_b[i].u);
    if (cross >= 1.0) return 1.0;
    log_fidelity += 0.5 * std::log1p(-cross);
  }
  return -std::expm1(log_fidelity.value());
}

double average_occupation(const BogoliubovState& state) {
  CompensatedSum n;
  for (const auto& amp : state.amplitudes()) {
    n += 2.0 * std::norm(amp.v);
  }
  return n.value();
}

int winding_number(const ModelParams& params, int steps) {
  params.validate();
  if (steps < 100) {
    throw std::invalid_argument("winding integral needs at least 100 panels");
  }
  if (std::abs(params.mu) == 2.0 || params.delta == 0.0) {
    throw DomainError("winding number undefined on a critical line");
  }
  // z dy/dk - y dz/dk simplifies to delta (2 + mu cos k).
  const double width = 2.0 * std::numbers::pi / steps;
  CompensatedSum integral;
  for (int i = 0; i < steps; ++i) {
    const double k = -std::numbers::pi + (i + 0.5) * width;
    const auto [z, y, eps] = bdg_components(params, k);
    integral += params.delta * (2.0 + params.mu * std::cos(k)) / (eps * eps);
  }
  const double w = integral.value() * width / (2.0 * std::numbers::pi);
  const double rounded = std::round(w);
  if (!(std::abs(w - rounded) <= 1e-3)) {
    throw DomainError("winding integral not converged (value " +
                      std::to_string(w) + "); increase steps");
  }
  return static_cast<int>(rounded);
}

}  // namespace kitaev_qfi
