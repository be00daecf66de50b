#include "kitaev_qfi/qfim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kitaev_qfi/compensated_sum.hpp"

namespace kitaev_qfi {

namespace {

constexpr double kDeterminantClamp = 1e-9;

void require_repetitions(int repetitions) {
  if (repetitions < 1) {
    throw std::invalid_argument("repetitions must be >= 1");
  }
}

}  // namespace

AmplitudeDerivatives amplitude_derivatives(const ModelParams& params,
                                           double k) {
  using namespace std::complex_literals;
  params.validate();
  const auto [z, y, eps] = bdg_components(params, k);
  // eps + z without cancellation for z < 0.
  const double plus = z >= 0.0 ? eps + z : y * y / (eps - z);
  if (!(eps > 0.0) || !(plus > 0.0)) {
    throw DomainError(
        "amplitude derivatives are singular on the occupied-mode branch");
  }
  const double sin_k = std::sin(k);
  const double root_plus = std::sqrt(plus);
  const double pref = 1.0 / (2.0 * std::numbers::sqrt2 * eps * eps *
                             std::sqrt(eps));  // 1 / (2 sqrt2 eps^{5/2})

  AmplitudeDerivatives d{};
  d.du_dmu = -(eps - z) * root_plus * pref;
  d.dv_dmu = y * root_plus * pref * 1.0i;
  // y^2 / delta = -y sin k and y / delta = -sin k.
  d.du_ddelta = y * z * sin_k / root_plus * pref;
  d.dv_ddelta = -z * sin_k * root_plus * pref * 1.0i;
  return d;
}

QfimMatrix qfim(const ModelParams& params, int sites) {
  params.validate();
  const MomentumGrid grid(sites);
  CompensatedSum f_mm;
  CompensatedSum f_md;
  CompensatedSum f_dd;
  for (std::size_t i = grid.size(); i-- > 0;) {
    const auto [z, y, eps] = bdg_components(params, grid, i);
    const double sin_k = std::sin(std::min(grid[i], grid.complements()[i]));
    const double sin2 = sin_k * sin_k;
    const double eps2 = eps * eps;
    const double weight = sin2 / (eps2 * eps2);
    f_mm += params.delta * params.delta * weight;
    f_md += params.delta * z * weight;
    f_dd += z * z * weight;
  }
  return {f_mm.value(), f_md.value(), f_dd.value(), params, sites};
}

double precision_scalar(const QfimMatrix& q) {
  const double trace = q.trace();
  if (!(trace > 0.0)) {
    throw DomainError("precision scalar undefined for a vanishing QFIM trace");
  }
  double det = q.determinant();
  if (det < 0.0 &&
      det >= -kDeterminantClamp * std::max(1.0, q.f_mm * q.f_dd)) {
    det = 0.0;
  }
  return det / trace;
}

PrecisionBound multiparam_bound(const QfimMatrix& q, int repetitions) {
  require_repetitions(repetitions);
  const double g = q.trace() > 0.0 ? precision_scalar(q) : 0.0;
  const double bound = g > 0.0 ? 1.0 / (repetitions * g)
                               : std::numeric_limits<double>::infinity();
  return {g, bound, repetitions};
}

double singleparam_bound(const QfimMatrix& q, int repetitions) {
  require_repetitions(repetitions);
  if (!(q.f_mm > 0.0) || !(q.f_dd > 0.0)) {
    throw DomainError(
        "single-parameter bound needs both diagonal QFIM elements positive");
  }
  return (1.0 / q.f_mm + 1.0 / q.f_dd) / repetitions;
}

}  // namespace kitaev_qfi
