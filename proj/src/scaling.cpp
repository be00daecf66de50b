#include "kitaev_qfi/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "kitaev_qfi/compensated_sum.hpp"
#include "kitaev_qfi/parallel.hpp"

namespace kitaev_qfi {

ScalingFit fit_exponent(std::span<const ScalingPoint> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("exponent fit needs at least 3 points");
  }
  std::set<int> seen;
  for (const auto& p : points) {
    if (p.sites <= 0) {
      throw std::invalid_argument("system sizes must be positive");
    }
    if (!seen.insert(p.sites).second) {
      throw std::invalid_argument("duplicate system size in exponent fit");
    }
    if (!(p.value > 0.0) || !std::isfinite(p.value)) {
      throw std::invalid_argument(
          "exponent fit needs finite positive values (log domain)");
    }
  }

  const double n = static_cast<double>(points.size());
  CompensatedSum sx;
  CompensatedSum sy;
  for (const auto& p : points) {
    sx += std::log(static_cast<double>(p.sites));
    sy += std::log(p.value);
  }
  const double mean_x = sx.value() / n;
  const double mean_y = sy.value() / n;

  CompensatedSum sxx;
  CompensatedSum sxy;
  CompensatedSum syy;
  for (const auto& p : points) {
    const double dx = std::log(static_cast<double>(p.sites)) - mean_x;
    const double dy = std::log(p.value) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  ScalingFit fit;
  fit.exponent = sxy.value() / sxx.value();
  fit.log_prefactor = mean_y - fit.exponent * mean_x;

  CompensatedSum residual;
  for (const auto& p : points) {
    const double predicted =
        fit.log_prefactor +
        fit.exponent * std::log(static_cast<double>(p.sites));
    const double r = std::log(p.value) - predicted;
    residual += r * r;
  }
  fit.r_squared = syy.value() > 0.0
                      ? std::clamp(1.0 - residual.value() / syy.value(), 0.0,
                                   1.0)
                      : 1.0;
  fit.points.assign(points.begin(), points.end());
  return fit;
}

double evaluate(const QfimMatrix& q, Quantity quantity) {
  switch (quantity) {
    case Quantity::f_mm:
      return q.f_mm;
    case Quantity::f_md_abs:
      return std::abs(q.f_md);
    case Quantity::f_dd:
      return q.f_dd;
    case Quantity::g:
      return precision_scalar(q);
  }
  return 0.0;
}

ScalingFit scaling_sweep(const ModelParams& params,
                         std::span<const int> sizes, Quantity quantity) {
  params.validate();
  const auto points = parallel_map<ScalingPoint>(sizes.size(), [&](auto i) {
    const int sites = sizes[i];
    return ScalingPoint{sites, evaluate(qfim(params, sites), quantity)};
  });
  for (const auto& p : points) {
    if (p.value == 0.0) {
      throw DomainError(std::string(to_string(quantity)) +
                        " vanishes at this point; nothing to fit");
    }
  }
  return fit_exponent(points);
}

}  // namespace kitaev_qfi
