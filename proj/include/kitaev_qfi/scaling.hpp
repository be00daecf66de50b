#pragma once

#include <span>
#include <vector>

#include "kitaev_qfi/asymptotics.hpp"
#include "kitaev_qfi/model.hpp"
#include "kitaev_qfi/qfim.hpp"

namespace kitaev_qfi {

struct ScalingPoint {
  int sites;
  double value;
};

/// value ~ exp(log_prefactor) * L^exponent.
struct ScalingFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double r_squared = 0.0;
  std::vector<ScalingPoint> points;
};

/// Unweighted least squares of ln(value) on ln(L).
///
/// Throws std::invalid_argument for fewer than 3 points, duplicate sizes or
/// non-positive values.
ScalingFit fit_exponent(std::span<const ScalingPoint> points);

/// The chosen quantity at one parameter point.
double evaluate(const QfimMatrix& q, Quantity quantity);

/// Evaluates the quantity at every size (concurrently) and fits the
/// exponent. Throws DomainError if the quantity vanishes at some size.
ScalingFit scaling_sweep(const ModelParams& params,
                         std::span<const int> sizes, Quantity quantity);

}  // namespace kitaev_qfi
