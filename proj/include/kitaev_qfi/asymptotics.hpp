#pragma once

#include <string_view>

#include "kitaev_qfi/model.hpp"

namespace kitaev_qfi {

/// Leading-order QFIM near the multicritical point mu = 2, delta -> 0:
///   F_mm ~ delta^2 L^6 / pi^6       F_dd ~ L^2 / 8
///   F_md ~ -delta L^4 / pi^4        G    ~ (pi^2 - 8) delta^2 L^6 / pi^8
/// Evaluated for any input; mu is ignored and applicability is the
/// caller's call.
struct LeadingOrder {
  double f_mm_lead;
  double f_dd_lead;
  double f_md_lead;
  double g_lead;
};

LeadingOrder leading_order(const ModelParams& params, int sites);

/// sum_{j=1}^{terms} 1 / (2j - 1)^2, which tends to pi^2 / 8 from below.
double odd_zeta_partial(long long terms);

/// Quantity whose size scaling is studied.
enum class Quantity { f_mm, f_md_abs, f_dd, g };

std::string_view to_string(Quantity q);
/// Throws std::invalid_argument on an unknown name.
Quantity parse_quantity(std::string_view name);

enum class Regime { low, intermediate, high };

std::string_view to_string(Regime r);

/// Delta regime of the scaling exponent:
///   f_mm:       low < 1e-3 <= intermediate <= 1e-2 < high
///   f_dd and g: low < 1e-5 <= intermediate <= 0.03 < high
/// Throws std::invalid_argument for negative delta or f_md_abs.
Regime classify_regime(Quantity quantity, double delta);

}  // namespace kitaev_qfi
