#include "kitaev_qfi/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kitaev_qfi/compensated_sum.hpp"

namespace kitaev_qfi {

LeadingOrder leading_order(const ModelParams& params, int sites) {
  using std::numbers::pi;
  const double l = sites;
  const double d = params.delta;
  const double l2 = l * l;
  const double l4 = l2 * l2;
  const double l6 = l4 * l2;
  const double pi2 = pi * pi;
  const double pi4 = pi2 * pi2;
  const double pi6 = pi4 * pi2;
  const double pi8 = pi4 * pi4;
  return {
      .f_mm_lead = d * d * l6 / pi6,
      .f_dd_lead = l2 / 8.0,
      .f_md_lead = -d * l4 / pi4,
      .g_lead = (pi2 - 8.0) * d * d * l6 / pi8,
  };
}

double odd_zeta_partial(long long terms) {
  if (terms < 1) {
    throw std::invalid_argument("odd zeta partial sum needs terms >= 1");
  }
  // Smallest terms first.
  CompensatedSum sum;
  for (long long j = terms; j >= 1; --j) {
    const double odd = static_cast<double>(2 * j - 1);
    sum += 1.0 / (odd * odd);
  }
  return sum.value();
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::f_mm:
      return "f_mm";
    case Quantity::f_md_abs:
      return "f_md_abs";
    case Quantity::f_dd:
      return "f_dd";
    case Quantity::g:
      return "g";
  }
  return "?";
}

Quantity parse_quantity(std::string_view name) {
  for (auto q : {Quantity::f_mm, Quantity::f_md_abs, Quantity::f_dd,
                 Quantity::g}) {
    if (to_string(q) == name) return q;
  }
  throw std::invalid_argument("unknown quantity '" + std::string(name) +
                              "' (expected f_mm, f_md_abs, f_dd or g)");
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::low:
      return "low";
    case Regime::intermediate:
      return "intermediate";
    case Regime::high:
      return "high";
  }
  return "?";
}

Regime classify_regime(Quantity quantity, double delta) {
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("regime classifier takes delta >= 0");
  }
  double low_edge = 0.0;
  double high_edge = 0.0;
  switch (quantity) {
    case Quantity::f_mm:
      low_edge = 1e-3;
      high_edge = 1e-2;
      break;
    case Quantity::f_dd:
    case Quantity::g:
      low_edge = 1e-5;
      high_edge = 0.03;
      break;
    case Quantity::f_md_abs:
      throw std::invalid_argument("no regime boundaries for f_md_abs");
  }
  if (delta < low_edge) return Regime::low;
  if (delta <= high_edge) return Regime::intermediate;
  return Regime::high;
}

}  // namespace kitaev_qfi
