#pragma once

#include <complex>

#include "kitaev_qfi/model.hpp"

namespace kitaev_qfi {

/// Parameter derivatives of the Bogoliubov amplitudes at one momentum.
struct AmplitudeDerivatives {
  double du_dmu;
  std::complex<double> dv_dmu;
  double du_ddelta;
  std::complex<double> dv_ddelta;
};

/// Closed-form derivatives of (u_k, v_k) with respect to mu and delta, with
/// the removable 1/delta already cancelled against y_k = -delta sin k.
///
/// eps + z is formed as y^2 / (eps - z) when z < 0. Throws DomainError on
/// the degenerate branch delta = 0 with z < 0, where it vanishes.
AmplitudeDerivatives amplitude_derivatives(const ModelParams& params,
                                           double k);

/// Symmetric 2x2 quantum Fisher information matrix in the (mu, delta) basis.
struct QfimMatrix {
  double f_mm = 0.0;
  double f_md = 0.0;
  double f_dd = 0.0;
  ModelParams params;
  int sites = 0;

  [[nodiscard]] double determinant() const { return f_mm * f_dd - f_md * f_md; }
  [[nodiscard]] double trace() const { return f_mm + f_dd; }
};

/// Ground-state QFIM from the per-mode sums
///   F_mm = sum delta^2 sin^2 k / eps^4
///   F_md = sum delta z sin^2 k / eps^4
///   F_dd = sum z^2 sin^2 k / eps^4
/// accumulated from the largest momentum down with compensated summation.
QfimMatrix qfim(const ModelParams& params, int sites);

/// G = 1 / Tr[F^-1] = det F / Tr F. Determinants that are negative by less
/// than 1e-9 relative are rounding and clamp to zero.
///
/// Throws DomainError when Tr F = 0.
double precision_scalar(const QfimMatrix& q);

/// Lower bound on delta_mu^2 + delta_delta^2 after m repetitions.
struct PrecisionBound {
  double g = 0.0;
  double bound = 0.0;  ///< 1/(m G); +infinity when G = 0
  int repetitions = 1;
};

PrecisionBound multiparam_bound(const QfimMatrix& q, int repetitions);

/// (1/m)(1/F_mm + 1/F_dd): both parameters estimated separately.
/// Throws DomainError if either diagonal element is zero.
double singleparam_bound(const QfimMatrix& q, int repetitions);

}  // namespace kitaev_qfi
