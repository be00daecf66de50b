#pragma once

#include "kitaev_qfi/model.hpp"
#include "kitaev_qfi/qfim.hpp"

namespace kitaev_qfi {

/// Independent numerical routes to the QFIM. Nothing here calls qfim() or
/// amplitude_derivatives(); both oracles only see amplitudes().

enum class Axis { mu, delta };

inline constexpr double kDefaultFdStep = 1e-5;
inline constexpr double kDefaultFidelityStep = 1e-4;

/// F_ab = 4 Re sum_k (d_a u_k^* d_b u_k + d_a v_k^* d_b v_k) minus the
/// Berry-connection product, with d_a a central difference of the amplitudes.
///
/// Along delta the stencil goes one-sided (second order) whenever the
/// backward point would land on or across delta = 0, since the amplitude
/// convention is discontinuous there.
///
/// Throws std::invalid_argument for h <= 0, h > 0.1, or when a nonzero
/// amplitude difference is below 1e-12 (cancellation).
QfimMatrix qfim_fd(const ModelParams& params, int sites,
                   double h = kDefaultFdStep);

/// Largest |4 Re[<d_a psi|psi><psi|d_b psi>]| over a, b, from the same
/// finite-difference derivatives as qfim_fd. Vanishes for normalized
/// amplitudes.
double berry_term(const ModelParams& params, int sites,
                  double h = kDefaultFdStep);

/// Diagonal QFIM element from the fidelity susceptibility,
/// F_aa ~ 4 (2 - |<psi(x)|psi(x+s)>| - |<psi(x)|psi(x-s)>|) / s^2,
/// falling back to the forward form 8 (1 - |<psi(x)|psi(x+s)>|) / s^2 when
/// the backward point would cross delta = 0.
///
/// Returns exactly 0 when the displaced state is identical. Throws
/// std::invalid_argument when step <= 0, when the infidelity is nonzero but
/// below 1e-14 (unresolvable) or when it exceeds 0.1 (too coarse).
double qfi_fidelity(const ModelParams& params, int sites, Axis axis,
                    double step = kDefaultFidelityStep);

struct CrosscheckReport {
  ModelParams params;
  int sites = 0;
  QfimMatrix analytic;
  QfimMatrix finite_difference;
  double fidelity_mm = 0.0;
  double fidelity_dd = 0.0;
  double berry = 0.0;
  double max_rel_error = 0.0;
};

/// Runs both oracles against qfim(). f_md is compared relative to
/// max(|f_md|, sqrt(f_mm f_dd)); elements whose scale is below 1e-12 are
/// compared absolutely.
CrosscheckReport crosscheck(const ModelParams& params, int sites,
                            double h = kDefaultFdStep,
                            double step = kDefaultFidelityStep);

}  // namespace kitaev_qfi
