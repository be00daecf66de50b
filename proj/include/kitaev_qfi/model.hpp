#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace kitaev_qfi {

/// Thrown when a quantity is undefined at the requested parameter point,
/// e.g. the winding number on a critical line.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Couplings of the chain: on-site potential mu and p-wave pairing delta.
/// Hopping is fixed to 1.
struct ModelParams {
  double mu = 0.0;
  double delta = 0.0;

  /// Throws std::invalid_argument if either coupling is NaN or infinite.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Anti-periodic momenta k_i = (2i - 1) pi / L, i = 1..L/2.
class MomentumGrid {
 public:
  /// Throws std::invalid_argument unless sites is even and >= 2.
  explicit MomentumGrid(int sites);

  [[nodiscard]] int sites() const { return sites_; }
  [[nodiscard]] std::size_t size() const { return momenta_.size(); }
  [[nodiscard]] std::span<const double> momenta() const { return momenta_; }
  /// pi - k_i, formed from integers so it keeps full relative precision
  /// near the zone boundary.
  [[nodiscard]] std::span<const double> complements() const {
    return complements_;
  }
  [[nodiscard]] double operator[](std::size_t i) const { return momenta_[i]; }

  friend bool operator==(const MomentumGrid& a, const MomentumGrid& b) {
    return a.sites_ == b.sites_;
  }

 private:
  int sites_;
  std::vector<double> momenta_;
  std::vector<double> complements_;
};

MomentumGrid build_grid(int sites);

/// Pseudo-spin components of the BdG Hamiltonian at one momentum:
/// z = -mu - 2 cos k, y = -delta sin k, eps = sqrt(z^2 + y^2).
struct BdgComponents {
  double z;
  double y;
  double eps;
};

BdgComponents bdg_components(const ModelParams& params, double k);
/// Same at grid momentum i, using the exact complement pi - k_i; near
/// k = 0 and k = pi this keeps z accurate when mu is close to -2 or 2.
BdgComponents bdg_components(const ModelParams& params,
                             const MomentumGrid& grid, std::size_t i);

/// Amplitudes of one (k, -k) pair: u real and non-negative, v purely
/// imaginary.
struct Amplitudes {
  double u;
  std::complex<double> v;
};

/// Bogoliubov amplitudes in a cancellation-free form.
///
/// For delta == 0 with z < 0 the closed form is 0/0; the one-sided limit
/// delta -> 0+ is returned, i.e. u = 0, v = -i (the mode is occupied).
Amplitudes amplitudes(const ModelParams& params, double k);
Amplitudes amplitudes(const BdgComponents& c);

/// Paired ground state prod_k (u_k + v_k c_k^+ c_-k^+)|0>.
class BogoliubovState {
 public:
  BogoliubovState(ModelParams params, MomentumGrid grid);

  [[nodiscard]] const ModelParams& params() const { return params_; }
  [[nodiscard]] const MomentumGrid& grid() const { return grid_; }
  [[nodiscard]] std::span<const Amplitudes> amplitudes() const {
    return amplitudes_;
  }

 private:
  ModelParams params_;
  MomentumGrid grid_;
  std::vector<Amplitudes> amplitudes_;
};

BogoliubovState ground_state(const ModelParams& params, int sites);

/// <a|b> as the product of per-pair overlaps. Throws std::invalid_argument
/// when the two states live on different grids.
std::complex<double> overlap(const BogoliubovState& a,
                             const BogoliubovState& b);

/// 1 - |<a|b>| evaluated without forming the overlap, so that infidelities
/// far below machine epsilon stay resolvable. Uses
/// |<a_k|b_k>|^2 = 1 - |u_a v_b - v_a u_b|^2 per pair.
double infidelity(const BogoliubovState& a, const BogoliubovState& b);

/// <N> = sum_k 2 |v_k|^2.
double average_occupation(const BogoliubovState& state);

/// Winding number of the (z, y) loop over the Brillouin zone, midpoint rule
/// with `steps` panels. +1 for |mu| < 2, delta > 0.
///
/// Throws DomainError on the critical lines |mu| = 2 or delta = 0, or when
/// the discretized integral is further than 1e-3 from an integer.
int winding_number(const ModelParams& params, int steps = 10000);

}  // namespace kitaev_qfi
