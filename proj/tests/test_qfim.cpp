#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "kitaev_qfi/qfim.hpp"

using namespace kitaev_qfi;
using std::numbers::pi;

namespace {

// Central difference of amplitudes() along one parameter.
AmplitudeDerivatives numeric_derivatives(const ModelParams& p, double k,
                                         double h) {
  const auto at = [&](double dm, double dd) {
    return amplitudes(ModelParams{p.mu + dm, p.delta + dd}, k);
  };
  const auto mp = at(h, 0), mm = at(-h, 0), dp = at(0, h), dm = at(0, -h);
  return {(mp.u - mm.u) / (2 * h), (mp.v - mm.v) / (2 * h),
          (dp.u - dm.u) / (2 * h), (dp.v - dm.v) / (2 * h)};
}

// Central differences carry ~1e-10 absolute noise, so small derivatives
// are compared against a floor.
bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(b), 1e-3);
}

}  // namespace

TEST_CASE("amplitude derivatives match central differences") {
  for (const auto& [p, k] : {std::pair{ModelParams{0.0, 1.0}, pi / 2},
                             std::pair{ModelParams{2.0, 0.5}, pi / 2},
                             std::pair{ModelParams{1.2, -0.7}, 0.4},
                             std::pair{ModelParams{-2.5, 0.3}, 2.9}}) {
    const auto d = amplitude_derivatives(p, k);
    const auto n = numeric_derivatives(p, k, 1e-6);
    CAPTURE(p.mu);
    CAPTURE(p.delta);
    CHECK(close(d.du_dmu, n.du_dmu, 1e-6));
    CHECK(close(d.dv_dmu.imag(), n.dv_dmu.imag(), 1e-6));
    CHECK(close(d.du_ddelta, n.du_ddelta, 1e-6));
    CHECK(close(d.dv_ddelta.imag(), n.dv_ddelta.imag(), 1e-6));
    CHECK(d.dv_dmu.real() == 0.0);
    CHECK(d.dv_ddelta.real() == 0.0);
  }
  const auto d = amplitude_derivatives({2.0, 0.5}, pi / 2);
  CHECK(d.du_ddelta != 0.0);
  CHECK(d.dv_ddelta.imag() != 0.0);
}

TEST_CASE("amplitude derivatives preserve the norm") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> mu(-3, 3), delta(-1, 1), k(0.01, 3.13);
  for (int i = 0; i < 500; ++i) {
    const ModelParams p{mu(rng), delta(rng)};
    const double kk = k(rng);
    const auto a = amplitudes(p, kk);
    const auto d = amplitude_derivatives(p, kk);
    const double scale = std::abs(d.du_dmu) + std::abs(d.dv_dmu) +
                         std::abs(d.du_ddelta) + std::abs(d.dv_ddelta) + 1.0;
    CHECK(std::abs(std::real(a.u * d.du_dmu + std::conj(a.v) * d.dv_dmu)) <=
          1e-14 * scale);
    CHECK(std::abs(std::real(a.u * d.du_ddelta +
                             std::conj(a.v) * d.dv_ddelta)) <= 1e-14 * scale);
  }
}

TEST_CASE("amplitude derivatives are finite at delta = 0 with z > 0 and "
          "reject the occupied branch") {
  const auto d = amplitude_derivatives({-3.0, 0.0}, 1.0);
  CHECK(std::isfinite(d.du_ddelta));
  CHECK(std::isfinite(d.dv_ddelta.imag()));
  CHECK_THROWS_AS(amplitude_derivatives({2.0, 0.0}, 1.0), DomainError);
}

TEST_CASE("qfim on the symmetry line") {
  auto q = qfim({2.0, 0.0}, 8);
  CHECK(q.f_mm == 0.0);
  CHECK(q.f_md == 0.0);
  CHECK(q.f_dd == doctest::Approx(7.0).epsilon(1e-14));

  q = qfim({2.0, 0.0}, 1000);
  CHECK(q.f_dd == doctest::Approx(124875.0).epsilon(1e-13));

  // Frozen from a 40-digit summation of sin^2 k / (5 - 2 cos k)^2.
  q = qfim({-5.0, 0.0}, 8);
  CHECK(q.f_mm == 0.0);
  CHECK(q.f_md == 0.0);
  CHECK(q.f_dd == doctest::Approx(0.09113920404423016681).epsilon(1e-14));
}

TEST_CASE("qfim reference values") {
  // Frozen from 40-digit summations of the same per-mode terms.
  auto q = qfim({2.0, 1e-7}, 1000);
  CHECK(q.f_mm == doctest::Approx(10.416666645574935548).epsilon(1e-12));
  CHECK(q.f_md == doctest::Approx(-1041.6656229166718782).epsilon(1e-12));
  CHECK(q.f_dd == doctest::Approx(124874.99979166749969).epsilon(1e-12));
  CHECK(precision_scalar(q) ==
        doctest::Approx(1.7272951586117939129).epsilon(1e-9));

  q = qfim({2.0, 0.5}, 64);
  CHECK(q.f_mm == doctest::Approx(1860.0000000000283258).epsilon(1e-12));
  CHECK(q.f_md == doctest::Approx(-31.999999999985757725).epsilon(1e-12));
  CHECK(q.f_dd == doctest::Approx(10.240000000007134650).epsilon(1e-12));
}

TEST_CASE("qfim parity and positivity") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> mu(-3, 3), delta(-1, 1);
  std::uniform_int_distribution<int> half(1, 128);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p{mu(rng), delta(rng)};
    const int L = 2 * half(rng);
    const auto q = qfim(p, L);
    const auto qd = qfim({p.mu, -p.delta}, L);
    const auto qm = qfim({-p.mu, p.delta}, L);
    CHECK(q.f_mm >= 0.0);
    CHECK(q.f_dd >= 0.0);
    CHECK(q.determinant() >= -1e-9 * std::max(1.0, q.f_mm * q.f_dd));
    CHECK(std::abs(qd.f_mm - q.f_mm) <= 1e-12 * q.f_mm);
    CHECK(std::abs(qd.f_dd - q.f_dd) <= 1e-12 * q.f_dd);
    // f_md sums terms of both signs, so its rounding scales with sqrt(f_mm f_dd).
    const double md_scale = 1e-12 * std::sqrt(q.f_mm * q.f_dd);
    CHECK(std::abs(qd.f_md + q.f_md) <= md_scale);
    CHECK(std::abs(qm.f_mm - q.f_mm) <= 1e-12 * q.f_mm);
    CHECK(std::abs(qm.f_dd - q.f_dd) <= 1e-12 * q.f_dd);
    CHECK(std::abs(qm.f_md + q.f_md) <= md_scale);
  }
}

TEST_CASE("precision scalar") {
  QfimMatrix q;
  q.f_dd = 7;
  CHECK(precision_scalar(q) == 0.0);
  q = {2.0, 0.0, 2.0, {}, 0};
  CHECK(precision_scalar(q) == 1.0);
  q = {0.0, 0.0, 0.0, {}, 0};
  CHECK_THROWS_AS(precision_scalar(q), DomainError);
  // tiny negative determinant from rounding clamps to zero
  q = {1.0, 1.0 + 1e-12, 1.0, {}, 0};
  CHECK(precision_scalar(q) == 0.0);

  const auto g = precision_scalar(qfim({2.0, 1e-7}, 1000));
  const double lead = (pi * pi - 8) * 1e-14 * 1e18 / std::pow(pi, 8);
  CHECK(lead == doctest::Approx(1.97).epsilon(0.01));
  CHECK(g / lead >= 1 / 1.3);
  CHECK(g / lead <= 1.3);
}

TEST_CASE("G versus the harmonic bound") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> mu(-3, 3), delta(0.05, 1);
  for (int i = 0; i < 100; ++i) {
    auto q = qfim({mu(rng), delta(rng)}, 64);
    const double harmonic = q.f_mm * q.f_dd / (q.f_mm + q.f_dd);
    CHECK(precision_scalar(q) <= harmonic * (1 + 1e-12));
    q.f_md = 0.0;
    CHECK(std::abs(precision_scalar(q) - harmonic) <= 1e-12 * harmonic);
  }
}

TEST_CASE("multi- and single-parameter bounds") {
  QfimMatrix q{2.0, 0.0, 2.0, {}, 0};
  auto b = multiparam_bound(q, 1);
  CHECK(b.g == 1.0);
  CHECK(b.bound == 1.0);
  q = {4.0, 0.0, 4.0, {}, 0};
  CHECK(multiparam_bound(q, 4).bound == 0.125);
  q = {0.0, 0.0, 7.0, {}, 0};
  CHECK(multiparam_bound(q, 1).bound == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(multiparam_bound(q, 0), std::invalid_argument);

  q = {1.0, 0.0, 1.0, {}, 0};
  CHECK(singleparam_bound(q, 1) == 2.0);
  q = {4.0, 0.0, 4.0, {}, 0};
  CHECK(singleparam_bound(q, 2) == 0.25);
  q = {0.0, 0.0, 7.0, {}, 0};
  CHECK_THROWS_AS(singleparam_bound(q, 1), DomainError);

  // Correlated parameters only make the joint bound weaker.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> mu(-3, 3), delta(0.05, 1);
  for (int i = 0; i < 100; ++i) {
    const auto r = qfim({mu(rng), delta(rng)}, 32);
    if (r.f_md == 0.0) continue;
    CHECK(multiparam_bound(r, 3).bound >= singleparam_bound(r, 3));
  }
}
