#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kitaev_qfi/oracle.hpp"

using namespace kitaev_qfi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("finite-difference QFIM agrees with the closed form") {
  for (const auto& [p, L] : {std::pair{ModelParams{0.0, 1.0}, 16},
                             std::pair{ModelParams{2.0, 0.5}, 64}}) {
    const auto a = qfim(p, L);
    const auto fd = qfim_fd(p, L, 1e-5);
    CHECK(rel(fd.f_mm, a.f_mm) < 1e-6);
    CHECK(rel(fd.f_dd, a.f_dd) < 1e-6);
    if (std::abs(a.f_md) > 1e-12) {
      CHECK(rel(fd.f_md, a.f_md) < 1e-6);
    } else {
      CHECK(std::abs(fd.f_md) < 1e-9);
    }
  }
}

TEST_CASE("finite-difference QFIM converges at second order") {
  const ModelParams p{2.0, 0.5};
  const auto a = qfim(p, 64);
  const double e1 = std::abs(qfim_fd(p, 64, 1e-4).f_mm - a.f_mm);
  const double e2 = std::abs(qfim_fd(p, 64, 5e-5).f_mm - a.f_mm);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("one-sided stencil at delta = 0") {
  const auto fd = qfim_fd({2.0, 0.0}, 8, 1e-5);
  CHECK(fd.f_mm == 0.0);
  CHECK(fd.f_dd == doctest::Approx(7.0).epsilon(1e-6));
}

TEST_CASE("finite-difference step validation") {
  CHECK_THROWS_AS(qfim_fd({0.0, 1.0}, 16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(qfim_fd({0.0, 1.0}, 16, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(qfim_fd({0.0, 1.0}, 16, 1e-17), std::invalid_argument);
}

TEST_CASE("Berry connection term vanishes") {
  for (const auto& p : {ModelParams{0.0, 1.0}, ModelParams{2.0, 0.5},
                        ModelParams{-1.3, 0.2}, ModelParams{2.0, 0.0}}) {
    CHECK(berry_term(p, 64) < 1e-10);
  }
}

TEST_CASE("fidelity susceptibility") {
  auto a = qfim({0.0, 1.0}, 32);
  CHECK(rel(qfi_fidelity({0.0, 1.0}, 32, Axis::mu, 1e-4), a.f_mm) < 1e-4);
  a = qfim({2.0, 0.3}, 32);
  CHECK(rel(qfi_fidelity({2.0, 0.3}, 32, Axis::delta, 1e-4), a.f_dd) < 1e-4);

  // Moving mu along the symmetric line leaves every mode occupied.
  CHECK(qfi_fidelity({2.0, 0.0}, 40, Axis::mu, 1e-4) == 0.0);
  CHECK(qfi_fidelity({2.0, 0.0}, 8, Axis::delta, 1e-5) ==
        doctest::Approx(7.0).epsilon(1e-4));

  CHECK_THROWS_AS(qfi_fidelity({0.0, 1.0}, 32, Axis::mu, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfi_fidelity({0.0, 1.0}, 32, Axis::mu, 1e-9),
                  std::invalid_argument);
  CHECK_THROWS_AS(qfi_fidelity({0.0, 1.0}, 32, Axis::mu, 1.5),
                  std::invalid_argument);
}

TEST_CASE("fidelity and finite-difference oracles agree") {
  for (const auto& p : {ModelParams{1.0, 0.4}, ModelParams{-0.5, 0.9},
                        ModelParams{2.5, 0.1}}) {
    const auto fd = qfim_fd(p, 48);
    CHECK(rel(qfi_fidelity(p, 48, Axis::mu), fd.f_mm) < 1e-4);
    CHECK(rel(qfi_fidelity(p, 48, Axis::delta), fd.f_dd) < 1e-4);
  }
}

TEST_CASE("crosscheck reports") {
  auto r = crosscheck({1.0, 0.4}, 64);
  CHECK(r.max_rel_error >= 0.0);
  CHECK(r.max_rel_error < 1e-4);
  CHECK(r.berry < 1e-10);

  // Steeper landscape near the multicritical point needs smaller steps.
  r = crosscheck({2.0, 1e-3}, 200, 1e-6, 1e-7);
  CHECK(r.max_rel_error < 1e-3);

  r = crosscheck({2.0, 0.0}, 8, 1e-5, 1e-5);
  CHECK(r.analytic.f_dd == doctest::Approx(7.0));
  CHECK(rel(r.fidelity_dd, 7.0) < 1e-4);
  CHECK(r.max_rel_error < 1e-4);
}
