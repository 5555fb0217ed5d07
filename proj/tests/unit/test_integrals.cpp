#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "lwqm/integrals.hpp"

using namespace lwqm;

static const model::ModelParams kRef{5.0, -5.0, 5.0};
static const double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("single identity over the full half line (published rows)") {
  const double published[5] = {5.38183e-12, 8.40192e-9, 2.46983e-6,
                               1.73698e-3, 18.2922};
  auto rows = integrals::verify_table(integrals::Table::single, kRef);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK(r.rel_diff <= 1e-6);   // quadrature vs Wronskian formula
    CHECK(r.lhs == Catch::Approx(published[r.level]).epsilon(1e-3));
  }
}

TEST_CASE("double identity over (0.1, 1) (published rows)") {
  const double published[5] = {0.280879, 0.540471, 0.838775, 1.11869,
                               1.29632};
  auto rows = integrals::verify_table(integrals::Table::doubled, kRef);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK(r.rel_diff <= 1e-6);
    CHECK(r.lhs == Catch::Approx(published[r.level]).epsilon(1e-4));
  }
}

TEST_CASE("single identity at random off-spectrum points") {
  // 50 random (E, p, x) draws, fixed seed for reproducibility
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> ue(-4.5, -0.05);
  std::uniform_real_distribution<double> up(0.2, 3.0);
  std::uniform_real_distribution<double> ux(0.5, 12.0);
  for (int i = 0; i < 50; ++i) {
    double E = ue(rng);
    double p = up(rng);
    double x = p + ux(rng);
    double lhs = integrals::single_integral_lhs(E, kRef, p, x);
    double rhs = integrals::single_integral_rhs(E, kRef, p, x);
    REQUIRE(std::abs(lhs - rhs) <=
            1e-6 * std::max({std::abs(lhs), std::abs(rhs), 1e-30}));
  }
}

TEST_CASE("wronskian of psi and its energy derivative") {
  // consistency against a finite-difference energy derivative
  double E = -1.7, x = 5.0;
  double h = 1e-5;
  auto psiE = [&](double xx, double EE) { return model::psi(xx, EE, kRef); };
  auto dpsi = [&](double xx) {
    return (psiE(xx, E + h) - psiE(xx, E - h)) / (2 * h);
  };
  double fd = model::psi(x, E, kRef) *
                  (dpsi(x + 1e-4) - dpsi(x - 1e-4)) / 2e-4 -
              model::psi_dx(x, E, kRef) * dpsi(x);
  CHECK(integrals::wronskian_psi_psiE(x, E, kRef) ==
        Catch::Approx(fd).epsilon(1e-5));
}

TEST_CASE("second solution has unit wronskian against psi") {
  for (double E : {-2.2, -0.7}) {
    auto v = integrals::second_solution_v(E, kRef);
    for (double x : {1.0, 4.0, 9.0}) {
      double w = model::psi(x, E, kRef) * v.dx(x) -
                 model::psi_dx(x, E, kRef) * v.value(x);
      CHECK(w == Catch::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("double identity rejects intervals containing a node") {
  auto spec = spectrum::solve_spectrum(kRef);
  double E1 = spec.energies[1];
  // psi_1 has its single node inside (0, 60); bracket it roughly
  double lo = 0.5, hi = 40.0;
  CHECK_THROWS_AS(integrals::double_integral_lhs(E1, kRef, lo, hi),
                  NodeInInterval);
  CHECK_THROWS_AS(integrals::double_integral_rhs(E1, kRef, lo, hi),
                  NodeInInterval);
}

TEST_CASE("interval additivity of the closed form") {
  double E = -0.9;
  double a = 0.7, m = 2.5, b = 6.0;
  double whole = integrals::single_integral_rhs(E, kRef, a, b);
  double split = integrals::single_integral_rhs(E, kRef, a, m) +
                 integrals::single_integral_rhs(E, kRef, m, b);
  CHECK(whole == Catch::Approx(split).epsilon(1e-10));
}
