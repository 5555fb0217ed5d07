#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lwqm/energydep.hpp"

using namespace lwqm;

static const model::ModelParams kRef{5.0, -5.0, 5.0};

TEST_CASE("energy map and its inverse") {
  CHECK_THROWS_AS(energydep::energy_cal(1.0), DegenerateMap);
  CHECK_THROWS_AS(energydep::energy_inv(-0.5), DomainError);
  for (double E : {-3.8, -1.3, -0.5, -0.02}) {
    double ce = energydep::energy_cal(E);
    CHECK(ce > 0.0);
    CHECK(energydep::energy_inv(ce) == Catch::Approx(E).epsilon(1e-12));
  }
}

TEST_CASE("caption eigenvalues of the energy-dependent problem") {
  auto spec = spectrum::solve_spectrum(kRef);
  const double want[3] = {1.6539e-6, 5.9717e-4, 1.8975e-2};
  for (int n = 0; n < 3; ++n)
    CHECK(energydep::energy_cal(spec.energies[n]) ==
          Catch::Approx(want[n]).epsilon(1e-4));
}

TEST_CASE("point transformation maps the real line onto the half line") {
  double E = -1.3193106946;
  CHECK(energydep::x_of_y(0.0, E, kRef) == Catch::Approx(kRef.left() + 1.0));
  CHECK(energydep::x_of_y(-40.0, E, kRef) >
        energydep::x_of_y(40.0, E, kRef));
  CHECK(energydep::x_of_y(1e4, E, kRef) > kRef.left());
}

TEST_CASE("phi solves the energy-dependent equation") {
  // phi'' = (U - calE) phi
  auto spec = spectrum::solve_spectrum(kRef);
  for (int n : {0, 1, 2}) {
    auto bs = spectrum::bound_state(spec, n);
    double ce = energydep::energy_cal(bs.energy);
    for (double y : {-150.0, -10.0, 0.0, 40.0}) {
      auto f = [&](double t) { return energydep::phi(t, bs); };
      double ph = f(y);
      if (ph == 0.0) continue;
      double d2 = num::derivative(f, y, 2, {1e-13, 1e-10, 100}, 0.3);
      double rhs = (energydep::potential_u(y, ce, kRef) - ce) * ph;
      REQUIRE(std::abs(d2 - rhs) <=
              1e-6 * std::max({std::abs(rhs), std::abs(ph), 1e-30}));
    }
  }
}

TEST_CASE("potential U levels off at 3/2 calE") {
  double ce = 5.9717e-4;
  CHECK(energydep::potential_u(1e5, ce, kRef) ==
        Catch::Approx(1.5 * ce).epsilon(1e-8));
}

TEST_CASE("modified norms of the first three states") {
  auto spec = spectrum::solve_spectrum(kRef);
  const double want[3] = {1.96965e-6, 4.07894e-6, 2.44908e-5};
  for (int n = 0; n < 3; ++n) {
    double nm = energydep::modified_norm(spectrum::bound_state(spec, n));
    CHECK(nm > 0.0);
    CHECK(nm == Catch::Approx(want[n]).epsilon(1e-3));
  }
}
