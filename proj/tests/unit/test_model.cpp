#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lwqm/model.hpp"
#include "lwqm/numerics.hpp"

using namespace lwqm;

static const model::ModelParams kRef{5.0, -5.0, 5.0};

TEST_CASE("potential value and shape") {
  // high-precision reference for the default setting at x = 5
  CHECK(model::potential_v(5.0, kRef) ==
        Catch::Approx(-0.94243684717237).epsilon(1e-12));
  // monotone increasing, diverging to -inf near the left end
  CHECK(model::potential_v(0.01, kRef) < model::potential_v(0.1, kRef));
  CHECK(model::potential_v(0.1, kRef) < model::potential_v(1.0, kRef));
  CHECK(model::potential_v(0.001, kRef) < -50.0);
  // vanishes far away
  CHECK(std::abs(model::potential_v(200.0, kRef)) < 1e-15);
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(model::potential_v(-1.0, kRef), DomainError);
  CHECK_THROWS_AS(model::potential_v(0.0, kRef), DomainError);
  CHECK_THROWS_AS(model::lambert_at(1e-12, kRef), NearSingularity);
  model::ModelParams bad{-1.0, 0.0, 5.0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("lambert chain rule dW/dx") {
  for (double x : {0.5, 2.0, 7.0, 20.0}) {
    double W = model::lambert_at(x, kRef);
    auto f = [&](double t) { return model::lambert_at(t, kRef); };
    double fd = num::derivative(f, x, 1, {1e-13, 1e-11, 100}, 0.01);
    CHECK(model::lambert_dx(W, kRef) == Catch::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("potential derivative matches finite differences") {
  for (double x : {0.7, 3.0, 11.0}) {
    auto f = [&](double t) { return model::potential_v(t, kRef); };
    double fd = num::derivative(f, x, 1, {1e-13, 1e-11, 100}, 0.01);
    CHECK(model::potential_v_dx(x, kRef) == Catch::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("hypergeometric parameter set at E = -1") {
  auto hp = model::hyp_params(-1.0, kRef);
  CHECK(hp.a == Catch::Approx(-2.14434508312).epsilon(1e-10));
  CHECK(hp.c == Catch::Approx(10.0).epsilon(1e-12));
  CHECK(hp.s == Catch::Approx(24.4948974278).epsilon(1e-10));
  // s^2 - c^2 = (2 sigma)^2 V0 for any E in (-V0, 0)
  for (double E : {-4.9, -3.0, -1.7, -0.2, -0.001}) {
    auto h = model::hyp_params(E, kRef);
    CHECK(h.s * h.s - h.c * h.c ==
          Catch::Approx(4.0 * kRef.sigma * kRef.sigma * kRef.v0).epsilon(1e-10));
  }
}

TEST_CASE("psi solves the base equation") {
  // psi'' = (V - E) psi at off-spectrum and near-spectrum energies alike
  for (double E : {-3.0, -1.0, -0.37}) {
    for (double x : {1.0, 3.0, 8.0, 15.0}) {
      auto f = [&](double t) { return model::psi(t, E, kRef); };
      double d2 = num::derivative(f, x, 2, {1e-13, 1e-10, 100}, 0.05);
      double rhs = (model::potential_v(x, kRef) - E) * model::psi(x, E, kRef);
      double scale = std::max(std::abs(rhs), std::abs(model::psi(x, E, kRef)));
      REQUIRE(std::abs(d2 - rhs) <= 1e-6 * std::max(scale, 1e-30));
    }
  }
}

TEST_CASE("psi dagger solves the base equation") {
  for (double E : {-2.0, -0.8}) {
    for (double x : {1.0, 4.0, 9.0}) {
      auto f = [&](double t) {
        return model::psi_dagger_eval(t, E, kRef).value.real();
      };
      double v = f(x);
      double d2 = num::derivative(f, x, 2, {1e-13, 1e-10, 100}, 0.05);
      double rhs = (model::potential_v(x, kRef) - E) * v;
      REQUIRE(std::abs(d2 - rhs) <= 1e-6 * std::max(std::abs(rhs), 1e-30));
    }
  }
}

TEST_CASE("analytic x- and E-derivatives of psi") {
  for (double E : {-2.4, -0.6}) {
    for (double x : {1.5, 6.0}) {
      auto e = model::psi_eval(x, E, kRef);
      auto fx = [&](double t) { return model::psi(t, E, kRef); };
      auto fE = [&](double ee) { return model::psi(x, ee, kRef); };
      CHECK(e.dx == Catch::Approx(num::derivative(fx, x, 1, {1e-13, 1e-11, 100}, 0.02))
                        .epsilon(1e-8));
      CHECK(e.dE == Catch::Approx(num::derivative(fE, E, 1, {1e-13, 1e-11, 100}, 1e-3))
                        .epsilon(1e-7));
      auto gE = [&](double ee) { return model::psi_eval(x, ee, kRef).dx; };
      CHECK(e.dE_dx ==
            Catch::Approx(num::derivative(gE, E, 1, {1e-13, 1e-11, 100}, 1e-3))
                .epsilon(1e-7));
    }
  }
}

TEST_CASE("psi dagger x-derivative") {
  double E = -1.3, x = 4.0;
  auto e = model::psi_dagger_eval(x, E, kRef);
  auto f = [&](double t) { return model::psi_dagger_eval(t, E, kRef).value.real(); };
  CHECK(e.dx.real() ==
        Catch::Approx(num::derivative(f, x, 1, {1e-13, 1e-11, 100}, 0.02))
            .epsilon(1e-8));
}

TEST_CASE("solution handles") {
  model::SolutionHandle h{kRef, -1.0, model::SolutionKind::kummer};
  CHECK(h.value(3.0) == Catch::Approx(model::psi(3.0, -1.0, kRef)));
  CHECK(h.deriv(3.0) == Catch::Approx(model::psi_dx(3.0, -1.0, kRef)));
}
