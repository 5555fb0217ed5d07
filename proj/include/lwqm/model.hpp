#pragma once
#include <cmath>
#include <complex>

#include "lwqm/errors.hpp"
#include "lwqm/specialfn.hpp"

// The singular Lambert-W Schroedinger model: potential, derived parameters
// (a,c,s), the two independent solutions psi and psi^dagger, and their x- and
// E-derivatives. Domain is the open interval (sigma+x0, inf); energies E < 0.
//
// Convention: the bound-state solution carries the prefactor
// exp(s W / 2) |W|^{c/2} (real by convention; the constant phase of W^{c/2}
// for W < 0 is dropped, as is every overall constant).

namespace lwqm::model {

using sf::cplx;

struct ModelParams {
  double sigma, x0, v0;

  double left() const { return sigma + x0; }
  void validate() const {
    if (!(sigma > 0) || !(v0 > 0))
      throw DomainError("ModelParams: sigma > 0 and v0 > 0 required");
  }
};

struct HypParams {
  double a, c, s;
};

//! a, c, s for the bound-state sector E < 0.
inline HypParams hyp_params(double E, const ModelParams& p) {
  p.validate();
  if (!(E < 0)) throw DomainError("hyp_params: E < 0 required in real mode");
  const double k = std::sqrt(-E), q = std::sqrt(p.v0 - E);
  const double d = k - q;
  return {-d * d * p.sigma / (2.0 * q), 2.0 * k * p.sigma, 2.0 * q * p.sigma};
}

//! d(a,c,s)/dE.
inline HypParams hyp_params_dE(double E, const ModelParams& p) {
  const double k = std::sqrt(-E), q = std::sqrt(p.v0 - E);
  const double dk = -0.5 / k, dq = -0.5 / q;
  const double d = k - q;
  const double da = -p.sigma * (d * (dk - dq) / q - d * d * dq / (2.0 * q * q));
  return {da, 2.0 * p.sigma * dk, 2.0 * p.sigma * dq};
}

//! Lambert-W value W0(-exp((x0-x)/sigma)) at a domain point.
inline double lambert_at(double x, const ModelParams& p) {
  if (!(x > p.left())) throw DomainError("model: x must exceed sigma + x0");
  if (x - p.left() < 1e-8 * p.sigma)
    throw NearSingularity("model: x within 1e-8*sigma of the left endpoint");
  const double arg = (p.x0 - x) / p.sigma;
  if (arg < -700.0) return 0.0;   // underflow: W of -0
  return sf::lambert_w0(-std::exp(arg));
}

//! dW/dx = -W / (sigma (1+W)), positive on the domain.
inline double lambert_dx(double W, const ModelParams& p) {
  return -W / (p.sigma * (1.0 + W));
}

//! Singular Lambert-W potential V(x) = V0 - V0/(1+W).
inline double potential_v(double x, const ModelParams& p) {
  p.validate();
  const double W = lambert_at(x, p);
  return p.v0 - p.v0 / (1.0 + W);
}

//! Analytic V'(x) = -V0 W / (sigma (1+W)^3).
inline double potential_v_dx(double x, const ModelParams& p) {
  const double W = lambert_at(x, p);
  const double wp1 = 1.0 + W;
  return -p.v0 * W / (p.sigma * wp1 * wp1 * wp1);
}

//! psi and its x-, E-, and mixed derivatives at one point.
struct PsiEval {
  double value = 0;
  double dx = 0;      // d psi / dx
  double dE = 0;      // d psi / dE at fixed x
  double dE_dx = 0;   // d^2 psi / dE dx
};

namespace detail {

inline double m1f1(double a, double c, double z) {
  return sf::kummer_1f1({{a, 0.0}, {c, 0.0}, {z, 0.0}}).real();
}
inline double m1f1_dp(double a, double c, double z, sf::Param which) {
  return sf::kummer_dparam({{a, 0.0}, {c, 0.0}, {z, 0.0}}, which).real();
}

} // namespace detail

//! Full evaluation of the Kummer-branch solution. `level` controls how much
//! is computed: 0 value, 1 +dx, 2 +dE, 3 +mixed.
inline PsiEval psi_eval(double x, double E, const ModelParams& p, int level = 3) {
  const auto [a, c, s] = hyp_params(E, p);
  const double W = lambert_at(x, p);
  PsiEval out;
  if (W == 0.0) return out;   // exponential underflow far field

  const double zeta = -s * W;   // > 0
  const double P = std::exp(0.5 * s * W) * std::pow(-W, 0.5 * c);
  if (P == 0.0) return out;
  const double A = 0.5 * (c - s), B = a * s / c;
  const double M1 = detail::m1f1(a, c, zeta);
  const double M2 = detail::m1f1(a + 1, c + 1, zeta);
  const double g = A * M1 + B * M2;
  out.value = P * g;
  if (level < 1) return out;

  const double Wx = lambert_dx(W, p);
  const double M3 = detail::m1f1(a + 2, c + 2, zeta);
  const double Q = 0.5 * s + 0.5 * c / W;
  const double R = A * (a / c) * M2 + B * ((a + 1) / (c + 1)) * M3;  // dg/dzeta
  out.dx = P * (Q * g - s * R) * Wx;
  if (level < 2) return out;

  const auto [ad, cd, sd] = hyp_params_dE(E, p);
  const double zeta_d = -sd * W;
  const double Pd = P * (0.5 * W * sd + 0.5 * std::log(-W) * cd);
  const double Ad = 0.5 * (cd - sd);
  const double Bd = (ad * s + a * sd) / c - a * s * cd / (c * c);
  const double M1a = detail::m1f1_dp(a, c, zeta, sf::Param::first);
  const double M1c = detail::m1f1_dp(a, c, zeta, sf::Param::second);
  const double M2a = detail::m1f1_dp(a + 1, c + 1, zeta, sf::Param::first);
  const double M2c = detail::m1f1_dp(a + 1, c + 1, zeta, sf::Param::second);
  const double M1d = M1a * ad + M1c * cd + (a / c) * M2 * zeta_d;
  const double M2d = M2a * ad + M2c * cd + ((a + 1) / (c + 1)) * M3 * zeta_d;
  const double gd = Ad * M1 + A * M1d + Bd * M2 + B * M2d;
  out.dE = Pd * g + P * gd;
  if (level < 3) return out;

  const double M4 = detail::m1f1(a + 3, c + 3, zeta);
  const double M3a = detail::m1f1_dp(a + 2, c + 2, zeta, sf::Param::first);
  const double M3c = detail::m1f1_dp(a + 2, c + 2, zeta, sf::Param::second);
  const double M3d = M3a * ad + M3c * cd + ((a + 2) / (c + 2)) * M4 * zeta_d;
  const double Qd = 0.5 * sd + 0.5 * cd / W;
  const double Rd = Ad * (a / c) * M2 + A * ((ad * c - a * cd) / (c * c)) * M2 +
                    A * (a / c) * M2d + Bd * ((a + 1) / (c + 1)) * M3 +
                    B * ((ad * (c + 1) - (a + 1) * cd) / ((c + 1) * (c + 1))) * M3 +
                    B * ((a + 1) / (c + 1)) * M3d;
  out.dE_dx = Wx * (Pd * (Q * g - s * R) +
                    P * (Qd * g + Q * gd - sd * R - s * Rd));
  return out;
}

inline double psi(double x, double E, const ModelParams& p) {
  return psi_eval(x, E, p, 0).value;
}
inline double psi_dx(double x, double E, const ModelParams& p) {
  return psi_eval(x, E, p, 1).dx;
}
inline double psi_dE(double x, double E, const ModelParams& p) {
  return psi_eval(x, E, p, 2).dE;
}

//! Tricomi-branch second solution psi^dagger and its x-derivative.
struct PsiDaggerEval {
  cplx value{}, dx{};
};

inline PsiDaggerEval psi_dagger_eval(double x, double E, const ModelParams& p) {
  const auto [a, c, s] = hyp_params(E, p);
  const double W = lambert_at(x, p);
  PsiDaggerEval out;
  if (W == 0.0) {
    // U(a,c,z) ~ z^{-a} as z -> 0+ through the far field; the product with the
    // vanishing prefactor is not representable, treat as out-of-range
    throw DomainError("psi_dagger: argument underflow at large x");
  }
  const double zeta = -s * W;
  const double P = std::exp(0.5 * s * W) * std::pow(-W, 0.5 * c);
  const double A = 0.5 * (c - s);
  const cplx U1 = sf::tricomi_u({{a, 0.0}, {c, 0.0}, {zeta, 0.0}});
  const cplx U2 = sf::tricomi_u({{a + 1, 0.0}, {c + 1, 0.0}, {zeta, 0.0}});
  const cplx g = A * U1 - a * s * U2;
  out.value = P * g;
  const cplx U3 = sf::tricomi_u({{a + 2, 0.0}, {c + 2, 0.0}, {zeta, 0.0}});
  const cplx dg_dzeta = -a * A * U2 + a * s * (a + 1) * U3;
  const double Wx = lambert_dx(W, p);
  const double Q = 0.5 * s + 0.5 * c / W;
  out.dx = P * (Q * g - s * dg_dzeta) * Wx;
  return out;
}

inline cplx psi_dagger(double x, double E, const ModelParams& p) {
  return psi_dagger_eval(x, E, p).value;
}

enum class SolutionKind { kummer, tricomi };

//! Immutable handle packaging (params, E, branch) with evaluators.
struct SolutionHandle {
  ModelParams params;
  double energy;
  SolutionKind kind = SolutionKind::kummer;

  double value(double x) const {
    if (kind == SolutionKind::kummer) return psi(x, energy, params);
    return psi_dagger(x, energy, params).real();
  }
  double deriv(double x) const {
    if (kind == SolutionKind::kummer) return psi_dx(x, energy, params);
    return psi_dagger_eval(x, energy, params).dx.real();
  }
};

} // namespace lwqm::model
