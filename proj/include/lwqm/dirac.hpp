#pragma once
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "lwqm/errors.hpp"
#include "lwqm/model.hpp"
#include "lwqm/numerics.hpp"
#include "lwqm/spectrum.hpp"

// 2D massless Dirac fermions over the singular Lambert-W profile: the
// scalar-potential solution at generic (E, k_y) and the matrix-potential
// zero-mode construction tied to the bound spectrum.

namespace lwqm::dirac {

using cplx = std::complex<double>;
using spectrum::BoundState;

struct DiracScalarParams {
  model::ModelParams model;
  double energy;
  double k_y;
  cplx c1{1.0, 0.0};
  cplx c2{0.0, 0.0};
};

struct DiracAbbrevs {
  cplx K0, K1;      // asymptotic momenta under and outside the step
  cplx alpha;       // hypergeometric parameter
  cplx gamma_c;     // hypergeometric parameter c
  cplx delta;
  cplx s0;
};

inline DiracAbbrevs dirac_abbrevs(const DiracScalarParams& d) {
  const double v0 = d.model.v0, sg = d.model.sigma;
  const cplx K0 = std::sqrt(cplx(d.k_y * d.k_y -
                                 (d.energy - v0) * (d.energy - v0)));
  const cplx K1 = std::sqrt(cplx(d.k_y * d.k_y - d.energy * d.energy));
  if (std::abs(K0) < 1e-12)
    throw DegenerateK0("dirac_abbrevs: K0 = 0");
  const cplx sum = K0 + K1;
  const cplx alpha = (sg / (2.0 * K0)) * (sum * sum + v0 * v0);
  const cplx gamma_c = 2.0 * sg * K1;
  const cplx delta = 2.0 * sg * (K1 + cplx(0.0, v0));
  const cplx s0 = 2.0 * sg * K0;
  return {K0, K1, alpha, gamma_c, delta, s0};
}

namespace detail {

struct Psi1Pair { cplx value, dx; };

//! Upper component and its x-derivative. The closed form is stated for the
//! complex-conjugate convention of the first-order system used here, so the
//! literal expression is evaluated with conjugated coefficients and the
//! result conjugated back.
inline Psi1Pair psi1_pair(double x, const DiracScalarParams& d) {
  const DiracAbbrevs ab = dirac_abbrevs(d);
  const double W = model::lambert_at(x, d.model);
  const double Wx = model::lambert_dx(W, d.model);
  const cplx z(W, 0.0);
  const cplx a = ab.alpha, c = ab.gamma_c, s0 = ab.s0, dl = ab.delta;
  const cplx cc1 = std::conj(d.c1), cc2 = std::conj(d.c2);
  const cplx zeta = s0 * z;
  const cplx M1 = sf::kummer_1f1({a, c, zeta});
  const cplx M2 = sf::kummer_1f1({a + 1.0, c + 1.0, zeta});
  const cplx M3 = sf::kummer_1f1({a + 2.0, c + 2.0, zeta});
  const cplx U1 = sf::tricomi_u({a, c, zeta});
  const cplx U2 = sf::tricomi_u({a + 1.0, c + 1.0, zeta});
  const cplx U3 = sf::tricomi_u({a + 2.0, c + 2.0, zeta});
  const cplx head = -(dl + s0) / 2.0;
  const cplx inner = head * (cc1 * M1 + cc2 * U1) +
                     cc1 * s0 * (a / c) * M2 - cc2 * s0 * a * U2;
  const cplx d_inner =
      head * (cc1 * s0 * (a / c) * M2 - cc2 * a * s0 * U2) +
      cc1 * s0 * s0 * (a / c) * ((a + 1.0) / (c + 1.0)) * M3 +
      cc2 * s0 * s0 * a * (a + 1.0) * U3;
  const cplx pref = std::pow(z, c / 2.0) * std::exp(-s0 * z / 2.0);
  const cplx d_pref = pref * (c / (2.0 * z) - s0 / 2.0);
  const cplx lit = pref * inner;
  const cplx lit_dx = (d_pref * inner + pref * d_inner) * Wx;
  return {std::conj(lit), std::conj(lit_dx)};
}

} // namespace detail

inline cplx scalar_psi1(double x, const DiracScalarParams& d) {
  return detail::psi1_pair(x, d).value;
}

inline cplx scalar_psi1_dx(double x, const DiracScalarParams& d) {
  return detail::psi1_pair(x, d).dx;
}

struct Spinor { cplx psi1, psi2; };

//! Both spinor components (the plane-wave factor stripped); the lower one
//! follows from the first-order system once the upper one is known.
inline Spinor scalar_spinor_components(double x, const DiracScalarParams& d) {
  if (std::abs(d.k_y) < 1e-14)
    throw ZeroKy("scalar_spinor_components: k_y = 0");
  const detail::Psi1Pair p1 = detail::psi1_pair(x, d);
  const double v = model::potential_v(x, d.model);
  const cplx psi2 =
      (p1.dx + cplx(0.0, 1.0) * (v - d.energy) * p1.value) / d.k_y;
  return {p1.value, psi2};
}

struct SpinorField { cplx upper, lower; };

//! Full spinor at (x, y), components e^{i k_y y}(Psi1 +- Psi2).
inline SpinorField scalar_spinor(double x, double y,
                                 const DiracScalarParams& d) {
  const Spinor s = scalar_spinor_components(x, d);
  const cplx phase = std::exp(cplx(0.0, d.k_y * y));
  return {phase * (s.psi1 + s.psi2), phase * (s.psi1 - s.psi2)};
}

// ---- matrix potential sector -------------------------------------------

struct DiracMatrixPotential {
  model::ModelParams model;
  double k_y;
  std::function<cplx(double)> v21, v22, v22_dx;

  cplx v22_at(double x) const {
    const cplx v = v22(x);
    if (std::abs(v) < 1e-14) throw ZeroV22("matrix potential: V22 = 0");
    return v;
  }
  cplx v11(double x) const {
    return -model::potential_v(x, model) / v22_at(x);
  }
  cplx v12(double x) const {
    return v21(x) - cplx(0.0, 1.0) * v22_dx(x) / v22_at(x);
  }
};

inline DiracMatrixPotential paper_matrix_potential(
    const model::ModelParams& p, double k_y) {
  return {p, k_y,
          [](double x) { return cplx(0.0, 1.0 / x); },
          [](double) { return cplx(1.0, 0.0); },
          [](double) { return cplx(0.0, 0.0); }};
}

namespace detail {

//! log-derivative of the dressing prefactor:
//! pref' / pref = -(i V12 + i V21 - V22'/V22) / 2.
inline cplx pref_logderiv(const DiracMatrixPotential& mp, double x) {
  const cplx i(0.0, 1.0);
  return -0.5 * (i * mp.v12(x) + i * mp.v21(x) - mp.v22_dx(x) / mp.v22_at(x));
}

inline cplx pref_at(const DiracMatrixPotential& mp, double x, double x_ref,
                    const num::Tolerance& tol = {1e-13, 1e-11, 200}) {
  auto re = [&](double t) { return pref_logderiv(mp, t).real(); };
  auto im = [&](double t) { return pref_logderiv(mp, t).imag(); };
  const double lo = std::min(x_ref, x), hi = std::max(x_ref, x);
  cplx logp(num::quad_finite(re, lo, hi, tol),
            num::quad_finite(im, lo, hi, tol));
  if (x < x_ref) logp = -logp;
  return std::exp(logp);
}

} // namespace detail

//! Zero-energy spinor of the matrix problem at k_y with k_y^2 = -E_n:
//! Psi1 = pref * psi_n, Psi2 from the second row of the system. The
//! prefactor is anchored to 1 at x_ref = left + 1.
inline Spinor matrix_zero_energy_spinor(double x,
                                        const DiracMatrixPotential& mp,
                                        const BoundState& state) {
  if (std::abs(state.energy + mp.k_y * mp.k_y) >
      1e-6 * std::max(1.0, std::abs(state.energy)))
    throw EnergyMismatch("matrix_zero_energy_spinor: k_y^2 != -E_n");
  const double x_ref = mp.model.left() + 1.0;
  const double psv = state.psi(x);
  const double psd = state.psi_dx(x);
  if (psv == 0.0 && psd == 0.0) return {cplx(0.0), cplx(0.0)};  // far field
  const cplx pref = detail::pref_at(mp, x, x_ref);
  const cplx psi1 = pref * psv;
  const cplx psi1_dx = pref * detail::pref_logderiv(mp, x) * psv + pref * psd;
  const cplx i(0.0, 1.0);
  const cplx v22 = mp.v22_at(x);
  const cplx psi2 =
      (i / v22) * psi1_dx - ((i * mp.k_y + mp.v21(x)) / v22) * psi1;
  return {psi1, psi2};
}

//! |Psi1|^2 + |Psi2|^2, normalized to unit integral over (left, inf).
struct DensityProfile {
  std::vector<double> x;
  std::vector<double> rho;
};

inline DensityProfile probability_density(const DiracMatrixPotential& mp,
                                          const BoundState& state,
                                          double x_lo, double x_hi, int n) {
  auto raw = [&](double x) {
    if (x - mp.model.left() < 2e-8 * mp.model.sigma) return 0.0;
    const Spinor s = matrix_zero_energy_spinor(x, mp, state);
    return std::norm(s.psi1) + std::norm(s.psi2);
  };
  // the density vanishes like (x - left)^4, so starting a bit inside the
  // domain costs nothing at the accuracy of interest
  // relative-driven tolerance: the unnormalized norm can be very small
  const double norm = num::quad_semi_infinite(
      raw, mp.model.left() + 1e-3 * mp.model.sigma, {1e-300, 1e-9, 200});
  if (!(norm > 0)) throw SingularData("probability_density: zero norm");
  DensityProfile out;
  for (int i = 0; i < n; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / (n - 1);
    out.x.push_back(x);
    out.rho.push_back(raw(x) / norm);
  }
  return out;
}

} // namespace lwqm::dirac
