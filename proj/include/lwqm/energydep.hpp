#pragma once
#include <cmath>
#include <limits>

#include "lwqm/errors.hpp"
#include "lwqm/model.hpp"
#include "lwqm/numerics.hpp"
#include "lwqm/spectrum.hpp"

// Energy-dependent sector: the point transformation x(y), the energy map
// calE = 1/(2(E-1)^8) and its inverse, the transformed wavefunctions phi_n,
// the energy-dependent potential U(y, calE), and the modified norm
// int (1 - dU/dcalE) |phi|^2 dy.

namespace lwqm::energydep {

using spectrum::BoundState;

//! x(y) = sigma + x0 + exp(-y/(E-1)^4); strictly decreasing, maps R onto
//! (sigma+x0, inf).
inline double x_of_y(double y, double E, const model::ModelParams& p) {
  if (E == 1.0) throw DegenerateMap("x_of_y: E = 1 degenerates the map");
  const double q = (E - 1.0) * (E - 1.0);
  return p.left() + std::exp(-y / (q * q));
}

inline double energy_cal(double E) {
  if (E == 1.0) throw DegenerateMap("energy_cal: E = 1");
  const double d = E - 1.0;
  const double d4 = d * d * d * d;
  return 1.0 / (2.0 * d4 * d4);
}

inline double energy_inv(double cal_e) {
  if (!(cal_e > 0)) throw DomainError("energy_inv: calE > 0 required");
  return 1.0 - std::pow(1.0 / (2.0 * cal_e), 0.125);
}

//! U(y, calE): the closed-form energy-dependent potential. Arranged so the
//! y -> +inf limit (t -> 0) is finite.
inline double potential_u(double y, double cal_e, const model::ModelParams& p) {
  if (!(cal_e > 0)) throw DomainError("potential_u: calE > 0 required");
  const double mu = std::sqrt(2.0 * cal_e);
  const double t = std::exp(-mu * y);
  // far right W -> -1 and the quotient below goes 0/0; the limit is the
  // plateau 3/2 calE (the t^2/(1+W) piece scales like t^{3/2})
  if (t < 1e-12) return 1.5 * cal_e;
  const double W = sf::lambert_w0(-std::exp(-1.0 - t / p.sigma));
  const double c78 = 2.0 * std::pow(2.0 * cal_e, 7.0 / 8.0);
  const double c1 = -c78 + 4.0 * cal_e;
  const double c2 = c1 - 4.0 * p.v0 * cal_e;
  const double t2 = t * t;
  return (3.0 * cal_e * (1.0 + W) - t2 * (c1 + c2 * W)) / (2.0 * (1.0 + W));
}

//! phi_n(y) = |x'(y)|^{-1/2} psi_n(x(y)), real by convention.
inline double phi(double y, const BoundState& state) {
  const double E = state.energy;
  const double q = (E - 1.0) * (E - 1.0);
  const double d4 = q * q;
  const double xp_abs = std::exp(-y / d4) / d4;
  double psi_val;
  try {
    psi_val = state.psi(x_of_y(y, E, state.params()));
  } catch (const NearSingularity&) {
    return 0.0;   // x(y) hugged the left endpoint; psi vanishes there
  }
  return psi_val / std::sqrt(xp_abs);
}

//! Modified norm int_-inf^inf [1 - dU/dcalE] phi_n^2 dy. The window [-Y, Y]
//! grows until the tail contribution falls below 1e-3 of the running total
//! (the integrand decays exponentially on both sides).
inline double modified_norm(const BoundState& state,
                            const num::Tolerance& quad_tol = {1e-18, 1e-8, 200}) {
  const double cal_e = energy_cal(state.energy);
  const double mu = std::sqrt(2.0 * cal_e);
  auto integrand = [&](double y) {
    const double ph = phi(y, state);
    if (ph == 0.0) return 0.0;
    auto u_of = [&](double ce) { return potential_u(y, ce, state.params()); };
    const double du = num::derivative(u_of, cal_e, 1, {1e-14, 1e-9, 200},
                                      1e-2 * cal_e);
    return (1.0 - du) * ph * ph;
  };
  double Y = 16.0 / mu;
  double total = num::quad_finite(integrand, -Y, Y, quad_tol);
  for (int grow = 0; grow < 8; ++grow) {
    const double tail = num::quad_finite(integrand, Y, 2.0 * Y, quad_tol) +
                        num::quad_finite(integrand, -2.0 * Y, -Y, quad_tol);
    total += tail;
    if (std::abs(tail) < 1e-3 * std::abs(total)) return total;
    Y *= 2.0;
  }
  throw NoConvergence("modified_norm: tail fails to shrink");
}

} // namespace lwqm::energydep
