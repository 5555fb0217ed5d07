#pragma once
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "lwqm/errors.hpp"
#include "lwqm/model.hpp"
#include "lwqm/spectrum.hpp"

// Darboux / SUSY transformations built from bound states of the singular
// Lambert-W potential. Wronskians of up to three seed functions are
// evaluated with second derivatives reduced through the Schroedinger
// equation, so only values and first derivatives are ever needed.

namespace lwqm::susy {

using spectrum::BoundState;

struct SeedFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  double lambda = 0.0;   // factorization energy: f'' = (V - lambda) f + g
  int chain_prev = -1;   // >= 0 marks a Jordan-chain member: g = -f_prev
};

struct WronskianStack {
  model::ModelParams params;
  std::vector<SeedFunction> entries;
};

inline SeedFunction seed_from_state(const BoundState& s) {
  return {[s](double x) { return s.psi(x); },
          [s](double x) { return s.psi_dx(x); },
          s.energy, -1};
}

namespace detail {

inline double second_deriv(const WronskianStack& st, int i, double x) {
  const auto& e = st.entries[i];
  double out = (model::potential_v(x, st.params) - e.lambda) * e.f(x);
  if (e.chain_prev >= 0) out -= st.entries[e.chain_prev].f(x);
  return out;
}

} // namespace detail

inline double wronskian(const WronskianStack& st, double x) {
  const auto& en = st.entries;
  switch (en.size()) {
    case 1:
      return en[0].f(x);
    case 2:
      return en[0].f(x) * en[1].df(x) - en[0].df(x) * en[1].f(x);
    case 3: {
      const double f0 = en[0].f(x), f1 = en[1].f(x), f2 = en[2].f(x);
      const double d0 = en[0].df(x), d1 = en[1].df(x), d2 = en[2].df(x);
      const double s0 = detail::second_deriv(st, 0, x);
      const double s1 = detail::second_deriv(st, 1, x);
      const double s2 = detail::second_deriv(st, 2, x);
      return f0 * (d1 * s2 - d2 * s1) - f1 * (d0 * s2 - d2 * s0) +
             f2 * (d0 * s1 - d1 * s0);
    }
    default:
      throw IndexError("wronskian: supported orders are 1..3");
  }
}

//! First-order transform with the ground state: phi_n = psi_n' - (u'/u) psi_n.
inline std::function<double(double)> susy_order1(const BoundState& target,
                                                 const BoundState& ground) {
  if (target.index == ground.index)
    throw VanishingTransform("susy_order1: transforming the seed state");
  return [target, ground](double x) {
    const double u = ground.psi(x);
    if (u == 0.0) throw PoleInDomain("susy_order1: seed node at x");
    return target.psi_dx(x) - (ground.psi_dx(x) / u) * target.psi(x);
  };
}

//! Second-order transform with two bound states u1, u2 (distinct energies):
//! phi_n = W(u1, u2, psi_n) / W(u1, u2).
inline std::function<double(double)> susy_order2(const BoundState& target,
                                                 const BoundState& u1,
                                                 const BoundState& u2) {
  if (target.index == u1.index || target.index == u2.index)
    throw VanishingTransform("susy_order2: transforming a seed state");
  if (u1.index == u2.index)
    throw SingularData("susy_order2: repeated seed state");
  WronskianStack top{u1.params(),
                     {seed_from_state(u1), seed_from_state(u2),
                      seed_from_state(target)}};
  WronskianStack bot{u1.params(), {seed_from_state(u1), seed_from_state(u2)}};
  return [top, bot](double x) {
    const double den = wronskian(bot, x);
    if (den == 0.0) throw PoleInDomain("susy_order2: Wronskian zero at x");
    return wronskian(top, x) / den;
  };
}

//! Jordan chain (u1, u2) for the confluent transform anchored at one bound
//! state: u1 = psi_k and u2 solves u2'' = (V - E_k) u2 - u1. Taking bare
//! d psi / dE for u2 makes W(u1, u2) vanish at infinity, which silently
//! removes E_k (the image of the chain state fails to be normalizable). A
//! homogeneous admixture of the second solution shifts the Wronskian by a
//! positive constant and keeps the transform isospectral.
struct ChainPair {
  BoundState state;
  double gamma = 0.0;   // coefficient of the second-solution admixture
  SeedFunction u1() const { return seed_from_state(state); }
  SeedFunction u2() const {
    const BoundState s = state;
    const double g = gamma;
    return {[s, g](double x) {
              return model::psi_eval(x, s.energy, s.params()).dE +
                     g * model::psi_dagger_eval(x, s.energy, s.params())
                             .value.real();
            },
            [s, g](double x) {
              return model::psi_eval(x, s.energy, s.params()).dE_dx +
                     g * model::psi_dagger_eval(x, s.energy, s.params())
                             .dx.real();
            },
            s.energy, 0};
  }
};

inline ChainPair confluent_chain(const BoundState& s) {
  const model::ModelParams& p = s.params();
  const double xr = p.left() + p.sigma;
  const auto a = model::psi_eval(xr, s.energy, p);
  const auto b = model::psi_dagger_eval(xr, s.energy, p);
  const double wconst = a.value * b.dx.real() - a.dx * b.value.real();
  if (!(std::abs(wconst) > 1e-300))
    throw SingularData("confluent_chain: degenerate second solution");
  // W(u1, psi_E) at the anchor sets the scale of the constant offset;
  // gamma * wconst must be positive so the shifted Wronskian is nodeless.
  const double wraw = a.value * a.dE_dx - a.dx * a.dE;
  const double scale = std::abs(wraw) > 0.0 ? std::abs(wraw) : 1.0;
  return ChainPair{s, scale / wconst};
}

//! Confluent second-order transform. Transforming the chain's own state is
//! degenerate unless explicitly allowed (the quotient still has a finite,
//! nontrivial limit realized here by direct evaluation).
inline std::function<double(double)> susy_confluent(const BoundState& target,
                                                    const ChainPair& chain,
                                                    bool allow_seed = false) {
  if (target.index == chain.state.index) {
    if (!allow_seed)
      throw VanishingTransform("susy_confluent: transforming the chain state");
    // W(u1, u2, u1) vanishes identically; the image of the chain state is
    // the standard missing-state solution u1 / W(u1, u2) instead.
    WronskianStack bot{chain.state.params(), {chain.u1(), chain.u2()}};
    const BoundState seed = chain.state;
    return [seed, bot](double x) {
      const double den = wronskian(bot, x);
      if (den == 0.0)
        throw PoleInDomain("susy_confluent: Wronskian zero at x");
      return seed.psi(x) / den;
    };
  }
  WronskianStack top{chain.state.params(),
                     {chain.u1(), chain.u2(), seed_from_state(target)}};
  WronskianStack bot{chain.state.params(), {chain.u1(), chain.u2()}};
  return [top, bot](double x) {
    const double den = wronskian(bot, x);
    if (den == 0.0) throw PoleInDomain("susy_confluent: Wronskian zero at x");
    return wronskian(top, x) / den;
  };
}

enum class Mode { order1, order2, confluent };

struct SusySpec {
  Mode mode;
  std::vector<BoundState> seeds;   // order1: {u}; order2: {u1, u2}
  // confluent: seeds = {chain state}
};

//! Partner potential V2 = V1 - 2 (log W)''. Closed forms per mode avoid
//! numerical differentiation entirely:
//!   order1:    (log u)''  = (V - E0) - (u'/u)^2
//!   order2:    W' = (E1 - E2) u1 u2,  W'' = (E1 - E2)(u1' u2 + u1 u2')
//!   confluent: W' = -u1^2,            W'' = -2 u1 u1'
inline double transformed_potential(const SusySpec& spec, double x) {
  const auto& s = spec.seeds;
  if (s.empty()) throw IndexError("transformed_potential: no seeds");
  const model::ModelParams& p = s[0].params();
  const double v1 = model::potential_v(x, p);
  switch (spec.mode) {
    case Mode::order1: {
      const double u = s[0].psi(x);
      if (u == 0.0) throw PoleInDomain("transformed_potential: node at x");
      const double r = s[0].psi_dx(x) / u;
      return v1 - 2.0 * ((v1 - s[0].energy) - r * r);
    }
    case Mode::order2: {
      if (s.size() != 2) throw IndexError("order2 needs two seeds");
      WronskianStack bot{p, {seed_from_state(s[0]), seed_from_state(s[1])}};
      const double w = wronskian(bot, x);
      if (w == 0.0) throw PoleInDomain("transformed_potential: W = 0 at x");
      const double de = s[0].energy - s[1].energy;
      const double wp = de * s[0].psi(x) * s[1].psi(x);
      const double wpp =
          de * (s[0].psi_dx(x) * s[1].psi(x) + s[0].psi(x) * s[1].psi_dx(x));
      return v1 - 2.0 * (wpp / w - (wp / w) * (wp / w));
    }
    case Mode::confluent: {
      ChainPair ch = confluent_chain(s[0]);
      WronskianStack bot{p, {ch.u1(), ch.u2()}};
      const double w = wronskian(bot, x);
      if (w == 0.0) throw PoleInDomain("transformed_potential: W = 0 at x");
      const double u1 = s[0].psi(x);
      const double wp = -u1 * u1;
      const double wpp = -2.0 * u1 * s[0].psi_dx(x);
      return v1 - 2.0 * (wpp / w - (wp / w) * (wp / w));
    }
  }
  throw IndexError("transformed_potential: bad mode");
}

} // namespace lwqm::susy
