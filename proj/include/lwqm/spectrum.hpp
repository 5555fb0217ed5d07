#pragma once
#include <cmath>
#include <vector>

#include "lwqm/errors.hpp"
#include "lwqm/model.hpp"
#include "lwqm/numerics.hpp"

// Discrete spectrum of the boundary-value problem: roots of the transcendental
// equation 1 + (s-c) 1F1(a+1,c+1,s) / (2c 1F1(a,c,s)) = 0 on E < 0.

namespace lwqm::spectrum {

struct Spectrum {
  model::ModelParams params;
  std::vector<double> energies;   // ascending, all < 0

  std::size_t count() const { return energies.size(); }
};

struct BoundState {
  int index = 0;
  double energy = 0;
  model::SolutionHandle solution;

  const model::ModelParams& params() const { return solution.params; }
  double psi(double x) const { return model::psi(x, energy, solution.params); }
  double psi_dx(double x) const { return model::psi_dx(x, energy, solution.params); }
  double psi_dE(double x) const { return model::psi_dE(x, energy, solution.params); }
};

namespace detail {

struct TransParts {
  double value, denom;
};

inline TransParts eigenvalue_parts(double E, const model::ModelParams& p) {
  const auto [a, c, s] = model::hyp_params(E, p);
  const double den = model::detail::m1f1(a, c, s);
  const double num = model::detail::m1f1(a + 1, c + 1, s);
  return {1.0 + (s - c) * num / (2.0 * c * den), den};
}

} // namespace detail

//! Left side of the quantization condition; poles of the expression occur at
//! zeros of the denominator 1F1(a,c,s).
inline double eigenvalue_equation(double E, const model::ModelParams& p) {
  const auto parts = detail::eigenvalue_parts(E, p);
  if (std::abs(parts.denom) < 1e-300)
    throw PoleError("eigenvalue_equation: 1F1(a,c,s) vanishes");
  return parts.value;
}

//! Scans (E_floor, -eps) on a log-spaced grid, brackets sign changes that are
//! not denominator poles, and refines each with Brent.
inline Spectrum solve_spectrum(const model::ModelParams& p,
                               const num::Tolerance& search = {1e-12, 1e-12, 200},
                               int scan_points = 2000) {
  p.validate();
  Spectrum out{p, {}};
  const double floor = -4.0 * p.v0;
  const double eps = 1e-10;
  auto grid_at = [&](int i) {
    // geometric in |E| from |floor| down to eps: dense near zero
    const double t = static_cast<double>(i) / (scan_points - 1);
    return -std::abs(floor) * std::pow(eps / std::abs(floor), t);
  };
  auto fval = [&](double E) { return eigenvalue_equation(E, p); };

  double e_prev = grid_at(0);
  auto prev = detail::eigenvalue_parts(e_prev, p);
  for (int i = 1; i < scan_points; ++i) {
    const double e_cur = grid_at(i);
    const auto cur = detail::eigenvalue_parts(e_cur, p);
    const bool value_flip = std::signbit(prev.value) != std::signbit(cur.value);
    const bool pole_flip = std::signbit(prev.denom) != std::signbit(cur.denom);
    if (value_flip && !pole_flip) {
      const double root = num::find_root(
          fval, num::Bracket{e_prev, e_cur, prev.value, cur.value}, search);
      out.energies.push_back(root);
    }
    e_prev = e_cur;
    prev = cur;
  }
  return out;   // grid ascends in E, so roots are already ascending
}

inline BoundState bound_state(const Spectrum& spec, int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= spec.energies.size())
    throw IndexError("bound_state: index out of range");
  return BoundState{n, spec.energies[n],
                    model::SolutionHandle{spec.params, spec.energies[n],
                                          model::SolutionKind::kummer}};
}

} // namespace lwqm::spectrum
