#pragma once
#include <cmath>
#include <limits>
#include <vector>

#include "lwqm/errors.hpp"
#include "lwqm/model.hpp"
#include "lwqm/numerics.hpp"
#include "lwqm/spectrum.hpp"

// Wronskian integral identities. The single identity
//   int_p^x psi^2 dt = Wr(p) - Wr(x),   Wr = W(psi, dpsi/dE),
// holds at any energy; the double identity additionally involves the second
// solution v built from the Tricomi companion.

namespace lwqm::integrals {

//! W(psi, dpsi/dE)(x) from one evaluation of psi and its derivatives.
inline double wronskian_psi_psiE(double x, double E,
                                 const model::ModelParams& p) {
  const model::PsiEval e = model::psi_eval(x, E, p);
  return e.value * e.dE_dx - e.dx * e.dE;
}

namespace detail {

//! Limit of Wr toward the singular left endpoint. Approaches along a
//! geometric sequence of offsets; the defect shrinks like the cube of the
//! offset, so plain convergence of the sequence is enough.
inline double wron_limit_left(double E, const model::ModelParams& p) {
  const double left = p.left();
  double delta = 1e-3 * p.sigma;
  double prev = wronskian_psi_psiE(left + delta, E, p);
  for (int k = 0; k < 40; ++k) {
    delta *= 0.3;
    if (delta < 2e-8 * p.sigma) return prev;
    const double cur = wronskian_psi_psiE(left + delta, E, p);
    if (std::abs(cur - prev) <= 1e-12 * std::max(1.0, std::abs(cur)))
      return cur;
    prev = cur;
  }
  throw NoConvergence("wron_limit_left");
}

//! Limit of Wr as x -> inf (exponential approach for bound-state energies).
inline double wron_limit_right(double E, const model::ModelParams& p) {
  double x = p.left() + 4.0 * p.sigma;
  double prev = wronskian_psi_psiE(x, E, p);
  for (int k = 0; k < 120; ++k) {
    x += 1.5 * p.sigma;
    const double cur = wronskian_psi_psiE(x, E, p);
    if (std::abs(cur - prev) <= 1e-12 * std::max(1.0, std::abs(cur)))
      return cur;
    prev = cur;
  }
  throw NoConvergence("wron_limit_right");
}

inline double psi2_guarded(double x, double E, const model::ModelParams& p) {
  if (x - p.left() < 2e-8 * p.sigma) return 0.0;
  const double v = model::psi(x, E, p);
  return v * v;
}

} // namespace detail

//! int_p^x psi^2, by quadrature. p at (or below) the left endpoint means the
//! endpoint limit; x = inf means the semi-infinite tail.
inline double single_integral_lhs(double E, const model::ModelParams& p,
                                  double lo, double hi,
                                  const num::Tolerance& tol = {1e-16, 1e-10, 200}) {
  const double left = p.left();
  const double a = std::max(lo, left);
  auto f = [&](double x) { return detail::psi2_guarded(x, E, p); };
  if (std::isinf(hi)) return num::quad_semi_infinite(f, a, tol);
  return num::quad_finite(f, a, hi, tol);
}

//! Wr(p) - Wr(x), with the endpoint conventions of single_integral_lhs.
inline double single_integral_rhs(double E, const model::ModelParams& p,
                                  double lo, double hi) {
  const double wl = (lo <= p.left()) ? detail::wron_limit_left(E, p)
                                     : wronskian_psi_psiE(lo, E, p);
  const double wr = std::isinf(hi) ? detail::wron_limit_right(E, p)
                                   : wronskian_psi_psiE(hi, E, p);
  return wl - wr;
}

//! The second, linearly independent solution v with W(psi, v) = 1,
//! realized through the Tricomi companion divided by its (constant)
//! Wronskian against psi.
struct SecondSolution {
  model::ModelParams params;
  double energy;
  double wron_const;
  double value(double x) const {
    return model::psi_dagger_eval(x, energy, params).value.real() / wron_const;
  }
  double dx(double x) const {
    return model::psi_dagger_eval(x, energy, params).dx.real() / wron_const;
  }
};

inline SecondSolution second_solution_v(double E, const model::ModelParams& p) {
  const double xr = p.left() + p.sigma;
  const model::PsiEval a = model::psi_eval(xr, E, p);
  const model::PsiDaggerEval b = model::psi_dagger_eval(xr, E, p);
  const double w = a.value * b.dx.real() - a.dx * b.value.real();
  if (!(std::abs(w) > 1e-300))
    throw SingularData("second_solution_v: vanishing Wronskian");
  return {p, E, w};
}

namespace detail {

inline void require_nodeless(double E, const model::ModelParams& p, double lo,
                             double hi) {
  double prev = model::psi(lo, E, p);
  for (int i = 1; i <= 500; ++i) {
    const double x = lo + (hi - lo) * i / 500.0;
    const double cur = model::psi(x, E, p);
    if (prev * cur < 0.0)
      throw NodeInInterval("double integral: psi changes sign in interval");
    if (cur != 0.0) prev = cur;
  }
}

} // namespace detail

//! int_p^x dt psi(t)^-2 int_p^t psi^2; interval must avoid nodes of psi.
inline double double_integral_lhs(double E, const model::ModelParams& p,
                                  double lo, double hi,
                                  const num::Tolerance& tol = {1e-14, 1e-9, 200}) {
  detail::require_nodeless(E, p, lo, hi);
  const num::Tolerance inner_tol{tol.abs_tol * 1e-2, tol.rel_tol * 1e-2,
                                 tol.max_iter};
  auto outer = [&](double t) {
    const double ps = model::psi(t, E, p);
    const double inner = num::quad_finite(
        [&](double u) { return detail::psi2_guarded(u, E, p); }, lo, t,
        inner_tol);
    return inner / (ps * ps);
  };
  return num::quad_finite(outer, lo, hi, tol);
}

//! Closed form of the double integral in terms of psi, dpsi/dE, and v.
inline double double_integral_rhs(double E, const model::ModelParams& p,
                                  double lo, double hi) {
  detail::require_nodeless(E, p, lo, hi);
  const SecondSolution v = second_solution_v(E, p);
  const model::PsiEval a = model::psi_eval(lo, E, p);
  const model::PsiEval b = model::psi_eval(hi, E, p);
  const double wr_lo = a.value * a.dE_dx - a.dx * a.dE;
  return a.dE / a.value - b.dE / b.value +
         wr_lo * (v.value(hi) / b.value - v.value(lo) / a.value);
}

enum class Table { single, doubled };

struct IntegralRow {
  int level;
  double energy;
  double lhs;
  double rhs;
  double abs_diff;
  double rel_diff;
};

//! Recomputes one of the two identity tables over the bound spectrum.
//! single: int_left^inf psi_n^2 against the Wronskian limits.
//! doubled: the double identity over (left+0.1, left+1).
inline std::vector<IntegralRow> verify_table(Table which,
                                             const model::ModelParams& p) {
  const spectrum::Spectrum spec = spectrum::solve_spectrum(p);
  std::vector<IntegralRow> rows;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < spec.count(); ++n) {
    const double E = spec.energies[n];
    double lhs, rhs;
    if (which == Table::single) {
      lhs = single_integral_lhs(E, p, p.left(), inf);
      rhs = single_integral_rhs(E, p, p.left(), inf);
    } else {
      lhs = double_integral_lhs(E, p, p.left() + 0.1, p.left() + 1.0);
      rhs = double_integral_rhs(E, p, p.left() + 0.1, p.left() + 1.0);
    }
    const double ad = std::abs(lhs - rhs);
    const double rd = ad / std::max(std::abs(lhs), std::abs(rhs));
    rows.push_back({static_cast<int>(n), E, lhs, rhs, ad, rd});
  }
  return rows;
}

} // namespace lwqm::integrals
