#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "lwqm/errors.hpp"

// Generic numerical kernels: bracketed root refinement (Brent), adaptive
// Gauss-Kronrod quadrature on finite and semi-infinite intervals, and
// Ridders-style central-difference differentiation.

namespace lwqm::num {

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_iter = 200;

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0) || max_iter < 1)
      throw DomainError("Tolerance: abs_tol > 0, rel_tol > 0, max_iter >= 1 required");
  }
};

struct Bracket {
  double lo, hi;
  double f_lo, f_hi;
};

namespace detail {
inline double abs_norm(double v) { return std::abs(v); }
inline double abs_norm(const std::complex<double>& v) { return std::abs(v); }
} // namespace detail

//! Brent root refinement: inverse-quadratic interpolation safeguarded by
//! bisection. The result never leaves the initial bracket.
template <class F>
double find_root(F&& f, Bracket br, const Tolerance& tol = {}) {
  tol.validate();
  double a = br.lo, b = br.hi, fa = br.f_lo, fb = br.f_hi;
  if (!(a < b)) throw InvalidBracket("find_root: lo < hi required");
  if ((fa > 0) == (fb > 0) && fa != 0 && fb != 0)
    throw InvalidBracket("find_root: f(lo) and f(hi) must differ in sign");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    if ((fb > 0) == (fc > 0)) { c = a; fc = fa; d = e = b - a; }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                        0.5 * (tol.rel_tol * std::abs(b) + tol.abs_tol);
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol.abs_tol) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {           // secant
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {                // inverse quadratic
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = xm; e = d;
      }
    } else {
      d = xm; e = d;
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw NoConvergence("find_root: max_iter exceeded");
}

//! Makes a Bracket by evaluating f at the ends.
template <class F>
Bracket bracket_of(F&& f, double lo, double hi) {
  return Bracket{lo, hi, f(lo), f(hi)};
}

namespace detail {

// Gauss-Kronrod 15-7 nodes/weights (QUADPACK dqk15).
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class T> struct Panel {
  double a, b;
  T value{};
  double error = 0;
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double hl = 0.5 * (b - a);
  const double ctr = 0.5 * (a + b);
  T fc = f(ctr);
  T res_g = wg[3] * fc;
  T res_k = wgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * xgk[j];
    T f1 = f(ctr - dx), f2 = f(ctr + dx);
    res_k += wgk[j] * (f1 + f2);
    if (j % 2 == 1) res_g += wg[j / 2] * (f1 + f2);
  }
  Panel<T> p{a, b};
  p.value = res_k * hl;
  p.error = abs_norm((res_k - res_g) * hl);
  return p;
}

template <class T, class F>
T adaptive(F& f, double a, double b, const Tolerance& tol, bool* tail_stuck = nullptr) {
  std::vector<Panel<T>> panels;
  panels.push_back(gk15<T>(f, a, b));
  const int budget = std::max(tol.max_iter * 20, 2000);
  for (int n = 0; n < budget; ++n) {
    T total{};
    double err = 0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    if (err <= std::max(tol.abs_tol, tol.rel_tol * abs_norm(total))) return total;
    Panel<T> p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    if (m <= p.a || m >= p.b) {   // cannot split further
      if (tail_stuck) *tail_stuck = true;
      throw NoConvergence("quad: interval split exhausted machine precision");
    }
    panels[worst] = gk15<T>(f, p.a, m);
    panels.push_back(gk15<T>(f, m, p.b));
  }
  if (tail_stuck && !panels.empty()) {
    // dominant error hugging the right endpoint suggests a non-integrable tail
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error) worst = i;
    if (panels[worst].b > b - 1e-6 * (b - a)) *tail_stuck = true;
  }
  throw NoConvergence("quad: subdivision budget exhausted");
}

} // namespace detail

//! Adaptive estimate of the integral of f over [a,b]; integrable endpoint
//! singularities are handled by subdivision (no node touches the endpoints).
template <class F>
auto quad_finite(F&& f, double a, double b, const Tolerance& tol = {})
    -> decltype(f(a)) {
  tol.validate();
  using T = decltype(f(a));
  if (a == b) return T{};
  return detail::adaptive<T>(f, a, b, tol);
}

//! Integral of f over [a, inf) via the substitution t = a + u/(1-u), u in [0,1).
template <class F>
auto quad_semi_infinite(F&& f, double a, const Tolerance& tol = {})
    -> decltype(f(a)) {
  tol.validate();
  using T = decltype(f(a));
  auto g = [&](double u) -> T {
    if (u >= 1.0 - 1e-14) return T{};
    const double om = 1.0 - u;
    return f(a + u / om) / (om * om);
  };
  bool tail_stuck = false;
  try {
    return detail::adaptive<T>(g, 0.0, 1.0, tol, &tail_stuck);
  } catch (const NoConvergence&) {
    if (tail_stuck) throw DivergentTail("quad_semi_infinite: tail estimate fails to shrink");
    throw;
  }
}

//! Central-difference derivative of order 1 or 2 with Ridders-style step
//! halving and Neville extrapolation. Works for real- or complex-valued f.
template <class F>
auto derivative(F&& f, double x, int order = 1, const Tolerance& tol = {},
                double h0 = 0.0) -> decltype(f(x)) {
  tol.validate();
  using T = decltype(f(x));
  if (order != 1 && order != 2) throw DomainError("derivative: order must be 1 or 2");
  double h = (h0 > 0) ? h0 : 0.02 * std::max(1.0, std::abs(x));
  constexpr int ntab = 12;
  const double shrink = 1.6, shrink2 = shrink * shrink;
  T tab[ntab][ntab];
  T best{};
  double best_err = std::numeric_limits<double>::max();
  for (int i = 0; i < ntab; ++i) {
    if (h < std::abs(x) * 1e-13 + 1e-300)
      throw StepUnderflow("derivative: step below representable scale");
    tab[i][0] = (order == 1) ? (f(x + h) - f(x - h)) / (2.0 * h)
                             : (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    double fac = shrink2;
    for (int j = 1; j <= i; ++j) {
      tab[i][j] = (tab[i][j - 1] * fac - tab[i - 1][j - 1]) / (fac - 1.0);
      fac *= shrink2;
      const double err = std::max(detail::abs_norm(tab[i][j] - tab[i][j - 1]),
                                  detail::abs_norm(tab[i][j] - tab[i - 1][j - 1]));
      if (err <= best_err) { best_err = err; best = tab[i][j]; }
    }
    if (i > 1 &&
        detail::abs_norm(tab[i][i] - tab[i - 1][i - 1]) >= 2.0 * best_err)
      break;
    h /= shrink;
  }
  return best;
}

} // namespace lwqm::num
