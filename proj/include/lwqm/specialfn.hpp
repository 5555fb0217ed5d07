#pragma once
#include <cmath>
#include <complex>
#include <limits>

#include "lwqm/errors.hpp"

// Special functions: principal-branch Lambert-W on [-1/e, 0], complex gamma
// (Lanczos), Kummer 1F1 and Tricomi U with argument- and parameter-derivatives.

namespace lwqm::sf {

using cplx = std::complex<double>;

struct HypArgs {
  cplx a, c, z;
};

enum class Param { first, second };

//! Principal real branch W0 on [-1/e, 0]. Halley iteration seeded by the
//! branch-point series near -1/e and w ~ z(1-z) near 0.
inline double lambert_w0(double z) {
  const double em1 = std::exp(-1.0);
  if (z > 0.0 || z < -em1 - 4e-16)
    throw DomainError("lambert_w0: argument outside [-1/e, 0]");
  if (z == 0.0) return 0.0;
  if (z < -em1) z = -em1;

  double w;
  const double p2 = 2.0 * (1.0 + std::exp(1.0) * z);
  if (p2 < 0.5) {
    const double p = std::sqrt(std::max(p2, 0.0));
    // series about the branch point w = -1 + p - p^2/3 + 11 p^3/72 - ...
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)));
    if (p == 0.0) return -1.0;
  } else {
    w = z * (1.0 - z * (1.0 - 1.5 * z));   // series about 0
  }
  for (int i = 0; i < 50; ++i) {
    const double ew = std::exp(w);
    const double r = w * ew - z;
    if (std::abs(r) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * r / (2.0 * wp1);
    const double dw = r / denom;
    w -= dw;
    if (w >= 0.0) w = -1e-300;        // keep on the branch
    if (std::abs(dw) <= 5e-17 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

namespace detail {

inline bool near_nonpos_int(const cplx& z, double eps = 1e-12) {
  if (std::abs(z.imag()) > eps) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) <= eps;
}

inline cplx lanczos_core(cplx z) {
  // g = 7, n = 9 coefficient set
  static const double g = 7.0;
  static const double coef[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  cplx x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + cplx(i, 0.0));
  const cplx t = z + g + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace detail

//! Gamma(z) via Lanczos approximation with reflection for Re(z) < 1/2.
inline cplx gamma_complex(cplx z) {
  if (detail::near_nonpos_int(z))
    throw PoleError("gamma_complex: pole at non-positive integer");
  if (z.real() < 0.5)
    return M_PI / (std::sin(M_PI * z) * detail::lanczos_core(1.0 - z));
  return detail::lanczos_core(z);
}

namespace detail {

inline constexpr int kSeriesBudget = 5000;

// Direct power series of 1F1(a,c,z). Long-double accumulation.
inline cplx kummer_series(cplx a, cplx c, cplx z) {
  using cl = std::complex<long double>;
  const cl al(a.real(), a.imag()), cle(c.real(), c.imag()), zl(z.real(), z.imag());
  cl term = 1.0L, sum = 1.0L;
  int small_streak = 0;
  for (int k = 0; k < kSeriesBudget; ++k) {
    term *= (al + (long double)k) / (cle + (long double)k) * zl / (long double)(k + 1);
    sum += term;
    if (std::abs(term) <= 1e-19L * std::abs(sum)) {
      if (++small_streak >= 2) return cplx((double)sum.real(), (double)sum.imag());
    } else {
      small_streak = 0;
    }
  }
  throw NoConvergence("kummer_1f1: series term budget exceeded");
}

// d/da and d/dc of the direct series, via incremental digamma-type sums
//   d/da (a)_k = (a)_k * sum_{j<k} 1/(a+j).
inline cplx kummer_series_dparam(cplx a, cplx c, cplx z, Param which) {
  using cl = std::complex<long double>;
  const cl al(a.real(), a.imag()), cle(c.real(), c.imag()), zl(z.real(), z.imag());
  cl term = 1.0L, sum = 0.0L, psum = 0.0L, ref = 1.0L;
  int small_streak = 0;
  for (int k = 0; k < kSeriesBudget; ++k) {
    const cl base = (which == Param::first) ? al : cle;
    psum += 1.0L / (base + (long double)k);
    term *= (al + (long double)k) / (cle + (long double)k) * zl / (long double)(k + 1);
    ref += term;
    const cl contrib = (which == Param::first) ? term * psum : -term * psum;
    sum += contrib;
    if (std::abs(term) * std::abs(psum) <= 1e-19L * (std::abs(sum) + std::abs(ref))) {
      if (++small_streak >= 2) return cplx((double)sum.real(), (double)sum.imag());
    } else {
      small_streak = 0;
    }
  }
  throw NoConvergence("kummer_dparam: series term budget exceeded");
}

} // namespace detail

//! Kummer confluent hypergeometric 1F1(a,c,z). For Re(z) < 0 the Kummer
//! transformation 1F1(a,c,z) = e^z 1F1(c-a,c,-z) avoids cancellation.
inline cplx kummer_1f1(const HypArgs& args) {
  if (detail::near_nonpos_int(args.c))
    throw ParameterPole("kummer_1f1: c is a non-positive integer");
  if (args.z.real() < 0.0)
    return std::exp(args.z) * detail::kummer_series(args.c - args.a, args.c, -args.z);
  return detail::kummer_series(args.a, args.c, args.z);
}

//! d/dz 1F1(a,c,z) = (a/c) 1F1(a+1,c+1,z).
inline cplx kummer_dz(const HypArgs& args) {
  return (args.a / args.c) * kummer_1f1({args.a + 1.0, args.c + 1.0, args.z});
}

//! Parameter derivative of 1F1 with respect to a (first) or c (second).
inline cplx kummer_dparam(const HypArgs& args, Param which) {
  if (detail::near_nonpos_int(args.c))
    throw ParameterPole("kummer_dparam: c is a non-positive integer");
  const cplx a = args.a, c = args.c, z = args.z;
  if (z.real() < 0.0) {
    // differentiate e^z 1F1(c-a, c, -z) in the original parameters
    const cplx da = -detail::kummer_series_dparam(c - a, c, -z, Param::first);
    if (which == Param::first) return std::exp(z) * da;
    const cplx dc = detail::kummer_series_dparam(c - a, c, -z, Param::first) +
                    detail::kummer_series_dparam(c - a, c, -z, Param::second);
    return std::exp(z) * dc;
  }
  return detail::kummer_series_dparam(a, c, z, which);
}

namespace detail {

// Gamma(num)/Gamma(den); zero when den sits on a pole.
inline cplx gamma_ratio(cplx num, cplx den) {
  if (near_nonpos_int(den, 1e-9)) return {0.0, 0.0};
  return gamma_complex(num) / gamma_complex(den);
}

inline cplx tricomi_connection(cplx a, cplx c, cplx z) {
  const cplx t1 = gamma_ratio(1.0 - c, a - c + 1.0) * kummer_1f1({a, c, z});
  cplx t2 = gamma_ratio(c - 1.0, a);
  if (t2 != cplx{0.0, 0.0})
    t2 *= std::pow(z, 1.0 - c) * kummer_1f1({a - c + 1.0, 2.0 - c, z});
  return t1 + t2;
}

inline bool near_int(const cplx& z, double eps) {
  return std::abs(z.imag()) <= eps && std::abs(z.real() - std::round(z.real())) <= eps;
}

} // namespace detail

//! Tricomi U(a,c,z) via the two-term connection formula; integer c handled by
//! a two-sided limit c -> c +- eps.
inline cplx tricomi_u(const HypArgs& args) {
  const cplx a = args.a, c = args.c, z = args.z;
  if (z == cplx{0.0, 0.0}) throw DomainError("tricomi_u: z = 0");
  if (a == cplx{0.0, 0.0}) return {1.0, 0.0};
  if (detail::near_int(c, 1e-7)) {
    const double eps = 1e-6;
    const cplx cc(std::round(c.real()), 0.0);
    return 0.5 * (detail::tricomi_connection(a, cc + eps, z) +
                  detail::tricomi_connection(a, cc - eps, z));
  }
  return detail::tricomi_connection(a, c, z);
}

//! d/dz U(a,c,z) = -a U(a+1,c+1,z).
inline cplx tricomi_dz(const HypArgs& args) {
  return -args.a * tricomi_u({args.a + 1.0, args.c + 1.0, args.z});
}

} // namespace lwqm::sf
