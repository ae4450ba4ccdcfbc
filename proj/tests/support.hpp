/**
 * @file support.hpp
 * @brief Shared randomized-test helpers (seeded RNG, interval/point sampling).
 */
#pragma once

#include <algorithm>
#include <complex>
#include <random>

#include <viss/interval.hpp>
#include <viss/polynomial.hpp>

namespace vt {

using Rng = std::mt19937_64;

inline double uniform(Rng& g, double a, double b) {
  std::uniform_real_distribution<double> d(a, b);
  return d(g);
}

inline int uniform_int(Rng& g, int a, int b) {
  std::uniform_int_distribution<int> d(a, b);
  return d(g);
}

/// Random interval; ~20% of draws are degenerate (zero width) and the
/// placement freely crosses zero.
inline viss::Interval random_interval(Rng& g, double span = 10.0) {
  const double lo = uniform(g, -span, span);
  std::bernoulli_distribution zero_width(0.2);
  const double w = zero_width(g) ? 0.0 : uniform(g, 0.0, span / 2);
  return viss::Interval(lo, lo + w);
}

/// A point guaranteed to lie inside the interval.
inline double sample(Rng& g, const viss::Interval& x) {
  if (x.is_degenerate()) return x.lower();
  const double t = uniform(g, 0.0, 1.0);
  const double p = x.lower() + t * (x.upper() - x.lower());
  return std::clamp(p, x.lower(), x.upper());
}

inline viss::CInterval random_cinterval(Rng& g, double span = 10.0) {
  return viss::CInterval(random_interval(g, span), random_interval(g, span));
}

inline std::complex<double> sample(Rng& g, const viss::CInterval& z) {
  return {sample(g, z.re()), sample(g, z.im())};
}

template <class Coef>
Coef random_coef(Rng& g, bool integer);

template <>
inline double random_coef<double>(Rng& g, bool integer) {
  if (integer) {
    int c = 0;
    while (c == 0) c = uniform_int(g, -4, 4);
    return static_cast<double>(c);
  }
  return uniform(g, -2.0, 2.0);
}

template <>
inline std::complex<double> random_coef<std::complex<double>>(Rng& g,
                                                              bool integer) {
  return {random_coef<double>(g, integer), random_coef<double>(g, integer)};
}

/// Random sparse polynomial; integer coefficients make ring identities exact.
template <class Coef>
viss::Polynomial<Coef> random_polynomial(Rng& g, int nvars, int max_terms = 6,
                                         int max_exp = 3,
                                         bool integer_coefs = false) {
  viss::Polynomial<Coef> p(nvars);
  const int nterms = uniform_int(g, 1, max_terms);
  for (int t = 0; t < nterms; ++t) {
    viss::Monomial m(static_cast<std::size_t>(nvars), 0u);
    for (auto& e : m) e = static_cast<unsigned>(uniform_int(g, 0, max_exp));
    p.add_term(std::move(m), random_coef<Coef>(g, integer_coefs));
  }
  return p;
}

}  // namespace vt
