/**
 * @file interval.hpp
 * @brief Machine interval arithmetic with outward rounding.
 *
 * Real intervals are closed segments [lo, hi] of doubles; complex intervals
 * are axis-aligned rectangles (an interval for the real part, one for the
 * imaginary part).  All arithmetic encloses the exact result: operations are
 * evaluated in round-to-nearest and the result endpoint is stepped outward by
 * one ulp only when the rounded operation is detected to be inexact.
 * Exactness detection uses the classical error-free transforms: the two-sum
 * error term for addition/subtraction (always exactly representable) and the
 * fma residual for multiplication/division (exactly representable whenever
 * the rounded result is in the normal range; outside that range the endpoint
 * is widened unconditionally).
 *
 * Division by an interval containing zero is reported through an empty
 * optional rather than producing infinite endpoints silently.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace viss {

namespace detail {

inline double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

inline double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline constexpr double kMaxDouble = std::numeric_limits<double>::max();
inline constexpr double kMinNormal = std::numeric_limits<double>::min();

/// Clamp a non-finite round-to-nearest result to a sound directed endpoint.
/// An overflow to +inf is a valid upper endpoint but must become DBL_MAX when
/// used as a lower endpoint (the exact value exceeds DBL_MAX), and likewise
/// for -inf.
inline double clamp_overflow(double r, bool up) {
  if (up) return r > 0 ? r : -kMaxDouble;
  return r > 0 ? kMaxDouble : r;
}

/// Directed addition: a+b rounded toward -inf (up=false) or +inf (up=true).
inline double add_dir(double a, double b, bool up) {
  const double s = a + b;
  if (!std::isfinite(s)) {
    if (std::isnan(s)) return s;
    return clamp_overflow(s, up);
  }
  // Two-sum error term: err = (a+b) - s exactly, barring intermediate
  // overflow (detected via NaN below).
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  if (err == 0.0) return s;
  if (std::isnan(err)) return up ? next_up(s) : next_down(s);
  if (up) return err > 0.0 ? next_up(s) : s;
  return err < 0.0 ? next_down(s) : s;
}

inline double sub_dir(double a, double b, bool up) { return add_dir(a, -b, up); }

/// Directed multiplication via the fma residual a*b - round(a*b).
inline double mul_dir(double a, double b, bool up) {
  const double p = a * b;
  if (!std::isfinite(p)) {
    if (std::isnan(p)) return p;
    return clamp_overflow(p, up);
  }
  if (a == 0.0 || b == 0.0) return p;  // exact zero
  if (std::fabs(p) >= kMinNormal) {
    const double err = std::fma(a, b, -p);
    if (err == 0.0) return p;
    if (std::isnan(err)) return up ? next_up(p) : next_down(p);
    if (up) return err > 0.0 ? next_up(p) : p;
    return err < 0.0 ? next_down(p) : p;
  }
  // Subnormal product: the residual may itself round to zero, so the
  // exactness test is not trustworthy.  Widen unconditionally.
  return up ? next_up(p) : next_down(p);
}

/// Directed division (b != 0).  sign(true - q) = -sign(residual)*sign(b)
/// where residual = q*b - a is exact for normal q.
inline double div_dir(double a, double b, bool up) {
  const double q = a / b;
  if (!std::isfinite(q)) {
    if (std::isnan(q)) return q;
    return clamp_overflow(q, up);
  }
  if (a == 0.0) return q;  // exact zero
  if (std::fabs(q) < kMinNormal) return up ? next_up(q) : next_down(q);
  const double r = std::fma(q, b, -a);
  if (r == 0.0) return q;
  if (std::isnan(r)) return up ? next_up(q) : next_down(q);
  const bool true_above = ((r > 0.0) != (b > 0.0));
  if (up) return true_above ? next_up(q) : q;
  return true_above ? q : next_down(q);
}

/// base^k rounded downward/upward, for base >= 0 (monotone chain of
/// directed multiplications).
inline double pow_nonneg_dir(double base, unsigned k, bool up) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r = mul_dir(r, base, up);
  return r;
}

/// base^k directed endpoint for arbitrary-sign base.
inline double pow_point_dir(double base, unsigned k, bool up) {
  if (base >= 0.0) return pow_nonneg_dir(base, k, up);
  const bool odd = (k % 2u) != 0;
  if (odd) return -pow_nonneg_dir(-base, k, !up);
  return pow_nonneg_dir(-base, k, up);
}

}  // namespace detail

/// Closed real interval [lower, upper] with outward-rounded arithmetic.
class Interval {
 public:
  Interval() : lo_(0.0), hi_(0.0) {}
  /// Degenerate interval [v, v].
  Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: implicit by design
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo_ <= hi_)) {  // also catches NaN endpoints
      lo_ = -std::numeric_limits<double>::infinity();
      hi_ = std::numeric_limits<double>::infinity();
    }
  }

  static Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  }

  /// Interval centered at `mid` with half-width `rad` (outward-rounded).
  static Interval centered(double mid, double rad) {
    return Interval(detail::sub_dir(mid, rad, false),
                    detail::add_dir(mid, rad, true));
  }

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  double mid() const {
    if (lo_ == hi_) return lo_;
    double m = 0.5 * (lo_ + hi_);
    if (!std::isfinite(m)) m = 0.5 * lo_ + 0.5 * hi_;
    return m;
  }
  /// Half-width measured outward from mid() (an upper bound).
  double rad() const {
    const double m = mid();
    return std::max(detail::sub_dir(hi_, m, true), detail::sub_dir(m, lo_, true));
  }
  double width() const { return detail::sub_dir(hi_, lo_, true); }
  /// Largest absolute value contained (magnitude).
  double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
  /// Smallest absolute value contained (mignitude).
  double mig() const {
    if (contains_zero()) return 0.0;
    return std::min(std::fabs(lo_), std::fabs(hi_));
  }

  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool is_degenerate() const { return lo_ == hi_; }

  /// this subset-of other (not necessarily strict).
  bool subset_of(const Interval& o) const {
    return o.lo_ <= lo_ && hi_ <= o.hi_;
  }
  /// this contained in the topological interior of other.
  bool interior_of(const Interval& o) const {
    return o.lo_ < lo_ && hi_ < o.hi_;
  }

  Interval operator-() const { return Interval(-hi_, -lo_); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(detail::add_dir(a.lo_, b.lo_, false),
                    detail::add_dir(a.hi_, b.hi_, true));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(detail::sub_dir(a.lo_, b.hi_, false),
                    detail::sub_dir(a.hi_, b.lo_, true));
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const double c[4][2] = {{a.lo_, b.lo_}, {a.lo_, b.hi_},
                            {a.hi_, b.lo_}, {a.hi_, b.hi_}};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& p : c) {
      lo = std::min(lo, detail::mul_dir(p[0], p[1], false));
      hi = std::max(hi, detail::mul_dir(p[0], p[1], true));
    }
    return Interval(lo, hi);
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  /// Interval intersection; empty optional if disjoint.
  static std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    const double lo = std::max(a.lo_, b.lo_);
    const double hi = std::min(a.hi_, b.hi_);
    if (lo > hi) return std::nullopt;
    return Interval(lo, hi);
  }

 private:
  double lo_, hi_;
};

/// Division with an explicit zero-denominator signal: empty optional when the
/// denominator contains zero.
inline std::optional<Interval> divide(const Interval& a, const Interval& b) {
  if (b.contains_zero()) return std::nullopt;
  const double c[4][2] = {{a.lower(), b.lower()}, {a.lower(), b.upper()},
                          {a.upper(), b.lower()}, {a.upper(), b.upper()}};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& p : c) {
    lo = std::min(lo, detail::div_dir(p[0], p[1], false));
    hi = std::max(hi, detail::div_dir(p[0], p[1], true));
  }
  return Interval(lo, hi);
}

/// x^k with a dedicated even-power enclosure: even powers use the magnitude
/// range (so e.g. squaring a zero-crossing interval never produces a negative
/// lower endpoint), odd powers use endpoint monotonicity.
inline Interval pow_int(const Interval& x, unsigned k) {
  if (k == 0) return Interval(1.0);
  if (k == 1) return x;
  if (k % 2u == 0) {
    return Interval(detail::pow_nonneg_dir(x.mig(), k, false),
                    detail::pow_nonneg_dir(x.mag(), k, true));
  }
  return Interval(detail::pow_point_dir(x.lower(), k, false),
                  detail::pow_point_dir(x.upper(), k, true));
}

/// Axis-aligned complex rectangle: re + i*im with interval components.
class CInterval {
 public:
  CInterval() = default;
  CInterval(const Interval& re, const Interval& im) : re_(re), im_(im) {}
  CInterval(double re) : re_(re), im_(0.0) {}  // NOLINT: implicit by design
  CInterval(const std::complex<double>& z) : re_(z.real()), im_(z.imag()) {}

  static CInterval centered(const std::complex<double>& mid, double rad) {
    return CInterval(Interval::centered(mid.real(), rad),
                     Interval::centered(mid.imag(), rad));
  }

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }
  std::complex<double> mid() const { return {re_.mid(), im_.mid()}; }
  double rad() const { return std::max(re_.rad(), im_.rad()); }
  /// Upper bound on |z| over the rectangle.
  double mag() const {
    const double a = re_.mag(), b = im_.mag();
    return detail::next_up(std::sqrt(detail::add_dir(
        detail::mul_dir(a, a, true), detail::mul_dir(b, b, true), true)));
  }

  bool contains(const std::complex<double>& z) const {
    return re_.contains(z.real()) && im_.contains(z.imag());
  }
  bool contains_zero() const {
    return re_.contains_zero() && im_.contains_zero();
  }
  bool interior_of(const CInterval& o) const {
    return re_.interior_of(o.re()) && im_.interior_of(o.im());
  }
  bool subset_of(const CInterval& o) const {
    return re_.subset_of(o.re()) && im_.subset_of(o.im());
  }

  CInterval operator-() const { return CInterval(-re_, -im_); }
  friend CInterval operator+(const CInterval& a, const CInterval& b) {
    return CInterval(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend CInterval operator-(const CInterval& a, const CInterval& b) {
    return CInterval(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend CInterval operator*(const CInterval& a, const CInterval& b) {
    return CInterval(a.re_ * b.re_ - a.im_ * b.im_,
                     a.re_ * b.im_ + a.im_ * b.re_);
  }
  CInterval& operator+=(const CInterval& o) { return *this = *this + o; }
  CInterval& operator-=(const CInterval& o) { return *this = *this - o; }
  CInterval& operator*=(const CInterval& o) { return *this = *this * o; }

 private:
  Interval re_, im_;
};

/// Complex division; empty optional when |denominator|^2 contains zero.
inline std::optional<CInterval> divide(const CInterval& a, const CInterval& b) {
  const Interval den = pow_int(b.re(), 2) + pow_int(b.im(), 2);
  if (den.contains_zero()) return std::nullopt;
  const CInterval num = a * CInterval(b.re(), -b.im());
  const auto re = divide(num.re(), den);
  const auto im = divide(num.im(), den);
  if (!re || !im) return std::nullopt;
  return CInterval(*re, *im);
}

inline CInterval pow_int(const CInterval& z, unsigned k) {
  CInterval r(Interval(1.0), Interval(0.0));
  CInterval base = z;
  unsigned e = k;
  while (e > 0) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Scalar-lane traits: map a point scalar type (double / complex<double>) to
// its interval counterpart and provide uniform conversions so the evaluation
// templates work across all four value types.
// ---------------------------------------------------------------------------

template <class Scalar>
struct interval_for;
template <>
struct interval_for<double> {
  using type = Interval;
};
template <>
struct interval_for<std::complex<double>> {
  using type = CInterval;
};
template <class Scalar>
using interval_for_t = typename interval_for<Scalar>::type;

/// value_cast<V>(c): embed a polynomial coefficient into the evaluation
/// value type (point scalar or interval).
template <class V>
inline V value_cast(double c) {
  return V(c);
}
template <class V>
inline V value_cast(const std::complex<double>& c) {
  static_assert(std::is_same_v<V, std::complex<double>> ||
                    std::is_same_v<V, CInterval>,
                "complex coefficient requires a complex value type");
  return V(c);
}

/// pow_value: integer power for any evaluation value type.  Point scalars use
/// plain repeated multiplication (deterministic), intervals use the enclosure
/// versions above.
inline double pow_value(double x, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}
inline std::complex<double> pow_value(const std::complex<double>& x, unsigned k) {
  std::complex<double> r(1.0, 0.0);
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}
inline Interval pow_value(const Interval& x, unsigned k) { return pow_int(x, k); }
inline CInterval pow_value(const CInterval& x, unsigned k) { return pow_int(x, k); }

/// Magnitude (sup-norm contribution) of an evaluation value.
inline double value_mag(double x) { return std::fabs(x); }
inline double value_mag(const std::complex<double>& x) { return std::abs(x); }
inline double value_mag(const Interval& x) { return x.mag(); }
inline double value_mag(const CInterval& x) { return x.mag(); }

/// Does the value (trivially for points, as a set for intervals) contain 0?
inline bool value_contains_zero(double x) { return x == 0.0; }
inline bool value_contains_zero(const std::complex<double>& x) {
  return x == std::complex<double>(0.0, 0.0);
}
inline bool value_contains_zero(const Interval& x) { return x.contains_zero(); }
inline bool value_contains_zero(const CInterval& x) { return x.contains_zero(); }

/// A box: one interval per coordinate.
template <class Ivl>
using Box = std::vector<Ivl>;

/// Componentwise interior test for boxes of equal size.
template <class Ivl>
inline bool interior_of(const Box<Ivl>& inner, const Box<Ivl>& outer) {
  if (inner.size() != outer.size()) return false;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!inner[i].interior_of(outer[i])) return false;
  }
  return true;
}

/// Largest componentwise radius of a box.
template <class Ivl>
inline double max_rad(const Box<Ivl>& b) {
  double r = 0.0;
  for (const auto& c : b) r = std::max(r, c.rad());
  return r;
}

}  // namespace viss
