/**
 * @file test_interval.cpp
 * @brief Randomized containment and tightness tests for interval arithmetic.
 */
#include <doctest.h>

#include <cmath>
#include <limits>

#include <viss/interval.hpp>

#include "support.hpp"

using viss::CInterval;
using viss::Interval;

namespace {
constexpr int kCases = 1000;

double ulp_at(double v) { return viss::detail::next_up(v) - v; }
}  // namespace

TEST_CASE("interval: fundamental containment of +,-,*") {
  vt::Rng g(0xA11CE001u);
  for (int i = 0; i < kCases; ++i) {
    const Interval X = vt::random_interval(g);
    const Interval Y = vt::random_interval(g);
    const double x = vt::sample(g, X);
    const double y = vt::sample(g, Y);
    CHECK((X + Y).contains(x + y));
    CHECK((X - Y).contains(x - y));
    CHECK((X * Y).contains(x * y));
    CHECK((-X).contains(-x));
  }
}

TEST_CASE("interval: division containment and zero-denominator signal") {
  vt::Rng g(0xA11CE002u);
  int divisions = 0, signals = 0;
  for (int i = 0; i < kCases; ++i) {
    const Interval X = vt::random_interval(g);
    const Interval Y = vt::random_interval(g);
    const auto Q = viss::divide(X, Y);
    if (Y.contains_zero()) {
      CHECK(!Q.has_value());
      ++signals;
      continue;
    }
    REQUIRE(Q.has_value());
    const double x = vt::sample(g, X);
    const double y = vt::sample(g, Y);
    CHECK(Q->contains(x / y));
    ++divisions;
  }
  CHECK(divisions > 100);
  CHECK(signals > 100);
}

TEST_CASE("interval: powers are tight and sign-correct") {
  // Exact data stays exact: [2,2]^4 must be [16,16] up to a few ulp.
  const Interval p = viss::pow_int(Interval(2.0), 4);
  CHECK(p.contains(16.0));
  CHECK(p.width() <= 4 * ulp_at(16.0));

  // Squaring a zero-crossing interval keeps the lower endpoint at zero.
  const Interval s = viss::pow_int(Interval(-1.0, 1.0), 2);
  CHECK(s.lower() == 0.0);
  CHECK(s.upper() == 1.0);

  vt::Rng g(0xA11CE003u);
  for (int i = 0; i < kCases; ++i) {
    const Interval X = vt::random_interval(g, 3.0);
    const unsigned k = static_cast<unsigned>(vt::uniform_int(g, 0, 6));
    const double x = vt::sample(g, X);
    CHECK(viss::pow_int(X, k).contains(viss::pow_value(x, k)));
  }
}

TEST_CASE("interval: exact operations do not widen") {
  const Interval a = Interval(2.0) + Interval(3.0);
  CHECK(a.lower() == 5.0);
  CHECK(a.upper() == 5.0);
  const Interval m = Interval(1.5) * Interval(8.0);
  CHECK(m.lower() == 12.0);
  CHECK(m.upper() == 12.0);
  const auto d = viss::divide(Interval(1.0), Interval(4.0));
  REQUIRE(d.has_value());
  CHECK(d->lower() == 0.25);
  CHECK(d->upper() == 0.25);
  // A long chain of exact operations keeps zero width.
  Interval acc(1.0);
  for (int i = 0; i < 40; ++i) acc = acc * Interval(2.0) - Interval(0.5);
  CHECK(acc.is_degenerate());
}

TEST_CASE("interval: inexact operations widen by at most one ulp per side") {
  const Interval r = Interval(0.1) + Interval(0.2);
  CHECK(r.contains(0.1 + 0.2));
  CHECK(r.width() <= 2 * ulp_at(0.3));
  CHECK(r.width() > 0.0);
}

TEST_CASE("interval: subnormal products stay sound") {
  vt::Rng g(0xA11CE004u);
  for (int i = 0; i < 200; ++i) {
    const double a = vt::uniform(g, -1.0, 1.0) * 1e-200;
    const double b = vt::uniform(g, -1.0, 1.0) * 1e-150;
    const Interval P = Interval(a) * Interval(b);
    CHECK(P.lower() <= a * b);
    CHECK(P.upper() >= a * b);
    // The true product of tiny magnitudes must never be enclosed by [0,0]
    // unless a factor is zero.
    if (a != 0.0 && b != 0.0) CHECK(P.upper() > P.lower());
  }
  // Deep-subnormal case where the rounded product is zero but the true
  // product is not.
  const double t = std::ldexp(1.0, -538);
  const Interval P = Interval(t) * Interval(t);
  CHECK(P.upper() > 0.0);
}

TEST_CASE("interval: mid/rad reconstruction covers the original") {
  vt::Rng g(0xA11CE005u);
  for (int i = 0; i < kCases; ++i) {
    const Interval X = vt::random_interval(g);
    const Interval R = Interval::centered(X.mid(), X.rad());
    CHECK(X.subset_of(R));
  }
}

TEST_CASE("interval: inclusion monotonicity") {
  vt::Rng g(0xA11CE006u);
  for (int i = 0; i < kCases; ++i) {
    const Interval Y = vt::random_interval(g);
    // Shrink Y to a subinterval X.
    const double a = vt::sample(g, Y), b = vt::sample(g, Y);
    const Interval X(std::min(a, b), std::max(a, b));
    const Interval Z = vt::random_interval(g);
    CHECK((X + Z).subset_of(Y + Z));
    CHECK((X - Z).subset_of(Y - Z));
    CHECK((X * Z).subset_of(Y * Z));
    CHECK(viss::pow_int(X, 3).subset_of(viss::pow_int(Y, 3)));
  }
}

TEST_CASE("interval: interior test is strict") {
  CHECK(Interval(-1.0, 1.0).interior_of(Interval(-2.0, 2.0)));
  CHECK(!Interval(-1.0, 1.0).interior_of(Interval(-1.0, 2.0)));
  CHECK(!Interval(-1.0, 1.0).interior_of(Interval(-2.0, 1.0)));
  CHECK(!Interval(-1.0, 1.0).interior_of(Interval(-1.0, 1.0)));
}

TEST_CASE("interval: intersection") {
  const auto a = Interval::intersect(Interval(0.0, 2.0), Interval(1.0, 3.0));
  REQUIRE(a.has_value());
  CHECK(a->lower() == 1.0);
  CHECK(a->upper() == 2.0);
  CHECK(!Interval::intersect(Interval(0.0, 1.0), Interval(2.0, 3.0)).has_value());
}

TEST_CASE("cinterval: fundamental containment") {
  vt::Rng g(0xA11CE007u);
  for (int i = 0; i < kCases; ++i) {
    const CInterval Z = vt::random_cinterval(g);
    const CInterval W = vt::random_cinterval(g);
    const auto z = vt::sample(g, Z);
    const auto w = vt::sample(g, W);
    CHECK((Z + W).contains(z + w));
    CHECK((Z - W).contains(z - w));
    CHECK((Z * W).contains(z * w));
    const unsigned k = static_cast<unsigned>(vt::uniform_int(g, 0, 5));
    CHECK(viss::pow_int(Z, k).contains(viss::pow_value(z, k)));
  }
}

TEST_CASE("cinterval: division containment and signal") {
  vt::Rng g(0xA11CE008u);
  int ok = 0, signal = 0;
  for (int i = 0; i < kCases; ++i) {
    const CInterval Z = vt::random_cinterval(g);
    const CInterval W = vt::random_cinterval(g);
    const auto Q = viss::divide(Z, W);
    if (W.contains_zero()) {
      CHECK(!Q.has_value());
      ++signal;
      continue;
    }
    if (!Q.has_value()) continue;  // |W|^2 enclosure may still touch zero
    const auto z = vt::sample(g, Z);
    const auto w = vt::sample(g, W);
    CHECK(Q->contains(z / w));
    ++ok;
  }
  CHECK(ok > 100);
  CHECK(signal > 5);
}

TEST_CASE("cinterval: magnitude bound") {
  vt::Rng g(0xA11CE009u);
  for (int i = 0; i < kCases; ++i) {
    const CInterval Z = vt::random_cinterval(g);
    const auto z = vt::sample(g, Z);
    CHECK(Z.mag() >= std::abs(z));
  }
}

TEST_CASE("box: interior and radius helpers") {
  viss::Box<Interval> inner = {Interval(-0.5, 0.5), Interval(0.1, 0.2)};
  viss::Box<Interval> outer = {Interval(-1.0, 1.0), Interval(0.0, 0.3)};
  CHECK(viss::interior_of(inner, outer));
  CHECK(!viss::interior_of(outer, inner));
  CHECK(viss::max_rad(outer) == doctest::Approx(1.0));
}
