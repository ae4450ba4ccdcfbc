/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials over real or complex coefficients.
 *
 * A polynomial is a graded-lexicographically ordered map from exponent
 * vectors to coefficients.  All coefficient bookkeeping is exact: terms are
 * only removed when a coefficient is exactly zero, never by epsilon pruning,
 * so structural identities (linearity of differentiation, the product rule)
 * hold as term-map equalities when the coefficient arithmetic is exact.
 *
 * Evaluation is generic over the value type: plain scalars for floating
 * evaluation, intervals (see interval.hpp) for enclosures of the range over a
 * box.  The same template serves all four combinations.
 */
#pragma once

#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <viss/interval.hpp>

namespace viss {

/// Exponent vector; entry j is the power of variable j.
using Monomial = std::vector<unsigned>;

inline unsigned total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0u);
}

/// Graded lexicographic order: compare total degree first, then
/// lexicographically on the exponent vector.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

template <class Coef>
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Coef, GradedLex>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial zero(int nvars) { return Polynomial(nvars); }

  static Polynomial constant(int nvars, const Coef& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(static_cast<std::size_t>(nvars), 0u), c);
    return p;
  }

  /// The monomial x_j (0-based variable index), coefficient 1.
  static Polynomial variable(int nvars, int j) {
    Polynomial p(nvars);
    Monomial m(static_cast<std::size_t>(nvars), 0u);
    m.at(static_cast<std::size_t>(j)) = 1u;
    p.add_term(m, Coef(1));
    return p;
  }

  static Polynomial term(int nvars, Monomial m, const Coef& c) {
    Polynomial p(nvars);
    if (static_cast<int>(m.size()) != nvars) {
      throw std::invalid_argument("monomial length != nvars");
    }
    p.add_term(std::move(m), c);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Total degree of the highest term; -1 for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.rbegin()->first));
  }

  /// Largest coefficient magnitude (0 for the zero polynomial).
  double coeff_mag() const {
    double m = 0.0;
    for (const auto& [mono, c] : terms_) m = std::max(m, value_mag(c));
    return m;
  }

  void add_term(Monomial m, const Coef& c) {
    if (c == Coef(0)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coef(0)) terms_.erase(it);
    }
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (std::size_t j = 0; j < m.size(); ++j) m[j] += mb[j];
        r.add_term(std::move(m), ca * cb);
      }
    }
    return r;
  }
  friend Polynomial operator*(const Coef& s, const Polynomial& p) {
    Polynomial r(p.nvars_);
    for (const auto& [m, c] : p.terms_) r.add_term(m, s * c);
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  bool operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  /// Partial derivative with respect to variable j.
  Polynomial differentiate(int j) const {
    Polynomial r(nvars_);
    const auto uj = static_cast<std::size_t>(j);
    for (const auto& [m, c] : terms_) {
      const unsigned e = m.at(uj);
      if (e == 0) continue;
      Monomial d = m;
      d[uj] = e - 1;
      r.add_term(std::move(d), c * Coef(static_cast<double>(e)));
    }
    return r;
  }

  /// Multiply by the variable x_j (exponent bump; exact).
  Polynomial mul_var(int j) const {
    Polynomial r(nvars_);
    const auto uj = static_cast<std::size_t>(j);
    for (const auto& [m, c] : terms_) {
      Monomial b = m;
      b[uj] += 1;
      r.terms_.emplace(std::move(b), c);
    }
    return r;
  }

  /// Reinterpret in a larger variable space (appended variables, exponent 0).
  Polynomial lift(int new_nvars) const {
    if (new_nvars < nvars_) throw std::invalid_argument("lift shrinks space");
    Polynomial r(new_nvars);
    for (const auto& [m, c] : terms_) {
      Monomial e = m;
      e.resize(static_cast<std::size_t>(new_nvars), 0u);
      r.terms_.emplace(std::move(e), c);
    }
    return r;
  }

  /// Substitute a constant for variable j (result stays in the same space;
  /// variable j simply no longer occurs).
  Polynomial fix_var(int j, const Coef& value) const {
    Polynomial r(nvars_);
    const auto uj = static_cast<std::size_t>(j);
    for (const auto& [m, c] : terms_) {
      const unsigned e = m.at(uj);
      Monomial f = m;
      f[uj] = 0;
      Coef scaled = c;
      for (unsigned i = 0; i < e; ++i) scaled *= value;
      r.add_term(std::move(f), scaled);
    }
    return r;
  }

  /// Evaluate at a point or box; V is double, complex<double>, Interval or
  /// CInterval (coefficients embed via value_cast).
  template <class V>
  V evaluate(const std::vector<V>& pt) const {
    if (pt.size() != static_cast<std::size_t>(nvars_)) {
      throw std::invalid_argument("evaluation point has wrong dimension");
    }
    V acc = value_cast<V>(0.0);
    for (const auto& [m, c] : terms_) {
      V t = value_cast<V>(c);
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] > 0) t = t * pow_value(pt[j], m[j]);
      }
      acc = acc + t;
    }
    return acc;
  }

 private:
  int nvars_;
  TermMap terms_;
};

/// A finite list of polynomials over a shared variable space.
template <class Coef>
struct PolySystem {
  int nvars = 0;
  std::vector<Polynomial<Coef>> polys;

  PolySystem() = default;
  explicit PolySystem(int nv) : nvars(nv) {}
  PolySystem(int nv, std::vector<Polynomial<Coef>> ps)
      : nvars(nv), polys(std::move(ps)) {}

  std::size_t size() const { return polys.size(); }

  template <class V>
  std::vector<V> evaluate(const std::vector<V>& pt) const {
    std::vector<V> out;
    out.reserve(polys.size());
    for (const auto& p : polys) out.push_back(p.template evaluate<V>(pt));
    return out;
  }

  /// All first partials: entry [i][j] = d polys[i] / d x_j.
  std::vector<std::vector<Polynomial<Coef>>> jacobian() const {
    std::vector<std::vector<Polynomial<Coef>>> J;
    J.reserve(polys.size());
    for (const auto& p : polys) {
      std::vector<Polynomial<Coef>> row;
      row.reserve(static_cast<std::size_t>(nvars));
      for (int j = 0; j < nvars; ++j) row.push_back(p.differentiate(j));
      J.push_back(std::move(row));
    }
    return J;
  }

  PolySystem lift(int new_nvars) const {
    PolySystem r(new_nvars);
    r.polys.reserve(polys.size());
    for (const auto& p : polys) r.polys.push_back(p.lift(new_nvars));
    return r;
  }

  bool operator==(const PolySystem& o) const {
    return nvars == o.nvars && polys == o.polys;
  }
};

}  // namespace viss
