/**
 * @file krawczyk.hpp
 * @brief Rigorous existence/uniqueness certification of square-system roots.
 *
 * The certification test: with center y, radius box X, an approximate
 * Jacobian inverse R, and an interval matrix M enclosing the Jacobian over
 * y + X, the Krawczyk image
 *     K = -R [G(y)] + (I - R M) X
 * satisfies K strictly inside X only if G has a unique root in y + X (and
 * every matrix in M is then nonsingular).  All quantities on the right are
 * evaluated in outward-rounded interval arithmetic, so the containment is a
 * machine-checked proof, not an approximation.
 *
 * verify_root wraps the test in the standard driver: floating Newton
 * refinement of the center until the step norm stops improving, then an
 * epsilon-inflation loop that grows the trial radius geometrically until
 * the containment closes or a round cap is hit.  Both real and complex
 * systems are supported (complex boxes are axis-aligned rectangles).
 */
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <viss/interval.hpp>
#include <viss/linalg.hpp>
#include <viss/polynomial.hpp>

namespace viss {

template <class Scalar>
using IntervalMatrix = std::vector<std::vector<interval_for_t<Scalar>>>;

namespace detail {

inline bool entry_finite(const Interval& x) {
  return std::isfinite(x.lower()) && std::isfinite(x.upper());
}
inline bool entry_finite(const CInterval& x) {
  return entry_finite(x.re()) && entry_finite(x.im());
}

/// [-r, r] in every coordinate (both axes for complex rectangles).
template <class Scalar>
Box<interval_for_t<Scalar>> uniform_box(int m, double r) {
  using Ivl = interval_for_t<Scalar>;
  Box<Ivl> X;
  X.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    if constexpr (std::is_same_v<Ivl, Interval>) {
      X.push_back(Interval(-r, r));
    } else {
      X.push_back(CInterval(Interval(-r, r), Interval(-r, r)));
    }
  }
  return X;
}

/// Absolute-position box: center + offsets, rigorously.
template <class Scalar>
Box<interval_for_t<Scalar>> absolute_box(const Vec<Scalar>& center,
                                         const Box<interval_for_t<Scalar>>& X) {
  using Ivl = interval_for_t<Scalar>;
  if (static_cast<int>(X.size()) != center.size())
    throw std::invalid_argument("box/center dimension mismatch");
  Box<Ivl> out;
  out.reserve(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    out.push_back(value_cast<Ivl>(center[static_cast<Eigen::Index>(i)]) +
                  X[i]);
  }
  return out;
}

}  // namespace detail

/// Componentwise interval enclosure of G over the (absolute) box pt.
template <class Scalar>
Box<interval_for_t<Scalar>> enclose_system(
    const PolySystem<Scalar>& G, const Box<interval_for_t<Scalar>>& pt) {
  using Ivl = interval_for_t<Scalar>;
  Box<Ivl> out;
  out.reserve(G.size());
  for (const auto& p : G.polys) out.push_back(p.template evaluate<Ivl>(pt));
  return out;
}

/// M[i][j] encloses dG_i/dy_j over center + X.
template <class Scalar>
IntervalMatrix<Scalar> jacobian_enclosure(
    const PolySystem<Scalar>& G, const Vec<Scalar>& center,
    const Box<interval_for_t<Scalar>>& X) {
  using Ivl = interval_for_t<Scalar>;
  const Box<Ivl> pt = detail::absolute_box(center, X);
  IntervalMatrix<Scalar> M(G.size());
  for (std::size_t i = 0; i < G.size(); ++i) {
    M[i].reserve(static_cast<std::size_t>(G.nvars));
    for (int j = 0; j < G.nvars; ++j) {
      M[i].push_back(G.polys[i].differentiate(j).template evaluate<Ivl>(pt));
    }
  }
  return M;
}

/// One containment test at a fixed center/radius.  Returns the (relative)
/// image box on success, empty on any failure (no containment, or
/// non-finite intermediates).
template <class Scalar>
std::optional<Box<interval_for_t<Scalar>>> krawczyk_test(
    const PolySystem<Scalar>& G, const Vec<Scalar>& y_center,
    const Box<interval_for_t<Scalar>>& X, const Mat<Scalar>& R) {
  using Ivl = interval_for_t<Scalar>;
  const int m = static_cast<int>(G.size());
  if (G.nvars != m || y_center.size() != m ||
      static_cast<int>(X.size()) != m || R.rows() != m || R.cols() != m)
    throw std::invalid_argument("krawczyk_test dimension mismatch");

  // Rigorous enclosure of the point residual (degenerate input box).
  std::vector<Ivl> pt0;
  pt0.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pt0.push_back(value_cast<Ivl>(y_center[i]));
  const Box<Ivl> g0 = enclose_system(G, pt0);

  const IntervalMatrix<Scalar> M = jacobian_enclosure(G, y_center, X);

  Box<Ivl> K;
  K.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Ivl acc{};
    for (int j = 0; j < m; ++j) {
      acc = acc + value_cast<Ivl>(-R(i, j)) * g0[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < m; ++j) {
      Ivl c = value_cast<Ivl>(Scalar(i == j ? 1 : 0));
      for (int k = 0; k < m; ++k) {
        c = c - value_cast<Ivl>(R(i, k)) *
                    M[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      }
      acc = acc + c * X[static_cast<std::size_t>(j)];
    }
    if (!detail::entry_finite(acc)) return std::nullopt;
    K.push_back(acc);
  }
  if (!interior_of(K, X)) return std::nullopt;
  return K;
}

enum class VerifyStatus { kCertified, kInconclusive };

/// Result of verify_root: on success, box is the certified inclusion
/// relative to center (the root lies in center + box, uniquely).
template <class Scalar>
struct VerificationCertificate {
  using Ivl = interval_for_t<Scalar>;

  VerifyStatus status = VerifyStatus::kInconclusive;
  Vec<Scalar> center;
  Box<Ivl> box;            ///< relative inclusion (certified only)
  int iterations = 0;      ///< inflation rounds used
  double residual_norm = 0.0;
  double sigma_min_final = 0.0;

  bool certified() const { return status == VerifyStatus::kCertified; }

  /// center + box, rigorously (absolute inclusion of the root).
  Box<Ivl> absolute() const { return detail::absolute_box(center, box); }

  /// Largest absolute magnitude over the i-th absolute inclusion.
  double bound(int i) const {
    return value_mag(value_cast<Ivl>(center[i]) +
                     box[static_cast<std::size_t>(i)]);
  }
};

struct VerifyOptions {
  int max_newton = 40;
  int max_rounds = 15;
  double inflation_factor = 1.1;
  double inflation_floor = 1e-306;
};

/// Newton-refine the center, then certify by epsilon-inflation.
template <class Scalar>
VerificationCertificate<Scalar> verify_root(const PolySystem<Scalar>& G,
                                            const Vec<Scalar>& y_tilde,
                                            const VerifyOptions& opts = {}) {
  using Ivl = interval_for_t<Scalar>;
  const int m = static_cast<int>(G.size());
  if (G.nvars != m) throw std::invalid_argument("system must be square");
  if (y_tilde.size() != m)
    throw std::invalid_argument("start point has wrong dimension");

  VerificationCertificate<Scalar> cert;
  Vec<Scalar> y = y_tilde;

  // Floating Newton until the step norm stops shrinking meaningfully (for
  // exactly representable roots this grinds deep into the subnormal range,
  // which is what makes near-zero-width certificates possible).
  double prev_step = std::numeric_limits<double>::infinity();
  double last_step = 0.0;
  for (int it = 0; it < opts.max_newton; ++it) {
    const Vec<Scalar> gy = eval_system(G, y);
    const Mat<Scalar> J = eval_jacobian(G, y);
    const Vec<Scalar> rhs = -gy;
    const auto dx = solve_square(J, rhs);
    if (!dx) break;
    const double ns = inf_norm(*dx);
    y += *dx;
    last_step = ns;
    if (ns == 0.0) break;
    if (ns >= 0.5 * prev_step) break;  // roundoff plateau
    prev_step = ns;
  }

  cert.center = y;
  cert.residual_norm = inf_norm(eval_system(G, y));
  const Mat<Scalar> J = eval_jacobian(G, y);
  cert.sigma_min_final = sigma_min(J);

  const auto R = approximate_inverse(J);
  if (!R) return cert;

  // Start the inflation from the magnitude of the rigorous interval Newton
  // correction R [G(y)] (enclosure width included): the float step norm
  // alone underestimates the needed radius when the residual enclosure is
  // dominated by cancellation width.
  double r = std::max(last_step, opts.inflation_floor);
  {
    std::vector<Ivl> pt0;
    pt0.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pt0.push_back(value_cast<Ivl>(y[i]));
    const Box<Ivl> g0 = enclose_system(G, pt0);
    for (int i = 0; i < m; ++i) {
      Ivl z{};
      for (int j = 0; j < m; ++j) {
        z = z + value_cast<Ivl>((*R)(i, j)) * g0[static_cast<std::size_t>(j)];
      }
      r = std::max(r, value_mag(z));
    }
  }
  for (int round = 1; round <= opts.max_rounds; ++round) {
    const Box<Ivl> X = detail::uniform_box<Scalar>(m, r);
    auto K = krawczyk_test(G, y, X, *R);
    if (K) {
      cert.status = VerifyStatus::kCertified;
      cert.box = std::move(*K);
      cert.iterations = round;
      return cert;
    }
    r = opts.inflation_factor * r + opts.inflation_floor;
  }
  cert.iterations = opts.max_rounds;
  return cert;
}

}  // namespace viss
