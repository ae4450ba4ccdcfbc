/**
 * @file deflation.hpp
 * @brief Repeated deflation with smoothing parameters.
 *
 * Starting from a square system F with an approximate solution near an
 * isolated singular root, each deflation order s
 *   1. selects nested column/row index sets (C, K) inside {1..n} by a greedy
 *      smallest-index rule with singular-value feasibility checks,
 *   2. subtracts the smoothing correction (1/s!) x_{C(i)}^s * b_{s,i} from
 *      row K(i) of the perturbed system,
 *   3. appends a fresh multiplier block and the new parameter block to the
 *      variable layout, and
 *   4. rebuilds the augmented system G by re-applying every stored
 *      directional-derivative template to the updated perturbed system,
 * then estimates the new multipliers by least squares.  The augmented
 * system stays square: after s deflations it has 2^s * n equations in
 * 2^s * n variables.
 */
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <viss/layout.hpp>
#include <viss/linalg.hpp>
#include <viss/polynomial.hpp>

namespace viss {

/// Column/row index selections, 1-based into {1..n} (original variables /
/// original equation positions within the newest block).
struct SelectionSets {
  std::vector<int> cols;
  std::vector<int> rows;
};

/// One entry of a directional-derivative template: either the literal
/// constant 1 or a variable (by global slot index).
struct VEntry {
  int sym_slot = -1;  ///< -1 => literal 1, otherwise layout slot of a symbol
  bool is_one() const { return sym_slot < 0; }
};

/// Template for the direction vector applied at one deflation order; entry p
/// multiplies the partial derivative with respect to slot p.
struct VTemplate {
  std::vector<VEntry> entries;
  int size() const { return static_cast<int>(entries.size()); }
};

/// Directional derivative of each row: sum_p d(row)/d y_p * v_p, where v_p
/// is 1 or a variable of the full space.
template <class Scalar>
std::vector<Polynomial<Scalar>> jacobian_apply(
    const std::vector<Polynomial<Scalar>>& rows, int mvars, const VTemplate& v,
    int total_vars) {
  if (v.size() != mvars) throw std::invalid_argument("template size mismatch");
  std::vector<Polynomial<Scalar>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.nvars() != total_vars)
      throw std::invalid_argument("row not lifted to full space");
    Polynomial<Scalar> acc(total_vars);
    for (int p = 0; p < mvars; ++p) {
      Polynomial<Scalar> d = row.differentiate(p);
      if (d.is_zero()) continue;
      if (v.entries[static_cast<std::size_t>(p)].is_one()) {
        acc += d;
      } else {
        acc += d.mul_var(v.entries[static_cast<std::size_t>(p)].sym_slot);
      }
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// State of the repeated deflation of one system.
template <class Scalar>
struct DeflationState {
  int n = 0;                      ///< original variable count
  VariableLayout layout;          ///< full (append-only) variable space
  PolySystem<Scalar> original;    ///< F, in the n-variable space
  PolySystem<Scalar> f_tilde;     ///< perturbed F, lifted to the full space
  PolySystem<Scalar> g;           ///< augmented system, 2^s * n rows
  Vec<Scalar> y;                  ///< approximate solution, layout.total()
  std::vector<VTemplate> templates;
  std::vector<SelectionSets> selections;
  int s = 0;  ///< deflations performed

  int rows() const { return n << s; }
};

template <class Scalar>
DeflationState<Scalar> make_state(const PolySystem<Scalar>& F,
                                  const Vec<Scalar>& x,
                                  std::vector<std::string> var_names = {}) {
  if (static_cast<int>(F.size()) != F.nvars)
    throw std::invalid_argument("system must be square");
  if (x.size() != F.nvars)
    throw std::invalid_argument("start point has wrong dimension");
  DeflationState<Scalar> st;
  st.n = F.nvars;
  st.layout = var_names.empty() ? VariableLayout::initial(st.n)
                                : VariableLayout::initial(std::move(var_names));
  st.original = F;
  st.f_tilde = F;
  st.g = F;
  st.y = x;
  return st;
}

/// Jacobian of the augmented system at the current approximation (square at
/// the top of every deflation loop).
template <class Scalar>
Mat<Scalar> jacobian_at(const DeflationState<Scalar>& st) {
  return eval_jacobian(st.g, st.y);
}

/// corank = rows - eps-rank.
template <class Scalar>
int corank_of(const Mat<Scalar>& J, double eps) {
  return static_cast<int>(J.rows()) - numerical_rank(J, eps);
}

namespace detail {

template <class Scalar>
Mat<Scalar> drop_columns(const Mat<Scalar>& J, const std::vector<int>& cols1b) {
  std::vector<bool> drop(static_cast<std::size_t>(J.cols()), false);
  for (int c : cols1b) drop[static_cast<std::size_t>(c - 1)] = true;
  Mat<Scalar> B(J.rows(), J.cols() - static_cast<Eigen::Index>(cols1b.size()));
  Eigen::Index t = 0;
  for (Eigen::Index j = 0; j < J.cols(); ++j) {
    if (!drop[static_cast<std::size_t>(j)]) B.col(t++) = J.col(j);
  }
  return B;
}

/// [B | unit columns at global rows offset+k-1 for k in rows1b].
template <class Scalar>
Mat<Scalar> with_units(const Mat<Scalar>& B, const std::vector<int>& rows1b,
                       int offset) {
  Mat<Scalar> M(B.rows(), B.cols() + static_cast<Eigen::Index>(rows1b.size()));
  M.leftCols(B.cols()) = B;
  M.rightCols(static_cast<Eigen::Index>(rows1b.size())).setZero();
  for (std::size_t i = 0; i < rows1b.size(); ++i) {
    M(offset + rows1b[i] - 1, B.cols() + static_cast<Eigen::Index>(i)) =
        Scalar(1);
  }
  return M;
}

}  // namespace detail

/// Greedy smallest-index selection of d columns to delete and d unit rows to
/// append, restricted to the previous order's sets (nestedness).  A deletion
/// candidate is kept only while the remaining columns still reach the
/// (m-d)-th singular value threshold; a unit-row candidate only while the
/// completed matrix keeps full column rank at the threshold.
template <class Scalar>
SelectionSets select_sets(const Mat<Scalar>& J, int n, int d, double eps,
                          const SelectionSets* prev) {
  const int m = static_cast<int>(J.rows());
  std::vector<int> pool_cols, pool_rows;
  if (prev != nullptr) {
    pool_cols = prev->cols;
    pool_rows = prev->rows;
  } else {
    for (int i = 1; i <= n; ++i) pool_cols.push_back(i);
    pool_rows = pool_cols;
  }

  SelectionSets sel;
  for (int c : pool_cols) {
    if (static_cast<int>(sel.cols.size()) == d) break;
    std::vector<int> trial = sel.cols;
    trial.push_back(c);
    const Mat<Scalar> kept = detail::drop_columns(J, trial);
    if (sigma_k(kept, m - d) >= eps) sel.cols = std::move(trial);
  }
  if (static_cast<int>(sel.cols.size()) != d) {
    throw std::runtime_error(
        "column selection failed: no feasible nested deletion of size " +
        std::to_string(d));
  }

  const Mat<Scalar> B = detail::drop_columns(J, sel.cols);
  const int offset = m - n;  // unit placement inside the newest row block
  for (int k : pool_rows) {
    if (static_cast<int>(sel.rows.size()) == d) break;
    std::vector<int> trial = sel.rows;
    trial.push_back(k);
    const Mat<Scalar> M = detail::with_units(B, trial, offset);
    if (sigma_k(M, static_cast<int>(M.cols())) >= eps) sel.rows = std::move(trial);
  }
  if (static_cast<int>(sel.rows.size()) != d) {
    throw std::runtime_error(
        "row selection failed: no feasible nested completion of size " +
        std::to_string(d));
  }
  return sel;
}

/// Perform one deflation order: select, perturb, extend layout, rebuild the
/// augmented system, and estimate the new multiplier block by least squares.
/// J must be the Jacobian of st.g at st.y (as returned by jacobian_at) and
/// d its corank.
template <class Scalar>
void deflate_step(DeflationState<Scalar>& st, const Mat<Scalar>& J, int d,
                  double eps) {
  const int m = st.rows();
  if (J.rows() != m || J.cols() != m)
    throw std::invalid_argument("Jacobian has stale shape");
  if (d <= 0 || d > st.n) throw std::invalid_argument("invalid corank");

  const SelectionSets sel = select_sets(
      J, st.n, d, eps, st.s == 0 ? nullptr : &st.selections.back());
  st.selections.push_back(sel);

  // Extend the layout: multiplier block for order s+1, then the parameter
  // block for order s.
  const int lam_off = st.layout.append_multiplier_block(st.s + 1, m - d);
  const int b_off = st.layout.append_perturbation_block(st.s, d);
  const int total = st.layout.total();

  st.f_tilde = st.f_tilde.lift(total);

  // Subtract the smoothing correction (1/s!) x_{C(i)}^s b_{s,i} at row K(i).
  double fact = 1.0;
  for (int j = 2; j <= st.s; ++j) fact *= j;
  for (int i = 0; i < d; ++i) {
    Monomial mono(static_cast<std::size_t>(total), 0u);
    mono[static_cast<std::size_t>(sel.cols[static_cast<std::size_t>(i)] - 1)] =
        static_cast<unsigned>(st.s);
    mono[static_cast<std::size_t>(b_off + i)] += 1u;
    st.f_tilde.polys[static_cast<std::size_t>(
        sel.rows[static_cast<std::size_t>(i)] - 1)] -=
        Polynomial<Scalar>::term(total, std::move(mono), Scalar(1.0 / fact));
  }

  // Template for the new direction vector: literal 1 at the selected
  // original-variable slots, fresh multipliers everywhere else.
  VTemplate v;
  int run = 0;
  for (int p = 0; p < m; ++p) {
    const bool is_selected_var =
        p < st.n && std::find(sel.cols.begin(), sel.cols.end(), p + 1) !=
                        sel.cols.end();
    if (is_selected_var) {
      v.entries.push_back(VEntry{-1});
    } else {
      v.entries.push_back(VEntry{lam_off + run});
      ++run;
    }
  }
  if (run != m - d) throw std::logic_error("template width mismatch");
  st.templates.push_back(std::move(v));

  // Rebuild the augmented system from the updated perturbed system by
  // re-applying all templates in order; each application doubles the rows.
  st.g = st.f_tilde;
  for (std::size_t j = 0; j < st.templates.size(); ++j) {
    const int mj = st.n << j;
    if (static_cast<int>(st.g.polys.size()) != mj)
      throw std::logic_error("rebuild row-count mismatch");
    auto grown = jacobian_apply(st.g.polys, mj, st.templates[j], total);
    for (auto& r : grown) st.g.polys.push_back(std::move(r));
  }

  // Extend the approximation with zeros for the new blocks, then estimate
  // the multipliers from the least-squares kernel condition.
  Vec<Scalar> y2 = Vec<Scalar>::Zero(total);
  y2.head(st.y.size()) = st.y;
  st.y = std::move(y2);

  if (m - d > 0) {
    std::vector<Scalar> pt(st.y.data(), st.y.data() + st.y.size());
    Mat<Scalar> A(m, m);
    for (int i = 0; i < m; ++i) {
      for (int p = 0; p < m; ++p) {
        A(i, p) = st.g.polys[static_cast<std::size_t>(i)]
                      .differentiate(p)
                      .template evaluate<Scalar>(pt);
      }
    }
    Mat<Scalar> A_free(m, m - d);
    Vec<Scalar> rhs = Vec<Scalar>::Zero(m);
    int t = 0;
    const VTemplate& vt = st.templates.back();
    for (int p = 0; p < m; ++p) {
      if (vt.entries[static_cast<std::size_t>(p)].is_one()) {
        rhs -= A.col(p);
      } else {
        A_free.col(t++) = A.col(p);
      }
    }
    const Vec<Scalar> lam = least_squares(A_free, rhs);
    st.y.segment(lam_off, m - d) = lam;
  }

  st.s += 1;
}

}  // namespace viss
