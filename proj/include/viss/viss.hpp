/**
 * @file viss.hpp
 * @brief End-to-end driver: deflate until regular, then certify.
 *
 * Given a square system F and an approximate singular solution x̃, the
 * driver repeats smoothed deflation while the augmented Jacobian is rank
 * deficient at tolerance eps, then runs the rigorous certification on the
 * final square regular system.  On success the result carries interval
 * inclusions proving that the perturbed system F̃(x, b̂) has an exact
 * isolated singular solution x̂ inside the reported boxes, for every
 * admissible b̂; the perturbation box itself is part of the certificate.
 */
#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <viss/deflation.hpp>
#include <viss/krawczyk.hpp>

namespace viss {

template <class Scalar>
struct VissResult {
  using Ivl = interval_for_t<Scalar>;

  bool success = false;
  std::string failure_reason;

  DeflationState<Scalar> state;  ///< final augmented state (system, layout)
  VerificationCertificate<Scalar> certificate;

  std::vector<int> corank_sequence;  ///< corank at each loop top, last is 0
  int deflation_count = 0;
  double sigma_min_before = 0.0;  ///< smallest singular value of JF(x̃)
  double sigma_min_after = 0.0;   ///< same for the final augmented system

  /// Absolute inclusions partitioned by variable kind (certified only).
  Box<Ivl> x_box;
  Box<Ivl> lambda_box;
  Box<Ivl> b_box;

  const PolySystem<Scalar>& f_tilde() const { return state.f_tilde; }
};

namespace detail {

template <class Scalar>
void partition_boxes(VissResult<Scalar>& r) {
  const auto abs_box = r.certificate.absolute();
  r.x_box.clear();
  r.lambda_box.clear();
  r.b_box.clear();
  for (const auto& blk : r.state.layout.blocks()) {
    for (int i = 0; i < blk.width; ++i) {
      const auto& v = abs_box[static_cast<std::size_t>(blk.offset + i)];
      switch (blk.kind) {
        case BlockKind::kVariables: r.x_box.push_back(v); break;
        case BlockKind::kMultipliers: r.lambda_box.push_back(v); break;
        case BlockKind::kPerturbations: r.b_box.push_back(v); break;
      }
    }
  }
}

}  // namespace detail

/// Run the full pipeline.  eps is the rank tolerance; max_deflations caps
/// the loop (failure, not an exception, when exceeded).
template <class Scalar>
VissResult<Scalar> viss(const PolySystem<Scalar>& F, const Vec<Scalar>& x_tilde,
                        double eps, int max_deflations = 10,
                        const VerifyOptions& vopts = {},
                        std::vector<std::string> var_names = {}) {
  VissResult<Scalar> r;
  r.state = make_state<Scalar>(F, x_tilde, std::move(var_names));

  for (;;) {
    const Mat<Scalar> J = jacobian_at(r.state);
    const int d = corank_of(J, eps);
    r.corank_sequence.push_back(d);
    if (r.state.s == 0) r.sigma_min_before = sigma_min(J);
    if (d == 0) {
      r.sigma_min_after = sigma_min(J);
      break;
    }
    if (r.state.s >= max_deflations) {
      std::ostringstream os;
      os << "deflation cap " << max_deflations
         << " reached with corank still " << d;
      r.failure_reason = os.str();
      return r;
    }
    try {
      deflate_step(r.state, J, d, eps);
    } catch (const std::runtime_error& e) {
      r.failure_reason = e.what();
      return r;
    }
  }
  r.deflation_count = r.state.s;

  r.certificate = verify_root(r.state.g, r.state.y, vopts);
  if (!r.certificate.certified()) {
    r.failure_reason = "verification inconclusive on the augmented system";
    return r;
  }
  detail::partition_boxes(r);
  r.success = true;
  return r;
}

/// Independent re-check of what a certified result claims: over the
/// reported boxes (reassembled into the full variable space), the interval
/// evaluation of the perturbed system contains zero componentwise, and so
/// does the directional derivative against the first direction vector.
template <class Scalar>
bool consequence_check(const VissResult<Scalar>& r) {
  using Ivl = interval_for_t<Scalar>;
  if (!r.success) return false;
  const auto& layout = r.state.layout;

  // Reassemble the full-space box from the partitioned boxes so that any
  // tampering with them is caught.
  Box<Ivl> full(static_cast<std::size_t>(layout.total()));
  std::size_t ix = 0, il = 0, ib = 0;
  for (const auto& blk : layout.blocks()) {
    for (int i = 0; i < blk.width; ++i) {
      const std::size_t slot = static_cast<std::size_t>(blk.offset + i);
      switch (blk.kind) {
        case BlockKind::kVariables:
          if (ix >= r.x_box.size()) return false;
          full[slot] = r.x_box[ix++];
          break;
        case BlockKind::kMultipliers:
          if (il >= r.lambda_box.size()) return false;
          full[slot] = r.lambda_box[il++];
          break;
        case BlockKind::kPerturbations:
          if (ib >= r.b_box.size()) return false;
          full[slot] = r.b_box[ib++];
          break;
      }
    }
  }

  for (const auto& row : r.state.f_tilde.polys) {
    if (!value_contains_zero(row.template evaluate<Ivl>(full))) return false;
  }

  if (!r.state.templates.empty()) {
    const VTemplate& v1 = r.state.templates.front();
    for (int i = 0; i < r.state.n; ++i) {
      Ivl acc{};
      for (int p = 0; p < r.state.n; ++p) {
        const auto d =
            r.state.f_tilde.polys[static_cast<std::size_t>(i)].differentiate(p);
        if (d.is_zero()) continue;
        const Ivl dv = d.template evaluate<Ivl>(full);
        const auto& e = v1.entries[static_cast<std::size_t>(p)];
        acc = acc + (e.is_one()
                         ? dv
                         : dv * full[static_cast<std::size_t>(e.sym_slot)]);
      }
      if (!value_contains_zero(acc)) return false;
    }
  }
  return true;
}

}  // namespace viss
