/**
 * @file layout.hpp
 * @brief Append-only variable layout for repeatedly augmented systems.
 *
 * The augmented system's variables are organized in blocks appended in
 * creation order: the original variables first, then for each deflation
 * order a block of multiplier variables followed by a block of smoothing
 * parameters.  Offsets never change once a block is appended, so
 * polynomials only ever need lifting (zero-extension), never reindexing.
 *
 * Fresh multiplier/parameter names are generated from global counters with
 * a prefix chosen to avoid collisions with the user's variable names.
 */
#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace viss {

enum class BlockKind {
  kVariables,      ///< original system variables
  kMultipliers,    ///< multiplier (dual direction) variables
  kPerturbations,  ///< smoothing parameters
};

struct Block {
  BlockKind kind;
  int order;   ///< deflation order that created the block
  int offset;  ///< first slot index
  int width;   ///< number of slots
};

class VariableLayout {
 public:
  VariableLayout() = default;

  /// Layout holding only the original variables.
  static VariableLayout initial(std::vector<std::string> var_names) {
    VariableLayout l;
    l.names_ = std::move(var_names);
    l.blocks_.push_back(
        {BlockKind::kVariables, 0, 0, static_cast<int>(l.names_.size())});
    l.multiplier_prefix_ = pick_prefix(l.names_, {"l", "lam", "mul_"});
    l.perturbation_prefix_ = pick_prefix(l.names_, {"b", "pb", "prm_"});
    return l;
  }

  static VariableLayout initial(int n) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return initial(std::move(names));
  }

  int total() const { return static_cast<int>(names_.size()); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::string& name(int slot) const {
    return names_.at(static_cast<std::size_t>(slot));
  }
  const std::vector<std::string>& names() const { return names_; }

  /// Append a multiplier block for the given order; returns its offset.
  int append_multiplier_block(int order, int width) {
    return append(BlockKind::kMultipliers, order, width, multiplier_prefix_,
                  multiplier_counter_);
  }

  /// Append a smoothing-parameter block; returns its offset.
  int append_perturbation_block(int order, int width) {
    return append(BlockKind::kPerturbations, order, width,
                  perturbation_prefix_, perturbation_counter_);
  }

  /// All slot indices of the given kind, in slot order.
  std::vector<int> slots(BlockKind kind) const {
    std::vector<int> out;
    for (const auto& b : blocks_) {
      if (b.kind != kind) continue;
      for (int i = 0; i < b.width; ++i) out.push_back(b.offset + i);
    }
    return out;
  }

  /// The block a slot belongs to.
  const Block& block_of(int slot) const {
    for (const auto& b : blocks_) {
      if (slot >= b.offset && slot < b.offset + b.width) return b;
    }
    throw std::out_of_range("slot outside layout");
  }

 private:
  int append(BlockKind kind, int order, int width, const std::string& prefix,
             int& counter) {
    const int offset = total();
    blocks_.push_back({kind, order, offset, width});
    for (int i = 0; i < width; ++i) {
      ++counter;
      names_.push_back(prefix + std::to_string(counter));
    }
    return offset;
  }

  /// First candidate prefix such that no existing name is prefix+digits.
  static std::string pick_prefix(const std::vector<std::string>& names,
                                 std::vector<std::string> candidates) {
    for (auto& cand : candidates) {
      bool clash = false;
      for (const auto& n : names) {
        if (n.size() <= cand.size() || n.compare(0, cand.size(), cand) != 0)
          continue;
        bool digits = true;
        for (std::size_t i = cand.size(); i < n.size(); ++i) {
          if (!std::isdigit(static_cast<unsigned char>(n[i]))) {
            digits = false;
            break;
          }
        }
        if (digits) {
          clash = true;
          break;
        }
      }
      if (!clash) return cand;
    }
    // Fall back to an underscore-extended last candidate (cannot collide
    // after enough extension; user names are finite).
    std::string p = candidates.back();
    bool clash = true;
    while (clash) {
      p += "_";
      clash = false;
      for (const auto& n : names) {
        if (n.compare(0, p.size(), p) == 0) {
          clash = true;
          break;
        }
      }
    }
    return p;
  }

  std::vector<Block> blocks_;
  std::vector<std::string> names_;
  std::string multiplier_prefix_ = "l";
  std::string perturbation_prefix_ = "b";
  int multiplier_counter_ = 0;
  int perturbation_counter_ = 0;
};

}  // namespace viss
