#pragma once

#include "coabel/int_matrix.hpp"

#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace coabel {

/// A homomorphism Γ_{g_1} x ... x Γ_{g_r} -> Z^n, recorded on abelianizations:
/// block i is the n x 2g_i integer matrix of the restriction to factor i.
///
/// The target is abelian, so the map factors through H_1 of the product and
/// this data determines it (and its kernel) completely.
class ProductHom {
 public:
  ProductHom(std::vector<int> genera, std::size_t target_rank, std::vector<IntMatrix> blocks)
      : genera_(std::move(genera)), target_rank_(target_rank), blocks_(std::move(blocks)) {
    if (genera_.empty()) throw InputError("ProductHom: at least one factor is required");
    if (genera_.size() != blocks_.size())
      throw InputError("ProductHom: " + std::to_string(genera_.size()) + " genera but " +
                       std::to_string(blocks_.size()) + " blocks");
    for (std::size_t i = 0; i < genera_.size(); ++i) {
      if (genera_[i] < 2)
        throw InputError("ProductHom: genera[" + std::to_string(i) + "] = " +
                         std::to_string(genera_[i]) + " (must be >= 2)");
      const auto& b = blocks_[i];
      if (b.rows() != target_rank_ || b.cols() != 2 * static_cast<std::size_t>(genera_[i]))
        throw InputError("ProductHom: blocks[" + std::to_string(i) + "] is " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                         ", expected " + std::to_string(target_rank_) + "x" +
                         std::to_string(2 * genera_[i]));
    }
  }

  std::size_t factor_count() const { return genera_.size(); }
  std::size_t target_rank() const { return target_rank_; }
  const std::vector<int>& genera() const { return genera_; }
  int genus(std::size_t i) const { return genera_[i]; }
  const std::vector<IntMatrix>& blocks() const { return blocks_; }
  const IntMatrix& block(std::size_t i) const { return blocks_[i]; }

  /// b_1 of the product: sum of 2 g_i.
  std::size_t product_betti() const {
    return std::accumulate(genera_.begin(), genera_.end(), std::size_t{0},
                           [](std::size_t acc, int g) { return acc + 2 * static_cast<std::size_t>(g); });
  }

  /// [A_{i_1} | ... | A_{i_s}] for the given factor indices; n x 0 when empty.
  IntMatrix blocks_for(std::span<const std::size_t> factors) const {
    std::vector<IntMatrix> parts;
    parts.reserve(factors.size());
    for (auto i : factors) parts.push_back(blocks_.at(i));
    return hconcat_all(target_rank_, parts);
  }

  IntMatrix concatenated() const { return hconcat_all(target_rank_, blocks_); }

  friend bool operator==(const ProductHom&, const ProductHom&) = default;

 private:
  std::vector<int> genera_;
  std::size_t target_rank_;
  std::vector<IntMatrix> blocks_;
};

}  // namespace coabel
