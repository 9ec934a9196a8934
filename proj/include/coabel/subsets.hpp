#pragma once

// Index-set helpers. Factor sets are bitmasks over at most 31 factors.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace coabel {

using FactorMask = std::uint32_t;

inline constexpr std::size_t kMaxFactors = 31;

inline FactorMask full_mask(std::size_t r) {
  return r == 0 ? 0u : static_cast<FactorMask>((std::uint64_t{1} << r) - 1);
}

inline std::size_t mask_size(FactorMask m) { return static_cast<std::size_t>(std::popcount(m)); }

inline std::vector<std::size_t> mask_to_indices(FactorMask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

inline FactorMask indices_to_mask(const std::vector<std::size_t>& idx) {
  FactorMask m = 0;
  for (auto i : idx) m |= FactorMask{1} << i;
  return m;
}

/// Calls fn(indices) for every k-subset of {0..n-1}, in lexicographic order.
/// Stops early if fn returns false.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Lexicographic comparison of the sorted index lists of two masks.
inline bool mask_lex_less(FactorMask a, FactorMask b) {
  return mask_to_indices(a) < mask_to_indices(b);
}

}  // namespace coabel
