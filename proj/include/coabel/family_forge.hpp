#pragma once

// Deterministic generators for property-(P') vector sets and the example
// families built from them.

#include "coabel/family.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace coabel {

/// Candidates are visited by increasing max-norm; vectors of equal norm are
/// ordered lexicographically, comparing coordinates in the order
/// 0, 1, -1, 2, -2, ... This order is total and exhausts Z^k.
struct GeneratorConfig {
  /// Prescribed leading vectors. Used verbatim after validation, never repaired.
  std::vector<IntVector> seed_vectors;
};

namespace forge_detail {

/// All vectors of Z^k with max-norm exactly `norm`, in generator order.
inline std::vector<IntVector> shell(std::size_t k, long long norm) {
  std::vector<long long> coords{0};
  for (long long a = 1; a <= norm; ++a) {
    coords.push_back(a);
    coords.push_back(-a);
  }
  std::vector<IntVector> out;
  std::vector<std::size_t> digit(k, 0);
  for (;;) {
    long long maxabs = 0;
    for (auto d : digit) maxabs = std::max(maxabs, coords[d] < 0 ? -coords[d] : coords[d]);
    if (maxabs == norm) {
      IntVector v(k);
      for (std::size_t i = 0; i < k; ++i) v[i] = coords[digit[i]];
      out.push_back(std::move(v));
    }
    std::size_t pos = k;
    while (pos > 0 && digit[pos - 1] + 1 == coords.size()) digit[--pos] = 0;
    if (pos == 0) break;
    ++digit[pos - 1];
  }
  return out;
}

/// Calls accept(v) on candidates in generator order until it returns true.
template <typename Accept>
IntVector first_admissible(std::size_t k, Accept&& accept) {
  for (long long norm = 0;; ++norm)
    for (auto& v : shell(k, norm))
      if (accept(v)) return v;
}

/// w keeps every k-subset of prefix ∪ {w} independent.
inline bool extends_general_position(const std::vector<IntVector>& prefix, const IntVector& w,
                                     std::size_t k) {
  bool ok = true;
  for_each_combination(prefix.size(), k - 1, [&](const std::vector<std::size_t>& idx) {
    IntMatrix M(k, k);
    for (std::size_t c = 0; c + 1 < k; ++c)
      for (std::size_t i = 0; i < k; ++i) M(i, c) = prefix[idx[c]][i];
    for (std::size_t i = 0; i < k; ++i) M(i, k - 1) = w[i];
    ok = rank(M) == k;
    return ok;
  });
  return ok;
}

inline std::vector<CoverData> default_covers(const std::vector<int>& genera,
                                             const std::vector<std::size_t>& surjective) {
  std::vector<CoverData> covers;
  for (std::size_t i = 0; i < genera.size(); ++i) {
    bool flag = std::find(surjective.begin(), surjective.end(), i) != surjective.end();
    covers.push_back(default_cover(genera[i], flag));
  }
  return covers;
}

inline void check_genera(const std::vector<int>& genera, std::size_t r) {
  if (genera.size() != r)
    throw InputError("expected " + std::to_string(r) + " genera, got " + std::to_string(genera.size()));
  for (std::size_t i = 0; i < genera.size(); ++i)
    if (genera[i] < 2)
      throw InputError("genera[" + std::to_string(i) + "] = " + std::to_string(genera[i]) +
                       " (must be >= 2)");
}

}  // namespace forge_detail

/// Greedy completion: the standard basis (or the validated seed prefix), then
/// repeatedly the first vector in generator order that avoids the span of
/// every (k-1)-subset already chosen.
inline VectorSet generate_P_prime(std::size_t k, std::size_t r, const GeneratorConfig& cfg = {}) {
  if (k < 1) throw InputError("generate_P_prime: k must be >= 1");
  if (r < k) throw InputError("generate_P_prime: requires r >= k");
  const auto& seeds = cfg.seed_vectors;
  if (seeds.size() > r) throw InputError("generate_P_prime: more seed vectors than r");
  std::vector<IntVector> chosen;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i].size() != k)
      throw InputError("seed_vectors[" + std::to_string(i) + "] does not lie in Z^" + std::to_string(k));
    if (i < k && seeds[i] != unit_vector(k, i))
      throw InputError("seed_vectors[" + std::to_string(i) + "] must be the standard basis vector e_" +
                       std::to_string(i + 1));
    if (i >= k && !forge_detail::extends_general_position(chosen, seeds[i], k))
      throw InputError("seed_vectors[" + std::to_string(i) + "] breaks linear independence of k-subsets");
    chosen.push_back(seeds[i]);
  }
  for (std::size_t i = chosen.size(); i < k; ++i) chosen.push_back(unit_vector(k, i));
  while (chosen.size() < r)
    chosen.push_back(forge_detail::first_admissible(
        k, [&](const IntVector& w) { return forge_detail::extends_general_position(chosen, w, k); }));
  return VectorSet{k, std::move(chosen)};
}

/// Generic family with target Z^{2k}. The subdirect variant fixes
/// v_{k+1} = v_1 + ... + v_k and also asserts π1-surjectivity of cover k+1.
inline FamilySpec make_generic_family(std::size_t k, std::size_t r, const std::vector<int>& genera,
                                      const GeneratorConfig& cfg = {}, bool subdirect_variant = false) {
  if (k < 1 || r < k + 2)
    throw InputError("generic family requires 1 <= k <= r-2 (got k=" + std::to_string(k) +
                     ", r=" + std::to_string(r) + ")");
  forge_detail::check_genera(genera, r);
  GeneratorConfig effective = cfg;
  std::vector<std::size_t> surjective(k);
  std::iota(surjective.begin(), surjective.end(), std::size_t{0});
  if (subdirect_variant) {
    if (effective.seed_vectors.size() > k)
      throw InputError("subdirect variant prescribes v_{k+1}; pass at most k seed vectors");
    effective.seed_vectors.clear();
    for (std::size_t i = 0; i < k; ++i) effective.seed_vectors.push_back(unit_vector(k, i));
    effective.seed_vectors.push_back(IntVector(k, Int(1)));
    surjective.push_back(k);
  }
  FamilySpec spec;
  spec.kind = FamilyKind::Generic;
  spec.k = k;
  spec.r = r;
  spec.vectors = generate_P_prime(k, r, effective);
  spec.covers = forge_detail::default_covers(genera, surjective);
  return spec;
}

/// The k = 1 generic family, labelled as a DPS family (target Z^2).
inline FamilySpec make_dps_family(std::size_t r, const std::vector<int>& genera) {
  if (r < 3) throw InputError("dps family requires r >= 3");
  FamilySpec spec = make_generic_family(1, r, genera);
  spec.kind = FamilyKind::DPS;
  return spec;
}

/// Extended family in Z^2: v_1..v_m = (1,0), v_{m+1} = (0,1) (or (1,1) in the
/// subdirect variant), and a greedy tail that is pairwise independent with
/// every vector from v_m on.
inline FamilySpec make_extended_family(std::size_t m, std::size_t r, const std::vector<int>& genera,
                                       bool use_subdirect_variant = false) {
  if (r < 4 || m < 1 || r < m + 3)
    throw InputError("extended family requires r >= 4, m >= 1, r-m >= 3 (got m=" + std::to_string(m) +
                     ", r=" + std::to_string(r) + ")");
  forge_detail::check_genera(genera, r);
  std::vector<IntVector> v(m, IntVector{1, 0});
  v.push_back(use_subdirect_variant ? IntVector{1, 1} : IntVector{0, 1});
  while (v.size() < r) {
    v.push_back(forge_detail::first_admissible(2, [&](const IntVector& w) {
      for (std::size_t i = m - 1; i < v.size(); ++i)
        if (!pairwise_independent(v[i], w)) return false;
      return true;
    }));
  }
  FamilySpec spec;
  spec.kind = FamilyKind::Extended;
  spec.k = 2;
  spec.r = r;
  spec.m = m;
  spec.vectors = VectorSet{2, std::move(v)};
  spec.covers = forge_detail::default_covers(genera, {m - 1, m});
  return spec;
}

/// Repeats generated (P') vectors: the j-th distinct vector appears
/// `duplicate_profile[j]` times in a row. A profile of all ones gives back the
/// generic family.
inline FamilySpec make_degenerate_family(std::size_t k, std::size_t r,
                                         const std::vector<std::size_t>& duplicate_profile,
                                         const std::vector<int>& genera) {
  if (k < 1) throw InputError("degenerate family requires k >= 1");
  forge_detail::check_genera(genera, r);
  if (duplicate_profile.empty()) throw InputError("duplicate profile must be nonempty");
  std::size_t total = 0;
  for (auto c : duplicate_profile) {
    if (c < 1) throw InputError("duplicate profile entries must be >= 1");
    total += c;
  }
  if (total != r)
    throw InputError("duplicate profile sums to " + std::to_string(total) + ", expected r = " +
                     std::to_string(r));
  const bool no_duplicates = duplicate_profile.size() == r;
  if (no_duplicates && r >= k + 2) return make_generic_family(k, r, genera);

  const std::size_t distinct = duplicate_profile.size();
  VectorSet base = generate_P_prime(k, std::max(distinct, k));
  std::vector<IntVector> v;
  for (std::size_t j = 0; j < distinct; ++j)
    for (std::size_t c = 0; c < duplicate_profile[j]; ++c) v.push_back(base.vectors[j]);
  FamilySpec spec;
  spec.kind = FamilyKind::Degenerate;
  spec.k = k;
  spec.r = r;
  spec.vectors = VectorSet{k, std::move(v)};
  spec.covers = forge_detail::default_covers(genera, {});
  return spec;
}

}  // namespace coabel
