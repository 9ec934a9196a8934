#pragma once

// Vector sets, branched-cover data and the constructive family specifications,
// together with the Kronecker-style assembly h = Σ v_i · α_i on H_1.

#include "coabel/lattice.hpp"
#include "coabel/product_hom.hpp"
#include "coabel/subsets.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace coabel {

struct VectorSet {
  std::size_t dim = 0;
  std::vector<IntVector> vectors;

  std::size_t size() const { return vectors.size(); }

  /// k x r matrix with the vectors as columns.
  IntMatrix as_columns() const {
    IntMatrix B(dim, vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) B(i, j) = vectors[j][i];
    return B;
  }

  void validate() const {
    for (std::size_t j = 0; j < vectors.size(); ++j)
      if (vectors[j].size() != dim)
        throw InputError("vectors[" + std::to_string(j) + "] has length " +
                         std::to_string(vectors[j].size()) + ", expected " + std::to_string(dim));
  }

  friend bool operator==(const VectorSet&, const VectorSet&) = default;
};

inline IntVector unit_vector(std::size_t dim, std::size_t i) {
  IntVector v(dim);
  v[i] = 1;
  return v;
}

/// Property (P): every k-subset is linearly independent and some k-subset is
/// a Z-basis. nullopt (not applicable) when there are fewer than k vectors.
inline std::optional<bool> check_property_P(const VectorSet& vs) {
  vs.validate();
  const std::size_t k = vs.dim, r = vs.size();
  if (r < k) return std::nullopt;
  const IntMatrix B = vs.as_columns();
  bool independent = true, has_basis = false;
  for_each_combination(r, k, [&](const std::vector<std::size_t>& idx) {
    Lattice L(B.select_columns(idx));
    if (L.rank() < k) {
      independent = false;
      return false;
    }
    if (*lattice_index(L) == 1) has_basis = true;
    return true;
  });
  return independent && has_basis;
}

/// Property (P'): (P) with v_1..v_k the standard basis, in order.
inline std::optional<bool> check_property_P_prime(const VectorSet& vs) {
  auto p = check_property_P(vs);
  if (!p || !*p) return p;
  for (std::size_t i = 0; i < vs.dim; ++i)
    if (vs.vectors[i] != unit_vector(vs.dim, i)) return false;
  return true;
}

/// Two vectors of Z^2 (or any Z^k) are linearly independent over Q.
inline bool pairwise_independent(const IntVector& a, const IntVector& b) {
  IntMatrix M(a.size(), 2);
  for (std::size_t i = 0; i < a.size(); ++i) M(i, 0) = a[i], M(i, 1) = b[i];
  return rank(M) == 2;
}

/// The extended-family shape in Z^2 (0-based here): v_0..v_{m-1} = (1,0),
/// v_m in {(0,1), (1,1)}, and {v_i, v_j} independent for m-1 <= i < j.
/// Returns the first violated clause, or nullopt if the shape holds.
inline std::optional<std::string> extended_condition_violation(const VectorSet& vs, std::size_t m) {
  vs.validate();
  if (vs.dim != 2) return "extended family requires vectors in Z^2";
  if (m < 1 || m >= vs.size()) return "extended family requires 1 <= m < r";
  const IntVector e1{1, 0}, e2{0, 1}, diag{1, 1};
  for (std::size_t i = 0; i < m; ++i)
    if (vs.vectors[i] != e1) return "v_" + std::to_string(i + 1) + " must be (1,0)";
  if (vs.vectors[m] != e2 && vs.vectors[m] != diag)
    return "v_" + std::to_string(m + 1) + " must be (0,1) or (1,1)";
  for (std::size_t i = m - 1; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!pairwise_independent(vs.vectors[i], vs.vectors[j]))
        return "v_" + std::to_string(i + 1) + " and v_" + std::to_string(j + 1) +
               " must be linearly independent";
  return std::nullopt;
}

/// The map induced on H_1 by a branched cover S_γ -> E.
struct CoverData {
  int genus = 2;
  IntMatrix block;  // 2 x 2γ
  bool pi1_surjective = false;

  void validate(const std::string& where) const {
    if (genus < 2) throw InputError(where + ".genus = " + std::to_string(genus) + " (must be >= 2)");
    if (block.rows() != 2 || block.cols() != 2 * static_cast<std::size_t>(genus))
      throw InputError(where + ".block is " + std::to_string(block.rows()) + "x" +
                       std::to_string(block.cols()) + ", expected 2x" + std::to_string(2 * genus));
    auto snf = smith_normal_form(block);
    if (snf.rank != 2)
      throw InputError(where + ".block has rank " + std::to_string(snf.rank) +
                       "; a branched cover has finite-index image on H_1 (rank 2)");
    if (pi1_surjective && (snf.diag[0] != 1 || snf.diag[1] != 1))
      throw InputError(where + ": pi1_surjective asserted but the block is not onto Z^2");
  }

  friend bool operator==(const CoverData&, const CoverData&) = default;
};

/// [I_2 | I_2 | ... | I_2], γ copies: onto Z^2 for every γ >= 2.
inline IntMatrix default_cover_block(int genus) {
  IntMatrix b(2, 2 * static_cast<std::size_t>(genus));
  for (int c = 0; c < genus; ++c) {
    b(0, 2 * c) = 1;
    b(1, 2 * c + 1) = 1;
  }
  return b;
}

inline CoverData default_cover(int genus, bool pi1_surjective) {
  return CoverData{genus, default_cover_block(genus), pi1_surjective};
}

enum class FamilyKind { Generic, Extended, DPS, Degenerate };

inline const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Generic: return "generic";
    case FamilyKind::Extended: return "extended";
    case FamilyKind::DPS: return "dps";
    case FamilyKind::Degenerate: return "degenerate";
  }
  return "?";
}

inline std::optional<FamilyKind> family_kind_from_string(const std::string& s) {
  if (s == "generic") return FamilyKind::Generic;
  if (s == "extended") return FamilyKind::Extended;
  if (s == "dps") return FamilyKind::DPS;
  if (s == "degenerate") return FamilyKind::Degenerate;
  return std::nullopt;
}

struct FamilySpec {
  FamilyKind kind = FamilyKind::Generic;
  std::size_t k = 1;  // the target is Z^{2k}
  std::size_t r = 0;
  VectorSet vectors;
  std::vector<CoverData> covers;
  std::optional<std::size_t> m;  // Extended only

  std::size_t target_rank() const { return 2 * k; }

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// Throws InputError naming the first violated structural clause.
/// Fundamental-group surjectivity flags are not checked here.
inline void validate_family_structure(const FamilySpec& spec) {
  auto fail = [&](const std::string& clause) {
    throw InputError(std::string(to_string(spec.kind)) + " family: " + clause);
  };
  if (spec.k < 1) fail("k must be >= 1");
  if (spec.vectors.dim != spec.k) fail("vectors must lie in Z^k");
  if (spec.vectors.size() != spec.r) fail("expected r = " + std::to_string(spec.r) + " vectors");
  if (spec.covers.size() != spec.r) fail("expected r = " + std::to_string(spec.r) + " covers");
  spec.vectors.validate();
  for (std::size_t i = 0; i < spec.covers.size(); ++i)
    spec.covers[i].validate("covers[" + std::to_string(i) + "]");
  if (spec.kind != FamilyKind::Extended && spec.m) fail("m is only meaningful for extended families");

  switch (spec.kind) {
    case FamilyKind::Generic:
      if (spec.r < spec.k + 2) fail("requires 1 <= k <= r-2");
      if (!check_property_P_prime(spec.vectors).value_or(false)) fail("vector set fails property (P')");
      break;
    case FamilyKind::DPS:
      if (spec.k != 1) fail("requires k = 1");
      if (spec.r < 3) fail("requires r >= 3");
      if (!check_property_P_prime(spec.vectors).value_or(false)) fail("vector set fails property (P')");
      break;
    case FamilyKind::Extended: {
      if (!spec.m) fail("m is required");
      const std::size_t m = *spec.m;
      if (spec.k != 2) fail("requires k = 2");
      if (spec.r < 4) fail("requires r >= 4");
      if (m < 1) fail("requires m >= 1");
      if (spec.r < m + 3) fail("requires r - m >= 3");
      if (auto why = extended_condition_violation(spec.vectors, m)) fail(*why);
      break;
    }
    case FamilyKind::Degenerate:
      if (spec.r < 1) fail("requires r >= 1");
      break;
  }
}

/// 0-based indices of covers whose π1-surjectivity the family's theorem needs.
inline std::vector<std::size_t> required_surjective_covers(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::Generic:
    case FamilyKind::DPS: {
      std::vector<std::size_t> idx(spec.k);
      for (std::size_t i = 0; i < spec.k; ++i) idx[i] = i;
      return idx;
    }
    case FamilyKind::Extended:
      return {*spec.m - 1, *spec.m};
    case FamilyKind::Degenerate:
      return {};
  }
  return {};
}

/// Names the covers whose required π1-surjectivity flag is missing.
inline std::vector<std::string> missing_surjectivity_flags(const FamilySpec& spec) {
  std::vector<std::string> missing;
  for (auto i : required_surjective_covers(spec))
    if (i >= spec.covers.size() || !spec.covers[i].pi1_surjective)
      missing.push_back("covers[" + std::to_string(i) + "].pi1_surjective");
  return missing;
}

/// True when the family is one whose theorem produces Kähler kernels and
/// every hypothesis the theorem needs (structure and flags) is present.
inline bool has_kahler_provenance(const FamilySpec& spec) {
  return spec.kind != FamilyKind::Degenerate && missing_surjectivity_flags(spec).empty();
}

enum class FlagPolicy {
  Require,  // missing π1-surjectivity flags are an error
  Record,   // accepted; Kähler provenance is simply absent
};

/// Block i of the result is (v_i ⊗ I_2) · cover_block_i, a 2k x 2γ_i matrix.
inline ProductHom build_hom_from_family(const FamilySpec& spec,
                                        FlagPolicy policy = FlagPolicy::Require) {
  validate_family_structure(spec);
  if (policy == FlagPolicy::Require) {
    auto missing = missing_surjectivity_flags(spec);
    if (!missing.empty())
      throw InputError(std::string(to_string(spec.kind)) + " family: " + missing.front() +
                       " must be asserted");
  }
  std::vector<int> genera;
  std::vector<IntMatrix> blocks;
  for (std::size_t i = 0; i < spec.r; ++i) {
    const auto& cover = spec.covers[i];
    const auto& v = spec.vectors.vectors[i];
    IntMatrix block(2 * spec.k, cover.block.cols());
    for (std::size_t j = 0; j < spec.k; ++j)
      for (std::size_t row = 0; row < 2; ++row)
        for (std::size_t c = 0; c < cover.block.cols(); ++c)
          block(2 * j + row, c) = v[j] * cover.block(row, c);
    genera.push_back(cover.genus);
    blocks.push_back(std::move(block));
  }
  return ProductHom(std::move(genera), spec.target_rank(), std::move(blocks));
}

/// |det B| for square nonsingular B, i.e. the index of B·Z^k in Z^k and the
/// degree of the induced regular covering of complex tori; nullopt otherwise.
inline std::optional<Int> torus_map_degree(const IntMatrix& B) {
  if (B.rows() != B.cols()) return std::nullopt;
  return lattice_index(image_lattice(B));
}

}  // namespace coabel
