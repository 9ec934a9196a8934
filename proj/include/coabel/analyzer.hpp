#pragma once

// Invariants of ker(φ) for φ: Γ_{g_1} x ... x Γ_{g_r} -> Z^n given on H_1:
// virtual subdirectness, exact finiteness type, b_1, Kähler obstructions and
// irreducibility, each with a certificate.

#include "coabel/family.hpp"
#include "coabel/serialization.hpp"
#include "coabel/subsets.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace coabel {

struct Certificate {
  std::string claim;
  std::string justification;
  Json data = Json::object();
};

/// A ProductHom whose concatenated matrix maps onto Z^{target_rank}.
class NormalizedHom {
 public:
  const ProductHom& hom() const { return hom_; }
  std::size_t effective_rank() const { return hom_.target_rank(); }
  std::size_t factor_count() const { return hom_.factor_count(); }
  /// Target rank and image index of the hom this was normalized from.
  std::size_t original_target_rank() const { return original_rank_; }
  const std::optional<Int>& original_image_index() const { return original_index_; }
  bool was_surjective() const {
    return original_rank_ == effective_rank() && original_index_ && *original_index_ == 1;
  }

 private:
  NormalizedHom(ProductHom h, std::size_t original_rank, std::optional<Int> index)
      : hom_(std::move(h)), original_rank_(original_rank), original_index_(std::move(index)) {}
  friend NormalizedHom normalize(const ProductHom& h);

  ProductHom hom_;
  std::size_t original_rank_;
  std::optional<Int> original_index_;
};

/// Rewrites every block in the HNF basis of the image lattice of [A_1|...|A_r].
/// The image is free of rank n', so this is injective on the image and the
/// kernel does not change. Idempotent.
inline NormalizedHom normalize(const ProductHom& h) {
  const Lattice image = image_lattice(h.concatenated());
  std::vector<IntMatrix> blocks;
  blocks.reserve(h.factor_count());
  for (const auto& b : h.blocks()) {
    IntMatrix nb(image.rank(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
      auto coeff = image.coordinates(b.column(c));
      if (!coeff) throw InvariantViolation("normalize: block column outside its own image lattice");
      for (std::size_t r = 0; r < image.rank(); ++r) nb(r, c) = (*coeff)[r];
    }
    blocks.push_back(std::move(nb));
  }
  return NormalizedHom(ProductHom(h.genera(), image.rank(), std::move(blocks)), h.target_rank(),
                       lattice_index(image));
}

inline Json indices_json(FactorMask m) {
  Json arr = Json::array();
  for (auto i : mask_to_indices(m)) arr.push_back(i + 1);
  return arr;
}

inline Json lattice_json(const Lattice& L) {
  Json basis = Json::array();
  for (std::size_t j = 0; j < L.rank(); ++j) {
    Json col = Json::array();
    for (std::size_t i = 0; i < L.ambient_rank(); ++i) col.push_back(json_detail::int_to_json(L.basis()(i, j)));
    basis.push_back(std::move(col));
  }
  Json j;
  j["ambient_rank"] = L.ambient_rank();
  j["rank"] = L.rank();
  j["basis_columns"] = std::move(basis);
  return j;
}

inline Json index_json(const std::optional<Int>& index) {
  return index ? json_detail::int_to_json(*index) : Json("infinite");
}

// ---------------------------------------------------------------- fullness

inline Certificate fullness(const NormalizedHom& nh) {
  Certificate c;
  c.claim = "ker is full: it meets every factor nontrivially";
  c.justification =
      "each surface group of genus >= 2 is non-abelian, and the target is abelian, so the "
      "commutator subgroup of every factor lies in the kernel";
  c.data["factors"] = nh.factor_count();
  return c;
}

// ------------------------------------------------------ kernel projections

struct KernelProjection {
  Lattice lattice;             // abelianized image of p_T(ker) inside Z^{2 g_T}
  std::optional<Int> index;    // [Z^{2 g_T} : lattice], nullopt if infinite
};

/// p_T(ker φ) is the preimage under φ_T of φ_{T^c}(G_{T^c}); on H_1 this is
/// L_T = preimage_lattice(A_T, image_lattice(A_{T^c})). The image of an empty
/// block list is the zero lattice, so T = all factors yields the kernel lattice.
inline KernelProjection projection_of_kernel(const NormalizedHom& nh, FactorMask T) {
  const auto& h = nh.hom();
  if (T == 0) throw InputError("projection_of_kernel: T must be nonempty");
  if ((T & ~full_mask(h.factor_count())) != 0) throw InputError("projection_of_kernel: T out of range");
  const auto inside = mask_to_indices(T);
  const auto outside = mask_to_indices(full_mask(h.factor_count()) & ~T);
  Lattice L = preimage_lattice(h.blocks_for(inside), image_lattice(h.blocks_for(outside)));
  auto index = lattice_index(L);
  return {std::move(L), std::move(index)};
}

/// Rank shortcut: p_T(ker) has finite index iff the complementary blocks span Q^{n'}.
inline bool tuple_projection_finite(const NormalizedHom& nh, FactorMask T) {
  const auto& h = nh.hom();
  const auto outside = mask_to_indices(full_mask(h.factor_count()) & ~T);
  return rank(h.blocks_for(outside)) == nh.effective_rank();
}

enum class SubdirectStatus { Exact, FiniteIndex, InfiniteIndex };

inline const char* to_string(SubdirectStatus s) {
  switch (s) {
    case SubdirectStatus::Exact: return "Exact";
    case SubdirectStatus::FiniteIndex: return "FiniteIndex";
    case SubdirectStatus::InfiniteIndex: return "InfiniteIndex";
  }
  return "?";
}

struct FactorProjection {
  SubdirectStatus status;
  std::optional<Int> index;
};

inline std::vector<FactorProjection> subdirectness(const NormalizedHom& nh) {
  std::vector<FactorProjection> out;
  for (std::size_t i = 0; i < nh.factor_count(); ++i) {
    auto proj = projection_of_kernel(nh, FactorMask{1} << i);
    SubdirectStatus s = !proj.index        ? SubdirectStatus::InfiniteIndex
                        : *proj.index == 1 ? SubdirectStatus::Exact
                                           : SubdirectStatus::FiniteIndex;
    out.push_back({s, std::move(proj.index)});
  }
  return out;
}

// ---------------------------------------------------------------- deficiency

struct DeficiencyWitness {
  std::vector<std::size_t> subset;  // 0-based factor indices
  std::size_t rank_of_blocks = 0;
};

struct DeficiencyProfile {
  /// Largest |S| with rank(A_S) < n'; nullopt when n' = 0 (nothing is deficient).
  std::optional<std::size_t> max_size;
  /// Every deficient set of maximal size, lexicographically sorted.
  std::vector<DeficiencyWitness> witnesses;
};

struct AnalysisOptions {
  std::size_t max_enumeration_factors = 20;
  std::size_t split_search_max_factors = 12;
};

/// rank(A_S) for every S, indexed by mask. Each block is first replaced by a
/// basis of its image to keep the concatenations small.
inline std::vector<std::size_t> subset_ranks(const NormalizedHom& nh) {
  const auto& h = nh.hom();
  const std::size_t r = h.factor_count();
  std::vector<IntMatrix> reduced;
  for (const auto& b : h.blocks()) reduced.push_back(image_lattice(b).basis());
  std::vector<std::size_t> ranks(std::size_t{1} << r, 0);
  for (FactorMask S = 1; S <= full_mask(r) && S != 0; ++S) {
    std::vector<IntMatrix> parts;
    for (auto i : mask_to_indices(S)) parts.push_back(reduced[i]);
    ranks[S] = rank(hconcat_all(nh.effective_rank(), parts));
    if (S == full_mask(r)) break;
  }
  return ranks;
}

inline DeficiencyProfile deficiency_profile(const NormalizedHom& nh, const AnalysisOptions& opt = {}) {
  const std::size_t r = nh.factor_count(), n = nh.effective_rank();
  if (r > opt.max_enumeration_factors || r > kMaxFactors)
    throw InputError("deficiency_profile: " + std::to_string(r) + " factors exceeds the enumeration bound");
  DeficiencyProfile out;
  if (n == 0) return out;
  const auto ranks = subset_ranks(nh);
  std::size_t best = 0;
  std::vector<FactorMask> best_sets{0};
  for (FactorMask S = 1; S <= full_mask(r) && S != 0; ++S) {
    if (ranks[S] < n) {
      const std::size_t sz = mask_size(S);
      if (sz > best) {
        best = sz;
        best_sets.clear();
      }
      if (sz == best) best_sets.push_back(S);
    }
    if (S == full_mask(r)) break;
  }
  std::sort(best_sets.begin(), best_sets.end(), mask_lex_less);
  out.max_size = best;
  for (auto S : best_sets) out.witnesses.push_back({mask_to_indices(S), ranks[S]});
  return out;
}

// ---------------------------------------------------------------- finiteness

enum class FinitenessKind { FInfinity, ExactType, NotFinitelyGenerated };

struct Finiteness {
  FinitenessKind kind;
  std::size_t m = 0;  // ExactType only
  Certificate cert;
};

inline Finiteness finiteness_type(const NormalizedHom& nh, const DeficiencyProfile& profile) {
  const std::size_t r = nh.factor_count(), n = nh.effective_rank();
  Finiteness f{FinitenessKind::FInfinity, 0, {}};
  if (n == 0) {
    f.cert.claim = "ker is of type F_infinity";
    f.cert.justification = "the map is trivial, so the kernel is the whole product of surface groups";
    return f;
  }
  const std::size_t D = *profile.max_size;
  const auto& w = profile.witnesses.front();
  Json witness;
  witness["subset"] = indices_json(indices_to_mask(w.subset));
  witness["rank_of_blocks"] = w.rank_of_blocks;
  f.cert.data["max_deficient_size"] = D;
  f.cert.data["effective_rank"] = n;
  f.cert.data["witness"] = witness;
  if (r < D + 2) {
    f.kind = FinitenessKind::NotFinitelyGenerated;
    f.cert.claim = "ker is not finitely generated";
    f.cert.justification =
        "the blocks of all factors but one fail to span Q^n', so the projection of the kernel to "
        "the remaining factor has infinite index; a finitely generated full subgroup of a product "
        "of surface groups virtually surjects onto every factor";
    return f;
  }
  const std::size_t m = r - D - 1;
  f.kind = FinitenessKind::ExactType;
  f.m = m;
  f.cert.data["m"] = m;
  if (m == 1) {
    f.cert.claim = "ker is finitely generated but not of type F_2";
    f.cert.justification =
        "every single-factor projection has finite index (virtually subdirect, hence finitely "
        "generated after replacing factors by the projections); the witness is a deficient set of "
        "size r-2, so the kernel does not virtually surject onto pairs and is not finitely "
        "presented (type F_k implies virtual surjection onto k-tuples)";
  } else {
    f.cert.claim = "ker is of type F_" + std::to_string(m) + " but not of type F_" + std::to_string(m + 1);
    f.cert.justification =
        "every set of r-m factors spans Q^n', so the kernel virtually surjects onto m-tuples; it is "
        "coabelian, and for coabelian full subgroups virtual surjection onto m-tuples gives F_m. "
        "The witness is a deficient set of r-(m+1) factors, so some (m+1)-tuple is not virtually "
        "surjected and F_{m+1} fails";
  }
  return f;
}

// -------------------------------------------------------------------- betti

struct Betti {
  std::optional<std::size_t> value;  // nullopt: unknown by the available criteria
  Certificate cert;
};

inline bool block_surjective(const IntMatrix& A, std::size_t n) {
  auto snf = smith_normal_form(A);
  if (snf.rank != n) return false;
  return std::all_of(snf.diag.begin(), snf.diag.end(), [](const Int& d) { return d == 1; });
}

/// b_1(ker) = Σ 2 g_i - n' when the abelianization sequence is short exact.
inline Betti betti_kernel(const NormalizedHom& nh, const std::vector<FactorProjection>& subdirect) {
  const auto& h = nh.hom();
  const std::size_t n = nh.effective_rank();
  const std::size_t total = h.product_betti();
  Betti b;
  b.cert.data["sum_2g"] = total;
  b.cert.data["effective_rank"] = n;
  if (n == 0) {
    b.value = total;
    b.cert.claim = "b_1(ker) = " + std::to_string(total);
    b.cert.justification = "kernel is whole group";
    return b;
  }
  const bool cond1 = n == 1 && std::all_of(subdirect.begin(), subdirect.end(), [](const FactorProjection& p) {
                       return p.status == SubdirectStatus::Exact;
                     });
  Json surjective = Json::array();
  for (std::size_t i = 0; i < h.factor_count(); ++i)
    if (block_surjective(h.block(i), n)) surjective.push_back(i + 1);
  const bool cond2 = surjective.size() >= 3;
  b.cert.data["factors_onto_target"] = surjective;
  if (!cond1 && !cond2) {
    b.cert.claim = "b_1(ker) not determined";
    b.cert.justification =
        "neither sufficient condition for a short exact sequence on abelianizations holds "
        "(rank-one target with subdirect kernel; or at least three factors mapping onto the target)";
    return b;
  }
  b.value = total - n;
  b.cert.claim = "b_1(ker) = " + std::to_string(total - n);
  b.cert.justification =
      std::string("1 -> ker_ab -> (G_1 x ... x G_r)_ab -> Z^n' -> 1 is exact, so b_1(G) = n' + b_1(ker); ") +
      (cond1 ? "condition: n' = 1 and the kernel is subdirect"
             : "condition: the restriction to at least three factors is onto Z^n'");
  b.cert.data["condition"] = cond1 ? "rank-one target, subdirect kernel" : "three factors onto the target";
  return b;
}

// ------------------------------------------------------------------- kähler

enum class KahlerStatus { NotKahler, Kahler, Unknown };
enum class Obstruction { OddRank, OddBetti };

inline const char* to_string(KahlerStatus s) {
  switch (s) {
    case KahlerStatus::NotKahler: return "NotKahler";
    case KahlerStatus::Kahler: return "Kahler";
    case KahlerStatus::Unknown: return "Unknown";
  }
  return "?";
}

inline const char* to_string(Obstruction o) { return o == Obstruction::OddRank ? "OddRank" : "OddBetti"; }

struct KahlerVerdict {
  KahlerStatus status = KahlerStatus::Unknown;
  std::vector<Obstruction> reasons;  // every obstruction that fires, in rule order
  std::vector<Certificate> certs;

  bool has(Obstruction o) const { return std::find(reasons.begin(), reasons.end(), o) != reasons.end(); }
};

inline KahlerVerdict kahler_verdict(const NormalizedHom& nh, const Betti& betti, const FamilySpec* family) {
  KahlerVerdict v;
  const std::size_t n = nh.effective_rank();
  if (n % 2 == 1) {
    v.reasons.push_back(Obstruction::OddRank);
    Certificate c;
    c.claim = "ker is not Kähler (odd coabelian rank)";
    c.justification =
        "the kernel of an epimorphism from a product of surface groups onto Z^{2l+1} is not Kähler. "
        "Applied without a finite-presentability hypothesis";
    c.data["effective_rank"] = n;
    v.certs.push_back(std::move(c));
  }
  if (betti.value && *betti.value % 2 == 1) {
    v.reasons.push_back(Obstruction::OddBetti);
    Certificate c;
    c.claim = "ker is not Kähler (odd first Betti number)";
    c.justification = "b_1(G_1)+...+b_1(G_r) - n' = " + std::to_string(*betti.value) +
                      " is odd, and Kähler groups have even first Betti number";
    c.data["b1"] = *betti.value;
    v.certs.push_back(std::move(c));
  }
  if (!v.reasons.empty()) {
    v.status = KahlerStatus::NotKahler;
    return v;
  }
  if (family && has_kahler_provenance(*family)) {
    v.status = KahlerStatus::Kahler;
    Certificate c;
    c.claim = "ker is Kähler (indeed projective)";
    if (family->kind == FamilyKind::Extended) {
      c.justification =
          "extended family h = Σ v_i α_i : S_γ1 x ... x S_γr -> E x E with v_1 = ... = v_m = (1,0), "
          "v_{m+1} in {(0,1), (1,1)}, pairwise independent tail, and α_m, α_{m+1} surjective on π1; "
          "ker h_* is π1 of the connected smooth generic fibre, a compact projective manifold";
    } else {
      c.justification =
          "generic family h = Σ v_i α_i : S_γ1 x ... x S_γr -> E^k with property (P') and α_1..α_k "
          "surjective on π1; ker h_* is π1 of the connected smooth generic fibre, a compact projective "
          "manifold";
    }
    c.data["family"] = to_string(family->kind);
    Json flags = Json::array();
    for (auto i : required_surjective_covers(*family)) flags.push_back(i + 1);
    c.data["pi1_surjective_covers"] = flags;
    v.certs.push_back(std::move(c));
    return v;
  }
  Certificate c;
  c.claim = "Kähler status undetermined";
  c.justification = family ? "family hypotheses for the construction are not all asserted ("
                                 + std::string(family->kind == FamilyKind::Degenerate
                                                   ? "no construction theorem for degenerate families"
                                                   : "missing π1-surjectivity flags") + ")"
                           : "no obstruction fires and the hom has no construction provenance";
  v.certs.push_back(std::move(c));
  return v;
}

// ---------------------------------------------------------- irreducibility

struct Split {
  std::vector<std::size_t> left, right;  // 0-based
};

/// Exhaustive search over bipartitions {S, S^c} with S containing factor 0.
/// A split has Im(A_S) ∩ Im(A_{S^c}) = 0 and Im(A_S) + Im(A_{S^c}) = Im(A), in
/// which case ker = ker(φ_S) x ker(φ_{S^c}).
inline std::optional<Split> splitting_search(const NormalizedHom& nh, const AnalysisOptions& opt = {}) {
  const auto& h = nh.hom();
  const std::size_t r = h.factor_count();
  if (r < 2 || r > opt.split_search_max_factors) return std::nullopt;
  const Lattice total = image_lattice(h.concatenated());
  for (FactorMask S = 1; S < full_mask(r); S += 2) {  // odd masks contain factor 0
    const auto left = mask_to_indices(S);
    const auto right = mask_to_indices(full_mask(r) & ~S);
    const Lattice a = image_lattice(h.blocks_for(left));
    const Lattice b = image_lattice(h.blocks_for(right));
    if (lattice_intersection(a, b).rank() == 0 && lattice_sum(a, b) == total) return Split{left, right};
  }
  return std::nullopt;
}

enum class IrreducibilityStatus { Irreducible, Reducible, Unknown };

inline const char* to_string(IrreducibilityStatus s) {
  switch (s) {
    case IrreducibilityStatus::Irreducible: return "Irreducible";
    case IrreducibilityStatus::Reducible: return "Reducible";
    case IrreducibilityStatus::Unknown: return "Unknown";
  }
  return "?";
}

struct Irreducibility {
  IrreducibilityStatus status = IrreducibilityStatus::Unknown;
  std::optional<Split> partition;
  Certificate cert;
};

inline Json split_json(const Split& s) {
  Json p = Json::array();
  p.push_back(indices_json(indices_to_mask(s.left)));
  p.push_back(indices_json(indices_to_mask(s.right)));
  return p;
}

inline Irreducibility irreducibility(const NormalizedHom& nh, const Finiteness& fin,
                                     const std::vector<FactorProjection>& subdirect,
                                     const std::optional<Split>& split) {
  Irreducibility out;
  const auto& h = nh.hom();
  const std::size_t r = h.factor_count();
  if (split) {
    out.status = IrreducibilityStatus::Reducible;
    out.partition = split;
    out.cert.claim = "ker is a direct product across the partition";
    out.cert.justification =
        "the images of the two halves meet in 0 and together span the image, so "
        "ker = ker(φ restricted to one half) x ker(φ restricted to the other)";
    out.cert.data["partition"] = split_json(*split);
    return out;
  }
  auto unknown = [&](const std::string& why) {
    out.status = IrreducibilityStatus::Unknown;
    out.cert.claim = "irreducibility undetermined";
    out.cert.justification = "no bipartition splits the kernel, and the sufficient condition fails: " + why;
    return out;
  };
  if (fin.kind != FinitenessKind::ExactType || fin.m < 2) return unknown("finiteness type is not F_m with m >= 2");
  for (std::size_t i = 0; i < r; ++i) {
    if (subdirect[i].status == SubdirectStatus::InfiniteIndex)
      return unknown("projection to factor " + std::to_string(i + 1) + " has infinite index");
    if (h.block(i).is_zero()) return unknown("factor " + std::to_string(i + 1) + " has finite image");
  }
  const std::size_t tuple = 2 * fin.m;
  std::optional<FactorMask> surjected;
  for_each_combination(r, tuple, [&](const std::vector<std::size_t>& idx) {
    FactorMask T = indices_to_mask(idx);
    if (tuple_projection_finite(nh, T)) {
      surjected = T;
      return false;
    }
    return true;
  });
  if (surjected) {
    out.cert.data["surjected_tuple"] = indices_json(*surjected);
    return unknown("the kernel virtually surjects onto a " + std::to_string(tuple) + "-tuple");
  }
  out.status = IrreducibilityStatus::Irreducible;
  out.cert.claim = "ker is irreducible";
  out.cert.justification =
      "a virtual product splitting H_1 x H_2 of a full subdirect product of type F_m aligns with a "
      "bipartition of the factors and forces either a half of type F_infinity or a virtual surjection "
      "onto some 2m-tuple. A half of type F_infinity is virtually a product of finite-index factor "
      "subgroups, impossible because every factor has infinite image; and no 2m-tuple is virtually "
      "surjected (its complement never spans Q^n')";
  out.cert.data["m"] = fin.m;
  out.cert.data["tuple_size"] = tuple;
  return out;
}

// --------------------------------------------------------- even-betti witness

struct EvenBettiWitness {
  bool applicable = false;
  std::optional<Lattice> intersection;
  std::optional<Int> index;
  Certificate cert;
};

/// Three-block construction A = A_1 ∩ A_2 ∩ A_3 with A_j the image of block j.
/// Certifies that ker restricted to P = Π (φ^{-1}(A) ∩ P_j) has b_1 = b_1(P) - n',
/// which is even whenever the b_1(P_{j,0}) are (e.g. finite-index subgroups of Kähler groups).
inline EvenBettiWitness even_betti_witness(const NormalizedHom& nh,
                                           const std::vector<std::vector<std::size_t>>& blocks) {
  const auto& h = nh.hom();
  const std::size_t r = h.factor_count(), n = nh.effective_rank();
  if (blocks.size() != 3) throw InputError("even_betti_witness: exactly three index blocks are required");
  FactorMask seen = 0;
  for (const auto& blk : blocks)
    for (auto i : blk) {
      if (i >= r) throw InputError("even_betti_witness: factor index " + std::to_string(i + 1) + " out of range");
      if (seen & (FactorMask{1} << i))
        throw InputError("even_betti_witness: factor " + std::to_string(i + 1) + " appears in two blocks");
      seen |= FactorMask{1} << i;
    }
  if (seen != full_mask(r)) throw InputError("even_betti_witness: blocks do not cover every factor");

  EvenBettiWitness out;
  std::optional<Lattice> acc;
  Json per_block = Json::array();
  for (std::size_t j = 0; j < 3; ++j) {
    Lattice img = image_lattice(h.blocks_for(blocks[j]));
    if (img.rank() != n) {
      out.cert.claim = "even-Betti construction not applicable";
      out.cert.justification = "block " + std::to_string(j + 1) + " does not span Q^n' (rank " +
                               std::to_string(img.rank()) + " < " + std::to_string(n) + ")";
      out.cert.data["failing_block"] = j + 1;
      return out;
    }
    per_block.push_back(index_json(lattice_index(img)));
    acc = acc ? lattice_intersection(*acc, img) : img;
  }
  out.applicable = true;
  out.index = lattice_index(*acc);
  out.intersection = acc;
  out.cert.claim = "finite-index subgroup with b_1 = b_1(P) - n'";
  out.cert.justification =
      "A = A_1 ∩ A_2 ∩ A_3 has finite index; with P_j0 = φ^{-1}(A) ∩ P_j each block maps onto A, so "
      "condition (three factors onto the target) applies to P = P_10 x P_20 x P_30 -> A and "
      "b_1(ker ∩ P) = b_1(P_10) + b_1(P_20) + b_1(P_30) - n'. When the P_j are Kähler each b_1(P_j0) is "
      "even, so this finite-index subgroup has even first Betti number";
  out.cert.data["intersection"] = lattice_json(*acc);
  out.cert.data["index"] = index_json(out.index);
  out.cert.data["block_image_indices"] = per_block;
  return out;
}

// ----------------------------------------------------- three-factor products

enum class ThreeFactorCase { WholeProduct, VirtuallyProduct, VirtuallyCoabelianEvenRank, OddRankObstruction };

inline const char* to_string(ThreeFactorCase c) {
  switch (c) {
    case ThreeFactorCase::WholeProduct: return "WholeProduct";
    case ThreeFactorCase::VirtuallyProduct: return "VirtuallyProduct";
    case ThreeFactorCase::VirtuallyCoabelianEvenRank: return "VirtuallyCoabelianEvenRank";
    case ThreeFactorCase::OddRankObstruction: return "OddRankObstruction";
  }
  return "?";
}

struct ThreeFactorClassification {
  ThreeFactorCase label;
  Certificate cert;
};

inline ThreeFactorClassification three_factor_classify(const NormalizedHom& nh, const AnalysisOptions& opt = {}) {
  if (nh.factor_count() != 3) throw InputError("three_factor_classify: requires exactly 3 factors");
  const std::size_t n = nh.effective_rank();
  ThreeFactorClassification out{ThreeFactorCase::WholeProduct, {}};
  out.cert.data["effective_rank"] = n;
  const std::string theorem =
      "five-way classification of Kähler groups mapping to a product of three surface groups "
      "(surface group; Z^k; virtually Z^k x surface group; virtually a product with two surface "
      "factors; virtually coabelian of even rank)";
  if (n == 0) {
    out.cert.claim = "ker is the whole product Γ_1 x Γ_2 x Γ_3";
    out.cert.justification = "trivial map; product case of the " + theorem;
    return out;
  }
  if (auto split = splitting_search(nh, opt)) {
    out.label = ThreeFactorCase::VirtuallyProduct;
    out.cert.claim = "ker is a direct product across a bipartition";
    out.cert.justification = "kernel splits; product cases of the " + theorem;
    out.cert.data["partition"] = split_json(*split);
    return out;
  }
  if (n % 2 == 1) {
    out.label = ThreeFactorCase::OddRankObstruction;
    out.cert.claim = "ker is coabelian of odd rank, hence not Kähler";
    out.cert.justification = "only the even-rank coabelian case of the " + theorem + " is coabelian";
    return out;
  }
  out.label = ThreeFactorCase::VirtuallyCoabelianEvenRank;
  out.cert.claim = "ker is coabelian of even rank " + std::to_string(n);
  out.cert.justification = "irreducible coabelian kernel: the virtually coabelian even-rank case of the " + theorem;
  return out;
}

// ------------------------------------------------------------------- report

struct AnalysisReport {
  std::size_t factor_count = 0;
  std::size_t target_rank = 0;
  std::size_t effective_rank = 0;
  bool surjective_onto_target = false;
  Certificate fullness;
  std::vector<FactorProjection> subdirectness;
  DeficiencyProfile deficiency;
  Finiteness finiteness;
  Betti betti;
  KahlerVerdict kahler;
  Irreducibility irreducibility;
  std::optional<ThreeFactorClassification> three_factor;
  std::vector<Certificate> certificates;

  std::size_t coabelian_rank() const { return effective_rank; }
};

inline void check_report_invariants(const AnalysisReport& rep, const ProductHom& h) {
  const std::size_t r = rep.factor_count;
  if (rep.finiteness.kind == FinitenessKind::ExactType) {
    const std::size_t m = rep.finiteness.m;
    if (!rep.deficiency.max_size || m + *rep.deficiency.max_size + 1 != r || m < 1 || m > r - 1)
      throw InvariantViolation("finiteness exponent inconsistent with the deficiency profile");
  }
  if (rep.betti.value && *rep.betti.value != h.product_betti() - rep.effective_rank)
    throw InvariantViolation("betti value differs from sum 2g_i - n'");
  if (rep.kahler.has(Obstruction::OddRank) && rep.effective_rank % 2 == 0)
    throw InvariantViolation("odd-rank obstruction on even rank");
  if (rep.kahler.has(Obstruction::OddBetti) && !(rep.betti.value && *rep.betti.value % 2 == 1))
    throw InvariantViolation("odd-Betti obstruction without an odd Betti value");
}

inline AnalysisReport analyze(const ProductHom& h, const FamilySpec* family = nullptr,
                              const AnalysisOptions& opt = {}) {
  const NormalizedHom nh = normalize(h);
  AnalysisReport rep;
  rep.factor_count = h.factor_count();
  rep.target_rank = h.target_rank();
  rep.effective_rank = nh.effective_rank();
  rep.surjective_onto_target = nh.was_surjective();

  Certificate norm;
  norm.claim = "coabelian rank " + std::to_string(rep.effective_rank);
  norm.justification =
      "the image of [A_1|...|A_r] is a free subgroup of rank n' of Z^n; rewriting in its basis gives an "
      "epimorphism onto Z^n' with the same kernel";
  norm.data["target_rank"] = rep.target_rank;
  norm.data["effective_rank"] = rep.effective_rank;
  norm.data["image_index"] = index_json(nh.original_image_index());
  norm.data["surjective_onto_target"] = rep.surjective_onto_target;
  rep.certificates.push_back(norm);

  rep.fullness = fullness(nh);
  rep.certificates.push_back(rep.fullness);

  rep.subdirectness = subdirectness(nh);
  {
    Certificate c;
    c.claim = "per-factor projections of ker";
    c.justification =
        "p_i(ker) is the preimage of the image of the other factors; its abelianized index is "
        "computed as [Z^{2g_i} : preimage_lattice(A_i, Im A_{others})]";
    Json idx = Json::array();
    for (const auto& p : rep.subdirectness) idx.push_back(index_json(p.index));
    c.data["indices"] = idx;
    rep.certificates.push_back(std::move(c));
  }

  rep.deficiency = deficiency_profile(nh, opt);
  rep.finiteness = finiteness_type(nh, rep.deficiency);
  rep.certificates.push_back(rep.finiteness.cert);

  rep.betti = betti_kernel(nh, rep.subdirectness);
  rep.certificates.push_back(rep.betti.cert);

  rep.kahler = kahler_verdict(nh, rep.betti, family);
  for (const auto& c : rep.kahler.certs) rep.certificates.push_back(c);

  rep.irreducibility = irreducibility(nh, rep.finiteness, rep.subdirectness, splitting_search(nh, opt));
  rep.certificates.push_back(rep.irreducibility.cert);

  if (h.factor_count() == 3) {
    rep.three_factor = three_factor_classify(nh, opt);
    rep.certificates.push_back(rep.three_factor->cert);
  }
  check_report_invariants(rep, h);
  return rep;
}

/// Analyzes the hom built from a family; missing π1 flags only remove Kähler provenance.
inline AnalysisReport analyze_family(const FamilySpec& spec, const AnalysisOptions& opt = {}) {
  return analyze(build_hom_from_family(spec, FlagPolicy::Record), &spec, opt);
}

}  // namespace coabel
