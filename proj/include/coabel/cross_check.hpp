#pragma once

// Re-derives the analyzer's tuple classifications with the oracle module.

#include "coabel/analyzer.hpp"
#include "coabel/oracle.hpp"

#include <string>
#include <vector>

namespace coabel {

struct CrossCheckResult {
  std::size_t tuples_checked = 0;
  std::size_t residue_counts = 0;
  std::vector<std::string> disagreements;
  bool ok() const { return disagreements.empty(); }
};

inline std::string mask_label(FactorMask m) { return indices_json(m).dump(); }

/// Every nonempty T: rank shortcut, preimage-lattice index and oracle index
/// must agree. D and n' are recomputed by elimination on the raw input.
inline CrossCheckResult cross_check(const ProductHom& h, const AnalysisReport& rep) {
  CrossCheckResult out;
  auto fail = [&](std::string s) { out.disagreements.push_back(std::move(s)); };
  const std::size_t r = h.factor_count();
  if (r > kMaxFactors) throw InputError("cross_check: too many factors");
  const NormalizedHom nh = normalize(h);

  const std::size_t n = oracle::rank_by_elimination(h.concatenated());
  if (n != rep.effective_rank)
    fail("effective rank: report " + std::to_string(rep.effective_rank) + ", oracle " + std::to_string(n));

  std::optional<std::size_t> D;
  if (n > 0) {
    D = 0;
    for (FactorMask S = 1; S <= full_mask(r); ++S) {
      if (oracle::rank_by_elimination(h.blocks_for(mask_to_indices(S))) < n) D = std::max(*D, mask_size(S));
      if (S == full_mask(r)) break;
    }
  }
  if (D != rep.deficiency.max_size)
    fail("max deficient size: report " +
         (rep.deficiency.max_size ? std::to_string(*rep.deficiency.max_size) : std::string("none")) + ", oracle " +
         (D ? std::to_string(*D) : std::string("none")));

  for (FactorMask T = 1; T <= full_mask(r); ++T) {
    ++out.tuples_checked;
    const auto shortcut = tuple_projection_finite(nh, T);
    const auto proj = projection_of_kernel(nh, T);
    const auto brute = oracle::vsp_by_preimage(h, T);
    if (shortcut != brute.has_value())
      fail("tuple " + mask_label(T) + ": rank shortcut says " + (shortcut ? "finite" : "infinite") +
           ", oracle says " + (brute ? "finite" : "infinite"));
    if (proj.index != brute)
      fail("tuple " + mask_label(T) + ": preimage index " + (proj.index ? to_decimal(*proj.index) : "infinite") +
           ", oracle " + (brute ? to_decimal(*brute) : "infinite"));
    if (proj.index && proj.lattice.ambient_rank() <= oracle::kResidueAmbientBound &&
        *proj.index <= oracle::kResidueIndexBound) {
      ++out.residue_counts;
      const Int counted = oracle::index_by_residue_count(proj.lattice.basis());
      if (counted != *proj.index)
        fail("tuple " + mask_label(T) + ": lattice index " + to_decimal(*proj.index) + ", residue count " +
             to_decimal(counted));
    }
    if (mask_size(T) == 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(T));
      if (rep.subdirectness.size() == r && rep.subdirectness[i].index != brute)
        fail("factor " + std::to_string(i + 1) + ": reported subdirect index differs from oracle");
    }
    if (T == full_mask(r)) break;
  }
  return out;
}

}  // namespace coabel
