#pragma once

// The reproduction grid behind `coabel verify-paper`: finiteness types of the
// generated families, coverage of every F_m, the Kähler obstructions, the
// Betti formula, three-factor cases, degeneracy drops and oracle agreement.

#include "coabel/cross_check.hpp"
#include "coabel/family_forge.hpp"
#include "coabel/report_json.hpp"

#include <map>
#include <string>
#include <vector>

namespace coabel {

struct ReproductionOptions {
  std::size_t max_r = 7;
  bool clear_flags = false;       // drop every π1-surjectivity assertion
  std::size_t oracle_max_r = 6;
};

struct ReproductionRow {
  std::string claim;
  std::string instance;
  std::string expected;
  std::string actual;
  bool pass = false;
};

inline FamilySpec without_flags(FamilySpec spec) {
  for (auto& c : spec.covers) c.pi1_surjective = false;
  return spec;
}

inline std::string kahler_label(const KahlerVerdict& v) {
  std::string s = to_string(v.status);
  for (std::size_t i = 0; i < v.reasons.size(); ++i) s += (i ? "," : "(") + std::string(to_string(v.reasons[i]));
  if (!v.reasons.empty()) s += ")";
  return s;
}

inline ProductHom rank_one_hom(const std::vector<int>& genera) {
  std::vector<IntMatrix> blocks;
  for (int g : genera) {
    IntMatrix b(1, static_cast<std::size_t>(2 * g));
    for (int j = 0; j < g; ++j) b(0, static_cast<std::size_t>(2 * j)) = 1;
    blocks.push_back(std::move(b));
  }
  return ProductHom(genera, 1, std::move(blocks));
}

/// Every factor maps onto Z^n through its first n generators.
inline ProductHom coordinate_hom(std::size_t r, std::size_t n) {
  const int genus = std::max(2, static_cast<int>((n + 1) / 2));
  std::vector<IntMatrix> blocks;
  for (std::size_t i = 0; i < r; ++i) {
    IntMatrix b(n, static_cast<std::size_t>(2 * genus));
    for (std::size_t j = 0; j < n; ++j) b(j, j) = 1;
    blocks.push_back(std::move(b));
  }
  return ProductHom(std::vector<int>(r, genus), n, std::move(blocks));
}

inline std::vector<ReproductionRow> run_reproduction(const ReproductionOptions& opt = {}) {
  std::vector<ReproductionRow> rows;
  auto add = [&](std::string claim, std::string instance, std::string expected, std::string actual) {
    const bool pass = expected == actual;
    rows.push_back({std::move(claim), std::move(instance), std::move(expected), std::move(actual), pass});
  };
  const std::string kahler_expected = opt.clear_flags ? "Unknown" : "Kahler";
  std::map<std::pair<std::size_t, std::size_t>, std::string> coverage;  // (r, m) -> instance

  auto run_family = [&](const FamilySpec& raw, const std::string& name, std::size_t expected_m,
                        bool expect_irreducible) {
    const FamilySpec spec = opt.clear_flags ? without_flags(raw) : raw;
    const ProductHom h = build_hom_from_family(spec, FlagPolicy::Record);
    const AnalysisReport rep = analyze(h, &spec);
    const std::string type = type_label(rep.finiteness);
    add("finiteness type", name, "ExactType(" + std::to_string(expected_m) + ")", type);
    add("kahler verdict", name, kahler_expected, kahler_label(rep.kahler));
    if (expect_irreducible)
      add("irreducibility", name, "Irreducible", to_string(rep.irreducibility.status));
    else
      add("no product splitting", name, "not Reducible",
          rep.irreducibility.status == IrreducibilityStatus::Reducible ? "Reducible" : "not Reducible");
    if (rep.finiteness.kind == FinitenessKind::ExactType)
      coverage.emplace(std::make_pair(spec.r, rep.finiteness.m), name);
    if (spec.r <= opt.oracle_max_r) {
      const auto cc = cross_check(h, rep);
      add("oracle agreement", name, "0 disagreements",
          std::to_string(cc.disagreements.size()) + " disagreements");
    }
  };

  for (std::size_t r = 3; r <= opt.max_r; ++r)
    for (std::size_t k = 1; k + 2 <= r; ++k)
      run_family(make_generic_family(k, r, std::vector<int>(r, 2)),
                 "generic r=" + std::to_string(r) + " k=" + std::to_string(k), r - k, true);

  for (std::size_t r = 4; r <= opt.max_r; ++r)
    for (std::size_t m = 1; m + 3 <= r; ++m)
      for (bool variant : {false, true})
        run_family(make_extended_family(m, r, std::vector<int>(r, 2), variant),
                   "extended r=" + std::to_string(r) + " m=" + std::to_string(m) + (variant ? " v=(1,1)" : ""),
                   r - m - 1, false);

  for (std::size_t r = 3; r <= opt.max_r; ++r)
    for (std::size_t m = 2; m + 1 <= r; ++m) {
      auto it = coverage.find({r, m});
      add("coverage of F_m not F_{m+1}",
          "r=" + std::to_string(r) + " m=" + std::to_string(m) + (it == coverage.end() ? "" : " via " + it->second),
          "witnessed", it == coverage.end() ? "missing" : "witnessed");
    }

  for (std::size_t n : {1, 3, 5}) {
    const auto rep = analyze(coordinate_hom(4, n));
    const bool ok = rep.kahler.status == KahlerStatus::NotKahler && rep.kahler.has(Obstruction::OddRank);
    add("odd-rank obstruction", "r=4 n'=" + std::to_string(n), "NotKahler(OddRank)",
        ok ? "NotKahler(OddRank)" : kahler_label(rep.kahler));
  }

  for (std::size_t r = 3; r <= std::min<std::size_t>(5, opt.max_r); ++r)
    for (unsigned bits = 0; bits < (1u << r); ++bits) {
      std::vector<int> genera;
      int sum = 0;
      for (std::size_t i = 0; i < r; ++i) {
        genera.push_back((bits >> i) & 1 ? 3 : 2);
        sum += 2 * genera.back();
      }
      std::string name = "rank-one genera (";
      for (std::size_t i = 0; i < r; ++i) name += (i ? "," : "") + std::to_string(genera[i]);
      name += ")";
      const auto rep = analyze(rank_one_hom(genera));
      add("betti formula", name, std::to_string(sum - 1),
          rep.betti.value ? std::to_string(*rep.betti.value) : "unknown");
      add("odd-betti obstruction", name, "OddBetti", rep.kahler.has(Obstruction::OddBetti) ? "OddBetti" : "absent");
    }

  {
    const auto spec = make_generic_family(1, 3, {2, 2, 2});
    const auto rep = analyze(build_hom_from_family(spec));
    add("three-factor case", "generic r=3 k=1", "VirtuallyCoabelianEvenRank", to_string(rep.three_factor->label));
    const auto odd = analyze(rank_one_hom({2, 2, 2}));
    add("three-factor case", "rank-one r=3", "OddRankObstruction", to_string(odd.three_factor->label));
  }

  if (opt.max_r >= 6) {
    const auto spec = make_generic_family(1, 6, std::vector<int>(6, 2));
    const auto w = even_betti_witness(normalize(build_hom_from_family(spec)), {{0, 1}, {2, 3}, {4, 5}});
    add("even-betti witness", "generic r=6 k=1 blocks {1,2},{3,4},{5,6}", "applicable",
        w.applicable ? "applicable" : "not applicable");
  }

  if (opt.max_r >= 5) {
    for (const std::vector<std::size_t>& profile : {std::vector<std::size_t>{3, 1, 1}, {2, 1, 1, 1}, {2, 2, 1}}) {
      const auto spec = make_degenerate_family(2, 5, profile, std::vector<int>(5, 2));
      const auto rep = analyze_family(spec);
      std::string name = "degenerate k=2 r=5 profile (";
      for (std::size_t i = 0; i < profile.size(); ++i) name += (i ? "," : "") + std::to_string(profile[i]);
      name += ")";
      const std::size_t D = rep.deficiency.max_size.value_or(0);
      const bool drops = rep.finiteness.kind == FinitenessKind::ExactType && rep.finiteness.m < 5 - 2;
      add("degeneracy drop", name, "ExactType(" + std::to_string(5 - D - 1) + ") below 3",
          type_label(rep.finiteness) + (drops ? " below 3" : " not below 3"));
    }
  }
  return rows;
}

inline bool all_pass(const std::vector<ReproductionRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

}  // namespace coabel
