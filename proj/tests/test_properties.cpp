// Randomized invariants over the normal forms, lattices and the analyzer.

#include "coabel/cross_check.hpp"
#include "coabel/family_forge.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace coabel;
using coabel::fixtures::random_matrix;

namespace {

IntMatrix padded_diag(const SmithDecomposition& s, std::size_t rows, std::size_t cols) {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < s.diag.size(); ++i) d(i, i) = s.diag[i];
  return d;
}

Lattice random_full_lattice(std::mt19937_64& rng, std::size_t n, long long bound) {
  for (;;) {
    auto m = random_matrix(rng, n, n, bound);
    if (rank(m) == n) return image_lattice(m);
  }
}

}  // namespace

TEST(SmithProperties, RandomMatrices) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> dim(0, 6);
  for (int i = 0; i < 500; ++i) {
    const std::size_t r = dim(rng), c = dim(rng);
    auto a = random_matrix(rng, r, c, 100);
    auto s = smith_normal_form(a);
    ASSERT_EQ(s.left * a * s.right, padded_diag(s, r, c)) << to_string(a);
    ASSERT_EQ(abs(fixtures::det_leibniz(s.left)), 1);
    ASSERT_EQ(abs(fixtures::det_leibniz(s.right)), 1);
    ASSERT_EQ(s.diag.size(), s.rank);
    for (std::size_t t = 0; t < s.diag.size(); ++t) {
      ASSERT_GT(s.diag[t], 0);
      if (t + 1 < s.diag.size()) {
        ASSERT_EQ(s.diag[t + 1] % s.diag[t], 0);
      }
    }
    if (r <= 4 && c <= 4) {
      Int prod = 1;
      for (std::size_t t = 1; t <= std::min(r, c); ++t) {
        if (t <= s.rank) {
          prod *= s.diag[t - 1];
        }
        ASSERT_EQ(fixtures::minor_gcd(a, t), t <= s.rank ? prod : Int(0)) << to_string(a);
      }
    }
  }
}

TEST(HermiteProperties, CanonicalUnderUnimodularActions) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(0, 6);
  for (int i = 0; i < 500; ++i) {
    const std::size_t r = dim(rng), c = dim(rng);
    auto a = random_matrix(rng, r, c, 100);
    auto h = hermite_normal_form(a);
    ASSERT_EQ(a * h.U, h.H);
    ASSERT_EQ(abs(fixtures::det_leibniz(h.U)), 1);
    auto b1 = a * fixtures::random_unimodular(rng, c);
    auto b2 = a * fixtures::random_unimodular(rng, c);
    ASSERT_EQ(image_lattice(b1).basis(), image_lattice(b2).basis());
    ASSERT_EQ(image_lattice(b1), image_lattice(a));
  }
}

TEST(LatticeProperties, IndexMultiplicativity) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
    auto l1 = random_full_lattice(rng, n, 4), l2 = random_full_lattice(rng, n, 4);
    auto meet = lattice_intersection(l1, l2), join = lattice_sum(l1, l2);
    ASSERT_EQ(*lattice_index(meet) * *lattice_index(join), *lattice_index(l1) * *lattice_index(l2));
    for (const auto* L : {&l1, &l2, &meet, &join}) {
      if (*lattice_index(*L) <= oracle::kResidueIndexBound) {
        ASSERT_EQ(oracle::index_by_residue_count(L->basis()), *lattice_index(*L));
      }
    }
  }
}

TEST(LatticeProperties, PreimageOfOwnImageIsEverything) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto a = random_matrix(rng, 3, 4, 6);
    ASSERT_EQ(preimage_lattice(a, image_lattice(a)), Lattice::full(4));
  }
}

TEST(LatticeProperties, MembershipMatchesResidues) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    auto L = random_full_lattice(rng, 2, 3);
    auto idx = *lattice_index(L);
    std::size_t hits = 0;
    const long long span = static_cast<long long>(idx);
    for (long long x = 0; x < span; ++x)
      for (long long y = 0; y < span; ++y)
        if (L.contains(IntVector{Int(x), Int(y)})) ++hits;
    // idx * Z^2 lies in L, so the box holds one point per coset of idx * Z^2 in L.
    ASSERT_EQ(Int(hits), idx);
  }
}

TEST(AnalyzerProperties, RandomHoms) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::size_t> rd(1, 6), nd(0, 4);
  for (int i = 0; i < 200; ++i) {
    auto h = fixtures::random_hom(rng, rd(rng), nd(rng), 5);
    const auto nh = normalize(h);
    ASSERT_EQ(normalize(nh.hom()).hom(), nh.hom());
    ASSERT_EQ(kernel_lattice(nh.hom().concatenated()), kernel_lattice(h.concatenated()));
    const auto rep = analyze(h);
    const auto cc = cross_check(h, rep);
    ASSERT_TRUE(cc.ok()) << cc.disagreements.front() << "\n" << serialize_hom(h);
    const auto subsets = subset_ranks(nh);
    for (const auto& w : rep.deficiency.witnesses) {
      const FactorMask S = indices_to_mask(w.subset);
      for (FactorMask sub = S;; sub = (sub - 1) & S) {
        ASSERT_LT(subsets[sub], rep.effective_rank);
        if (sub == 0) break;
      }
    }
    if (rep.finiteness.kind == FinitenessKind::ExactType && rep.finiteness.m >= 2)
      for_each_combination(h.factor_count(), rep.finiteness.m, [&](const std::vector<std::size_t>& T) {
        EXPECT_TRUE(projection_of_kernel(nh, indices_to_mask(T)).index.has_value());
        return true;
      });
    for (std::size_t f = 0; f < h.factor_count(); ++f) {
      const auto p = projection_of_kernel(nh, FactorMask{1} << f);
      ASSERT_EQ(p.index.has_value(), rep.subdirectness[f].status != SubdirectStatus::InfiniteIndex);
      ASSERT_EQ(p.index == Int(1), rep.subdirectness[f].status == SubdirectStatus::Exact);
    }
  }
}

TEST(AnalyzerProperties, DeficiencyDownwardClosedUpToEight) {
  for (std::size_t r = 3; r <= 8; ++r)
    for (std::size_t k = 1; k + 2 <= r; ++k) {
      const auto nh = normalize(build_hom_from_family(make_generic_family(k, r, std::vector<int>(r, 2))));
      const auto ranks = subset_ranks(nh);
      for (FactorMask S = 1; S <= full_mask(r); ++S) {
        if (ranks[S] < nh.effective_rank()) {
          for (std::size_t i = 0; i < r; ++i) {
            if (S >> i & 1) {
              ASSERT_LT(ranks[S & ~(FactorMask{1} << i)], nh.effective_rank());
            }
          }
        }
        if (S == full_mask(r)) break;
      }
    }
}
