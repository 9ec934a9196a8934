#include "coabel/family_forge.hpp"
#include "coabel/serialization.hpp"

#include <gtest/gtest.h>

using namespace coabel;

namespace {
IntVector v2(long long a, long long b) { return {Int(a), Int(b)}; }
}  // namespace

TEST(GenerateP, RankOne) {
  auto vs = generate_P_prime(1, 3);
  EXPECT_EQ(vs.vectors, (std::vector<IntVector>{{Int(1)}, {Int(1)}, {Int(1)}}));
}

TEST(GenerateP, RankTwoGreedyOrder) {
  auto vs = generate_P_prime(2, 4);
  EXPECT_EQ(vs.vectors, (std::vector<IntVector>{v2(1, 0), v2(0, 1), v2(1, 1), v2(1, -1)}));
  EXPECT_EQ(check_property_P_prime(vs), true);
}

TEST(GenerateP, SquareIsStandardBasis) {
  auto vs = generate_P_prime(3, 3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(vs.vectors[i], unit_vector(3, i));
}

TEST(GenerateP, SeedsValidatedNotRepaired) {
  GeneratorConfig cfg{{v2(1, 0), v2(0, 1), v2(1, 2)}};
  auto vs = generate_P_prime(2, 4, cfg);
  EXPECT_EQ(vs.vectors[2], v2(1, 2));
  EXPECT_EQ(check_property_P_prime(vs), true);
  EXPECT_THROW(generate_P_prime(2, 4, GeneratorConfig{{v2(0, 1)}}), InputError);
  EXPECT_THROW(generate_P_prime(2, 4, GeneratorConfig{{v2(1, 0), v2(0, 1), v2(2, 0)}}), InputError);
}

TEST(GenericFamily, Ranges) {
  EXPECT_NO_THROW(make_generic_family(2, 4, {2, 2, 2, 2}));
  EXPECT_THROW(make_generic_family(3, 4, {2, 2, 2, 2}), InputError);
  EXPECT_THROW(make_generic_family(1, 3, {2, 1, 2}), InputError);
  EXPECT_THROW(make_generic_family(1, 3, {2, 2}), InputError);
}

TEST(GenericFamily, FlagsOnFirstK) {
  auto s = make_generic_family(2, 5, {2, 2, 2, 2, 2});
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s.covers[i].pi1_surjective, i < 2);
  auto v = make_generic_family(2, 5, {2, 2, 2, 2, 2}, {}, true);
  EXPECT_EQ(v.vectors.vectors[2], v2(1, 1));
  EXPECT_TRUE(v.covers[2].pi1_surjective);
  EXPECT_NO_THROW(build_hom_from_family(v));
}

TEST(ExtendedFamily, Shape) {
  auto s = make_extended_family(2, 5, {2, 2, 2, 2, 2});
  EXPECT_EQ(s.vectors.vectors[0], v2(1, 0));
  EXPECT_EQ(s.vectors.vectors[1], v2(1, 0));
  EXPECT_EQ(s.vectors.vectors[2], v2(0, 1));
  EXPECT_FALSE(extended_condition_violation(s.vectors, 2).has_value());
  EXPECT_TRUE(s.covers[1].pi1_surjective);
  EXPECT_TRUE(s.covers[2].pi1_surjective);
  EXPECT_FALSE(s.covers[0].pi1_surjective);
  auto var = make_extended_family(1, 4, {2, 2, 2, 2}, true);
  EXPECT_EQ(var.vectors.vectors[1], v2(1, 1));
  EXPECT_THROW(make_extended_family(2, 4, {2, 2, 2, 2}), InputError);
}

TEST(DegenerateFamily, Profiles) {
  auto s = make_degenerate_family(2, 5, {3, 1, 1}, {2, 2, 2, 2, 2});
  EXPECT_EQ(s.kind, FamilyKind::Degenerate);
  EXPECT_EQ(s.vectors.vectors, (std::vector<IntVector>{v2(1, 0), v2(1, 0), v2(1, 0), v2(0, 1), v2(1, 1)}));
  auto plain = make_degenerate_family(2, 5, {1, 1, 1, 1, 1}, {2, 2, 2, 2, 2});
  EXPECT_EQ(plain, make_generic_family(2, 5, {2, 2, 2, 2, 2}));
  EXPECT_THROW(make_degenerate_family(2, 5, {3, 1}, {2, 2, 2, 2, 2}), InputError);
  EXPECT_THROW(make_degenerate_family(2, 5, {5, 0}, {2, 2, 2, 2, 2}), InputError);
}

TEST(Forge, Deterministic) {
  EXPECT_EQ(serialize_family(make_generic_family(3, 7, std::vector<int>(7, 2))),
            serialize_family(make_generic_family(3, 7, std::vector<int>(7, 2))));
}
