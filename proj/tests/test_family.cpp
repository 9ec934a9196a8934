#include "coabel/family.hpp"

#include <gtest/gtest.h>

using namespace coabel;

namespace {

VectorSet vs2(std::initializer_list<std::pair<long long, long long>> xs) {
  VectorSet v{2, {}};
  for (auto [a, b] : xs) v.vectors.push_back({Int(a), Int(b)});
  return v;
}

FamilySpec generic_spec(std::size_t k, VectorSet vectors) {
  FamilySpec s;
  s.kind = FamilyKind::Generic;
  s.k = k;
  s.r = vectors.size();
  for (std::size_t i = 0; i < s.r; ++i) s.covers.push_back(default_cover(2, i < k));
  s.vectors = std::move(vectors);
  return s;
}

}  // namespace

TEST(PropertyP, Examples) {
  EXPECT_EQ(check_property_P(vs2({{1, 0}, {0, 1}, {1, 1}, {1, 2}})), true);
  EXPECT_EQ(check_property_P(vs2({{1, 0}, {1, 0}})), false);
  EXPECT_EQ(check_property_P(VectorSet{3, {unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)}}), true);
  EXPECT_FALSE(check_property_P(vs2({{1, 0}})).has_value());
}

TEST(PropertyP, NeedsAUnimodularSubset) {
  EXPECT_EQ(check_property_P(vs2({{2, 0}, {0, 2}, {2, 2}})), false);
}

TEST(PropertyPPrime, Examples) {
  EXPECT_EQ(check_property_P_prime(vs2({{1, 0}, {0, 1}, {1, 1}, {1, 2}})), true);
  EXPECT_EQ(check_property_P_prime(vs2({{0, 1}, {1, 0}, {1, 1}})), false);
  EXPECT_EQ(check_property_P_prime(vs2({{2, 0}, {0, 1}})), false);
}

TEST(Cover, Validation) {
  EXPECT_NO_THROW(default_cover(3, true).validate("c"));
  CoverData bad{2, IntMatrix::from_rows({{1, 0, 1, 0}, {1, 0, 1, 0}}), false};
  EXPECT_THROW(bad.validate("c"), InputError);
  CoverData index2{2, IntMatrix::from_rows({{2, 0, 0, 0}, {0, 1, 0, 0}}), true};
  EXPECT_THROW(index2.validate("c"), InputError);
  index2.pi1_surjective = false;
  EXPECT_NO_THROW(index2.validate("c"));
}

TEST(BuildHom, GenericRankOne) {
  VectorSet v{1, {{Int(1)}, {Int(1)}, {Int(1)}}};
  auto h = build_hom_from_family(generic_spec(1, v));
  EXPECT_EQ(h.target_rank(), 2u);
  ASSERT_EQ(h.factor_count(), 3u);
  for (const auto& b : h.blocks()) EXPECT_EQ(b, IntMatrix::from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}}));
}

TEST(BuildHom, GenericRankTwoStacksCoverBlock) {
  auto h = build_hom_from_family(generic_spec(2, vs2({{1, 0}, {0, 1}, {1, 1}, {1, 2}})));
  EXPECT_EQ(h.target_rank(), 4u);
  EXPECT_EQ(h.block(2), IntMatrix::from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}));
  EXPECT_EQ(h.block(3), IntMatrix::from_rows({{1, 0, 1, 0}, {0, 1, 0, 1}, {2, 0, 2, 0}, {0, 2, 0, 2}}));
  EXPECT_EQ(rank(h.concatenated()), 4u);
}

TEST(BuildHom, RankOneCoverRejected) {
  auto s = generic_spec(1, VectorSet{1, {{Int(1)}, {Int(1)}, {Int(1)}}});
  s.covers[2].block = IntMatrix::from_rows({{1, 0, 0, 0}, {0, 0, 0, 0}});
  EXPECT_THROW(build_hom_from_family(s), InputError);
}

TEST(BuildHom, FlagsRequiredUnlessRecorded) {
  auto s = generic_spec(2, vs2({{1, 0}, {0, 1}, {1, 1}, {1, 2}}));
  s.covers[1].pi1_surjective = false;
  try {
    build_hom_from_family(s);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("covers[1].pi1_surjective"), std::string::npos);
  }
  EXPECT_NO_THROW(build_hom_from_family(s, FlagPolicy::Record));
  EXPECT_FALSE(has_kahler_provenance(s));
}

TEST(BuildHom, PropertyFailureNamed) {
  auto s = generic_spec(2, vs2({{1, 0}, {0, 1}, {1, 1}, {2, 2}}));
  try {
    build_hom_from_family(s);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("(P')"), std::string::npos);
  }
}

TEST(BuildHom, ExtendedConditions) {
  FamilySpec s;
  s.kind = FamilyKind::Extended;
  s.k = 2;
  s.r = 5;
  s.m = 2;
  s.vectors = vs2({{1, 0}, {1, 0}, {0, 1}, {1, 1}, {1, -1}});
  for (std::size_t i = 0; i < 5; ++i) s.covers.push_back(default_cover(2, i == 1 || i == 2));
  EXPECT_NO_THROW(build_hom_from_family(s));
  auto bad = s;
  bad.vectors.vectors[4] = {Int(2), Int(2)};
  EXPECT_THROW(build_hom_from_family(bad), InputError);
  auto short_r = s;
  short_r.m = 3;
  EXPECT_THROW(build_hom_from_family(short_r), InputError);
}

TEST(TorusMap, Degree) {
  EXPECT_EQ(torus_map_degree(IntMatrix::identity(2)), Int(1));
  EXPECT_EQ(torus_map_degree(IntMatrix::from_rows({{2, 0}, {0, 1}})), Int(2));
  EXPECT_FALSE(torus_map_degree(IntMatrix::from_rows({{1, 0, 0}, {0, 1, 0}})).has_value());
  EXPECT_FALSE(torus_map_degree(IntMatrix::from_rows({{1, 1}, {1, 1}})).has_value());
}
