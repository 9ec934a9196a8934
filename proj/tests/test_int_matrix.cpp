#include "coabel/int_matrix.hpp"

#include <gtest/gtest.h>

using namespace coabel;

TEST(IntMatrix, ConstructionChecksEntryCount) {
  EXPECT_THROW(IntMatrix(2, 2, std::vector<Int>(3)), InputError);
  IntMatrix m(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(m(1, 2), 6);
  EXPECT_EQ(m.column(1), (IntVector{2, 5}));
}

TEST(IntMatrix, EmptyShapesAreLegal) {
  IntMatrix a(0, 3), b(3, 0);
  EXPECT_EQ((a * IntMatrix(3, 2)).rows(), 0u);
  EXPECT_EQ((b * IntMatrix(0, 2)), IntMatrix(3, 2));
  EXPECT_TRUE(b.is_zero());
}

TEST(IntMatrix, ProductAndTranspose) {
  auto a = IntMatrix::from_rows({{1, 2}, {3, 4}});
  auto b = IntMatrix::from_rows({{0, 1}, {1, 0}});
  EXPECT_EQ(a * b, IntMatrix::from_rows({{2, 1}, {4, 3}}));
  EXPECT_EQ(a.transpose(), IntMatrix::from_rows({{1, 3}, {2, 4}}));
}

TEST(IntMatrix, ConcatenationAndSelection) {
  auto a = IntMatrix::from_rows({{1}, {2}});
  auto b = IntMatrix::from_rows({{3, 4}, {5, 6}});
  auto c = hconcat(a, b);
  EXPECT_EQ(c, IntMatrix::from_rows({{1, 3, 4}, {2, 5, 6}}));
  std::vector<std::size_t> cols{2, 0};
  EXPECT_EQ(c.select_columns(cols), IntMatrix::from_rows({{4, 1}, {6, 2}}));
  EXPECT_EQ(c.select_rows(1, 1), IntMatrix::from_rows({{2, 5, 6}}));
  EXPECT_THROW(hconcat(a, IntMatrix(3, 1)), InputError);
}

TEST(IntMatrix, BigEntriesStayExact) {
  IntMatrix m(1, 1);
  m(0, 0) = Int(1) << 100;
  auto sq = m * m;
  EXPECT_EQ(sq(0, 0), Int(1) << 200);
  EXPECT_EQ(to_decimal(Int(1) << 64), "18446744073709551616");
  EXPECT_EQ(*parse_decimal("-18446744073709551616"), -(Int(1) << 64));
  EXPECT_FALSE(parse_decimal("12a").has_value());
}
