#pragma once

// Slow reference computations. Nothing here uses normal_form.hpp or
// lattice.hpp; only the integer type and the plain matrix container are shared.

#include "coabel/bigint.hpp"
#include "coabel/errors.hpp"
#include "coabel/int_matrix.hpp"
#include "coabel/product_hom.hpp"
#include "coabel/subsets.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

namespace coabel::oracle {

/// Bareiss fraction-free elimination with row pivoting.
inline std::size_t rank_by_elimination(const IntMatrix& A) {
  std::vector<std::vector<Int>> m(A.rows(), std::vector<Int>(A.cols()));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) m[i][j] = A(i, j);
  std::size_t rk = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < A.cols() && rk < A.rows(); ++c) {
    std::size_t p = rk;
    while (p < A.rows() && m[p][c] == 0) ++p;
    if (p == A.rows()) continue;
    std::swap(m[p], m[rk]);
    for (std::size_t i = rk + 1; i < A.rows(); ++i) {
      for (std::size_t j = c + 1; j < A.cols(); ++j) m[i][j] = (m[rk][c] * m[i][j] - m[i][c] * m[rk][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[rk][c];
    ++rk;
  }
  return rk;
}

struct TaggedRow {
  std::vector<Int> value;
  std::vector<Int> tag;
};

/// Row-style Euclidean echelon: for each coordinate in turn, repeatedly reduce
/// all rows by the one of least nonzero |entry| until a single row is left
/// with a nonzero entry there; that row is retired as the pivot. Tags follow
/// the same row operations. Returns (pivot rows, rows that became zero).
inline std::pair<std::vector<TaggedRow>, std::vector<TaggedRow>> euclid_echelon(std::vector<TaggedRow> rows,
                                                                               std::size_t dim) {
  std::vector<TaggedRow> pivots;
  for (std::size_t c = 0; c < dim; ++c) {
    while (true) {
      std::optional<std::size_t> best;
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].value[c] == 0) continue;
        ++nonzero;
        if (!best || abs(rows[i].value[c]) < abs(rows[*best].value[c])) best = i;
      }
      if (!best) break;
      if (nonzero == 1) {
        pivots.push_back(rows[*best]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*best));
        break;
      }
      const TaggedRow piv = rows[*best];
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == *best || rows[i].value[c] == 0) continue;
        const Int q = rows[i].value[c] / piv.value[c];  // truncation; remainder is smaller than the pivot
        for (std::size_t j = 0; j < dim; ++j) rows[i].value[j] -= q * piv.value[j];
        for (std::size_t j = 0; j < rows[i].tag.size(); ++j) rows[i].tag[j] -= q * piv.tag[j];
      }
    }
  }
  return {std::move(pivots), std::move(rows)};
}

/// Index in Z^dim of the subgroup generated by gens, nullopt if infinite.
inline std::optional<Int> generated_index(const std::vector<std::vector<Int>>& gens, std::size_t dim) {
  std::vector<TaggedRow> rows;
  for (const auto& g : gens) rows.push_back({g, {}});
  auto [pivots, rest] = euclid_echelon(std::move(rows), dim);
  if (pivots.size() != dim) return std::nullopt;
  Int idx = 1;
  std::size_t c = 0;
  for (const auto& p : pivots) {
    while (p.value[c] == 0) ++c;
    idx *= abs(p.value[c]);
    ++c;
  }
  return idx;
}

/// [Z^{2g_T} : {u : A_T u ∈ Im A_{T^c}}], computed from an integral basis of the
/// solution space of A_T u - B w = 0 with B the columns of the other blocks.
inline std::optional<Int> vsp_by_preimage(const ProductHom& h, FactorMask T) {
  const std::size_t n = h.target_rank();
  std::vector<std::vector<Int>> inside, outside;
  for (std::size_t i = 0; i < h.factor_count(); ++i) {
    auto& dst = (T >> i) & 1 ? inside : outside;
    const auto& b = h.block(i);
    for (std::size_t c = 0; c < b.cols(); ++c) {
      std::vector<Int> col(n);
      for (std::size_t r = 0; r < n; ++r) col[r] = b(r, c);
      dst.push_back(std::move(col));
    }
  }
  const std::size_t u = inside.size(), total = inside.size() + outside.size();
  std::vector<TaggedRow> rows;
  for (std::size_t j = 0; j < total; ++j) {
    TaggedRow row{j < u ? inside[j] : outside[j - u], std::vector<Int>(total, 0)};
    if (j >= u)
      for (auto& x : row.value) x = -x;
    row.tag[j] = 1;
    rows.push_back(std::move(row));
  }
  auto [pivots, kernel] = euclid_echelon(std::move(rows), n);
  std::vector<std::vector<Int>> projected;
  for (const auto& k : kernel) projected.emplace_back(k.tag.begin(), k.tag.begin() + static_cast<std::ptrdiff_t>(u));
  return generated_index(projected, u);
}

inline Int leibniz_det(const std::vector<std::vector<Int>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Int det = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Int term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

inline constexpr long kResidueIndexBound = 10000;
inline constexpr std::size_t kResidueAmbientBound = 4;
inline constexpr long kResidueBoxBound = 20'000'000;

/// Number of integer points x with x = B t, t ∈ [0,1)^n, for the square basis
/// B given by the columns of `basis`. Membership uses t = adj(B) x / det B.
inline Int index_by_residue_count(const IntMatrix& basis) {
  const std::size_t n = basis.rows();
  if (basis.cols() != n) throw InputError("index_by_residue_count: basis is not square (rank below ambient)");
  if (n > kResidueAmbientBound) throw InputError("index_by_residue_count: ambient rank above oracle bound");
  if (n == 0) return 1;
  std::vector<std::vector<Int>> B(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) B[i][j] = basis(i, j);
  const Int det = leibniz_det(B);
  if (det == 0) throw InputError("index_by_residue_count: basis is singular");
  if (abs(det) > kResidueIndexBound) throw InputError("index_by_residue_count: index above oracle bound");

  std::vector<std::vector<Int>> adj(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<Int>> minor;
      for (std::size_t a = 0; a < n; ++a) {
        if (a == j) continue;
        std::vector<Int> row;
        for (std::size_t b = 0; b < n; ++b)
          if (b != i) row.push_back(B[a][b]);
        minor.push_back(std::move(row));
      }
      adj[i][j] = ((i + j) % 2 ? -1 : 1) * leibniz_det(minor);
    }

  std::vector<long> lo(n), hi(n);
  Int volume = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Int neg = 0, pos = 0;
    for (std::size_t j = 0; j < n; ++j) (B[i][j] < 0 ? neg : pos) += B[i][j];
    lo[i] = static_cast<long>(neg);
    hi[i] = static_cast<long>(pos);
    volume *= Int(hi[i] - lo[i] + 1);
  }
  if (volume > kResidueBoxBound) throw InputError("index_by_residue_count: bounding box above oracle bound");

  const Int ad = abs(det);
  const int sign = det > 0 ? 1 : -1;
  std::vector<long> x(lo);
  Int count = 0;
  while (true) {
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i) {
      Int t = 0;
      for (std::size_t j = 0; j < n; ++j) t += adj[i][j] * x[j];
      t *= sign;
      inside = t >= 0 && t < ad;
    }
    if (inside) ++count;
    std::size_t d = 0;
    while (d < n && x[d] == hi[d]) {
      x[d] = lo[d];
      ++d;
    }
    if (d == n) break;
    ++x[d];
  }
  return count;
}

}  // namespace coabel::oracle
