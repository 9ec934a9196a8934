#pragma once

// Hermite and Smith normal forms over Z.

#include "coabel/int_matrix.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace coabel {

namespace detail {

inline void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

// col_dst -= q * col_src
inline void column_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (m(r, src) != 0) m(r, dst) -= q * m(r, src);
}

// row_dst -= q * row_src
inline void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m(src, c) != 0) m(dst, c) -= q * m(src, c);
}

inline void negate_column(IntMatrix& m, std::size_t c) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
}

inline void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

// Replaces columns (p, q) by (x*p + y*q, -(b/g)*p + (a/g)*q); determinant 1.
inline void column_bezout(IntMatrix& m, std::size_t p, std::size_t q, const Int& x,
                          const Int& y, const Int& a_g, const Int& b_g) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Int vp = m(r, p), vq = m(r, q);
    m(r, p) = x * vp + y * vq;
    m(r, q) = a_g * vq - b_g * vp;
  }
}

}  // namespace detail

/// Column Hermite form: transform U is unimodular and A*U == H.
struct HermiteDecomposition {
  IntMatrix H;
  IntMatrix U;
  /// pivot_rows[j] is the row of the leading entry of column j; size == rank.
  std::vector<std::size_t> pivot_rows;

  std::size_t rank() const { return pivot_rows.size(); }
};

/// Canonical column Hermite normal form. Column j < rank has zeros above
/// pivot_rows[j], a positive pivot there, and every column left of j has its
/// entry in that row reduced into [0, pivot). Columns from rank on are zero.
inline HermiteDecomposition hermite_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  HermiteDecomposition out{A, IntMatrix::identity(n), {}};
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  std::size_t pc = 0;
  for (std::size_t i = 0; i < m && pc < n; ++i) {
    for (std::size_t j = pc + 1; j < n; ++j) {
      if (H(i, j) == 0) continue;
      if (H(i, pc) == 0) {
        detail::swap_columns(H, pc, j);
        detail::swap_columns(U, pc, j);
        continue;
      }
      const Int a = H(i, pc), b = H(i, j);
      auto [g, x, y] = extended_gcd(a, b);
      const Int a_g = a / g, b_g = b / g;
      detail::column_bezout(H, pc, j, x, y, a_g, b_g);
      detail::column_bezout(U, pc, j, x, y, a_g, b_g);
    }
    if (H(i, pc) == 0) continue;
    if (H(i, pc) < 0) {
      detail::negate_column(H, pc);
      detail::negate_column(U, pc);
    }
    for (std::size_t j = 0; j < pc; ++j) {
      Int q = floor_div(H(i, j), H(i, pc));
      detail::column_axpy(H, j, pc, q);
      detail::column_axpy(U, j, pc, q);
    }
    out.pivot_rows.push_back(i);
    ++pc;
  }
  return out;
}

/// left * A * right == diag(divisors) padded with zeros to A's shape.
struct SmithDecomposition {
  IntMatrix left;
  std::vector<Int> diag;  // positive, each divides the next
  IntMatrix right;
  std::size_t rank = 0;
};

/// Smith normal form with smallest-absolute-value pivoting.
inline SmithDecomposition smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMatrix D = A;
  IntMatrix L = IntMatrix::identity(m);
  IntMatrix R = IntMatrix::identity(n);

  auto smallest_in_block = [&](std::size_t t) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (D(i, j) == 0) continue;
        Int v = abs(D(i, j));
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = std::move(v);
        }
      }
    return best;
  };
  auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
    detail::swap_rows(D, t, i);
    detail::swap_rows(L, t, i);
    detail::swap_columns(D, t, j);
    detail::swap_columns(R, t, j);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    auto start = smallest_in_block(t);
    if (!start) break;
    move_to_pivot(t, start->first, start->second);
    for (;;) {
      bool cleared = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = D(i, t) / D(t, t);
        detail::row_axpy(D, i, t, q);
        detail::row_axpy(L, i, t, q);
        if (D(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = D(t, j) / D(t, t);
        detail::column_axpy(D, j, t, q);
        detail::column_axpy(R, j, t, q);
        if (D(t, j) != 0) cleared = false;
      }
      if (!cleared) {
        // Remainders are strictly smaller than the pivot; bring the smallest forward.
        std::size_t bi = t, bj = t;
        Int best = abs(D(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < best) best = abs(D(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < best) best = abs(D(t, j)), bi = t, bj = j;
        move_to_pivot(t, bi, bj);
        continue;
      }
      // Enforce divisibility of the trailing block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            detail::row_axpy(D, t, i, Int(-1));
            detail::row_axpy(L, t, i, Int(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (D(t, t) < 0) {
      detail::negate_row(D, t);
      detail::negate_row(L, t);
    }
  }
  SmithDecomposition out{std::move(L), {}, std::move(R), t};
  out.diag.reserve(t);
  for (std::size_t i = 0; i < t; ++i) out.diag.push_back(D(i, i));
  return out;
}

/// Rank over Q.
inline std::size_t rank(const IntMatrix& A) { return hermite_normal_form(A).rank(); }

}  // namespace coabel
