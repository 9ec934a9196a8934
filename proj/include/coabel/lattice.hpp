#pragma once

#include "coabel/normal_form.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coabel {

/// A subgroup of Z^n stored by its canonical column-HNF basis, so equal
/// lattices compare bit-identical.
class Lattice {
 public:
  /// The subgroup generated by the columns of `generators`.
  explicit Lattice(const IntMatrix& generators) : ambient_(generators.rows()) {
    auto hnf = hermite_normal_form(generators);
    std::vector<std::size_t> keep(hnf.rank());
    for (std::size_t j = 0; j < keep.size(); ++j) keep[j] = j;
    basis_ = hnf.H.select_columns(keep);
    pivot_rows_ = std::move(hnf.pivot_rows);
  }

  static Lattice full(std::size_t n) { return Lattice(IntMatrix::identity(n)); }
  static Lattice zero(std::size_t n) { return Lattice(IntMatrix(n, 0)); }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivot_rows_; }

  /// Coefficients c with basis()*c == v, or nullopt if v is not in the lattice.
  std::optional<IntVector> coordinates(std::span<const Int> v) const {
    if (v.size() != ambient_)
      throw InputError("Lattice::coordinates: vector length " + std::to_string(v.size()) +
                       " != ambient rank " + std::to_string(ambient_));
    IntVector residual(v.begin(), v.end());
    IntVector coeff(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      const std::size_t p = pivot_rows_[j];
      const Int& pivot = basis_(p, j);
      if (residual[p] % pivot != 0) return std::nullopt;
      coeff[j] = residual[p] / pivot;
      if (coeff[j] == 0) continue;
      for (std::size_t r = p; r < ambient_; ++r) residual[r] -= coeff[j] * basis_(r, j);
    }
    for (const auto& x : residual)
      if (x != 0) return std::nullopt;
    return coeff;
  }

  bool contains(std::span<const Int> v) const { return coordinates(v).has_value(); }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivot_rows_;
};

inline Lattice image_lattice(const IntMatrix& A) { return Lattice(A); }

/// Saturated integer kernel {u : A u = 0}, rank cols - rank(A).
inline Lattice kernel_lattice(const IntMatrix& A) {
  auto hnf = hermite_normal_form(A);
  std::vector<std::size_t> tail;
  for (std::size_t j = hnf.rank(); j < A.cols(); ++j) tail.push_back(j);
  return Lattice(hnf.U.select_columns(tail));
}

/// Index in Z^ambient; nullopt means infinite index.
inline std::optional<Int> lattice_index(const Lattice& L) {
  if (L.rank() != L.ambient_rank()) return std::nullopt;
  Int index = 1;
  for (std::size_t j = 0; j < L.rank(); ++j) index *= L.basis()(L.pivot_rows()[j], j);
  return index;
}

inline void require_same_ambient(const Lattice& a, const Lattice& b, const char* what) {
  if (a.ambient_rank() != b.ambient_rank())
    throw InputError(std::string(what) + ": ambient ranks differ (" +
                     std::to_string(a.ambient_rank()) + " vs " +
                     std::to_string(b.ambient_rank()) + ")");
}

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  require_same_ambient(a, b, "lattice_sum");
  return Lattice(hconcat(a.basis(), b.basis()));
}

inline Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  require_same_ambient(a, b, "lattice_intersection");
  // B1 x = B2 y  <=>  (x, y) in ker [B1 | -B2]; the intersection is B1 * x-part.
  Lattice k = kernel_lattice(hconcat(a.basis(), negate(b.basis())));
  IntMatrix x_part = k.basis().select_rows(0, a.rank());
  return Lattice(a.basis() * x_part);
}

/// {u in Z^cols : A u in L}.
inline Lattice preimage_lattice(const IntMatrix& A, const Lattice& L) {
  if (L.ambient_rank() != A.rows())
    throw InputError("preimage_lattice: lattice ambient rank " +
                     std::to_string(L.ambient_rank()) + " != matrix rows " +
                     std::to_string(A.rows()));
  Lattice k = kernel_lattice(hconcat(A, negate(L.basis())));
  return Lattice(k.basis().select_rows(0, A.cols()));
}

inline bool contains(const Lattice& L, std::span<const Int> v) { return L.contains(v); }

}  // namespace coabel
