#pragma once

#include <compare>

#include <cstddef>
#include <span>
#include <vector>

#include "modspec/integer.hpp"

namespace modspec {

using IntVector = std::vector<Int>;

/// Dense row-major integer matrix. Rows are the natural unit: lattices are
/// stored as row bases throughout.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows, IntVector(cols, Int(0))) {}
  static IntMatrix from_rows(std::vector<IntVector> rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return data_.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r][c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r][c]; }

  [[nodiscard]] const IntVector& row(std::size_t r) const { return data_[r]; }
  IntVector& row(std::size_t r) { return data_[r]; }
  [[nodiscard]] const std::vector<IntVector>& row_list() const noexcept { return data_; }

  void append_row(IntVector row);
  void swap_rows(std::size_t a, std::size_t b) { std::swap(data_[a], data_[b]); }
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
  void negate_row(std::size_t r);

  [[nodiscard]] IntMatrix transposed() const;
  /// this * v
  [[nodiscard]] IntVector apply(std::span<const Int> v) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend std::strong_ordering operator<=>(const IntMatrix& a, const IntMatrix& b) {
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    if (a.data_ < b.data_) return std::strong_ordering::less;
    return a.data_ == b.data_ ? std::strong_ordering::equal : std::strong_ordering::greater;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<IntVector> data_;
};

/// Row Hermite normal form of the lattice spanned by the rows: echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot), zero
/// rows removed. Two row sets span the same lattice iff their HNFs agree.
IntMatrix hermite_normal_form(IntMatrix m);

/// Lattice generated by the rows of a and b.
IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b);

/// Intersection of the row lattices of a and b (Zassenhaus stacking).
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

/// Is v in the row lattice of an HNF basis? Exact triangular solve.
bool lattice_contains(const IntMatrix& hnf, std::span<const Int> v);

struct SmithForm {
  IntVector diagonal;  // d_1 | d_2 | ... | d_rank, all positive
  IntMatrix left;      // unimodular U with U * A * V = diag
};

/// Smith normal form of a (k x m) matrix whose columns are relations on k
/// generators.
SmithForm smith_normal_form(IntMatrix a);

}  // namespace modspec
