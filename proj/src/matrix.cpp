#include "modspec/matrix.hpp"

#include <algorithm>
#include <utility>

namespace modspec {

IntMatrix IntMatrix::from_rows(std::vector<IntVector> rows, std::size_t cols) {
  IntMatrix m;
  m.cols_ = cols;
  for (auto& r : rows) m.append_row(std::move(r));
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void IntMatrix::append_row(IntVector row) {
  if (row.size() != cols_) throw Error(ErrorKind::InvalidArgument, "row length does not match column count");
  data_.push_back(std::move(row));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (auto& r : data_) std::swap(r[a], r[b]);
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (data_[src][c] != 0) data_[dst][c] += factor * data_[src][c];
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (auto& r : data_) {
    if (r[src] != 0) r[dst] += factor * r[src];
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (auto& x : data_[r]) x = -x;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = data_[r][c];
  }
  return t;
}

IntVector IntMatrix::apply(std::span<const Int> v) const {
  if (v.size() != cols_) throw Error(ErrorKind::InvalidArgument, "vector length does not match column count");
  IntVector out(rows(), Int(0));
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += data_[r][c] * v[c];
  }
  return out;
}

IntMatrix hermite_normal_form(IntMatrix m) {
  const std::size_t ncols = m.cols();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < ncols && pivot_row < m.rows(); ++col) {
    // Euclid on the column below pivot_row until a single nonzero entry remains.
    while (true) {
      std::size_t best = m.rows();
      for (std::size_t i = pivot_row; i < m.rows(); ++i) {
        if (m(i, col) != 0 && (best == m.rows() || abs(m(i, col)) < abs(m(best, col)))) best = i;
      }
      if (best == m.rows()) break;
      m.swap_rows(pivot_row, best);
      bool clean = true;
      for (std::size_t i = pivot_row + 1; i < m.rows(); ++i) {
        if (m(i, col) == 0) continue;
        m.add_row_multiple(i, pivot_row, -(m(i, col) / m(pivot_row, col)));
        if (m(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m(pivot_row, col) == 0) continue;
    if (m(pivot_row, col) < 0) m.negate_row(pivot_row);
    for (std::size_t i = 0; i < pivot_row; ++i) {
      m.add_row_multiple(i, pivot_row, -floor_div(m(i, col), m(pivot_row, col)));
    }
    ++pivot_row;
  }
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < pivot_row; ++i) rows.push_back(m.row(i));
  return IntMatrix::from_rows(std::move(rows), ncols);
}

IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidArgument, "lattice_sum: dimension mismatch");
  IntMatrix m = a;
  for (const auto& r : b.row_list()) m.append_row(r);
  return hermite_normal_form(std::move(m));
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidArgument, "lattice_intersection: dimension mismatch");
  const std::size_t k = a.cols();
  IntMatrix stacked(0, 2 * k);
  for (const auto& r : a.row_list()) {
    IntVector row(2 * k);
    std::copy(r.begin(), r.end(), row.begin());
    std::copy(r.begin(), r.end(), row.begin() + static_cast<std::ptrdiff_t>(k));
    stacked.append_row(std::move(row));
  }
  for (const auto& r : b.row_list()) {
    IntVector row(2 * k, Int(0));
    std::copy(r.begin(), r.end(), row.begin());
    stacked.append_row(std::move(row));
  }
  const IntMatrix h = hermite_normal_form(std::move(stacked));
  IntMatrix out(0, k);
  for (const auto& r : h.row_list()) {
    if (std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k), [](const Int& x) { return x == 0; })) {
      out.append_row(IntVector(r.begin() + static_cast<std::ptrdiff_t>(k), r.end()));
    }
  }
  return hermite_normal_form(std::move(out));
}

bool lattice_contains(const IntMatrix& hnf, std::span<const Int> v) {
  IntVector rest(v.begin(), v.end());
  std::size_t col = 0;
  for (const auto& row : hnf.row_list()) {
    while (col < row.size() && row[col] == 0) {
      if (rest[col] != 0) return false;
      ++col;
    }
    if (rest[col] % row[col] != 0) return false;
    const Int q = rest[col] / row[col];
    for (std::size_t c = col; c < row.size(); ++c) rest[c] -= q * row[c];
    ++col;
  }
  return std::all_of(rest.begin(), rest.end(), [](const Int& x) { return x == 0; });
}

SmithForm smith_normal_form(IntMatrix a) {
  const std::size_t k = a.rows();
  const std::size_t m = a.cols();
  IntMatrix u = IntMatrix::identity(k);
  SmithForm out;
  for (std::size_t t = 0; t < std::min(k, m); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto move_min_to_pivot = [&]() {
      std::size_t bi = k, bj = m;
      for (std::size_t i = t; i < k; ++i) {
        for (std::size_t j = t; j < m; ++j) {
          if (a(i, j) != 0 && (bi == k || abs(a(i, j)) < abs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == k) return false;
      a.swap_rows(t, bi);
      u.swap_rows(t, bi);
      a.swap_cols(t, bj);
      return true;
    };
    if (!move_min_to_pivot()) break;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < k; ++i) {
        if (a(i, t) == 0) continue;
        const Int q = a(i, t) / a(t, t);
        a.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (a(t, j) == 0) continue;
        a.add_col_multiple(j, t, -(a(t, j) / a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_min_to_pivot();
        continue;
      }
      // Pivot must divide the whole trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < k && divisible; ++i) {
        for (std::size_t j = t + 1; j < m; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, Int(1));
            u.add_row_multiple(t, i, Int(1));
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
    out.diagonal.push_back(a(t, t));
  }
  out.left = std::move(u);
  return out;
}

}  // namespace modspec
