#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tame {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  BigInt const& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntMatrix operator*(IntMatrix const& o) const {
    IntMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(i, k) == 0) {
          continue;
        }
        for (std::size_t j = 0; j < o.cols_; ++j) {
          out(i, j) += (*this)(i, k) * o(k, j);
        }
      }
    }
    return out;
  }

  friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) {
      std::swap((*this)(a, j), (*this)(b, j));
    }
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) {
      std::swap((*this)(i, a), (*this)(i, b));
    }
  }
  /// row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, BigInt const& f) {
    for (std::size_t j = 0; j < cols_; ++j) {
      (*this)(dst, j) += f * (*this)(src, j);
    }
  }
  /// col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, BigInt const& f) {
    for (std::size_t i = 0; i < rows_; ++i) {
      (*this)(i, dst) += f * (*this)(i, src);
    }
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) {
      (*this)(r, j) = -(*this)(r, j);
    }
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Smith normal form `U * A * V == D` with unimodular U, V. `V_inverse` is
/// kept alongside V so that coordinates can be mapped back to the original
/// basis. The diagonal of D is nonnegative and each entry divides the next.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix V_inverse;
  std::size_t rank = 0;

  BigInt const& diagonal(std::size_t i) const { return D(i, i); }
};

namespace detail {

inline bool find_min_pivot(IntMatrix const& D, std::size_t t, std::size_t& pr,
                           std::size_t& pc) {
  bool found = false;
  BigInt best;
  for (std::size_t i = t; i < D.rows(); ++i) {
    for (std::size_t j = t; j < D.cols(); ++j) {
      if (D(i, j) != 0) {
        BigInt const a = abs(D(i, j));
        if (!found || a < best) {
          found = true;
          best = a;
          pr = i;
          pc = j;
        }
      }
    }
  }
  return found;
}

}  // namespace detail

/// Euclidean elimination with integer row and column operations only.
inline SmithForm smith_normal_form(IntMatrix const& A) {
  std::size_t const m = A.rows();
  std::size_t const n = A.cols();
  SmithForm s{IntMatrix::identity(m), A, IntMatrix::identity(n),
              IntMatrix::identity(n), 0};
  IntMatrix& D = s.D;

  auto col_swap = [&](std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    s.V.swap_cols(a, b);
    s.V_inverse.swap_rows(a, b);
  };
  // col[dst] += f * col[src]; the inverse transform acts on rows of V^-1.
  auto col_add = [&](std::size_t dst, std::size_t src, BigInt const& f) {
    D.add_col(dst, src, f);
    s.V.add_col(dst, src, f);
    s.V_inverse.add_row(src, dst, -f);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    s.U.swap_rows(a, b);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, BigInt const& f) {
    D.add_row(dst, src, f);
    s.U.add_row(dst, src, f);
  };

  std::size_t t = 0;
  while (t < std::min(m, n)) {
    std::size_t pr = 0;
    std::size_t pc = 0;
    if (!detail::find_min_pivot(D, t, pr, pc)) {
      break;
    }
    row_swap(t, pr);
    col_swap(t, pc);
    bool dirty = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (D(i, t) != 0) {
        BigInt const q = D(i, t) / D(t, t);
        row_add(i, t, -q);
        dirty = dirty || D(i, t) != 0;
      }
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (D(t, j) != 0) {
        BigInt const q = D(t, j) / D(t, t);
        col_add(j, t, -q);
        dirty = dirty || D(t, j) != 0;
      }
    }
    if (dirty) {
      continue;  // a smaller remainder exists; pick it as the next pivot
    }
    bool fixed = false;
    for (std::size_t i = t + 1; i < m && !fixed; ++i) {
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(i, j) % D(t, t) != 0) {
          row_add(t, i, 1);
          fixed = true;
          break;
        }
      }
    }
    if (fixed) {
      continue;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

/// Sparse integer row: (column, nonzero coefficient) sorted by column.
using SparseRow = std::vector<std::pair<std::size_t, BigInt>>;

/// Incremental row echelon basis over Q using fraction-free elimination.
/// Rows are normalised by their content so coefficients stay small.
class RationalEchelon {
 public:
  /// Returns true iff the row was independent of the rows added so far.
  bool add(SparseRow row) {
    normalize(row);
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) {
        std::size_t const lead = row.front().first;
        pivots_.emplace(lead, std::move(row));
        return true;
      }
      row = eliminate(row, it->second);
      normalize(row);
    }
    return false;
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

 private:
  std::map<std::size_t, SparseRow> pivots_;

  // a * row - b * pivot where a, b are chosen to cancel the leading entry.
  static SparseRow eliminate(SparseRow const& row, SparseRow const& pivot) {
    BigInt const g = gcd(row.front().second, pivot.front().second);
    BigInt const a = pivot.front().second / g;
    BigInt const b = row.front().second / g;
    SparseRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < row.size() || j < pivot.size()) {
      if (j == pivot.size() ||
          (i < row.size() && row[i].first < pivot[j].first)) {
        out.emplace_back(row[i].first, a * row[i].second);
        ++i;
      } else if (i == row.size() || pivot[j].first < row[i].first) {
        out.emplace_back(pivot[j].first, -b * pivot[j].second);
        ++j;
      } else {
        BigInt v = a * row[i].second - b * pivot[j].second;
        if (v != 0) {
          out.emplace_back(row[i].first, std::move(v));
        }
        ++i;
        ++j;
      }
    }
    return out;
  }

  static void normalize(SparseRow& row) {
    std::erase_if(row, [](auto const& e) { return e.second == 0; });
    if (row.empty()) {
      return;
    }
    BigInt g = 0;
    for (auto const& e : row) {
      g = gcd(g, e.second);
      if (g == 1) {
        break;
      }
    }
    if (row.front().second < 0) {
      g = -g;
    }
    if (g != 1) {
      for (auto& e : row) {
        e.second /= g;
      }
    }
  }
};

/// Rank over Q of the given rows, eliminated in the given order.
inline std::size_t rational_rank(std::vector<SparseRow> rows) {
  RationalEchelon e;
  for (auto& r : rows) {
    e.add(std::move(r));
  }
  return e.rank();
}

/// Builds a sorted sparse row from (column, coefficient) contributions,
/// summing repeated columns.
inline SparseRow make_sparse_row(
    std::vector<std::pair<std::size_t, std::int64_t>> const& entries) {
  std::map<std::size_t, std::int64_t> acc;
  for (auto const& [c, v] : entries) {
    acc[c] += v;
  }
  SparseRow out;
  for (auto const& [c, v] : acc) {
    if (v != 0) {
      out.emplace_back(c, BigInt(v));
    }
  }
  return out;
}

}  // namespace tame
