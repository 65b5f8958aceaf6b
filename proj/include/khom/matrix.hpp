#pragma once

#include "khom/error.hpp"
#include "khom/numbers.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace khom {

// Dense integer matrix, row-major.  All arithmetic is exact; dimensions of
// zero rows or columns are permitted everywhere.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
    assert(rows >= 0 && cols >= 0);
  }
  IntMatrix(int rows, int cols, std::initializer_list<Int> entries)
      : rows_(rows), cols_(cols), a_(entries) {
    assert(a_.size() == size_t(rows) * cols);
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }

  static IntMatrix diagonal(const std::vector<Int>& d) {
    IntMatrix m(int(d.size()), int(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
    return m;
  }

  static IntMatrix from_columns(int rows, const std::vector<std::vector<Int>>& cols) {
    IntMatrix m(rows, int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
      assert(int(cols[j].size()) == rows);
      for (int i = 0; i < rows; ++i) m.at(i, int(j)) = cols[j][i];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[size_t(i) * cols_ + j];
  }
  const Int& at(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[size_t(i) * cols_ + j];
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& v) { return v == 0; });
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    assert(cols_ == o.rows_);
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Int& v = at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Int& w = o.at(k, j);
          if (w != 0) r.at(i, j) += v * w;
        }
      }
    return r;
  }

  IntMatrix operator+(const IntMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }

  IntMatrix operator-(const IntMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }

  IntMatrix operator-() const {
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
  }

  std::vector<Int> apply(const std::vector<Int>& x) const {
    assert(int(x.size()) == cols_);
    std::vector<Int> y(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
    return y;
  }

  std::vector<Int> column(int j) const {
    std::vector<Int> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  std::vector<Int> row(int i) const {
    std::vector<Int> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  void set_column(int j, const std::vector<Int>& c) {
    assert(int(c.size()) == rows_);
    for (int i = 0; i < rows_; ++i) at(i, j) = c[i];
  }

  IntMatrix select_rows(const std::vector<int>& idx) const {
    IntMatrix r(int(idx.size()), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
      for (int j = 0; j < cols_; ++j) r.at(int(i), j) = at(idx[i], j);
    return r;
  }

  IntMatrix select_cols(const std::vector<int>& idx) const {
    IntMatrix r(rows_, int(idx.size()));
    for (int i = 0; i < rows_; ++i)
      for (size_t j = 0; j < idx.size(); ++j) r.at(i, int(j)) = at(i, idx[j]);
    return r;
  }

  // [A | B]
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    assert(a.rows() == b.rows());
    IntMatrix r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
      for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
  }

  // [A ; B]
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    assert(a.cols() == b.cols());
    IntMatrix r(a.rows() + b.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
      for (int i = 0; i < a.rows(); ++i) r.at(i, j) = a.at(i, j);
      for (int i = 0; i < b.rows(); ++i) r.at(a.rows() + i, j) = b.at(i, j);
    }
    return r;
  }

  // Determinant by fraction-free (Bareiss) elimination; square matrices only.
  Int determinant() const {
    assert(rows_ == cols_);
    int n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (m.at(k, k) == 0) {
        int p = -1;
        for (int i = k + 1; i < n; ++i)
          if (m.at(i, k) != 0) {
            p = i;
            break;
          }
        if (p < 0) return 0;
        for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j)
          m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
  }

  // Largest entry magnitude, as a decimal digit count (0 for a zero matrix).
  size_t max_entry_digits() const {
    size_t best = 0;
    for (const Int& v : a_)
      if (v != 0) best = std::max(best, abs_int(v).str().size());
    return best;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
      os << (i == 0 ? "[" : " ");
      for (int j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j).str();
      os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    if (rows_ == 0) os << "[[]]";
    return os.str();
  }

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

// Column-major sparse integer matrix.  Chain complexes keep their boundary
// matrices in this form so that large products never materialise dense.
struct SparseColMatrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, Int>>> col;  // (row, value), sorted by row

  SparseColMatrix() = default;
  SparseColMatrix(int r, int c) : rows(r), cols(c), col(c) {}

  void add(int r, int c, const Int& v) {
    auto& entries = col[c];
    auto it = std::lower_bound(entries.begin(), entries.end(), r,
                               [](const std::pair<int, Int>& e, int row) { return e.first < row; });
    if (it != entries.end() && it->first == r) {
      it->second += v;
      if (it->second == 0) entries.erase(it);
    } else if (v != 0) {
      entries.insert(it, {r, v});
    }
  }

  IntMatrix to_dense() const {
    IntMatrix m(rows, cols);
    for (int c = 0; c < cols; ++c)
      for (const auto& [r, v] : col[c]) m.at(r, c) = v;
    return m;
  }

  static SparseColMatrix from_dense(const IntMatrix& m) {
    SparseColMatrix s(m.rows(), m.cols());
    for (int j = 0; j < m.cols(); ++j)
      for (int i = 0; i < m.rows(); ++i)
        if (m.at(i, j) != 0) s.col[j].emplace_back(i, m.at(i, j));
    return s;
  }

  // Columns of (*this) * other, used for cheap composition-is-zero checks.
  bool composes_to_zero_with(const SparseColMatrix& other) const {
    assert(cols == other.rows);
    std::vector<Int> acc(rows);
    for (int j = 0; j < other.cols; ++j) {
      std::vector<int> touched;
      for (const auto& [k, w] : other.col[j])
        for (const auto& [i, v] : col[k]) {
          if (acc[i] == 0) touched.push_back(i);
          acc[i] += v * w;
        }
      bool zero = true;
      for (int i : touched) {
        if (acc[i] != 0) zero = false;
        acc[i] = 0;
      }
      if (!zero) return false;
    }
    return true;
  }

  size_t max_entry_digits() const {
    size_t best = 0;
    for (const auto& c : col)
      for (const auto& [r, v] : c)
        if (v != 0) best = std::max(best, abs_int(v).str().size());
    return best;
  }
};

}  // namespace khom
