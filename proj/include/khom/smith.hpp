#pragma once

#include "khom/matrix.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace khom {

// Smith decomposition d = u * m * v of an integer matrix m, where u and v are
// unimodular and d is diagonal with positive invariant factors forming a
// divisor chain d_1 | d_2 | ... followed by zeros.
struct SmithDecomposition {
  IntMatrix u, d, v;
  IntMatrix u_inv, v_inv;  // populated only when requested
  int rank = 0;

  std::vector<Int> invariant_factors() const {
    std::vector<Int> f;
    int n = std::min(d.rows(), d.cols());
    for (int i = 0; i < n && d.at(i, i) != 0; ++i) f.push_back(d.at(i, i));
    return f;
  }
};

struct SnfOptions {
  bool with_u = true;
  bool with_v = true;
  bool with_u_inv = false;
  bool with_v_inv = false;
};

namespace detail {

// Row-major sparse matrix used only inside the SNF elimination.  Rows are kept
// sorted by column; col_rows mirrors the nonzero pattern per column.
class SparseMat {
 public:
  SparseMat(int rows, int cols, bool track_cols)
      : rows_(rows), cols_(cols), row_(rows), track_cols_(track_cols) {
    if (track_cols_) col_rows_.resize(cols);
  }

  static SparseMat from_dense(const IntMatrix& m, bool track_cols) {
    SparseMat s(m.rows(), m.cols(), track_cols);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (m.at(i, j) != 0) {
          s.row_[i].emplace_back(j, m.at(i, j));
          if (track_cols) s.col_rows_[j].insert(i);
        }
    return s;
  }

  static SparseMat from_columns(const SparseColMatrix& m, bool track_cols) {
    SparseMat s(m.rows, m.cols, track_cols);
    for (int j = 0; j < m.cols; ++j)
      for (const auto& [i, v] : m.col[j]) {
        s.row_[i].emplace_back(j, v);
        if (track_cols) s.col_rows_[j].insert(i);
      }
    // rows were filled in column order; restore the sorted-by-column invariant
    for (auto& row : s.row_) std::sort(row.begin(), row.end());
    return s;
  }

  static SparseMat identity(int n, bool track_cols) {
    SparseMat s(n, n, track_cols);
    for (int i = 0; i < n; ++i) {
      s.row_[i].emplace_back(i, Int(1));
      if (track_cols) s.col_rows_[i].insert(i);
    }
    return s;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<std::pair<int, Int>>& row_entries(int r) const { return row_[r]; }
  const std::set<int>& col_entries(int c) const { return col_rows_[c]; }

  Int get(int r, int c) const {
    const auto& v = row_[r];
    auto it = std::lower_bound(v.begin(), v.end(), c,
                               [](const std::pair<int, Int>& e, int col) { return e.first < col; });
    if (it != v.end() && it->first == c) return it->second;
    return 0;
  }

  void set(int r, int c, const Int& val) {
    auto& v = row_[r];
    auto it = std::lower_bound(v.begin(), v.end(), c,
                               [](const std::pair<int, Int>& e, int col) { return e.first < col; });
    bool present = it != v.end() && it->first == c;
    if (val == 0) {
      if (present) {
        v.erase(it);
        if (track_cols_) col_rows_[c].erase(r);
      }
    } else if (present) {
      it->second = val;
    } else {
      v.insert(it, {c, val});
      if (track_cols_) col_rows_[c].insert(r);
    }
  }

  // (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j); ad - bc = +-1.
  void row_pair_op(int i, int j, const Int& a, const Int& b, const Int& c, const Int& d) {
    std::vector<std::pair<int, Int>> ni, nj;
    ni.reserve(row_[i].size() + row_[j].size());
    nj.reserve(row_[i].size() + row_[j].size());
    auto pi = row_[i].begin(), ei = row_[i].end();
    auto pj = row_[j].begin(), ej = row_[j].end();
    while (pi != ei || pj != ej) {
      int col;
      Int vi = 0, vj = 0;
      if (pj == ej || (pi != ei && pi->first < pj->first)) {
        col = pi->first;
        vi = pi->second;
        ++pi;
      } else if (pi == ei || pj->first < pi->first) {
        col = pj->first;
        vj = pj->second;
        ++pj;
      } else {
        col = pi->first;
        vi = pi->second;
        vj = pj->second;
        ++pi;
        ++pj;
      }
      Int wi = a * vi + b * vj;
      Int wj = c * vi + d * vj;
      bool hadi = vi != 0, hadj = vj != 0;
      if (wi != 0) ni.emplace_back(col, wi);
      if (wj != 0) nj.emplace_back(col, wj);
      if (track_cols_) {
        if ((wi != 0) != hadi) {
          if (wi != 0)
            col_rows_[col].insert(i);
          else
            col_rows_[col].erase(i);
        }
        if ((wj != 0) != hadj) {
          if (wj != 0)
            col_rows_[col].insert(j);
          else
            col_rows_[col].erase(j);
        }
      }
    }
    row_[i] = std::move(ni);
    row_[j] = std::move(nj);
  }

  // (col_i, col_j) <- (a*col_i + c*col_j, b*col_i + d*col_j), i.e. right
  // multiplication by the 2x2 block [[a, b], [c, d]].
  void col_pair_op(int i, int j, const Int& a, const Int& b, const Int& c, const Int& d) {
    std::vector<int> rows;
    if (track_cols_) {
      rows.assign(col_rows_[i].begin(), col_rows_[i].end());
      for (int r : col_rows_[j])
        if (!col_rows_[i].count(r)) rows.push_back(r);
      std::sort(rows.begin(), rows.end());
    } else {
      for (int r = 0; r < rows_; ++r) rows.push_back(r);
    }
    for (int r : rows) {
      Int vi = get(r, i), vj = get(r, j);
      if (vi == 0 && vj == 0) continue;
      set(r, i, a * vi + c * vj);
      set(r, j, b * vi + d * vj);
    }
  }

  void row_scale(int i, const Int& s) {
    for (auto& e : row_[i]) e.second *= s;
  }

  void col_scale(int c, const Int& s) {
    if (track_cols_) {
      for (int r : col_rows_[c]) {
        auto& v = row_[r];
        auto it = std::lower_bound(v.begin(), v.end(), c,
                                   [](const std::pair<int, Int>& e, int col) { return e.first < col; });
        it->second *= s;
      }
    } else {
      for (int r = 0; r < rows_; ++r) {
        Int v = get(r, c);
        if (v != 0) set(r, c, v * s);
      }
    }
  }

  size_t row_nnz(int r) const { return row_[r].size(); }
  size_t col_nnz(int c) const { return col_rows_[c].size(); }

  IntMatrix to_dense() const {
    IntMatrix m(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, v] : row_[r]) m.at(r, c) = v;
    return m;
  }

  IntMatrix to_dense_row_permuted(const std::vector<int>& src_row) const {
    IntMatrix m(int(src_row.size()), cols_);
    for (size_t r = 0; r < src_row.size(); ++r)
      for (const auto& [c, v] : row_[src_row[r]]) m.at(int(r), c) = v;
    return m;
  }

  IntMatrix to_dense_col_permuted(const std::vector<int>& src_col) const {
    IntMatrix m(rows_, int(src_col.size()));
    std::vector<int> where(cols_, -1);
    for (size_t j = 0; j < src_col.size(); ++j) where[src_col[j]] = int(j);
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, v] : row_[r])
        if (where[c] >= 0) m.at(r, where[c]) = v;
    return m;
  }

 private:
  int rows_, cols_;
  std::vector<std::vector<std::pair<int, Int>>> row_;
  std::vector<std::set<int>> col_rows_;
  bool track_cols_;
};

}  // namespace detail

namespace detail {

inline SmithDecomposition snf_run(SparseMat a, const SnfOptions& opt) {
  const int nr = a.rows(), nc = a.cols();

  const bool want_u = opt.with_u || opt.with_u_inv;
  const bool want_v = opt.with_v || opt.with_v_inv;
  SparseMat u = want_u ? SparseMat::identity(nr, false) : SparseMat(0, 0, false);
  SparseMat v = want_v ? SparseMat::identity(nc, true) : SparseMat(0, 0, false);
  // u_inv collects inverse row ops as column ops; stored transposed so that
  // they become row ops again.  v_inv collects inverse column ops as row ops.
  SparseMat ui = opt.with_u_inv ? SparseMat::identity(nr, false) : SparseMat(0, 0, false);
  SparseMat vi = opt.with_v_inv ? SparseMat::identity(nc, false) : SparseMat(0, 0, false);

  auto rows_op = [&](int i, int j, const Int& pa, const Int& pb, const Int& pc, const Int& pd) {
    a.row_pair_op(i, j, pa, pb, pc, pd);
    if (want_u) u.row_pair_op(i, j, pa, pb, pc, pd);
    if (opt.with_u_inv) {
      // inverse of [[a,b],[c,d]] with det s = +-1 is s*[[d,-b],[-c,a]];
      // applied on the right, transposed here means a row op with the block
      // transposed: [[d, -c], [-b, a]] (times s).
      Int s = pa * pd - pb * pc;
      ui.row_pair_op(i, j, s * pd, -s * pc, -s * pb, s * pa);
    }
  };
  auto cols_op = [&](int i, int j, const Int& pa, const Int& pb, const Int& pc, const Int& pd) {
    a.col_pair_op(i, j, pa, pb, pc, pd);
    if (want_v) v.col_pair_op(i, j, pa, pb, pc, pd);
    if (opt.with_v_inv) {
      // inverse applied on the left: a row op with block s*[[d,-b],[-c,a]].
      Int s = pa * pd - pb * pc;
      vi.row_pair_op(i, j, s * pd, -s * pb, -s * pc, s * pa);
    }
  };

  std::vector<bool> row_done(nr, false), col_done(nc, false);
  std::vector<std::pair<int, int>> pivots;  // (row, col) in selection order

  while (true) {
    // Pivot scan over the active submatrix.
    int pr = -1, pc_ = -1;
    Int pval = 0;
    size_t pcost = 0;
    bool found = false;
    for (int r = 0; r < nr && !(found && pval == 1 && pcost == 0); ++r) {
      if (row_done[r]) continue;
      for (const auto& [c, val] : a.row_entries(r)) {
        Int av = abs_int(val);
        size_t cost = (a.row_nnz(r) - 1) * (a.col_nnz(c) - 1);
        if (!found || av < pval || (av == pval && cost < pcost)) {
          found = true;
          pr = r;
          pc_ = c;
          pval = av;
          pcost = cost;
          if (pval == 1 && pcost == 0) break;
        }
      }
    }
    if (!found) break;

    // Clear row pr and column pc_ down to the single pivot entry.
    while (true) {
      bool col_clean = a.col_nnz(pc_) == 1;
      if (!col_clean) {
        std::vector<int> others(a.col_entries(pc_).begin(), a.col_entries(pc_).end());
        for (int r : others) {
          if (r == pr) continue;
          Int p = a.get(pr, pc_);
          Int w = a.get(r, pc_);
          if (w == 0) continue;
          if (w % p == 0) {
            rows_op(pr, r, 1, 0, -(w / p), 1);
          } else {
            Int x, y;
            Int g = ext_gcd(p, w, x, y);
            rows_op(pr, r, x, y, -(w / g), p / g);
          }
        }
      }
      bool row_clean = a.row_nnz(pr) == 1;
      if (!row_clean) {
        std::vector<std::pair<int, Int>> others(a.row_entries(pr).begin(), a.row_entries(pr).end());
        for (const auto& [c, w0] : others) {
          if (c == pc_) continue;
          Int p = a.get(pr, pc_);
          Int w = a.get(pr, c);
          if (w == 0) continue;
          if (w % p == 0) {
            cols_op(pc_, c, 1, -(w / p), 0, 1);
          } else {
            Int x, y;
            Int g = ext_gcd(p, w, x, y);
            cols_op(pc_, c, x, -(w / g), y, p / g);
          }
        }
      }
      if (a.col_nnz(pc_) == 1 && a.row_nnz(pr) == 1) break;
    }

    if (a.get(pr, pc_) < 0) {
      a.row_scale(pr, -1);
      if (want_u) u.row_scale(pr, -1);
      if (opt.with_u_inv) ui.row_scale(pr, -1);
    }
    pivots.emplace_back(pr, pc_);
    row_done[pr] = true;
    col_done[pc_] = true;
  }

  // Divisor-chain fixup: for each pair (i, j) with i < j replace
  // (d_i, d_j) by (gcd, lcm) via a 2x2 unimodular transform on the pivot
  // rows and columns (which are zero away from the pivots).
  const int t = int(pivots.size());
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      Int di = a.get(pivots[i].first, pivots[i].second);
      Int dj = a.get(pivots[j].first, pivots[j].second);
      if (dj % di == 0) continue;
      Int x, y;
      Int g = ext_gcd(di, dj, x, y);
      // [[x, y], [-dj/g, di/g]] * diag(di, dj) * [[1, -y*dj/g], [1, x*di/g]]
      // = diag(g, lcm).
      rows_op(pivots[i].first, pivots[j].first, x, y, -(dj / g), di / g);
      cols_op(pivots[i].second, pivots[j].second, 1, -(y * dj / g), 1, x * di / g);
    }
  }

  // Assemble outputs, permuting pivot i to position (i, i).
  std::vector<int> row_order, col_order;
  row_order.reserve(nr);
  col_order.reserve(nc);
  for (const auto& [r, c] : pivots) {
    row_order.push_back(r);
    col_order.push_back(c);
  }
  for (int r = 0; r < nr; ++r)
    if (!row_done[r]) row_order.push_back(r);
  for (int c = 0; c < nc; ++c)
    if (!col_done[c]) col_order.push_back(c);

  SmithDecomposition out;
  out.rank = t;
  out.d = IntMatrix(nr, nc);
  for (int i = 0; i < t; ++i) out.d.at(i, i) = a.get(pivots[i].first, pivots[i].second);
  if (opt.with_u) out.u = u.to_dense_row_permuted(row_order);
  if (opt.with_v) out.v = v.to_dense_col_permuted(col_order);
  if (opt.with_u_inv) {
    // ui holds (u^-1)^T; the row permutation on u acts as a column pick here.
    IntMatrix uit = ui.to_dense_row_permuted(row_order);
    out.u_inv = uit.transpose();
  }
  if (opt.with_v_inv) out.v_inv = vi.to_dense_row_permuted(col_order);
  return out;
}

}  // namespace detail

// Smith normal form by fraction-free elimination.  Pivots are chosen with
// minimal absolute value, ties broken by Markowitz fill count and then by
// position, which keeps intermediate entries small on the sparse incidence
// matrices this library produces.  Output is deterministic for a fixed input.
inline SmithDecomposition smith_normal_form(const IntMatrix& m, const SnfOptions& opt = {}) {
  return detail::snf_run(detail::SparseMat::from_dense(m, true), opt);
}

inline SmithDecomposition smith_normal_form(const SparseColMatrix& m, const SnfOptions& opt = {}) {
  return detail::snf_run(detail::SparseMat::from_columns(m, true), opt);
}

inline int matrix_rank(const IntMatrix& m) {
  return smith_normal_form(m, {.with_u = false, .with_v = false}).rank;
}

// Basis of the integer kernel lattice of m, as columns.  The kernel is a
// direct summand of Z^cols, so the basis extends to a basis of the ambient
// lattice.
inline IntMatrix kernel_basis(const IntMatrix& m, const SmithDecomposition& snf) {
  std::vector<int> idx;
  for (int j = snf.rank; j < m.cols(); ++j) idx.push_back(j);
  return snf.v.select_cols(idx);
}

inline IntMatrix kernel_basis(const IntMatrix& m) {
  auto snf = smith_normal_form(m, {.with_u = false, .with_v = true});
  return kernel_basis(m, snf);
}

// One solution of m*x = c over the integers, if any.
inline std::optional<std::vector<Int>> solve(const SmithDecomposition& snf,
                                             const std::vector<Int>& c) {
  std::vector<Int> b = snf.u.apply(c);
  std::vector<Int> z(snf.v.cols());
  for (int i = 0; i < int(b.size()); ++i) {
    if (i < snf.rank) {
      const Int& d = snf.d.at(i, i);
      if (b[i] % d != 0) return std::nullopt;
      z[i] = b[i] / d;
    } else if (b[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.v.apply(z);
}

inline std::optional<std::vector<Int>> solve(const IntMatrix& m, const std::vector<Int>& c) {
  return solve(smith_normal_form(m), c);
}

// Whether c lies in the column span (integer lattice) of m.
inline bool in_column_span(const SmithDecomposition& snf, const std::vector<Int>& c) {
  return solve(snf, c).has_value();
}

// Solve m*X = C columnwise; nullopt if any column fails.
inline std::optional<IntMatrix> solve_matrix(const SmithDecomposition& snf, const IntMatrix& c) {
  IntMatrix x(snf.v.cols(), c.cols());
  for (int j = 0; j < c.cols(); ++j) {
    auto col = solve(snf, c.column(j));
    if (!col) return std::nullopt;
    x.set_column(j, *col);
  }
  return x;
}

}  // namespace khom
