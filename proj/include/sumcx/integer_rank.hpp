/**
 * Exact rank over Q of an integer matrix.
 *
 * Phase 1 eliminates with unit pivots (+-1) on sparse rows. Those are
 * unimodular row operations, so entries stay integers without any division.
 * Coboundary matrices of simplicial complexes are +-1 incidence matrices and
 * usually reduce almost completely this way.
 *
 * Phase 2 runs fraction-free (Bareiss) elimination on whatever is left.
 *
 * Both phases first run in checked 64-bit arithmetic; on overflow the whole
 * computation is repeated with boost::multiprecision::cpp_int.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <boost/multiprecision/cpp_int.hpp>

namespace sumcx {

namespace detail {

struct RankOverflow {};

template <class Int>
Int checked_mul(const Int& a, const Int& b) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw RankOverflow{};
    return r;
  } else {
    return a * b;
  }
}

template <class Int>
Int checked_sub(const Int& a, const Int& b) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw RankOverflow{};
    return r;
  } else {
    return a - b;
  }
}

template <class Int>
using SparseRow = std::vector<std::pair<int, Int>>;

template <class Int>
bool is_unit(const Int& v) {
  return v == 1 || v == -1;
}

template <class Int>
std::size_t bareiss_rank(std::vector<std::vector<Int>> M) {
  const std::size_t rows = M.size();
  if (rows == 0) return 0;
  const std::size_t cols = M[0].size();
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Int v = checked_sub(checked_mul(M[r][c], M[i][j]), checked_mul(M[i][c], M[r][j]));
        M[i][j] = v / prev;  // exact
      }
      M[i][c] = 0;
    }
    prev = M[r][c];
    ++r;
  }
  return r;
}

template <class Int>
std::size_t eliminate_rank(std::vector<SparseRow<Int>> rows, int cols) {
  const std::size_t nrows = rows.size();
  std::vector<std::vector<int>> col_rows(cols);
  std::vector<char> active(nrows, 0);
  for (std::size_t r = 0; r < nrows; ++r) {
    if (rows[r].empty()) continue;
    active[r] = 1;
    for (const auto& [c, v] : rows[r]) col_rows[c].push_back(static_cast<int>(r));
  }

  std::size_t rank = 0;
  std::vector<std::size_t> stamp(nrows, 0);
  std::size_t epoch = 0;
  SparseRow<Int> merged;

  while (true) {
    // Markowitz-style choice among unit entries: minimize fill estimate.
    std::size_t best_row = nrows;
    int best_col = -1;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < nrows && best_cost > 0; ++r) {
      if (!active[r]) continue;
      const std::size_t len = rows[r].size() - 1;
      for (const auto& [c, v] : rows[r]) {
        if (!is_unit(v)) continue;
        const std::size_t cost = len * (col_rows[c].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_row = r;
          best_col = c;
        }
      }
    }
    if (best_row == nrows) break;

    const auto& pivot_row = rows[best_row];
    const Int pivot_sign =
        std::lower_bound(pivot_row.begin(), pivot_row.end(), best_col,
                         [](const auto& e, int c) { return e.first < c; })->second;
    ++epoch;
    stamp[best_row] = epoch;
    for (int r : col_rows[best_col]) {
      if (stamp[r] == epoch || !active[r]) continue;
      stamp[r] = epoch;
      auto& row = rows[r];
      auto hit = std::lower_bound(row.begin(), row.end(), best_col,
                                  [](const auto& e, int c) { return e.first < c; });
      if (hit == row.end() || hit->first != best_col) continue;
      // row -= (v / pivot) * pivot_row, and 1/pivot == pivot for a unit
      const Int factor = checked_mul(hit->second, pivot_sign);
      merged.clear();
      auto a = row.begin();
      auto b = pivot_row.begin();
      while (a != row.end() || b != pivot_row.end()) {
        if (b == pivot_row.end() || (a != row.end() && a->first < b->first)) {
          merged.push_back(*a++);
        } else if (a == row.end() || b->first < a->first) {
          Int v = checked_sub(Int(0), checked_mul(factor, b->second));
          col_rows[b->first].push_back(r);
          merged.emplace_back(b->first, std::move(v));
          ++b;
        } else {
          Int v = checked_sub(a->second, checked_mul(factor, b->second));
          if (v != 0) merged.emplace_back(a->first, std::move(v));
          ++a;
          ++b;
        }
      }
      row.swap(merged);
      if (row.empty()) active[r] = 0;
    }
    active[best_row] = 0;
    col_rows[best_col].clear();
    ++rank;
  }

  // Leftover rows have no unit entries.
  std::vector<int> live_cols;
  std::vector<int> col_pos(cols, -1);
  std::vector<std::size_t> live_rows;
  for (std::size_t r = 0; r < nrows; ++r) {
    if (!active[r]) continue;
    live_rows.push_back(r);
    for (const auto& [c, v] : rows[r]) {
      if (col_pos[c] < 0) {
        col_pos[c] = static_cast<int>(live_cols.size());
        live_cols.push_back(c);
      }
    }
  }
  if (live_rows.empty()) return rank;
  std::vector<std::vector<Int>> dense(live_rows.size(), std::vector<Int>(live_cols.size(), Int(0)));
  for (std::size_t i = 0; i < live_rows.size(); ++i) {
    for (const auto& [c, v] : rows[live_rows[i]]) dense[i][col_pos[c]] = v;
  }
  return rank + bareiss_rank(std::move(dense));
}

template <class Int>
std::vector<SparseRow<Int>> to_rows(const Eigen::SparseMatrix<std::int64_t>& M) {
  std::vector<SparseRow<Int>> rows(M.rows());
  for (int c = 0; c < M.outerSize(); ++c) {
    for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(M, c); it; ++it) {
      if (it.value() != 0) rows[it.row()].emplace_back(static_cast<int>(it.col()), Int(it.value()));
    }
  }
  // column-major traversal already yields ascending columns per row
  return rows;
}

}  // namespace detail

inline std::size_t integer_rank(const Eigen::SparseMatrix<std::int64_t>& M) {
  // Eliminate along the shorter side.
  const Eigen::SparseMatrix<std::int64_t> work =
      M.rows() <= M.cols() ? M : Eigen::SparseMatrix<std::int64_t>(M.transpose());
  try {
    return detail::eliminate_rank<std::int64_t>(detail::to_rows<std::int64_t>(work),
                                                static_cast<int>(work.cols()));
  } catch (const detail::RankOverflow&) {
    using big = boost::multiprecision::cpp_int;
    return detail::eliminate_rank<big>(detail::to_rows<big>(work), static_cast<int>(work.cols()));
  }
}

inline std::size_t integer_rank(const Eigen::MatrixX<std::int64_t>& M) {
  std::vector<Eigen::Triplet<std::int64_t>> entries;
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
      if (M(r, c) != 0) entries.emplace_back(r, c, M(r, c));
    }
  }
  Eigen::SparseMatrix<std::int64_t> S(M.rows(), M.cols());
  S.setFromTriplets(entries.begin(), entries.end());
  return integer_rank(S);
}

}  // namespace sumcx
