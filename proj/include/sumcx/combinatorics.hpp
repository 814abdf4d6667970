#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "sumcx/errors.hpp"

namespace sumcx {

// C(n, k) in 64-bit; throws if it does not fit.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is exact at each step
    __int128 next = static_cast<__int128>(result) * (n - k + i) / i;
    if (next > std::numeric_limits<std::int64_t>::max()) {
      throw ParameterError("binomial coefficient overflows 64 bits");
    }
    result = static_cast<std::int64_t>(next);
  }
  return result;
}

// Advances an ascending subset of [0, n) to its lexicographic successor.
// Returns false after the last subset.
inline bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

inline std::vector<std::vector<int>> all_combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  do {
    out.push_back(c);
  } while (next_combination(c, n));
  return out;
}

// Position of an ascending k-subset of [0, n) in lexicographic order.
class LexRanker {
 public:
  LexRanker(int n, int k) : n_(n), k_(k), table_(std::size_t(n + 1) * (k + 1), 0) {
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= k; ++b) table_[std::size_t(a) * (k + 1) + b] = binomial(a, b);
    }
  }

  std::int64_t rank(std::span<const int> subset) const {
    std::int64_t r = 0;
    int prev = -1;
    for (int i = 0; i < k_; ++i) {
      // subsets that agree before position i and have a smaller entry at i
      for (int v = prev + 1; v < subset[i]; ++v) r += choose(n_ - 1 - v, k_ - 1 - i);
      prev = subset[i];
    }
    return r;
  }

  std::int64_t count() const { return choose(n_, k_); }

 private:
  std::int64_t choose(int a, int b) const {
    if (a < 0 || b < 0 || b > a) return 0;
    return table_[std::size_t(a) * (k_ + 1) + b];
  }

  int n_;
  int k_;
  std::vector<std::int64_t> table_;
};

// +1 for an even permutation sorting xs, -1 for odd, 0 when entries repeat.
inline int permutation_sign(std::span<const int> xs) {
  int inversions = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i] == xs[j]) return 0;
      if (xs[i] > xs[j]) ++inversions;
    }
  }
  return inversions % 2 ? -1 : 1;
}

}  // namespace sumcx
