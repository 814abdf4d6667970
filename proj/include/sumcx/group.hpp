/**
 * Finite abelian groups as products of cyclic factors Z_{n_1} x ... x Z_{n_r},
 * their characters, and Fourier coefficients of subset indicators.
 *
 * Elements and characters share the same mixed-radix residue encoding; the
 * first factor is the most significant digit, so (1,2) in Z_2 x Z_3 has
 * index 5. The character with residues c pairs with x as
 *
 *     chi_c(x) = exp(2 pi i sum_j c_j x_j / n_j).
 */
#pragma once

#include <algorithm>
#include <charconv>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumcx/errors.hpp"

namespace sumcx {

struct GroupElement {
  std::vector<int> residues;
  auto operator<=>(const GroupElement&) const = default;
};

struct Character {
  std::vector<int> residues;
  auto operator<=>(const Character&) const = default;
};

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(',', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline long long parse_integer(std::string_view token, std::string_view what) {
  token = trim(token);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParameterError("cannot parse " + std::string(what) + " from '" +
                         std::string(token) + "'");
  }
  return value;
}

}  // namespace detail

class GroupSpec {
 public:
  explicit GroupSpec(std::vector<int> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw ParameterError("group needs at least one cyclic factor");
    std::int64_t n = 1;
    std::int64_t exponent = 1;
    for (int q : orders_) {
      if (q < 2) throw ParameterError("cyclic factor orders must be >= 2");
      n *= q;
      exponent = std::lcm(exponent, static_cast<std::int64_t>(q));
      if (n > (1 << 24)) throw ParameterError("group order too large");
    }
    order_ = static_cast<int>(n);
    exponent_ = exponent;
    const int r = rank();
    residues_.resize(static_cast<std::size_t>(order_) * r);
    std::vector<int> digits(r, 0);
    for (int idx = 0; idx < order_; ++idx) {
      std::copy(digits.begin(), digits.end(), residues_.begin() + std::size_t(idx) * r);
      for (int j = r - 1; j >= 0; --j) {
        if (++digits[j] < orders_[j]) break;
        digits[j] = 0;
      }
    }
  }

  // "7" or "2,2,3".
  static GroupSpec parse(std::string_view text) {
    std::vector<int> orders;
    for (auto token : detail::split_commas(text)) {
      long long q = detail::parse_integer(token, "group factor order");
      if (q < 2 || q > (1 << 24)) {
        throw ParameterError("group factor order out of range: " + std::to_string(q));
      }
      orders.push_back(static_cast<int>(q));
    }
    return GroupSpec(std::move(orders));
  }

  const std::vector<int>& orders() const { return orders_; }
  int order() const { return order_; }
  int rank() const { return static_cast<int>(orders_.size()); }
  // lcm of the factor orders; every character phase is a multiple of 1/exponent.
  std::int64_t exponent() const { return exponent_; }

  std::string to_string() const {
    std::string out;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(orders_[j]);
    }
    return out;
  }

  bool is_prime_cyclic() const {
    if (orders_.size() != 1) return false;
    const int p = orders_[0];
    for (int d = 2; d * d <= p; ++d) {
      if (p % d == 0) return false;
    }
    return true;
  }

  std::span<const int> residues(int index) const {
    return {residues_.data() + std::size_t(index) * rank(), std::size_t(rank())};
  }

  int encode(std::span<const int> residues) const {
    int idx = 0;
    for (int j = 0; j < rank(); ++j) idx = idx * orders_[j] + residues[j];
    return idx;
  }

  // Index-level arithmetic; the hot paths of the complex builder use these.
  int add(int x, int y) const {
    if (orders_.size() == 1) {
      int s = x + y;
      return s >= order_ ? s - order_ : s;
    }
    auto rx = residues(x), ry = residues(y);
    int idx = 0;
    for (int j = 0; j < rank(); ++j) {
      int s = rx[j] + ry[j];
      if (s >= orders_[j]) s -= orders_[j];
      idx = idx * orders_[j] + s;
    }
    return idx;
  }

  int neg(int x) const {
    if (orders_.size() == 1) return x == 0 ? 0 : order_ - x;
    auto rx = residues(x);
    int idx = 0;
    for (int j = 0; j < rank(); ++j) {
      int s = rx[j] == 0 ? 0 : orders_[j] - rx[j];
      idx = idx * orders_[j] + s;
    }
    return idx;
  }

  int sub(int x, int y) const { return add(x, neg(y)); }

  int sum(std::span<const int> xs) const {
    int s = 0;
    for (int x : xs) s = add(s, x);
    return s;
  }

  // Phase numerator t such that chi(x) = exp(2 pi i t / exponent()), t in [0, exponent).
  std::int64_t phase(int chi, int x) const {
    auto rc = residues(chi), rx = residues(x);
    std::int64_t t = 0;
    for (int j = 0; j < rank(); ++j) {
      std::int64_t term = std::int64_t(rc[j]) * rx[j] % orders_[j];
      t = (t + term * (exponent_ / orders_[j])) % exponent_;
    }
    return t;
  }

  bool operator==(const GroupSpec& other) const { return orders_ == other.orders_; }

 private:
  std::vector<int> orders_;
  int order_ = 0;
  std::int64_t exponent_ = 1;
  std::vector<int> residues_;
};

// exp(2 pi i num / den) with exact values at the quarter turns.
inline std::complex<double> unit_root(std::int64_t num, std::int64_t den) {
  num %= den;
  if (num < 0) num += den;
  if ((4 * num) % den == 0) {
    switch (4 * num / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * double(num) / double(den);
  return {std::cos(angle), std::sin(angle)};
}

inline void validate(const GroupSpec& spec, std::span<const int> residues) {
  if (int(residues.size()) != spec.rank()) {
    throw InvalidElement("residue tuple has " + std::to_string(residues.size()) +
                         " entries, group has " + std::to_string(spec.rank()) + " factors");
  }
  for (int j = 0; j < spec.rank(); ++j) {
    if (residues[j] < 0 || residues[j] >= spec.orders()[j]) {
      throw InvalidElement("residue " + std::to_string(residues[j]) + " not in [0, " +
                           std::to_string(spec.orders()[j]) + ")");
    }
  }
}

inline int element_index(const GroupSpec& spec, const GroupElement& x) {
  validate(spec, x.residues);
  return spec.encode(x.residues);
}

inline int character_index(const GroupSpec& spec, const Character& chi) {
  validate(spec, chi.residues);
  return spec.encode(chi.residues);
}

inline GroupElement from_index(const GroupSpec& spec, int index) {
  if (index < 0 || index >= spec.order()) {
    throw InvalidElement("element index " + std::to_string(index) + " out of range");
  }
  auto r = spec.residues(index);
  return GroupElement{{r.begin(), r.end()}};
}

inline Character character_from_index(const GroupSpec& spec, int index) {
  return Character{from_index(spec, index).residues};
}

inline GroupElement add(const GroupSpec& spec, const GroupElement& x, const GroupElement& y) {
  return from_index(spec, spec.add(element_index(spec, x), element_index(spec, y)));
}

inline GroupElement neg(const GroupSpec& spec, const GroupElement& x) {
  return from_index(spec, spec.neg(element_index(spec, x)));
}

inline GroupElement sum(const GroupSpec& spec, std::span<const GroupElement> xs) {
  int s = 0;
  for (const auto& x : xs) s = spec.add(s, element_index(spec, x));
  return from_index(spec, s);
}

// Phase is reduced exactly before the single cos/sin evaluation.
inline std::complex<double> character_eval(const GroupSpec& spec, int chi, int x) {
  return unit_root(spec.phase(chi, x), spec.exponent());
}

inline std::complex<double> character_eval(const GroupSpec& spec, const Character& chi,
                                           const GroupElement& x) {
  return character_eval(spec, character_index(spec, chi), element_index(spec, x));
}

// Sorted, duplicate-free subset of element indices.
class SubsetA {
 public:
  SubsetA() = default;

  // Sorts; rejects duplicates and out-of-range indices.
  SubsetA(const GroupSpec& spec, std::vector<int> indices) : elements_(std::move(indices)) {
    std::sort(elements_.begin(), elements_.end());
    if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
      throw ParameterError("subset contains duplicate elements");
    }
    for (int a : elements_) {
      if (a < 0 || a >= spec.order()) {
        throw InvalidElement("subset element " + std::to_string(a) + " not in [0, " +
                             std::to_string(spec.order()) + ")");
      }
    }
  }

  // Comma-separated indices; "" is the empty set.
  static SubsetA parse(const GroupSpec& spec, std::string_view text) {
    std::vector<int> indices;
    if (!detail::trim(text).empty()) {
      for (auto token : detail::split_commas(text)) {
        long long v = detail::parse_integer(token, "subset element");
        if (v < 0 || v >= spec.order()) {
          throw InvalidElement("subset element " + std::to_string(v) + " not in [0, " +
                               std::to_string(spec.order()) + ")");
        }
        indices.push_back(static_cast<int>(v));
      }
    }
    return SubsetA(spec, std::move(indices));
  }

  static SubsetA whole(const GroupSpec& spec) {
    std::vector<int> all(spec.order());
    std::iota(all.begin(), all.end(), 0);
    return SubsetA(spec, std::move(all));
  }

  const std::vector<int>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool empty() const { return elements_.empty(); }
  bool contains(int x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

  std::vector<char> indicator(int n) const {
    std::vector<char> mask(n, 0);
    for (int a : elements_) mask[a] = 1;
    return mask;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(elements_[i]);
    }
    return out;
  }

  bool operator==(const SubsetA&) const = default;

 private:
  std::vector<int> elements_;
};

// 1_A^(eta) = sum_{a in A} eta(-a).
inline std::complex<double> fourier_indicator(const GroupSpec& spec, const SubsetA& A, int eta) {
  std::complex<double> acc{0.0, 0.0};
  for (int a : A.elements()) acc += character_eval(spec, eta, spec.neg(a));
  return acc;
}

inline std::complex<double> fourier_indicator(const GroupSpec& spec, const SubsetA& A,
                                              const Character& eta) {
  return fourier_indicator(spec, A, character_index(spec, eta));
}

// max |1_A^(eta)| over nontrivial eta, by direct enumeration in O(n m).
// A per-factor FFT of the indicator would give all coefficients in
// O(n log n); at the sizes used here the direct sums are not the bottleneck.
inline double max_nontrivial_character_sum(const GroupSpec& spec, const SubsetA& A) {
  double best = 0.0;
  for (int eta = 1; eta < spec.order(); ++eta) {
    best = std::max(best, std::abs(fourier_indicator(spec, A, eta)));
  }
  return best;
}

}  // namespace sumcx
