/**
 * (k-1)-cochains of the simplex on G as skew-symmetric functions on G^k, and
 * their Fourier transforms on the dual G^^k.
 *
 * Functions are stored densely over all n^k tuples, first coordinate most
 * significant. Norms differ from the cochain norm by a factor k!:
 * (phi, psi) = k! (phi, psi)_X.
 *
 * This is a verification instrument: every transform here is the direct
 * O(n^{2k}) sum, which keeps it usable as an oracle.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sumcx/cochain_ops.hpp"
#include "sumcx/combinatorics.hpp"
#include "sumcx/errors.hpp"
#include "sumcx/group.hpp"

namespace sumcx {

using cplx = std::complex<double>;

class TupleFunction {
 public:
  TupleFunction(int n, int k) : n_(n), k_(k) {
    if (n < 1 || k < 1) throw ParameterError("tuple functions need n >= 1, k >= 1");
    std::size_t size = 1;
    for (int j = 0; j < k; ++j) size *= std::size_t(n);
    values_.assign(size, cplx{0.0, 0.0});
  }

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return values_.size(); }

  std::size_t flat_index(std::span<const int> tuple) const {
    std::size_t idx = 0;
    for (int j = 0; j < k_; ++j) idx = idx * n_ + std::size_t(tuple[j]);
    return idx;
  }

  void unflatten(std::size_t idx, std::span<int> tuple) const {
    for (int j = k_ - 1; j >= 0; --j) {
      tuple[j] = static_cast<int>(idx % n_);
      idx /= n_;
    }
  }

  cplx& operator[](std::size_t idx) { return values_[idx]; }
  const cplx& operator[](std::size_t idx) const { return values_[idx]; }
  cplx& at(std::span<const int> tuple) { return values_[flat_index(tuple)]; }
  const cplx& at(std::span<const int> tuple) const { return values_[flat_index(tuple)]; }

  const std::vector<cplx>& values() const { return values_; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& v : values_) best = std::max(best, std::abs(v));
    return best;
  }

 private:
  int n_;
  int k_;
  std::vector<cplx> values_;
};

// (phi, psi) = sum phi(x) conj(psi(x)).
inline cplx inner_product(const TupleFunction& f, const TupleFunction& g) {
  if (f.size() != g.size()) throw ParameterError("tuple functions have different shapes");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
  return s;
}

inline bool is_skew_symmetric(const TupleFunction& f, double tol) {
  std::vector<int> x(f.k());
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    f.unflatten(idx, x);
    if (permutation_sign(x) == 0) {
      if (std::abs(f[idx]) > tol) return false;
      continue;
    }
    for (int i = 0; i + 1 < f.k(); ++i) {
      std::swap(x[i], x[i + 1]);
      const bool ok = std::abs(f[idx] + f.at(x)) <= tol;
      std::swap(x[i], x[i + 1]);
      if (!ok) return false;
    }
  }
  return true;
}

// Sign-extends a cochain on the lexicographic (k-1)-face basis.
inline TupleFunction from_cochain(int n, int k, const Eigen::VectorXcd& cochain) {
  if (cochain.size() != binomial(n, k)) throw ParameterError("cochain has the wrong dimension");
  TupleFunction f(n, k);
  LexRanker ranker(n, k);
  std::vector<int> x(k), sorted(k);
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    f.unflatten(idx, x);
    const int sign = permutation_sign(x);
    if (sign == 0) continue;
    sorted = x;
    std::sort(sorted.begin(), sorted.end());
    f[idx] = double(sign) * cochain[ranker.rank(sorted)];
  }
  return f;
}

inline TupleFunction from_cochain(int n, int k, const Eigen::VectorXd& cochain) {
  return from_cochain(n, k, Eigen::VectorXcd(cochain.cast<cplx>()));
}

inline Eigen::VectorXcd to_cochain(const TupleFunction& f) {
  const auto faces = all_combinations(f.n(), f.k());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(faces.size()));
  for (std::size_t i = 0; i < faces.size(); ++i) out[Eigen::Index(i)] = f.at(faces[i]);
  return out;
}

namespace detail {

// table[chi * n + x] = chi(sign * x)
inline std::vector<cplx> character_table(const GroupSpec& spec, int sign) {
  const int n = spec.order();
  std::vector<cplx> table(std::size_t(n) * n);
  for (int chi = 0; chi < n; ++chi) {
    for (int x = 0; x < n; ++x) {
      table[std::size_t(chi) * n + x] = character_eval(spec, chi, sign < 0 ? spec.neg(x) : x);
    }
  }
  return table;
}

inline TupleFunction transform(const GroupSpec& spec, const TupleFunction& f, int sign, double scale) {
  const int n = spec.order();
  if (f.n() != n) throw ParameterError("tuple function does not live on this group");
  const int k = f.k();
  const auto table = character_table(spec, sign);
  TupleFunction out(n, k);
  std::vector<int> chi(k), x(k);
  for (std::size_t ci = 0; ci < out.size(); ++ci) {
    out.unflatten(ci, chi);
    cplx acc{0.0, 0.0};
    for (std::size_t xi = 0; xi < f.size(); ++xi) {
      if (f[xi] == cplx{0.0, 0.0}) continue;
      f.unflatten(xi, x);
      cplx weight{1.0, 0.0};
      for (int j = 0; j < k; ++j) weight *= table[std::size_t(chi[j]) * n + x[j]];
      acc += f[xi] * weight;
    }
    out[ci] = acc * scale;
  }
  return out;
}

}  // namespace detail

// phi^(chi) = sum_{x in G^k} phi(x) prod_j chi_j(-x_j).
inline TupleFunction tuple_fourier(const GroupSpec& spec, const TupleFunction& phi) {
  return detail::transform(spec, phi, -1, 1.0);
}

// Inverse of tuple_fourier: phi(x) = n^{-k} sum_chi phi^(chi) prod_j chi_j(x_j).
inline TupleFunction inverse_tuple_fourier(const GroupSpec& spec, const TupleFunction& phi_hat) {
  return detail::transform(spec, phi_hat, +1, std::pow(double(spec.order()), -phi_hat.k()));
}

// Antisymmetrization (1/k!) sum_pi sign(pi) f(pi x).
inline TupleFunction skew_symmetrize(const TupleFunction& f) {
  const int k = f.k();
  TupleFunction out(f.n(), k);
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  for (auto& base : all_combinations(f.n(), k)) {
    std::vector<int> perm = base;
    cplx acc{0.0, 0.0};
    do {
      acc += double(permutation_sign(perm)) * f.at(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    acc /= factorial;
    perm = base;
    do {
      out.at(perm) = double(permutation_sign(perm)) * acc;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

// Independent standard complex Gaussians on ascending tuples, sign-extended.
template <class Rng>
TupleFunction random_skew_function(int n, int k, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd cochain(binomial(n, k));
  for (Eigen::Index i = 0; i < cochain.size(); ++i) cochain[i] = cplx{gauss(rng), gauss(rng)};
  return from_cochain(n, k, cochain);
}

struct CharacterTuple {
  std::vector<int> characters;  // character indices, same encoding as elements
  auto operator<=>(const CharacterTuple&) const = default;
};

// T(chi_1, ..., chi_k) = (chi_2 / chi_1, ..., chi_k / chi_1, 1 / chi_1).
inline CharacterTuple apply_T_once(const GroupSpec& spec, const CharacterTuple& chi) {
  const auto& c = chi.characters;
  const int k = static_cast<int>(c.size());
  CharacterTuple out{std::vector<int>(k)};
  const int inv1 = spec.neg(c[0]);
  for (int j = 1; j < k; ++j) out.characters[j - 1] = spec.add(c[j], inv1);
  out.characters[k - 1] = inv1;
  return out;
}

// T^i in closed form for 1 <= i <= k:
//   (chi_{i+1}/chi_i, ..., chi_k/chi_i, 1/chi_i, chi_1/chi_i, ..., chi_{i-1}/chi_i)
inline CharacterTuple apply_T(const GroupSpec& spec, const CharacterTuple& chi, int i) {
  const auto& c = chi.characters;
  const int k = static_cast<int>(c.size());
  if (i < 0 || i > k) {
    throw ParameterError("rotation power " + std::to_string(i) + " outside [0, " + std::to_string(k) + "]");
  }
  if (i == 0) return chi;
  const int inv = spec.neg(c[i - 1]);
  CharacterTuple out;
  out.characters.reserve(k);
  for (int j = i + 1; j <= k; ++j) out.characters.push_back(spec.add(c[j - 1], inv));
  out.characters.push_back(inv);
  for (int j = 1; j < i; ++j) out.characters.push_back(spec.add(c[j - 1], inv));
  return out;
}

// f_a(x) = d_{k-1} phi(a - sum x, x_1, ..., x_k)
//        = phi(x) + sum_i (-1)^i phi(a - sum x, x_1, .., x_i omitted, .., x_k).
inline TupleFunction f_a(const GroupSpec& spec, const TupleFunction& phi, int a) {
  const int k = phi.k();
  TupleFunction out(phi.n(), k);
  std::vector<int> x(k), y(k);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    out.unflatten(idx, x);
    const int head = spec.sub(a, spec.sum(x));
    cplx value = phi[idx];
    for (int i = 1; i <= k; ++i) {
      y[0] = head;
      int pos = 1;
      for (int j = 1; j <= k; ++j) {
        if (j != i) y[pos++] = x[j - 1];
      }
      value += (i % 2 ? -1.0 : 1.0) * phi.at(y);
    }
    out[idx] = value;
  }
  return out;
}

// sum_{i=0}^k (-1)^{ki} chi_i(-a) phi^(T^i chi), with chi_0 the trivial character.
inline cplx f_a_hat_by_rotation(const GroupSpec& spec, const TupleFunction& phi_hat, int a,
                                const CharacterTuple& chi) {
  const int k = phi_hat.k();
  cplx acc = phi_hat.at(chi.characters);
  const int minus_a = spec.neg(a);
  for (int i = 1; i <= k; ++i) {
    const double sign = (k * i) % 2 ? -1.0 : 1.0;
    acc += sign * character_eval(spec, chi.characters[i - 1], minus_a) *
           phi_hat.at(apply_T(spec, chi, i).characters);
  }
  return acc;
}

// sum_{a in A} sum_x |f_a(x)|^2, which equals (k+1)! ||d_{k-1} phi||^2_X.
inline double coboundary_energy(const GroupSpec& spec, const SubsetA& A, const TupleFunction& phi) {
  double total = 0.0;
  for (int a : A.elements()) total += f_a(spec, phi, a).norm_squared();
  return total;
}

struct SupportCheck {
  bool is_in_kernel = true;  // d_{k-2}^* phi = 0
  bool support_ok = true;    // phi^ vanishes off (G^_+)^k
  bool agree() const { return is_in_kernel == support_ok; }
};

inline SupportCheck cocycle_support_check(const GroupSpec& spec, const TupleFunction& phi,
                                          double rel_tol = 1e-9) {
  const double norm = std::sqrt(phi.norm_squared());
  if (norm == 0.0) return {true, true};
  const int n = spec.order();
  const int k = phi.k();

  const Eigen::VectorXcd cochain = to_cochain(phi);
  const Eigen::VectorXcd down = simplex_coboundary(n, k - 2).transpose().apply(cochain);

  const TupleFunction hat = tuple_fourier(spec, phi);
  double off_support = 0.0;
  std::vector<int> chi(k);
  for (std::size_t idx = 0; idx < hat.size(); ++idx) {
    hat.unflatten(idx, chi);
    if (std::find(chi.begin(), chi.end(), 0) != chi.end()) {
      off_support = std::max(off_support, std::abs(hat[idx]));
    }
  }
  return {down.norm() < rel_tol * norm, off_support < rel_tol * hat.max_abs()};
}

}  // namespace sumcx
