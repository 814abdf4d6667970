/**
 * Coboundary operators, adjoints and the reduced Laplacian L_{k-1} of a sum
 * complex, in the standard basis of indicator cochains.
 *
 * Basis order is lexicographic in every degree. The incidence number
 * (tau : sigma) is (-1)^i when sigma is tau with its i-th vertex (ascending
 * order) deleted. The augmentation d_{-1} : C^{-1} = R -> C^0 is the all-ones
 * column. All faces carry weight one, so the adjoint of d is its transpose.
 */
#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sumcx/combinatorics.hpp"
#include "sumcx/errors.hpp"
#include "sumcx/integer_rank.hpp"
#include "sumcx/sum_complex.hpp"

namespace sumcx {

struct CochainBasis {
  int dimension = 0;
  std::vector<Simplex> faces;

  std::size_t size() const { return faces.size(); }
};

inline CochainBasis cochain_basis(const SumComplex& X, int d) {
  if (d < -1 || d > X.k) throw ParameterError("cochain degree out of range");
  CochainBasis basis{d, {}};
  if (d == X.k) {
    basis.faces = X.top_faces;
  } else {
    for (auto& c : all_combinations(X.n(), d + 1)) basis.faces.push_back(Simplex{std::move(c)});
  }
  return basis;
}

// Integer sparse matrix between two cochain spaces (rows = codomain faces).
class LinearOperator {
 public:
  using Matrix = Eigen::SparseMatrix<std::int64_t>;

  LinearOperator() = default;
  explicit LinearOperator(Matrix m) : matrix_(std::move(m)) { matrix_.makeCompressed(); }

  static LinearOperator zero(Eigen::Index rows, Eigen::Index cols) {
    return LinearOperator(Matrix(rows, cols));
  }

  static LinearOperator scaled_identity(Eigen::Index dim, std::int64_t scale) {
    Matrix M(dim, dim);
    M.reserve(Eigen::VectorXi::Constant(dim, 1));
    for (Eigen::Index i = 0; i < dim; ++i) M.insert(i, i) = scale;
    return LinearOperator(std::move(M));
  }

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index rows() const { return matrix_.rows(); }
  Eigen::Index cols() const { return matrix_.cols(); }

  LinearOperator transpose() const { return LinearOperator(Matrix(matrix_.transpose())); }

  std::int64_t operator()(Eigen::Index r, Eigen::Index c) const { return matrix_.coeff(r, c); }

  Eigen::MatrixXd to_dense() const { return Eigen::MatrixXd(matrix_.cast<double>()); }
  Eigen::SparseMatrix<double> to_real() const { return matrix_.cast<double>(); }

  template <class Scalar>
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) const {
    return matrix_.cast<Scalar>() * v;
  }

  // Largest |entry|; zero iff the operator is zero.
  std::int64_t max_abs_entry() const {
    std::int64_t best = 0;
    for (int c = 0; c < matrix_.outerSize(); ++c) {
      for (Matrix::InnerIterator it(matrix_, c); it; ++it) {
        best = std::max<std::int64_t>(best, it.value() < 0 ? -it.value() : it.value());
      }
    }
    return best;
  }

  std::int64_t trace() const {
    std::int64_t t = 0;
    for (Eigen::Index i = 0; i < std::min(rows(), cols()); ++i) t += matrix_.coeff(i, i);
    return t;
  }

  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) {
    if (a.cols() != b.rows()) throw ParameterError("operator dimensions do not compose");
    return LinearOperator(Matrix(a.matrix_ * b.matrix_));
  }

  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      throw ParameterError("operator dimensions do not match");
    }
    return LinearOperator(Matrix(a.matrix_ + b.matrix_));
  }

  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      throw ParameterError("operator dimensions do not match");
    }
    return LinearOperator(Matrix(a.matrix_ - b.matrix_));
  }

  // Exact entrywise equality.
  friend bool operator==(const LinearOperator& a, const LinearOperator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return (a - b).max_abs_entry() == 0;
  }

 private:
  Matrix matrix_;
};

inline LinearOperator adjoint(const LinearOperator& d) { return d.transpose(); }

// d_d on the full simplex with vertex set [0, n), for -1 <= d <= n-2.
inline LinearOperator simplex_coboundary(int n, int d) {
  if (d < -1 || d > n - 2) throw ParameterError("coboundary degree out of range for the simplex");
  const std::int64_t cols = binomial(n, d + 1);
  const std::int64_t rows = binomial(n, d + 2);
  std::vector<Eigen::Triplet<std::int64_t>> entries;
  entries.reserve(std::size_t(rows) * (d + 2));
  if (d == -1) {
    for (int v = 0; v < n; ++v) entries.emplace_back(v, 0, 1);
  } else {
    LexRanker ranker(n, d + 1);
    std::vector<int> tau(d + 2), face(d + 1);
    for (int i = 0; i < d + 2; ++i) tau[i] = i;
    std::int64_t row = 0;
    do {
      for (int i = 0; i < d + 2; ++i) {
        std::copy(tau.begin(), tau.begin() + i, face.begin());
        std::copy(tau.begin() + i + 1, tau.end(), face.begin() + i);
        entries.emplace_back(row, ranker.rank(face), i % 2 ? -1 : 1);
      }
      ++row;
    } while (next_combination(tau, n));
  }
  LinearOperator::Matrix M(rows, cols);
  M.setFromTriplets(entries.begin(), entries.end());
  return LinearOperator(std::move(M));
}

// d_d : C^d(X) -> C^{d+1}(X) for -1 <= d <= k. d_k maps to the (empty)
// space of (k+1)-cochains and is returned as a 0 x f_k operator.
inline LinearOperator coboundary(const SumComplex& X, int d) {
  const int k = X.k;
  if (d < -1 || d > k) {
    throw ParameterError("coboundary degree " + std::to_string(d) + " outside [-1, " +
                         std::to_string(k) + "]");
  }
  if (d <= k - 2) return simplex_coboundary(X.n(), d);
  if (d == k) return LinearOperator::zero(0, static_cast<Eigen::Index>(X.top_faces.size()));

  // d = k-1: rows are the top faces
  const int n = X.n();
  std::vector<Eigen::Triplet<std::int64_t>> entries;
  entries.reserve(X.top_faces.size() * (k + 1));
  LexRanker ranker(n, k);
  std::vector<int> face(k);
  for (std::size_t row = 0; row < X.top_faces.size(); ++row) {
    const auto& tau = X.top_faces[row].vertices;
    for (int i = 0; i <= k; ++i) {
      std::copy(tau.begin(), tau.begin() + i, face.begin());
      std::copy(tau.begin() + i + 1, tau.end(), face.begin() + i);
      entries.emplace_back(static_cast<Eigen::Index>(row), ranker.rank(face), i % 2 ? -1 : 1);
    }
  }
  LinearOperator::Matrix M(static_cast<Eigen::Index>(X.top_faces.size()), binomial(n, k));
  M.setFromTriplets(entries.begin(), entries.end());
  return LinearOperator(std::move(M));
}

// L_{k-1} = d_{k-2} d_{k-2}^* + d_{k-1}^* d_{k-1}.
inline LinearOperator laplacian_composed(const SumComplex& X) {
  const LinearOperator down = coboundary(X, X.k - 2);
  const LinearOperator up = coboundary(X, X.k - 1);
  return down * adjoint(down) + adjoint(up) * up;
}

/**
 * L_{k-1} assembled entry by entry, without any coboundary matrix:
 *
 *   L(s, s) = deg(s) + k
 *   L(s, t) = (s : s & t) (t : s & t)   if |s & t| = k-1 and s | t is not a face
 *   L(s, t) = 0                         otherwise
 */
inline LinearOperator laplacian_direct(const SumComplex& X) {
  const int n = X.n();
  const int k = X.k;
  const auto in_A = X.A.indicator(n);
  LexRanker ranker(n, k);
  std::vector<Eigen::Triplet<std::int64_t>> entries;
  std::vector<char> in_sigma(n);
  std::vector<int> sigma(k), tau(k);
  for (int i = 0; i < k; ++i) sigma[i] = i;
  std::int64_t row = 0;
  do {
    const int s = X.spec.sum(sigma);
    std::fill(in_sigma.begin(), in_sigma.end(), 0);
    for (int v : sigma) in_sigma[v] = 1;

    int deg = 0;
    for (int w = 0; w < n; ++w) {
      if (!in_sigma[w] && in_A[X.spec.add(s, w)]) ++deg;
    }
    entries.emplace_back(row, row, deg + k);

    for (int w = 0; w < n; ++w) {
      if (in_sigma[w] || in_A[X.spec.add(s, w)]) continue;  // s | t would be a face
      for (int i = 0; i < k; ++i) {
        // t = s - s[i] + w, kept ascending
        int pos_w = 0;
        int out = 0;
        for (int j = 0; j < k; ++j) {
          if (j == i) continue;
          if (sigma[j] < w) ++pos_w;
          tau[out++] = sigma[j];
        }
        tau[k - 1] = w;
        std::sort(tau.begin(), tau.end());
        const int sign_sigma = i % 2 ? -1 : 1;
        const int sign_tau = pos_w % 2 ? -1 : 1;
        entries.emplace_back(row, ranker.rank(tau), sign_sigma * sign_tau);
      }
    }
    ++row;
  } while (next_combination(sigma, n));

  const std::int64_t dim = binomial(n, k);
  LinearOperator::Matrix M(dim, dim);
  M.setFromTriplets(entries.begin(), entries.end());
  return LinearOperator(std::move(M));
}

struct Projections {
  Eigen::MatrixXd P;  // onto ker d_{k-2}^*
  Eigen::MatrixXd Q;  // onto Im d_{k-2}
};

// P = I - (1/n) d_{k-2} d_{k-2}^*, Q = (1/n) d_{k-2} d_{k-2}^* on C^{k-1} of the simplex.
inline Projections projections(int n, int k) {
  if (k < 1 || k >= n) throw ParameterError("projections need 1 <= k < n");
  const Eigen::MatrixXd D = simplex_coboundary(n, k - 2).to_dense();
  Projections out;
  out.Q = (D * D.transpose()) / double(n);
  out.P = Eigen::MatrixXd::Identity(out.Q.rows(), out.Q.cols()) - out.Q;
  return out;
}

inline std::size_t integer_rank(const LinearOperator& op) { return integer_rank(op.matrix()); }

// Coordinate format: a "rows cols nnz" header, then "row col value" per entry.
inline void write_coordinate(std::ostream& out, const LinearOperator& op) {
  const auto& M = op.matrix();
  out << M.rows() << ' ' << M.cols() << ' ' << M.nonZeros() << '\n';
  for (int c = 0; c < M.outerSize(); ++c) {
    for (LinearOperator::Matrix::InnerIterator it(M, c); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace sumcx
