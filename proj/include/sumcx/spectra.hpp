/**
 * Spectral gap mu_{k-1}(X_{A,k}), exact homology dimension over C, and the
 * bounds that sandwich mu:
 *
 *   m - k max_{eta != 1} |1_A^(eta)|  <=  mu  <=  max deg + k  <=  m + k
 *
 * The lower bound is the character-sum bound, the upper bound comes from the
 * trace of L_{k-1}. full_report() refuses to return an instance that breaks
 * either side.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sumcx/cochain_ops.hpp"
#include "sumcx/errors.hpp"
#include "sumcx/group.hpp"
#include "sumcx/sum_complex.hpp"

namespace sumcx {

enum class SolverKind { dense, iterative };

inline const char* to_string(SolverKind s) { return s == SolverKind::dense ? "dense" : "iterative"; }

struct SolverOptions {
  std::size_t dense_threshold = 4000;
  double solve_tol = 1e-11;  // successive Rayleigh quotients
  std::size_t max_iterations = 200000;
};

struct EigenEstimate {
  double value = 0.0;
  SolverKind solver = SolverKind::dense;
  double residual = 0.0;  // ||L v - value v|| for the iterative path
  std::size_t iterations = 0;
};

// Eigenvalues are treated as zero below 1e-8 max(1, n).
inline double default_zero_tolerance(int n) { return 1e-8 * std::max(1, n); }

inline std::vector<double> dense_spectrum(const LinearOperator& L) {
  if (L.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.to_dense(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
  return {ev.data(), ev.data() + ev.size()};
}

namespace detail {

// Power iteration on c I - L with c the Gershgorin bound, so the dominant
// eigenvalue is c - mu.
inline EigenEstimate shifted_power_min(const LinearOperator& L, const SolverOptions& opts) {
  const Eigen::SparseMatrix<double> A = L.to_real();
  const Eigen::Index dim = A.rows();
  Eigen::VectorXd row_abs = Eigen::VectorXd::Zero(dim);
  for (int c = 0; c < A.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) {
      row_abs[it.row()] += std::abs(it.value());
    }
  }
  const double shift = row_abs.maxCoeff();

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = unif(rng);
  v.normalize();

  Eigen::VectorXd Lv = A * v;
  double rq = v.dot(Lv);
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    Eigen::VectorXd w = shift * v - Lv;
    const double norm = w.norm();
    if (norm == 0.0) {
      // (shift I - L) v = 0: v is an eigenvector for shift, the top of the spectrum
      return {rq, SolverKind::iterative, (Lv - rq * v).norm(), it};
    }
    v = w / norm;
    Lv = A * v;
    const double next = v.dot(Lv);
    if (std::abs(next - rq) < opts.solve_tol) {
      return {next, SolverKind::iterative, (Lv - next * v).norm(), it};
    }
    rq = next;
  }
  const double residual = (Lv - rq * v).norm();
  throw SolverError("shifted power iteration did not converge in " +
                        std::to_string(opts.max_iterations) + " iterations",
                    rq, residual, opts.max_iterations);
}

}  // namespace detail

inline EigenEstimate estimate_min_eigenvalue(const LinearOperator& L, const SolverOptions& opts = {}) {
  if (L.rows() != L.cols()) throw ParameterError("eigenvalues need a square operator");
  if (L.rows() == 0) throw ParameterError("eigenvalues of an empty operator");
  if (static_cast<std::size_t>(L.rows()) <= opts.dense_threshold) {
    return {dense_spectrum(L).front(), SolverKind::dense, 0.0, 0};
  }
  return detail::shifted_power_min(L, opts);
}

inline double min_eigenvalue(const LinearOperator& L, const SolverOptions& opts = {}) {
  return estimate_min_eigenvalue(L, opts).value;
}

// dim H~_{k-1}(X; C) = f_{k-1} - rank d_{k-1} - rank d_{k-2}, all ranks exact.
inline std::int64_t homology_dim(const SumComplex& X) {
  const std::int64_t f = face_count(X, X.k - 1);
  const auto up = static_cast<std::int64_t>(integer_rank(coboundary(X, X.k - 1)));
  const auto down = static_cast<std::int64_t>(integer_rank(coboundary(X, X.k - 2)));
  return f - up - down;
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Closed form for Z_p: 0 when m >= k+1, otherwise (1 - m/(k+1)) C(p-1, k).
// Empty when p is not prime, and for k = p-1 with 0 < m < p, where the
// complex depends on whether 0 is in A and the closed form is not an integer.
inline std::optional<std::int64_t> predicted_homology_dim(int p, int k, int m) {
  if (!is_prime(p) || k < 1 || k >= p || m < 0 || m > p) return std::nullopt;
  if (m >= k + 1) return 0;
  const std::int64_t numerator = std::int64_t(k + 1 - m) * binomial(p - 1, k);
  if (numerator % (k + 1) != 0) return std::nullopt;
  return numerator / (k + 1);
}

inline std::optional<std::int64_t> predicted_homology_dim(const GroupSpec& spec, int k, int m) {
  if (!spec.is_prime_cyclic()) return std::nullopt;
  return predicted_homology_dim(spec.order(), k, m);
}

// m - k max_{eta != 1} |1_A^(eta)|; may be negative.
inline double spectral_lower_bound(const GroupSpec& spec, const SubsetA& A, int k) {
  return double(A.size()) - double(k) * max_nontrivial_character_sum(spec, A);
}

inline int max_degree(const SumComplex& X) {
  int best = 0;
  std::vector<int> sigma(X.k);
  for (int i = 0; i < X.k; ++i) sigma[i] = i;
  Simplex face;
  do {
    face.vertices = sigma;
    best = std::max(best, degree(X, face));
  } while (next_combination(sigma, X.n()) && best < X.m());
  return best;
}

inline double degree_upper_bound(const SumComplex& X) { return double(max_degree(X) + X.k); }

// min ||d_{k-1} phi||^2 / ||phi||^2 over 0 != phi in ker d_{k-2}^*, by an
// eigensolve of d_{k-1}^* d_{k-1} compressed to an orthonormal basis of
// range(P). Dense; meant for small complexes.
inline double cocycle_restricted_gap(const SumComplex& X) {
  const Projections pq = projections(X.n(), X.k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ps(pq.P);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ps.eigenvalues().size(); ++i) {
    if (ps.eigenvalues()[i] > 0.5) keep.push_back(i);
  }
  if (keep.empty()) throw ParameterError("ker d_{k-2}^* is trivial");
  Eigen::MatrixXd B(pq.P.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) B.col(Eigen::Index(j)) = ps.eigenvectors().col(keep[j]);
  const Eigen::MatrixXd D = coboundary(X, X.k - 1).to_dense();
  const Eigen::MatrixXd DB = D * B;
  const Eigen::MatrixXd compressed = DB.transpose() * DB;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cs(compressed, Eigen::EigenvaluesOnly);
  return cs.eigenvalues()[0];
}

struct ReportOptions {
  SolverOptions solver;
  bool include_spectrum = false;
  std::optional<double> zero_tol;  // default_zero_tolerance(n) when empty
  double sandwich_slack = 1e-8;
};

struct SpectralReport {
  double mu = 0.0;
  std::int64_t homology_dim = 0;
  double fourier_lower_bound = 0.0;
  double degree_upper_bound = 0.0;
  std::optional<std::vector<double>> spectrum;
  SolverKind solver = SolverKind::dense;
  bool vacuous = false;  // fourier_lower_bound < 0
};

inline SpectralReport full_report(const SumComplex& X, const ReportOptions& opts = {}) {
  const int n = X.n();
  const double zero_tol = opts.zero_tol.value_or(default_zero_tolerance(n));
  SpectralReport report;
  report.homology_dim = homology_dim(X);
  report.fourier_lower_bound = spectral_lower_bound(X.spec, X.A, X.k);
  report.vacuous = report.fourier_lower_bound < 0.0;
  report.degree_upper_bound = degree_upper_bound(X);

  const LinearOperator L = laplacian_composed(X);
  const bool dense = opts.include_spectrum ||
                     static_cast<std::size_t>(L.rows()) <= opts.solver.dense_threshold;
  std::vector<double> spectrum;
  if (dense) {
    spectrum = dense_spectrum(L);
    report.mu = spectrum.front();
    report.solver = SolverKind::dense;
  } else {
    const EigenEstimate est = detail::shifted_power_min(L, opts.solver);
    report.mu = est.value;
    report.solver = SolverKind::iterative;
  }
  if (std::abs(report.mu) < zero_tol) report.mu = 0.0;  // numerically zero

  const double slack = opts.sandwich_slack;
  if (report.fourier_lower_bound > report.mu + slack) {
    throw InvariantViolation("character-sum lower bound " + std::to_string(report.fourier_lower_bound) +
                             " exceeds mu " + std::to_string(report.mu));
  }
  if (report.mu > report.degree_upper_bound + slack || report.mu > X.m() + X.k + slack) {
    throw InvariantViolation("mu " + std::to_string(report.mu) + " exceeds the degree bound " +
                             std::to_string(report.degree_upper_bound));
  }
  if (dense) {
    const auto zeros = std::count_if(spectrum.begin(), spectrum.end(),
                                     [&](double ev) { return ev < zero_tol; });
    if (zeros != report.homology_dim) {
      throw InvariantViolation("exact homology dimension " + std::to_string(report.homology_dim) +
                               " disagrees with " + std::to_string(zeros) + " numerically zero eigenvalues");
    }
  }
  if (opts.include_spectrum) report.spectrum = std::move(spectrum);
  return report;
}

inline SpectralReport full_report(const GroupSpec& spec, const SubsetA& A, int k,
                                  const ReportOptions& opts = {}) {
  return full_report(build_sum_complex(spec, A, k), opts);
}

}  // namespace sumcx
