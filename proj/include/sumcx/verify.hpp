/**
 * Identity suite behind `sumcx verify`: runs every structural identity and
 * bound over all small groups up to a size limit and reports the worst
 * observed error per check.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sumcx/cochain_ops.hpp"
#include "sumcx/experiments.hpp"
#include "sumcx/group.hpp"
#include "sumcx/spectra.hpp"
#include "sumcx/sum_complex.hpp"
#include "sumcx/tuple_fourier.hpp"

namespace sumcx {

struct VerifyOptions {
  int max_n = 7;
  int max_k = 2;
  std::uint64_t seed = 1;
  int random_subsets = 3;  // per (group, k), on top of the empty and full sets
  int random_functions = 2;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  int instances = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerificationReport {
  VerifyOptions options;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

namespace detail {

class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void record(double error, const std::string& where) {
    ++result_.instances;
    if (error > result_.max_error || std::isnan(error)) {
      result_.max_error = error;
      if (!(error <= result_.tolerance)) {
        result_.passed = false;
        result_.detail = "worst at " + where;
      }
    }
  }

  void fail(const std::string& why) {
    ++result_.instances;
    result_.passed = false;
    result_.detail = why;
  }

  CheckResult result() const { return result_; }

 private:
  CheckResult result_;
};

inline std::vector<GroupSpec> verification_groups(int max_n) {
  std::vector<GroupSpec> groups;
  for (int n = 2; n <= max_n; ++n) groups.emplace_back(std::vector<int>{n});
  const std::vector<std::vector<int>> products = {{2, 2}, {2, 3}, {2, 2, 2}, {3, 3}, {2, 5}, {2, 2, 3}};
  for (const auto& orders : products) {
    GroupSpec g(orders);
    if (g.order() <= max_n) groups.push_back(g);
  }
  return groups;
}

inline std::string where(const GroupSpec& g, int k, const SubsetA& A) {
  return "G=" + g.to_string() + " k=" + std::to_string(k) + " A={" + A.to_string() + "}";
}

}  // namespace detail

inline VerificationReport run_verification(const VerifyOptions& opts) {
  using detail::CheckAccumulator;
  CheckAccumulator dd("coboundary_squared_zero", 0.0);
  CheckAccumulator adjoint_check("adjointness", 1e-10);
  CheckAccumulator assembly("laplacian_assembly_agreement", 0.0);
  CheckAccumulator full_simplex("full_simplex_laplacian_is_nI", 0.0);
  CheckAccumulator trace("laplacian_trace_identity", 0.0);
  CheckAccumulator proj("projection_identities", 1e-10);
  CheckAccumulator psd("laplacian_psd", 1e-9);
  CheckAccumulator sandwich("fourier_sandwich", 1e-8);
  CheckAccumulator zero_count("homology_matches_zero_eigenvalues", 0.0);
  CheckAccumulator prediction("homology_matches_prime_prediction", 0.0);
  CheckAccumulator restriction("cocycle_restriction_gap", 1e-8);
  CheckAccumulator parseval("parseval_and_norm_bridge", 1e-9);
  CheckAccumulator rotation("rotation_T_identities", 0.0);
  CheckAccumulator claim("f_a_fourier_rotation_identity", 1e-8);
  CheckAccumulator energy("coboundary_energy_identity", 1e-8);
  CheckAccumulator support("cocycle_support_equivalence", 0.0);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (const GroupSpec& g : detail::verification_groups(opts.max_n)) {
    const int n = g.order();
    for (int k = 1; k <= opts.max_k && k < n; ++k) {
      std::vector<SubsetA> subsets = {SubsetA(g, {}), SubsetA::whole(g)};
      for (int r = 0; r < opts.random_subsets; ++r) {
        std::uniform_int_distribution<int> size(1, n - 1);
        subsets.push_back(sample_subset(g, size(rng), rng()));
      }
      const Projections pq = projections(n, k);
      const Eigen::MatrixXd down = simplex_coboundary(n, k - 2).to_dense();

      {
        const double err = (pq.P + pq.Q - Eigen::MatrixXd::Identity(pq.P.rows(), pq.P.cols())).cwiseAbs().maxCoeff();
        const double idem = std::max((pq.P * pq.P - pq.P).cwiseAbs().maxCoeff(),
                                     (pq.Q * pq.Q - pq.Q).cwiseAbs().maxCoeff());
        const double sym = (pq.P - pq.P.transpose()).cwiseAbs().maxCoeff();
        const double kill = (down.transpose() * pq.P).cwiseAbs().maxCoeff();
        proj.record(std::max({err, idem, sym, kill}), "n=" + std::to_string(n) + " k=" + std::to_string(k));
      }

      for (const SubsetA& A : subsets) {
        const std::string at = detail::where(g, k, A);
        const SumComplex X = build_sum_complex(g, A, k);

        for (int d = 0; d <= k - 1; ++d) {
          const LinearOperator composed = coboundary(X, d) * coboundary(X, d - 1);
          dd.record(double(composed.max_abs_entry()), at + " d=" + std::to_string(d));
        }

        for (int d = -1; d <= k - 1; ++d) {
          const LinearOperator D = coboundary(X, d);
          Eigen::VectorXd phi(D.cols()), psi(D.rows());
          for (auto& v : phi) v = gauss(rng);
          for (auto& v : psi) v = gauss(rng);
          const double lhs = D.apply(phi).dot(psi);
          const double rhs = phi.dot(adjoint(D).apply(psi));
          adjoint_check.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), at);
        }

        const LinearOperator L = laplacian_composed(X);
        assembly.record(double((L - laplacian_direct(X)).max_abs_entry()), at);
        const std::int64_t expected_trace = (k + 1) * face_count(X, k) + k * face_count(X, k - 1);
        trace.record(double(std::abs(L.trace() - expected_trace)), at);
        if (A.size() == n) {
          const LinearOperator nI = LinearOperator::scaled_identity(L.rows(), n);
          full_simplex.record(double((L - nI).max_abs_entry()), at);
        }

        const std::vector<double> spectrum = dense_spectrum(L);
        psd.record(std::max(0.0, -spectrum.front()), at);
        const double mu = std::max(0.0, spectrum.front());
        const double lower = spectral_lower_bound(g, A, k);
        sandwich.record(std::max({0.0, lower - mu, mu - double(A.size() + k)}), at);

        const std::int64_t h = homology_dim(X);
        const double tol = default_zero_tolerance(n);
        const auto zeros = std::count_if(spectrum.begin(), spectrum.end(), [&](double ev) { return ev < tol; });
        zero_count.record(double(std::abs(h - zeros)), at);
        if (auto predicted = predicted_homology_dim(g, k, A.size())) {
          prediction.record(double(std::abs(h - *predicted)), at);
        }

        // restriction to ker d_{k-2}^*: exact minimum, and random samples never below it
        const double restricted = cocycle_restricted_gap(X);
        double sampled_err = 0.0;
        const Eigen::MatrixXd up = coboundary(X, k - 1).to_dense();
        for (int s = 0; s < 20; ++s) {
          Eigen::VectorXd psi(pq.P.rows());
          for (auto& v : psi) v = gauss(rng);
          const Eigen::VectorXd phi = pq.P * psi;
          if (phi.norm() < 1e-12) continue;
          const double quotient = (up * phi).squaredNorm() / phi.squaredNorm();
          sampled_err = std::max(sampled_err, mu - 1e-6 - quotient);
        }
        restriction.record(std::max(std::abs(restricted - mu), sampled_err), at);
      }

      // Function-space checks on the full (k-1)-skeleton.
      const std::size_t tuples = static_cast<std::size_t>(std::pow(double(n), k));
      if (tuples > 4096) continue;
      const double kfact = std::tgamma(k + 1.0);
      for (int f = 0; f < opts.random_functions; ++f) {
        const std::string at = "G=" + g.to_string() + " k=" + std::to_string(k);
        const TupleFunction phi = random_skew_function(n, k, rng);
        const TupleFunction psi = random_skew_function(n, k, rng);
        const TupleFunction phi_hat = tuple_fourier(g, phi);
        const TupleFunction psi_hat = tuple_fourier(g, psi);
        const double nk = std::pow(double(n), k);
        const cplx hat_ip = inner_product(phi_hat, psi_hat);
        const cplx ip = inner_product(phi, psi);
        const cplx cochain_ip = to_cochain(psi).dot(to_cochain(phi));  // sum phi conj(psi)
        const double e1 = std::abs(hat_ip - nk * ip) / std::max(1.0, std::abs(nk * ip));
        const double e2 = std::abs(ip - kfact * cochain_ip) / std::max(1.0, std::abs(ip));
        const double e3 = std::abs(phi_hat.norm_squared() - nk * phi.norm_squared()) / (nk * phi.norm_squared());
        parseval.record(std::max({e1, e2, e3}), at);

        const double scale = 1.0 + phi_hat.max_abs();
        double worst = 0.0;
        for (int a = 0; a < n; ++a) {
          const TupleFunction fa_hat = tuple_fourier(g, f_a(g, phi, a));
          std::vector<int> chi(k);
          for (std::size_t idx = 0; idx < fa_hat.size(); ++idx) {
            fa_hat.unflatten(idx, chi);
            const cplx rhs = f_a_hat_by_rotation(g, phi_hat, a, CharacterTuple{chi});
            worst = std::max(worst, std::abs(fa_hat[idx] - rhs) / scale);
          }
        }
        claim.record(worst, at);

        for (const SubsetA& A : subsets) {
          const SumComplex X = build_sum_complex(g, A, k);
          const Eigen::VectorXcd up = coboundary(X, k - 1).apply(to_cochain(phi));
          const double lhs = coboundary_energy(g, A, phi);
          const double rhs = std::tgamma(k + 2.0) * up.squaredNorm();
          energy.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)), detail::where(g, k, A));
        }

        const Eigen::VectorXcd raw = to_cochain(phi);
        const TupleFunction cocycle = from_cochain(n, k, Eigen::VectorXcd(pq.P.cast<cplx>() * raw));
        const TupleFunction coboundary_part = from_cochain(n, k, Eigen::VectorXcd(pq.Q.cast<cplx>() * raw));
        const SupportCheck s1 = cocycle_support_check(g, cocycle);
        const SupportCheck s2 = cocycle_support_check(g, coboundary_part);
        const bool ok = s1.is_in_kernel && s1.support_ok &&
                        (coboundary_part.norm_squared() < 1e-20 || (!s2.is_in_kernel && !s2.support_ok));
        support.record(ok ? 0.0 : 1.0, at);
      }

      // T has order k+1 and the closed form matches repeated application.
      if (tuples <= 4096) {
        std::size_t mismatches = 0;
        std::vector<int> chi(k);
        TupleFunction shape(n, k);
        for (std::size_t idx = 0; idx < shape.size(); ++idx) {
          shape.unflatten(idx, chi);
          const CharacterTuple start{chi};
          CharacterTuple it = start;
          for (int i = 1; i <= k + 1; ++i) {
            it = apply_T_once(g, it);
            if (i <= k && it != apply_T(g, start, i)) ++mismatches;
          }
          if (it != start) ++mismatches;
        }
        rotation.record(double(mismatches), "G=" + g.to_string() + " k=" + std::to_string(k));
      }
    }
  }

  VerificationReport report{opts, {}};
  for (const auto* acc : {&dd, &adjoint_check, &assembly, &full_simplex, &trace, &proj, &psd, &sandwich,
                          &zero_count, &prediction, &restriction, &parseval, &rotation, &claim, &energy,
                          &support}) {
    report.checks.push_back(acc->result());
  }
  return report;
}

}  // namespace sumcx
