#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "sumcx/spectra.hpp"

using namespace sumcx;

namespace {

SubsetA random_subset(const GroupSpec& g, int m, std::mt19937_64& rng) {
  std::vector<int> pool(g.order());
  std::iota(pool.begin(), pool.end(), 0);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(m);
  return SubsetA(g, pool);
}

// Second-smallest eigenvalue of the graph Laplacian on edges {x, y}, x + y in A.
double graph_lambda2(const GroupSpec& g, const SubsetA& A) {
  const int n = g.order();
  Eigen::MatrixXd Lg = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y && A.contains(g.add(x, y))) {
        Lg(x, y) = -1.0;
        Lg(x, x) += 1.0;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Lg, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[1];
}

}  // namespace

TEST(MinEigenvalue, ScaledIdentity) {
  for (int n = 4; n <= 8; ++n) {
    EXPECT_NEAR(min_eigenvalue(LinearOperator::scaled_identity(10, n)), n, 1e-12);
    SolverOptions iterative;
    iterative.dense_threshold = 0;
    EXPECT_NEAR(min_eigenvalue(LinearOperator::scaled_identity(10, n), iterative), n, 1e-9);
  }
}

TEST(MinEigenvalue, IterativeAgreesWithDense) {
  std::mt19937_64 rng(41);
  SolverOptions iterative;
  iterative.dense_threshold = 0;
  for (const auto& orders : std::vector<std::vector<int>>{{9}, {11}, {2, 5}, {13}}) {
    GroupSpec g(orders);
    for (int m : {2, 4, 7}) {
      const auto X = build_sum_complex(g, random_subset(g, m, rng), 2);
      const auto L = laplacian_composed(X);
      const auto est = estimate_min_eigenvalue(L, iterative);
      EXPECT_EQ(est.solver, SolverKind::iterative);
      // power iteration converges slowly at clustered spectra; the residual
      // bounds the distance to some eigenvalue
      EXPECT_NEAR(est.value, min_eigenvalue(L), std::max(1e-6, 10 * est.residual));
    }
  }
}

TEST(MinEigenvalue, NonConvergenceCarriesEstimate) {
  GroupSpec g({11});
  std::mt19937_64 rng(42);
  const auto L = laplacian_composed(build_sum_complex(g, random_subset(g, 4, rng), 2));
  SolverOptions opts;
  opts.dense_threshold = 0;
  opts.max_iterations = 2;
  opts.solve_tol = 1e-300;
  try {
    (void)estimate_min_eigenvalue(L, opts);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.iterations(), 2u);
    EXPECT_GT(e.residual(), 0.0);
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
  }
}

TEST(Homology, TheoremExamples) {
  std::mt19937_64 rng(43);
  GroupSpec z7({7}), z5({5});
  EXPECT_EQ(homology_dim(build_sum_complex(z7, SubsetA(z7, {0, 1, 3}), 2)), 0);
  for (int rep = 0; rep < 5; ++rep) {
    EXPECT_EQ(homology_dim(build_sum_complex(z5, random_subset(z5, 2, rng), 2)), 2);
    EXPECT_EQ(homology_dim(build_sum_complex(z7, random_subset(z7, 1, rng), 2)), 10);
  }
}

TEST(Homology, PredictionClosedForm) {
  EXPECT_EQ(predicted_homology_dim(7, 2, 3), 0);
  EXPECT_EQ(predicted_homology_dim(5, 1, 1), 2);
  EXPECT_EQ(predicted_homology_dim(11, 3, 4), 0);
  EXPECT_EQ(predicted_homology_dim(5, 2, 2), 2);
  EXPECT_EQ(predicted_homology_dim(7, 2, 1), 10);
  EXPECT_EQ(predicted_homology_dim(7, 2, 0), 15);
  EXPECT_EQ(predicted_homology_dim(9, 2, 1), std::nullopt);
  EXPECT_EQ(predicted_homology_dim(GroupSpec({2, 3}), 2, 1), std::nullopt);
  EXPECT_EQ(predicted_homology_dim(GroupSpec({7}), 2, 1), 10);
  // k = p-1: the formula is fractional and the complex depends on 0 in A
  EXPECT_EQ(predicted_homology_dim(5, 4, 2), std::nullopt);
}

TEST(Homology, MatchesPredictionForEveryA) {
  std::mt19937_64 rng(44);
  for (int p : {5, 7, 11}) {
    GroupSpec g({p});
    for (int k = 1; k <= 3 && k < p - 1; ++k) {
      for (int m = 0; m <= p; ++m) {
        const auto predicted = predicted_homology_dim(p, k, m);
        ASSERT_TRUE(predicted.has_value());
        for (int rep = 0; rep < 5; ++rep) {
          const auto A = random_subset(g, m, rng);
          EXPECT_EQ(homology_dim(build_sum_complex(g, A, k)), *predicted)
              << "p=" << p << " k=" << k << " A=" << A.to_string();
        }
      }
    }
  }
}

TEST(Homology, TopDimensionDependsOnZero) {
  // k = p-1: the only candidate top face is all of G, with sum 0
  GroupSpec g({5});
  EXPECT_EQ(homology_dim(build_sum_complex(g, SubsetA(g, {0, 1}), 4)), 0);
  EXPECT_EQ(homology_dim(build_sum_complex(g, SubsetA(g, {1, 2}), 4)), 1);
}

TEST(Homology, EqualsZeroEigenvalueCount) {
  std::mt19937_64 rng(45);
  for (const auto& orders : std::vector<std::vector<int>>{{4}, {6}, {8}, {9}, {10}, {2, 3}, {2, 2, 2}, {2, 5}}) {
    GroupSpec g(orders);
    for (int k = 1; k <= std::min(3, g.order() - 1); ++k) {
      for (int m = 0; m <= g.order(); m += 3) {
        const auto X = build_sum_complex(g, random_subset(g, m, rng), k);
        const auto spec = dense_spectrum(laplacian_composed(X));
        const auto zeros = std::count_if(spec.begin(), spec.end(),
                                         [&](double ev) { return ev < default_zero_tolerance(g.order()); });
        EXPECT_EQ(homology_dim(X), zeros);
      }
    }
  }
}

TEST(Bounds, WorkedExample) {
  GroupSpec g({7});
  const SubsetA A(g, {0, 1, 3});
  EXPECT_NEAR(spectral_lower_bound(g, A, 2), 3.0 - 2.0 * std::sqrt(2.0), 1e-12);
  const auto r = full_report(g, A, 2);
  EXPECT_EQ(r.homology_dim, 0);
  EXPECT_DOUBLE_EQ(r.degree_upper_bound, 5.0);
  EXPECT_GE(r.mu, 3.0 - 2.0 * std::sqrt(2.0) - 1e-8);
  EXPECT_LE(r.mu, 5.0 + 1e-8);
  EXPECT_FALSE(r.vacuous);
  EXPECT_EQ(r.solver, SolverKind::dense);
}

TEST(Bounds, DegenerateCases) {
  GroupSpec z2({2});
  EXPECT_DOUBLE_EQ(spectral_lower_bound(z2, SubsetA(z2, {1}), 1), 0.0);
  for (int n : {5, 6, 8}) {
    GroupSpec g({n});
    EXPECT_NEAR(spectral_lower_bound(g, SubsetA::whole(g), 2), n, 1e-9);
    EXPECT_DOUBLE_EQ(spectral_lower_bound(g, SubsetA(g, {}), 2), 0.0);
  }
}

TEST(Report, FullSimplex) {
  for (int n = 4; n <= 8; ++n) {
    GroupSpec g({n});
    for (int k = 1; k <= 3 && k < n; ++k) {
      const auto r = full_report(g, SubsetA::whole(g), k);
      EXPECT_NEAR(r.mu, n, 1e-9);
      EXPECT_EQ(r.homology_dim, 0);
    }
  }
}

TEST(Report, EmptyA) {
  for (int n : {4, 6, 7}) {
    GroupSpec g({n});
    for (int k = 1; k <= 3 && k < n; ++k) {
      const auto r = full_report(g, SubsetA(g, {}), k);
      EXPECT_EQ(r.mu, 0.0);
      EXPECT_EQ(r.fourier_lower_bound, 0.0);
      EXPECT_EQ(r.homology_dim, binomial(n - 1, k));
    }
  }
}

TEST(Report, SpectrumIsSortedAndComplete) {
  GroupSpec g({7});
  ReportOptions opts;
  opts.include_spectrum = true;
  const auto r = full_report(g, SubsetA(g, {0, 1, 3}), 2, opts);
  ASSERT_TRUE(r.spectrum.has_value());
  EXPECT_EQ(r.spectrum->size(), 21u);
  EXPECT_TRUE(std::is_sorted(r.spectrum->begin(), r.spectrum->end()));
  EXPECT_EQ(r.spectrum->front(), r.mu);
  // trace identity: sum of eigenvalues = 3 f_2 + 2 f_1
  EXPECT_NEAR(std::accumulate(r.spectrum->begin(), r.spectrum->end(), 0.0), 3 * 15 + 2 * 21, 1e-9);
}

TEST(Report, RandomSandwich) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + trial % 9;
    GroupSpec g({n});
    const int k = 1 + trial % std::min(3, n - 1);
    std::uniform_int_distribution<int> md(0, n);
    const int m = md(rng);
    const auto r = full_report(g, random_subset(g, m, rng), k);
    EXPECT_LE(r.fourier_lower_bound, r.mu + 1e-8);
    EXPECT_LE(r.mu, m + k + 1e-8);
    EXPECT_LE(r.mu, r.degree_upper_bound + 1e-8);
    EXPECT_EQ(r.vacuous, r.fourier_lower_bound < 0);
  }
}

TEST(Report, KOneMatchesGraphSpectralGap) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + trial;
    GroupSpec g({n});
    std::uniform_int_distribution<int> md(1, n);
    const SubsetA A = random_subset(g, md(rng), rng);
    EXPECT_NEAR(full_report(g, A, 1).mu, graph_lambda2(g, A), 1e-8) << "n=" << n << " A=" << A.to_string();
  }
}

TEST(Report, ZeroCountViolationIsDetected) {
  // A zero tolerance below the numerical noise floor makes the cross-check fail.
  GroupSpec g({7});
  ReportOptions opts;
  opts.zero_tol = -1.0;
  EXPECT_THROW(full_report(g, SubsetA(g, {0}), 2, opts), InvariantViolation);
}

TEST(Restriction, CocycleGapEqualsMu) {
  std::mt19937_64 rng(48);
  std::normal_distribution<double> gauss;
  for (const auto& orders : std::vector<std::vector<int>>{{5}, {7}, {2, 3}, {8}}) {
    GroupSpec g(orders);
    for (int k = 1; k <= 3 && k < g.order(); ++k) {
      const auto X = build_sum_complex(g, random_subset(g, 3, rng), k);
      const double mu = min_eigenvalue(laplacian_composed(X));
      EXPECT_NEAR(cocycle_restricted_gap(X), mu, 1e-8);

      const auto [P, Q] = projections(g.order(), k);
      const Eigen::MatrixXd D = coboundary(X, k - 1).to_dense();
      double best = std::numeric_limits<double>::infinity();
      for (int s = 0; s < 200; ++s) {
        Eigen::VectorXd psi(P.rows());
        for (auto& x : psi) x = gauss(rng);
        const Eigen::VectorXd phi = P * psi;
        if (phi.squaredNorm() < 1e-20) continue;
        best = std::min(best, (D * phi).squaredNorm() / phi.squaredNorm());
      }
      EXPECT_GE(best, mu - 1e-6);
    }
  }
}

TEST(Report, PrimeHomologyVanishesAboveThreshold) {
  std::mt19937_64 rng(49);
  GroupSpec g({13});
  for (int m = 3; m <= 13; m += 2) {
    const auto r = full_report(g, random_subset(g, m, rng), 2);
    EXPECT_EQ(r.homology_dim, 0);
    EXPECT_GT(r.mu, default_zero_tolerance(13));
  }
}
