#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sumcx/cochain_ops.hpp"

using namespace sumcx;

namespace {

SubsetA random_subset(const GroupSpec& g, int m, std::mt19937_64& rng) {
  std::vector<int> pool(g.order());
  std::iota(pool.begin(), pool.end(), 0);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(m);
  return SubsetA(g, pool);
}

const std::vector<std::vector<int>> kGroups = {{4}, {5}, {6}, {7}, {8}, {9}, {10}, {2, 3}, {2, 2, 2}, {2, 5}, {3, 3}};

// (d phi)(tau) = sum_i (-1)^i phi(tau minus its i-th vertex), faces keyed by vertex list.
std::map<std::vector<int>, double> apply_definition(const std::vector<Simplex>& targets,
                                                    const std::map<std::vector<int>, double>& phi) {
  std::map<std::vector<int>, double> out;
  for (const auto& t : targets) {
    double v = 0.0;
    for (std::size_t i = 0; i < t.vertices.size(); ++i) {
      auto face = t.vertices;
      face.erase(face.begin() + i);
      v += (i % 2 ? -1.0 : 1.0) * phi.at(face);
    }
    out[t.vertices] = v;
  }
  return out;
}

}  // namespace

TEST(Coboundary, AugmentationIsAllOnes) {
  GroupSpec g({3});
  const auto X = build_sum_complex(g, SubsetA(g, {0}), 1);
  const auto d = coboundary(X, -1);
  ASSERT_EQ(d.rows(), 3);
  ASSERT_EQ(d.cols(), 1);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(d(i, 0), 1);
}

TEST(Coboundary, TriangleEdgeRow) {
  // edge {0,1} of the triangle: phi(1) - phi(0)
  const auto d0 = simplex_coboundary(3, 0);
  EXPECT_EQ(d0(0, 0), -1);
  EXPECT_EQ(d0(0, 1), 1);
  EXPECT_EQ(d0(0, 2), 0);
}

TEST(Coboundary, TopDegreeIsEmpty) {
  GroupSpec g({7});
  const auto X = build_sum_complex(g, SubsetA(g, {0, 1, 3}), 2);
  const auto d = coboundary(X, 2);
  EXPECT_EQ(d.rows(), 0);
  EXPECT_EQ(d.cols(), 15);
  EXPECT_THROW(coboundary(X, 3), ParameterError);
  EXPECT_THROW(coboundary(X, -2), ParameterError);
}

TEST(Coboundary, MatchesDefinition) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  for (const auto& orders : kGroups) {
    GroupSpec g(orders);
    for (int k = 1; k <= std::min(3, g.order() - 1); ++k) {
      const auto X = build_sum_complex(g, random_subset(g, g.order() / 2, rng), k);
      for (int d = 0; d <= k - 1; ++d) {
        const auto domain = cochain_basis(X, d);
        const auto target = cochain_basis(X, d + 1);
        Eigen::VectorXd v(domain.size());
        std::map<std::vector<int>, double> phi;
        for (std::size_t i = 0; i < domain.size(); ++i) {
          v[i] = gauss(rng);
          phi[domain.faces[i].vertices] = v[i];
        }
        const Eigen::VectorXd got = coboundary(X, d).apply(v);
        const auto want = apply_definition(target.faces, phi);
        ASSERT_EQ(got.size(), Eigen::Index(target.size()));
        for (std::size_t i = 0; i < target.size(); ++i) {
          EXPECT_NEAR(got[i], want.at(target.faces[i].vertices), 1e-12);
        }
      }
    }
  }
}

TEST(Coboundary, SquaresToZero) {
  std::mt19937_64 rng(32);
  for (const auto& orders : kGroups) {
    GroupSpec g(orders);
    for (int k = 1; k <= std::min(3, g.order() - 1); ++k) {
      for (int m : {0, 2, g.order()}) {
        const auto X = build_sum_complex(g, random_subset(g, m, rng), k);
        for (int d = 0; d <= k; ++d) {
          EXPECT_EQ((coboundary(X, d) * coboundary(X, d - 1)).max_abs_entry(), 0);
        }
      }
    }
  }
}

TEST(Coboundary, Adjointness) {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> gauss;
  for (const auto& orders : kGroups) {
    GroupSpec g(orders);
    const int k = std::min(2, g.order() - 1);
    const auto X = build_sum_complex(g, random_subset(g, 3, rng), k);
    for (int d = -1; d <= k - 1; ++d) {
      const auto D = coboundary(X, d);
      Eigen::VectorXd phi(D.cols()), psi(D.rows());
      for (auto& x : phi) x = gauss(rng);
      for (auto& x : psi) x = gauss(rng);
      const double lhs = D.apply(phi).dot(psi);
      const double rhs = phi.dot(adjoint(D).apply(psi));
      EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST(Laplacian, FullSimplexIsScaledIdentity) {
  for (int n = 4; n <= 8; ++n) {
    GroupSpec g({n});
    for (int k = 1; k <= 3; ++k) {
      const auto X = build_sum_complex(g, SubsetA::whole(g), k);
      const auto nI = LinearOperator::scaled_identity(binomial(n, k), n);
      EXPECT_EQ((laplacian_composed(X) - nI).max_abs_entry(), 0);
      EXPECT_EQ((laplacian_direct(X) - nI).max_abs_entry(), 0);
    }
  }
}

TEST(Laplacian, DirectMatchesComposed) {
  std::mt19937_64 rng(34);
  int instances = 0;
  for (int rep = 0; rep < 5; ++rep) {
    for (const auto& orders : kGroups) {
      GroupSpec g(orders);
      std::uniform_int_distribution<int> kd(1, std::min(3, g.order() - 1));
      std::uniform_int_distribution<int> md(0, g.order());
      const int k = kd(rng);
      const auto X = build_sum_complex(g, random_subset(g, md(rng), rng), k);
      const auto Lc = laplacian_composed(X), Ld = laplacian_direct(X);
      EXPECT_TRUE(Lc == Ld) << g.to_string() << " k=" << k << " A=" << X.A.to_string();
      EXPECT_TRUE(Lc == Lc.transpose());
      ++instances;
    }
  }
  EXPECT_GE(instances, 50);
}

TEST(Laplacian, EmptyAIsDownPartOnly) {
  GroupSpec g({4});
  const auto X = build_sum_complex(g, SubsetA(g, {}), 2);
  const auto L = laplacian_composed(X);
  const auto down = coboundary(X, 0);
  EXPECT_TRUE(L == down * adjoint(down));
  for (int i = 0; i < L.rows(); ++i) EXPECT_EQ(L(i, i), 2);
}

TEST(Laplacian, KOneIsJPlusGraphLaplacian) {
  std::mt19937_64 rng(35);
  for (const auto& orders : kGroups) {
    GroupSpec g(orders);
    const int n = g.order();
    const auto X = build_sum_complex(g, random_subset(g, n / 3 + 1, rng), 1);
    // graph Laplacian of the edges {x, y} with x + y in A
    Eigen::MatrixXd expected = Eigen::MatrixXd::Ones(n, n);
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        if (!X.A.contains(g.add(x, y))) continue;
        expected(x, x) += 1;
        expected(y, y) += 1;
        expected(x, y) -= 1;
        expected(y, x) -= 1;
      }
    }
    EXPECT_EQ((laplacian_composed(X).to_dense() - expected).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Laplacian, TraceIdentity) {
  std::mt19937_64 rng(36);
  for (const auto& orders : kGroups) {
    GroupSpec g(orders);
    for (int k = 1; k <= std::min(3, g.order() - 1); ++k) {
      const auto X = build_sum_complex(g, random_subset(g, (k * 3) % (g.order() + 1), rng), k);
      EXPECT_EQ(laplacian_composed(X).trace(), (k + 1) * face_count(X, k) + k * face_count(X, k - 1));
    }
  }
}

TEST(Laplacian, PositiveSemidefinite) {
  std::mt19937_64 rng(37);
  for (const auto& orders : kGroups) {
    GroupSpec g(orders);
    for (int k = 1; k <= std::min(3, g.order() - 1); ++k) {
      const auto X = build_sum_complex(g, random_subset(g, 2, rng), k);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian_composed(X).to_dense(),
                                                        Eigen::EigenvaluesOnly);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
    }
  }
}

TEST(Projections, Identities) {
  for (int n = 3; n <= 8; ++n) {
    for (int k = 1; k <= std::min(3, n - 1); ++k) {
      const auto [P, Q] = projections(n, k);
      const Eigen::Index dim = P.rows();
      const auto I = Eigen::MatrixXd::Identity(dim, dim);
      EXPECT_LT((P + Q - I).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((P * P - P).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((Q * Q - Q).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((P - P.transpose()).cwiseAbs().maxCoeff(), 1e-12);
      const Eigen::MatrixXd D = simplex_coboundary(n, k - 2).to_dense();
      EXPECT_LT((D.transpose() * P).cwiseAbs().maxCoeff(), 1e-10);
      // range(Q) lies in the column space of D: projecting onto it changes nothing
      const Eigen::MatrixXd fit = D * D.completeOrthogonalDecomposition().solve(Q);
      EXPECT_LT((fit - Q).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Projections, KOneIsAveraging) {
  const int n = 6;
  const auto [P, Q] = projections(n, 1);
  EXPECT_LT((Q - Eigen::MatrixXd::Constant(n, n, 1.0 / n)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((P - (Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n)))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(Operators, CoordinateDump) {
  std::ostringstream os;
  write_coordinate(os, simplex_coboundary(3, -1));
  EXPECT_EQ(os.str(), "3 1 3\n0 0 1\n1 0 1\n2 0 1\n");
}

TEST(Operators, BasisSizes) {
  GroupSpec g({7});
  const auto X = build_sum_complex(g, SubsetA(g, {0, 1, 3}), 2);
  EXPECT_EQ(cochain_basis(X, -1).size(), 1u);
  EXPECT_EQ(cochain_basis(X, 0).size(), 7u);
  EXPECT_EQ(cochain_basis(X, 1).size(), 21u);
  EXPECT_EQ(cochain_basis(X, 2).size(), 15u);
  EXPECT_TRUE(cochain_basis(X, -1).faces[0].vertices.empty());
}
