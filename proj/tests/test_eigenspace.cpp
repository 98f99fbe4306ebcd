#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "qf/eigenspace.hpp"
#include "qf/error.hpp"
#include "qf/linalg.hpp"
#include "test_util.hpp"

namespace qf {
namespace {

std::vector<Image> random_set(std::size_t n, std::size_t h, std::size_t w, std::mt19937_64& rng) {
  std::vector<Image> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(test::random_image(h, w, rng));
  return out;
}

Eigen::MatrixXd centered_rows(const std::vector<Image>& set) {
  const auto n = static_cast<Eigen::Index>(set.size());
  const auto d = static_cast<Eigen::Index>(set.front().size());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = set[static_cast<std::size_t>(i)].pixels()[static_cast<std::size_t>(j)];
  }
  return x.rowwise() - x.colwise().mean();
}

double orthonormality_error(const EigenModel& m) {
  double worst = 0.0;
  for (std::size_t a = 0; a < m.k(); ++a) {
    for (std::size_t b = 0; b < m.k(); ++b) {
      double dot = 0.0;
      auto ca = m.column(a), cb = m.column(b);
      for (std::size_t j = 0; j < m.dim(); ++j) dot += ca[j] * cb[j];
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

TEST(SymmetricEigen, MatchesEigenLibrary) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t n : {1u, 2u, 5u, 17u}) {
    Eigen::MatrixXd a(n, n);
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double v = u(rng);
        a(i, j) = a(j, i) = m(i, j) = m(j, i) = v;
      }
    }
    const auto eig = symmetric_eigen(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_NEAR(eig.eigenvalues[j], ref.eigenvalues()(static_cast<Eigen::Index>(n - 1 - j)), 1e-12);
      // A v = lambda v
      for (std::size_t r = 0; r < n; ++r) {
        double av = 0.0;
        for (std::size_t c = 0; c < n; ++c) av += a(r, c) * eig.eigenvectors[c * n + j];
        EXPECT_NEAR(av, eig.eigenvalues[j] * eig.eigenvectors[r * n + j], 1e-12);
      }
    }
  }
}

TEST(SymmetricEigen, TraceEqualsEigenvalueSum) {
  std::mt19937_64 rng(79);
  const auto set = random_set(12, 4, 5, rng);
  const Eigen::MatrixXd x = centered_rows(set);
  const Eigen::MatrixXd cov = x.transpose() * x / static_cast<double>(set.size());
  SymmetricMatrix m(20);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) m(i, j) = cov(i, j);
  const auto eig = symmetric_eigen(m);
  double sum = 0.0;
  for (double e : eig.eigenvalues) sum += e;
  EXPECT_NEAR(sum, cov.trace(), 1e-9 * cov.trace());
}

TEST(FitPca, TwoImagesGiveOneComponent) {
  const std::vector<Image> set{Image(2, 2, {0, 1, 2, 3}), Image(2, 2, {1, 1, 0, 5})};
  const EigenModel m = fit_pca(set, {.k_max = 40});
  ASSERT_EQ(m.k(), 1u);
  // |x1 - x2|^2 / 4 = (1 + 0 + 4 + 4) / 4
  EXPECT_NEAR(m.eigenvalues[0], 2.25, 1e-12);
  EXPECT_LE(orthonormality_error(m), 1e-12);
}

TEST(FitPca, IdenticalImagesAreDegenerate) {
  const std::vector<Image> set(4, Image(3, 3, 0.5));
  try {
    fit_pca(set);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateTrainingSet);
  }
}

TEST(FitPca, Preconditions) {
  EXPECT_THROW(fit_pca(std::vector<Image>{Image(2, 2)}), Error);
  EXPECT_THROW(fit_pca(std::vector<Image>{Image(2, 2, 1.0), Image(2, 3)}), Error);
  EXPECT_THROW(fit_pca(std::vector<Image>{Image(2, 2, 1.0), Image(2, 2)}, {.k_max = 0}), Error);
}

TEST(FitPca, KeepsFortyOfManyQuotientSizedSamples) {
  std::mt19937_64 rng(83);
  const auto set = random_set(356, 40, 50, rng);
  const EigenModel m = fit_pca(set, {.k_max = 40});
  EXPECT_EQ(m.k(), 40u);
  EXPECT_EQ(m.dim(), 2000u);
  EXPECT_LE(orthonormality_error(m), 1e-9);
  for (std::size_t i = 1; i < m.k(); ++i) EXPECT_GE(m.eigenvalues[i - 1], m.eigenvalues[i]);
}

TEST(FitPca, RankLimitsComponents) {
  std::mt19937_64 rng(89);
  const auto set = random_set(6, 5, 5, rng);
  EXPECT_EQ(fit_pca(set, {.k_max = 40}).k(), 5u);  // n - 1
}

TEST(FitPca, SnapshotMatchesDirectCovariance) {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 5; ++trial) {
    const auto set = random_set(10, 5, 10, rng);
    const EigenModel snap = fit_pca(set, {.k_max = 40});
    const EigenModel direct = fit_pca_direct(set, {.k_max = 40});
    ASSERT_EQ(snap.k(), direct.k());
    for (std::size_t i = 0; i < snap.k(); ++i) {
      EXPECT_NEAR(snap.eigenvalues[i], direct.eigenvalues[i], 1e-8);
      for (std::size_t j = 0; j < snap.dim(); ++j) {
        EXPECT_NEAR(snap.column(i)[j], direct.column(i)[j], 1e-8);
      }
    }
  }
}

TEST(FitPca, CovarianceRouteWhenSamplesOutnumberPixels) {
  std::mt19937_64 rng(101);
  const auto set = random_set(30, 2, 3, rng);
  const EigenModel m = fit_pca(set, {.k_max = 40});
  EXPECT_EQ(m.k(), 6u);
  const Eigen::MatrixXd x = centered_rows(set);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(x.transpose() * x / 30.0);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(m.eigenvalues[i], ref.eigenvalues()(static_cast<Eigen::Index>(5 - i)), 1e-12);
  }
}

TEST(FitPca, SignConventionLargestEntryPositive) {
  std::mt19937_64 rng(103);
  const EigenModel m = fit_pca(random_set(8, 4, 4, rng));
  for (std::size_t c = 0; c < m.k(); ++c) {
    auto col = m.column(c);
    const auto it = std::max_element(col.begin(), col.end(),
                                     [](double a, double b) { return std::abs(a) < std::abs(b); });
    EXPECT_GT(*it, 0.0);
  }
}

TEST(Project, MeanAndBasisDirections) {
  std::mt19937_64 rng(107);
  const EigenModel m = fit_pca(random_set(8, 3, 4, rng));
  const Image mean(m.height, m.width, m.mean);
  for (double f : project(m, mean)) EXPECT_NEAR(f, 0.0, 1e-12);

  for (std::size_t i = 0; i < m.k(); ++i) {
    Image shifted = mean;
    for (std::size_t j = 0; j < m.dim(); ++j) shifted.pixels()[j] += 1.5 * m.column(i)[j];
    const auto f = project(m, shifted);
    for (std::size_t c = 0; c < m.k(); ++c) EXPECT_NEAR(f[c], c == i ? 1.5 : 0.0, 1e-12);
  }
  EXPECT_THROW(project(m, Image(4, 3)), Error);
}

TEST(Project, InnerProductsMatchBruteForce) {
  std::mt19937_64 rng(109);
  const auto set = random_set(5, 3, 3, rng);
  const EigenModel m = fit_pca(set);
  // Full-rank span of the centered data: k = n - 1 = 4, so projections keep
  // every pairwise inner product of the centered samples.
  ASSERT_EQ(m.k(), 4u);
  const Eigen::MatrixXd x = centered_rows(set);
  const Eigen::MatrixXd gram = x * x.transpose();
  for (std::size_t a = 0; a < 5; ++a) {
    const auto fa = project(m, set[a]);
    for (std::size_t b = 0; b < 5; ++b) {
      const auto fb = project(m, set[b]);
      double dot = 0.0;
      for (std::size_t c = 0; c < m.k(); ++c) dot += fa[c] * fb[c];
      EXPECT_NEAR(dot, gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), 1e-10);
    }
  }
}

TEST(Reconstruct, ProjectorIdentities) {
  std::mt19937_64 rng(113);
  const auto set = random_set(7, 4, 4, rng);
  const EigenModel m = fit_pca(set);
  const std::vector<double> zero(m.k(), 0.0);
  EXPECT_EQ(reconstruct_from_features(m, zero), Image(4, 4, m.mean));
  for (const Image& x : set) {
    // Training samples lie in mean + span(basis) when k = n - 1.
    EXPECT_LE(test::max_abs_diff(reconstruct_from_features(m, project(m, x)), x), 1e-10);
  }
  std::vector<double> f(m.k());
  for (double& v : f) v = std::uniform_real_distribution<double>(-2, 2)(rng);
  const auto back = project(m, reconstruct_from_features(m, f));
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(back[i], f[i], 1e-9);
  EXPECT_THROW(reconstruct_from_features(m, std::vector<double>(m.k() + 1)), Error);
}

TEST(Reconstruct, ErrorNonIncreasingInK) {
  std::mt19937_64 rng(127);
  const auto set = random_set(12, 5, 6, rng);
  const Image probe = test::random_image(5, 6, rng);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= 11; ++k) {
    const EigenModel m = fit_pca(set, {.k_max = k});
    const Image r = reconstruct_from_features(m, project(m, probe));
    double err = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double d = r.pixels()[i] - probe.pixels()[i];
      err += d * d;
    }
    EXPECT_LE(err, previous + 1e-12);
    previous = err;
  }
}

}  // namespace
}  // namespace qf
