#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qf/error.hpp"
#include "qf/wavelet.hpp"
#include "test_util.hpp"

namespace qf {
namespace {

// Separable filter bank written out directly: correlate each row with the
// two-tap low/high filters keeping even phases, then the same on columns.
SubbandSet separable_oracle(const Image& x) {
  const double k = 1.0 / std::sqrt(2.0);
  const std::size_t h = x.height(), w = x.width();
  Image lo(h, w / 2), hi(h, w / 2);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w / 2; ++c) {
      lo(r, c) = k * x(r, 2 * c) + k * x(r, 2 * c + 1);
      hi(r, c) = k * x(r, 2 * c) - k * x(r, 2 * c + 1);
    }
  }
  auto columns = [&](const Image& in, Image& low, Image& high) {
    low = Image(h / 2, w / 2);
    high = Image(h / 2, w / 2);
    for (std::size_t r = 0; r < h / 2; ++r) {
      for (std::size_t c = 0; c < w / 2; ++c) {
        low(r, c) = k * in(2 * r, c) + k * in(2 * r + 1, c);
        high(r, c) = k * in(2 * r, c) - k * in(2 * r + 1, c);
      }
    }
  };
  SubbandSet s;
  s.source_h = h;
  s.source_w = w;
  columns(lo, s.cA, s.cH);
  columns(hi, s.cV, s.cD);
  return s;
}

TEST(HaarFilters, Orthonormal) {
  auto dot = [](const auto& a, const auto& b) { return a[0] * b[0] + a[1] * b[1]; };
  EXPECT_NEAR(dot(HaarFilters::lo_d, HaarFilters::lo_d), 1.0, 1e-15);
  EXPECT_NEAR(dot(HaarFilters::hi_d, HaarFilters::hi_d), 1.0, 1e-15);
  EXPECT_NEAR(dot(HaarFilters::lo_d, HaarFilters::hi_d), 0.0, 1e-15);
}

TEST(Dwt2, TwoByTwoBlock) {
  const SubbandSet s = dwt2(Image(2, 2, {1, 2, 3, 4}));
  EXPECT_DOUBLE_EQ(s.cA(0, 0), 5.0);
  EXPECT_DOUBLE_EQ(s.cH(0, 0), -2.0);
  EXPECT_DOUBLE_EQ(s.cV(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(s.cD(0, 0), 0.0);
}

TEST(Dwt2, Constant) {
  const SubbandSet s = dwt2(Image(6, 8, 0.3));
  for (double p : s.cA.pixels()) EXPECT_DOUBLE_EQ(p, 0.6);
  for (const Image* d : {&s.cH, &s.cV, &s.cD}) {
    for (double p : d->pixels()) EXPECT_EQ(p, 0.0);
  }
}

TEST(Dwt2, OddDimensionIsError) {
  try {
    dwt2(Image(3, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOddDimension);
  }
}

TEST(Dwt2, MatchesSeparableFilterBank) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const Image x = test::random_image(2 * (1 + rng() % 12), 2 * (1 + rng() % 12), rng);
    const SubbandSet a = dwt2(x);
    const SubbandSet b = separable_oracle(x);
    EXPECT_LE(test::max_abs_diff(a.cA, b.cA), 1e-14);
    EXPECT_LE(test::max_abs_diff(a.cH, b.cH), 1e-14);
    EXPECT_LE(test::max_abs_diff(a.cV, b.cV), 1e-14);
    EXPECT_LE(test::max_abs_diff(a.cD, b.cD), 1e-14);
  }
}

TEST(Dwt2, Linearity) {
  std::mt19937_64 rng(19);
  const Image x = test::random_image(10, 14, rng);
  const Image y = test::random_image(10, 14, rng);
  const double alpha = 1.7, beta = -0.4;
  Image combo(10, 14);
  for (std::size_t i = 0; i < combo.size(); ++i) {
    combo.pixels()[i] = alpha * x.pixels()[i] + beta * y.pixels()[i];
  }
  const SubbandSet sx = dwt2(x), sy = dwt2(y), sc = dwt2(combo);
  auto check = [&](const Image& c, const Image& a, const Image& b) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_NEAR(c.pixels()[i], alpha * a.pixels()[i] + beta * b.pixels()[i], 1e-12);
    }
  };
  check(sc.cA, sx.cA, sy.cA);
  check(sc.cH, sx.cH, sy.cH);
  check(sc.cV, sx.cV, sy.cV);
  check(sc.cD, sx.cD, sy.cD);
}

TEST(Idwt2, InverseExamples) {
  const SubbandSet s{Image(1, 1, 5.0), Image(1, 1, -2.0), Image(1, 1, -1.0), Image(1, 1, 0.0),
                     2, 2};
  EXPECT_EQ(idwt2(s), Image(2, 2, {1, 2, 3, 4}));
  const Image zero(3, 2);
  const Image flat = idwt2(SubbandSet{Image(3, 2, 1.4), zero, zero, zero, 6, 4});
  for (double p : flat.pixels()) EXPECT_NEAR(p, 0.7, 1e-15);
}

TEST(Idwt2, MismatchedBandsAreError) {
  const SubbandSet s{Image(2, 2), Image(2, 3), Image(2, 2), Image(2, 2), 4, 4};
  EXPECT_THROW(idwt2(s), Error);
}

TEST(Idwt2, PerfectReconstructionAndEnergy) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Image x = test::random_image(2 * (1 + rng() % 20), 2 * (1 + rng() % 20), rng, -5, 5);
    const SubbandSet s = dwt2(x);
    EXPECT_LE(test::max_abs_diff(idwt2(s), x), 1e-12);
    double ex = 0.0;
    for (double p : x.pixels()) ex += p * p;
    EXPECT_NEAR(s.energy(), ex, 1e-12 * ex);
  }
}

TEST(Multilevel, BaseCaseAndGeometry) {
  std::mt19937_64 rng(29);
  const Image x = test::random_image(80, 100, rng);
  const auto one = decompose_multilevel(x, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].cA, dwt2(x).cA);

  const auto two = decompose_multilevel(x, 2);
  ASSERT_EQ(two.size(), 2u);
  for (const Image* b : {&two[0].cA, &two[0].cH, &two[0].cV, &two[0].cD}) {
    EXPECT_EQ(b->height(), 40u);
    EXPECT_EQ(b->width(), 50u);
  }
  for (const Image* b : {&two[1].cA, &two[1].cH, &two[1].cV, &two[1].cD}) {
    EXPECT_EQ(b->height(), 20u);
    EXPECT_EQ(b->width(), 25u);
  }
  EXPECT_EQ(two[1].cA, dwt2(two[0].cA).cA);
}

TEST(Multilevel, ConstantLadder) {
  const double c = 0.37;
  const auto levels = decompose_multilevel(Image(16, 32, c), 3);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const double expected = c * std::pow(2.0, static_cast<double>(k + 1));
    for (double p : levels[k].cA.pixels()) EXPECT_NEAR(p, expected, 1e-14);
    for (const Image* d : {&levels[k].cH, &levels[k].cV, &levels[k].cD}) {
      for (double p : d->pixels()) EXPECT_EQ(p, 0.0);
    }
  }
}

TEST(Multilevel, Preconditions) {
  EXPECT_THROW(decompose_multilevel(Image(80, 100), 3), Error);  // 20x25 level is odd
  EXPECT_THROW(decompose_multilevel(Image(8, 8), 0), Error);
}

TEST(ReconstructFromApprox, Examples) {
  std::mt19937_64 rng(31);
  const Image x = test::random_image(12, 10, rng);
  const SubbandSet s = dwt2(x);
  const Image zero(6, 5);
  EXPECT_EQ(reconstruct_from_approx(s.cA, 1), idwt2(SubbandSet{s.cA, zero, zero, zero, 12, 10}));

  const Image flat = reconstruct_from_approx(Image(3, 4, 2 * 0.25), 1);
  for (double p : flat.pixels()) EXPECT_NEAR(p, 0.25, 1e-15);

  const Image face = test::random_image(80, 100, rng, 0, 1);
  const auto levels = decompose_multilevel(face, 2);
  const Image approx = reconstruct_from_approx(levels[1].cA, 1);
  EXPECT_EQ(approx.height(), 40u);
  EXPECT_EQ(approx.width(), 50u);
  // Smoothed level-1 approximation: its own dwt2 has zero detail.
  const SubbandSet again = dwt2(approx);
  EXPECT_LE(max_abs(again.cH), 1e-12);
  EXPECT_LE(max_abs(again.cD), 1e-12);
  EXPECT_THROW(reconstruct_from_approx(Image(2, 2), 0), Error);
}

TEST(ReconstructFromApprox, ProjectorIsIdempotent) {
  std::mt19937_64 rng(37);
  for (int k = 1; k <= 3; ++k) {
    const Image x = test::random_image(24, 16, rng);
    auto project = [k](const Image& img) {
      return reconstruct_from_approx(decompose_multilevel(img, k).back().cA, k);
    };
    const Image once = project(x);
    EXPECT_EQ(once.height(), 24u);
    EXPECT_LE(test::max_abs_diff(project(once), once), 1e-9);
  }
}

}  // namespace
}  // namespace qf
