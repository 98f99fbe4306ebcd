#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qf/image.hpp"

namespace qf {

/// db1 (Haar) analysis and synthesis filters.
struct HaarFilters {
  static constexpr double kTap = std::numbers::sqrt2 / 2.0;
  static constexpr std::array<double, 2> lo_d{kTap, kTap};
  static constexpr std::array<double, 2> hi_d{kTap, -kTap};
  static constexpr std::array<double, 2> lo_r{kTap, kTap};
  static constexpr std::array<double, 2> hi_r{-kTap, kTap};
};

/// One level of a 2D decomposition. All four bands are
/// (source_h/2) x (source_w/2).
///
/// For each non-overlapping 2x2 block [[a,b],[c,d]] of the source:
///   cA = (a+b+c+d)/2      cH = ((a+b)-(c+d))/2
///   cV = ((a+c)-(b+d))/2  cD = ((a-b)-(c-d))/2
/// so cH responds to horizontal edges (differences between rows).
struct SubbandSet {
  Image cA;
  Image cH;
  Image cV;
  Image cD;
  std::size_t source_h = 0;
  std::size_t source_w = 0;

  double energy() const;
};

/// Single-level Haar analysis. Both dimensions must be even.
SubbandSet dwt2(const Image& image);

/// Exact inverse of dwt2.
Image idwt2(const SubbandSet& subbands);

/// Element k (0-based) holds the subbands of level k+1, each level
/// decomposing the previous level's approximation.
std::vector<SubbandSet> decompose_multilevel(const Image& image, int levels);

/// Synthesizes `levels` times from `approx` with every detail band zero.
/// Output is (h * 2^levels) x (w * 2^levels).
Image reconstruct_from_approx(const Image& approx, int levels);

/// [[cA, cH], [cV, cD]] tiled into one source-sized image.
Image tile_subbands(const Image& a, const Image& h, const Image& v,
                    const Image& d);

}  // namespace qf
