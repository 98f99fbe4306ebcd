#pragma once

#include "qf/image.hpp"

namespace qf {

enum class QuotientMethod {
  /// Level-1 decomposition; every subband of the visual image is divided by
  /// the matching thermal subband and the four quotients are tiled.
  kDecomposeLevel1 = 1,
  /// Level-2 decomposition, one synthesis step from the level-2
  /// approximation alone, then a pixelwise quotient at half resolution.
  kReconstructLevel2 = 2,
};

/// How visual and thermal coefficients are combined into the numerator
/// before division by the thermal coefficients.
enum class FusionVariant {
  kNone,    ///< numerator is the visual coefficients
  kSelect,  ///< numerator is fuse_maxabs(thermal, visual)
  kSum,     ///< numerator is thermal + visual
};

struct QuotientConfig {
  double epsilon_rel = 1e-3;
  QuotientMethod method = QuotientMethod::kReconstructLevel2;

  int levels() const { return method == QuotientMethod::kDecomposeLevel1 ? 1 : 2; }
  void validate() const;
};

/// Elementwise num / den' with den' = sign(den) * max(|den|, eps), where
/// sign(0) = +1 and eps = epsilon_rel * max(1, max|den|). Always finite.
Image regularized_divide(const Image& num, const Image& den, double epsilon_rel);

/// Visual over thermal quotient of the level-1 subbands, tiled as
/// [[Qa, Qh], [Qv, Qd]]. Output has the input size.
Image quotient_method1(const Image& visual, const Image& thermal,
                       const QuotientConfig& cfg);

/// Visual over thermal quotient of the low-pass projections obtained from
/// the level-2 approximation. Output is (h/2) x (w/2).
Image quotient_method2(const Image& visual, const Image& thermal,
                       const QuotientConfig& cfg);

/// Dispatches on cfg.method and applies `fusion` to the numerator.
Image quotient_image(const Image& visual, const Image& thermal,
                     const QuotientConfig& cfg,
                     FusionVariant fusion = FusionVariant::kNone);

/// Select-by-magnitude fusion: t where |t| >= |v|, otherwise v.
Image fuse_maxabs(const Image& t, const Image& v);

/// Elementwise t + v.
Image fuse_sum(const Image& t, const Image& v);

/// Normalized Gaussian kernel of size (2r+1)^2.
Image gaussian_kernel(int radius, double sigma);

/// 2D convolution with edge-replicate boundary handling.
Image convolve_replicate(const Image& image, const Image& kernel);

/// I / (F * I) with F a normalized Gaussian.
Image self_quotient(const Image& image, int kernel_radius, double sigma,
                    double epsilon_rel = 1e-3);

}  // namespace qf
