#include "qf/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qf/error.hpp"
#include "qf/wavelet.hpp"

namespace qf {

void QuotientConfig::validate() const {
  if (!(epsilon_rel > 0.0) || !std::isfinite(epsilon_rel)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon_rel must be positive");
  }
}

Image regularized_divide(const Image& num, const Image& den,
                         double epsilon_rel) {
  require_same_shape(num, den, "regularized_divide");
  if (!(epsilon_rel > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon_rel must be positive");
  }
  const double eps = epsilon_rel * std::max(1.0, max_abs(den));
  Image out(num.height(), num.width());
  auto n = num.pixels();
  auto d = den.pixels();
  auto q = out.pixels();
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double mag = std::max(std::abs(d[i]), eps);
    q[i] = n[i] / (d[i] < 0.0 ? -mag : mag);
  }
  return out;
}

namespace {

Image combine(const Image& thermal, const Image& visual, FusionVariant fusion) {
  switch (fusion) {
    case FusionVariant::kNone: return visual;
    case FusionVariant::kSelect: return fuse_maxabs(thermal, visual);
    case FusionVariant::kSum: return fuse_sum(thermal, visual);
  }
  return visual;
}

void check_pair(const Image& visual, const Image& thermal) {
  require_same_shape(visual, thermal, "visual/thermal pair");
}

Image method1(const Image& visual, const Image& thermal,
              const QuotientConfig& cfg, FusionVariant fusion) {
  check_pair(visual, thermal);
  const SubbandSet v = dwt2(visual);
  const SubbandSet t = dwt2(thermal);
  auto band = [&](const Image& vb, const Image& tb) {
    return regularized_divide(combine(tb, vb, fusion), tb, cfg.epsilon_rel);
  };
  return tile_subbands(band(v.cA, t.cA), band(v.cH, t.cH), band(v.cV, t.cV),
                       band(v.cD, t.cD));
}

Image lowpass_level2(const Image& image) {
  const auto levels = decompose_multilevel(image, 2);
  return reconstruct_from_approx(levels[1].cA, 1);
}

Image method2(const Image& visual, const Image& thermal,
              const QuotientConfig& cfg, FusionVariant fusion) {
  check_pair(visual, thermal);
  const Image v = lowpass_level2(visual);
  const Image t = lowpass_level2(thermal);
  return regularized_divide(combine(t, v, fusion), t, cfg.epsilon_rel);
}

}  // namespace

Image quotient_method1(const Image& visual, const Image& thermal,
                       const QuotientConfig& cfg) {
  cfg.validate();
  return method1(visual, thermal, cfg, FusionVariant::kNone);
}

Image quotient_method2(const Image& visual, const Image& thermal,
                       const QuotientConfig& cfg) {
  cfg.validate();
  return method2(visual, thermal, cfg, FusionVariant::kNone);
}

Image quotient_image(const Image& visual, const Image& thermal,
                     const QuotientConfig& cfg, FusionVariant fusion) {
  cfg.validate();
  if (cfg.method == QuotientMethod::kDecomposeLevel1) {
    return method1(visual, thermal, cfg, fusion);
  }
  return method2(visual, thermal, cfg, fusion);
}

Image fuse_maxabs(const Image& t, const Image& v) {
  require_same_shape(t, v, "fuse_maxabs");
  Image out(t.height(), t.width());
  auto tp = t.pixels();
  auto vp = v.pixels();
  auto op = out.pixels();
  for (std::size_t i = 0; i < op.size(); ++i) {
    op[i] = std::abs(tp[i]) >= std::abs(vp[i]) ? tp[i] : vp[i];
  }
  return out;
}

Image fuse_sum(const Image& t, const Image& v) {
  require_same_shape(t, v, "fuse_sum");
  Image out = t;
  auto vp = v.pixels();
  auto op = out.pixels();
  for (std::size_t i = 0; i < op.size(); ++i) op[i] += vp[i];
  return out;
}

Image gaussian_kernel(int radius, double sigma) {
  if (radius < 1) {
    throw Error(ErrorCode::kInvalidArgument, "kernel radius must be >= 1");
  }
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  }
  const auto size = static_cast<std::size_t>(2 * radius + 1);
  Image k(size, size);
  double total = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k(static_cast<std::size_t>(dy + radius), static_cast<std::size_t>(dx + radius)) = w;
      total += w;
    }
  }
  for (double& w : k.pixels()) w /= total;
  return k;
}

Image convolve_replicate(const Image& image, const Image& kernel) {
  if (kernel.height() % 2 == 0 || kernel.width() % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "kernel dimensions must be odd");
  }
  const auto h = static_cast<long>(image.height());
  const auto w = static_cast<long>(image.width());
  const auto ry = static_cast<long>(kernel.height() / 2);
  const auto rx = static_cast<long>(kernel.width() / 2);
  Image out(image.height(), image.width());
  for (long r = 0; r < h; ++r) {
    for (long c = 0; c < w; ++c) {
      double acc = 0.0;
      for (long ky = -ry; ky <= ry; ++ky) {
        const auto sr = static_cast<std::size_t>(std::clamp(r - ky, 0L, h - 1));
        for (long kx = -rx; kx <= rx; ++kx) {
          const auto sc = static_cast<std::size_t>(std::clamp(c - kx, 0L, w - 1));
          acc += kernel(static_cast<std::size_t>(ky + ry),
                        static_cast<std::size_t>(kx + rx)) *
                 image(sr, sc);
        }
      }
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = acc;
    }
  }
  return out;
}

Image self_quotient(const Image& image, int kernel_radius, double sigma,
                    double epsilon_rel) {
  const Image smooth = convolve_replicate(image, gaussian_kernel(kernel_radius, sigma));
  return regularized_divide(image, smooth, epsilon_rel);
}

}  // namespace qf
