#include "qf/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qf/error.hpp"

namespace qf {

Image::Image(std::size_t height, std::size_t width, double fill)
    : height_(height), width_(width), pixels_(height * width, fill) {}

Image::Image(std::size_t height, std::size_t width, std::vector<double> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  if (pixels_.size() != height_ * width_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image buffer holds " + std::to_string(pixels_.size()) +
                    " values, expected " + std::to_string(height_ * width_));
  }
}

Image crop(const Image& image, std::size_t top, std::size_t left,
           std::size_t h, std::size_t w) {
  if (h == 0 || w == 0 || top + h > image.height() ||
      left + w > image.width()) {
    throw Error(ErrorCode::kInvalidArgument,
                "crop rectangle (" + std::to_string(top) + "," +
                    std::to_string(left) + "," + std::to_string(h) + "," +
                    std::to_string(w) + ") outside " +
                    std::to_string(image.height()) + "x" +
                    std::to_string(image.width()) + " image");
  }
  Image out(h, w);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) out(r, c) = image(top + r, left + c);
  }
  return out;
}

namespace {

// Source coordinate for output index i when resampling n_in samples to n_out.
double source_coord(std::size_t i, std::size_t n_in, std::size_t n_out) {
  if (n_out == 1) return 0.5 * static_cast<double>(n_in - 1);
  return static_cast<double>(i) * static_cast<double>(n_in - 1) /
         static_cast<double>(n_out - 1);
}

}  // namespace

Image resize_bilinear(const Image& image, std::size_t new_h,
                      std::size_t new_w) {
  if (new_h == 0 || new_w == 0) {
    throw Error(ErrorCode::kInvalidArgument, "resize target must be >= 1x1");
  }
  if (image.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot resize an empty image");
  }
  if (new_h == image.height() && new_w == image.width()) return image;

  const std::size_t in_h = image.height();
  const std::size_t in_w = image.width();
  Image out(new_h, new_w);
  for (std::size_t r = 0; r < new_h; ++r) {
    const double sy = source_coord(r, in_h, new_h);
    const auto y0 = std::min(static_cast<std::size_t>(sy), in_h - 1);
    const std::size_t y1 = std::min(y0 + 1, in_h - 1);
    const double fy = sy - static_cast<double>(y0);
    for (std::size_t c = 0; c < new_w; ++c) {
      const double sx = source_coord(c, in_w, new_w);
      const auto x0 = std::min(static_cast<std::size_t>(sx), in_w - 1);
      const std::size_t x1 = std::min(x0 + 1, in_w - 1);
      const double fx = sx - static_cast<double>(x0);
      const double top = image(y0, x0) + fx * (image(y0, x1) - image(y0, x0));
      const double bot = image(y1, x0) + fx * (image(y1, x1) - image(y1, x0));
      // Convex combination; clamp away the last-ulp excursions.
      const double lo = std::min({image(y0, x0), image(y0, x1), image(y1, x0),
                                  image(y1, x1)});
      const double hi = std::max({image(y0, x0), image(y0, x1), image(y1, x0),
                                  image(y1, x1)});
      out(r, c) = std::clamp(top + fy * (bot - top), lo, hi);
    }
  }
  return out;
}

Image normalize_minmax(const Image& image) {
  Image out(image.height(), image.width());
  if (image.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(image.pixels().begin(),
                                                  image.pixels().end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (!(range > 0.0)) return out;
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = std::clamp((src[i] - lo) / range, 0.0, 1.0);
  }
  return out;
}

Image scaled(const Image& image, double factor) {
  Image out = image;
  for (double& p : out.pixels()) p *= factor;
  return out;
}

double max_abs(const Image& image) {
  double m = 0.0;
  for (double p : image.pixels()) m = std::max(m, std::abs(p));
  return m;
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a.height()) + "x" +
                    std::to_string(a.width()) + " vs " +
                    std::to_string(b.height()) + "x" +
                    std::to_string(b.width()));
  }
}

}  // namespace qf
