#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qf {

/// Dense row-major grid of real values. Used both for grayscale images and
/// for the coefficient matrices derived from them.
class Image {
 public:
  Image() = default;
  Image(std::size_t height, std::size_t width, double fill = 0.0);
  Image(std::size_t height, std::size_t width, std::vector<double> pixels);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  double& operator()(std::size_t row, std::size_t col) {
    return pixels_[row * width_ + col];
  }
  double operator()(std::size_t row, std::size_t col) const {
    return pixels_[row * width_ + col];
  }

  std::span<double> pixels() noexcept { return pixels_; }
  std::span<const double> pixels() const noexcept { return pixels_; }

  bool same_shape(const Image& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> pixels_;
};

/// Returns the h x w sub-image whose top-left corner is (top, left).
Image crop(const Image& image, std::size_t top, std::size_t left,
           std::size_t h, std::size_t w);

/// Bilinear resampling with corner alignment: the centers of the corner
/// pixels of the output land on the centers of the input's corner pixels.
Image resize_bilinear(const Image& image, std::size_t new_h, std::size_t new_w);

/// Affine map onto [0,1]. A constant image maps to all zeros.
Image normalize_minmax(const Image& image);

Image scaled(const Image& image, double factor);

double max_abs(const Image& image);

/// Throws kDimensionMismatch naming `what` if the shapes differ.
void require_same_shape(const Image& a, const Image& b, const char* what);

}  // namespace qf
