#include "qf/wavelet.hpp"

#include <string>

#include "qf/error.hpp"

namespace qf {

double SubbandSet::energy() const {
  double e = 0.0;
  for (const Image* band : {&cA, &cH, &cV, &cD}) {
    for (double x : band->pixels()) e += x * x;
  }
  return e;
}

// The row pass filters pairs of columns with lo_d/hi_d and keeps even
// indices; the column pass does the same on pairs of rows. For Haar this
// collapses to the closed-form 2x2 block expressions below.
SubbandSet dwt2(const Image& image) {
  const std::size_t h = image.height();
  const std::size_t w = image.width();
  if (h == 0 || w == 0 || h % 2 != 0 || w % 2 != 0) {
    throw Error(ErrorCode::kOddDimension,
                "dwt2 needs even dimensions, got " + std::to_string(h) + "x" +
                    std::to_string(w));
  }
  const std::size_t hh = h / 2;
  const std::size_t hw = w / 2;
  SubbandSet out{Image(hh, hw), Image(hh, hw), Image(hh, hw), Image(hh, hw), h, w};
  for (std::size_t r = 0; r < hh; ++r) {
    for (std::size_t c = 0; c < hw; ++c) {
      const double a = image(2 * r, 2 * c);
      const double b = image(2 * r, 2 * c + 1);
      const double cc = image(2 * r + 1, 2 * c);
      const double d = image(2 * r + 1, 2 * c + 1);
      out.cA(r, c) = 0.5 * ((a + b) + (cc + d));
      out.cH(r, c) = 0.5 * ((a + b) - (cc + d));
      out.cV(r, c) = 0.5 * ((a - b) + (cc - d));
      out.cD(r, c) = 0.5 * ((a - b) - (cc - d));
    }
  }
  return out;
}

Image idwt2(const SubbandSet& s) {
  const std::size_t hh = s.cA.height();
  const std::size_t hw = s.cA.width();
  if (!s.cH.same_shape(s.cA) || !s.cV.same_shape(s.cA) ||
      !s.cD.same_shape(s.cA)) {
    throw Error(ErrorCode::kDimensionMismatch, "idwt2: subband shapes differ");
  }
  if (s.source_h != 2 * hh || s.source_w != 2 * hw) {
    throw Error(ErrorCode::kDimensionMismatch,
                "idwt2: source size " + std::to_string(s.source_h) + "x" +
                    std::to_string(s.source_w) + " inconsistent with " +
                    std::to_string(hh) + "x" + std::to_string(hw) + " bands");
  }
  Image out(2 * hh, 2 * hw);
  for (std::size_t r = 0; r < hh; ++r) {
    for (std::size_t c = 0; c < hw; ++c) {
      const double ca = s.cA(r, c);
      const double ch = s.cH(r, c);
      const double cv = s.cV(r, c);
      const double cd = s.cD(r, c);
      out(2 * r, 2 * c) = 0.5 * ((ca + ch) + (cv + cd));
      out(2 * r, 2 * c + 1) = 0.5 * ((ca + ch) - (cv + cd));
      out(2 * r + 1, 2 * c) = 0.5 * ((ca - ch) + (cv - cd));
      out(2 * r + 1, 2 * c + 1) = 0.5 * ((ca - ch) - (cv - cd));
    }
  }
  return out;
}

std::vector<SubbandSet> decompose_multilevel(const Image& image, int levels) {
  if (levels < 1) {
    throw Error(ErrorCode::kInvalidArgument, "levels must be >= 1");
  }
  const std::size_t factor = std::size_t{1} << levels;
  if (image.empty() || image.height() % factor != 0 ||
      image.width() % factor != 0) {
    throw Error(ErrorCode::kOddDimension,
                std::to_string(image.height()) + "x" +
                    std::to_string(image.width()) + " is not divisible by 2^" +
                    std::to_string(levels));
  }
  std::vector<SubbandSet> out;
  out.reserve(static_cast<std::size_t>(levels));
  out.push_back(dwt2(image));
  for (int k = 1; k < levels; ++k) out.push_back(dwt2(out.back().cA));
  return out;
}

Image reconstruct_from_approx(const Image& approx, int levels) {
  if (levels < 1) {
    throw Error(ErrorCode::kInvalidArgument, "levels must be >= 1");
  }
  Image current = approx;
  for (int k = 0; k < levels; ++k) {
    const std::size_t h = current.height();
    const std::size_t w = current.width();
    Image zero(h, w);
    current = idwt2(SubbandSet{std::move(current), zero, zero, zero, 2 * h, 2 * w});
  }
  return current;
}

Image tile_subbands(const Image& a, const Image& h, const Image& v,
                    const Image& d) {
  if (!h.same_shape(a) || !v.same_shape(a) || !d.same_shape(a)) {
    throw Error(ErrorCode::kDimensionMismatch, "tile_subbands: shapes differ");
  }
  const std::size_t bh = a.height();
  const std::size_t bw = a.width();
  Image out(2 * bh, 2 * bw);
  for (std::size_t r = 0; r < bh; ++r) {
    for (std::size_t c = 0; c < bw; ++c) {
      out(r, c) = a(r, c);
      out(r, c + bw) = h(r, c);
      out(r + bh, c) = v(r, c);
      out(r + bh, c + bw) = d(r, c);
    }
  }
  return out;
}

}  // namespace qf
