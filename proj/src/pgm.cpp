#include "qf/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "qf/error.hpp"

namespace qf {
namespace {

class HeaderReader {
 public:
  HeaderReader(const std::vector<unsigned char>& bytes, std::string name)
      : bytes_(bytes), name_(std::move(name)) {}

  // Next whitespace-delimited token, skipping '#' comments.
  std::string token() {
    skip_space_and_comments();
    std::string tok;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) &&
           bytes_[pos_] != '#') {
      tok.push_back(static_cast<char>(bytes_[pos_++]));
    }
    return tok;
  }

  long header_int(const char* field) {
    const std::string tok = token();
    if (tok.empty() ||
        !std::all_of(tok.begin(), tok.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw Error(ErrorCode::kMalformedHeader,
                  name_ + ": bad " + field + " '" + tok + "'");
    }
    if (tok.size() > 9) {
      throw Error(ErrorCode::kMalformedHeader, name_ + ": " + field + " too large");
    }
    return std::stol(tok);
  }

  // After maxval exactly one whitespace byte precedes the raster.
  void consume_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kMalformedHeader,
                  name_ + ": missing whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }
  bool at_end() {
    skip_space_and_comments();
    return pos_ >= bytes_.size();
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

}  // namespace

Image load_pgm(const std::filesystem::path& path) {
  const std::string name = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, name + ": cannot open");
  }
  const std::vector<unsigned char> bytes(std::istreambuf_iterator<char>(in), {});

  HeaderReader reader(bytes, name);
  const std::string magic = reader.token();
  if (magic == "P1" || magic == "P3" || magic == "P4" || magic == "P6") {
    throw Error(ErrorCode::kUnsupportedFormat,
                name + ": " + magic + " is not a grayscale PGM");
  }
  if (magic != "P2" && magic != "P5") {
    throw Error(ErrorCode::kMalformedHeader, name + ": bad magic '" + magic + "'");
  }
  const long width = reader.header_int("width");
  const long height = reader.header_int("height");
  const long maxval = reader.header_int("maxval");
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kMalformedHeader, name + ": zero dimension");
  }
  if (maxval <= 0 || maxval > 65535) {
    throw Error(ErrorCode::kMalformedHeader,
                name + ": maxval " + std::to_string(maxval) + " out of range");
  }

  const auto h = static_cast<std::size_t>(height);
  const auto w = static_cast<std::size_t>(width);
  const std::size_t count = h * w;
  const double scale = 1.0 / static_cast<double>(maxval);
  std::vector<double> pixels;
  pixels.reserve(count);

  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      if (reader.at_end()) {
        throw Error(ErrorCode::kTruncatedData,
                    name + ": expected " + std::to_string(count) +
                        " samples, found " + std::to_string(i));
      }
      const long v = reader.header_int("sample");
      if (v > maxval) {
        throw Error(ErrorCode::kMalformedHeader,
                    name + ": sample exceeds maxval");
      }
      pixels.push_back(static_cast<double>(v) * scale);
    }
  } else {
    reader.consume_single_space();
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t start = reader.pos();
    if (bytes.size() - start < count * bytes_per_sample) {
      throw Error(ErrorCode::kTruncatedData,
                  name + ": raster has " + std::to_string(bytes.size() - start) +
                      " bytes, expected " +
                      std::to_string(count * bytes_per_sample));
    }
    for (std::size_t i = 0; i < count; ++i) {
      unsigned v = bytes[start + i * bytes_per_sample];
      if (bytes_per_sample == 2) v = (v << 8) | bytes[start + 2 * i + 1];
      pixels.push_back(static_cast<double>(std::min<unsigned>(v, maxval)) * scale);
    }
  }
  return Image(h, w, std::move(pixels));
}

void save_pgm(const Image& image, const std::filesystem::path& path,
              int maxval) {
  if (maxval != 255 && maxval != 65535) {
    throw Error(ErrorCode::kInvalidArgument, "maxval must be 255 or 65535");
  }
  if (image.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot save an empty image");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kWriteFailed, path.string() + ": cannot open for writing");
  }
  out << "P5\n" << image.width() << ' ' << image.height() << '\n' << maxval << '\n';
  std::vector<char> raster;
  raster.reserve(image.size() * (maxval > 255 ? 2 : 1));
  for (double p : image.pixels()) {
    const double clamped = std::isfinite(p) ? std::clamp(p, 0.0, 1.0) : 0.0;
    const auto q = static_cast<unsigned>(std::lround(clamped * maxval));
    if (maxval > 255) raster.push_back(static_cast<char>(q >> 8));
    raster.push_back(static_cast<char>(q & 0xFF));
  }
  out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
  if (!out) {
    throw Error(ErrorCode::kWriteFailed, path.string() + ": write failed");
  }
}

}  // namespace qf
