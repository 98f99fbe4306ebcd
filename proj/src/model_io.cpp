#include "qf/model_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "qf/error.hpp"

namespace qf {
namespace {

constexpr std::array<std::uint8_t, 8> kMagic{'Q', 'F', 'M', 'O', 'D', 'E', 'L', 0x1A};

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void f64s(std::span<const double> vs) {
    for (double v : vs) f64(v);
  }
  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > data_.size() - pos_) {
      throw Error(ErrorCode::kCorrupted, "model file truncated");
    }
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() {
    auto s = take(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | s[static_cast<std::size_t>(i)];
    return v;
  }
  std::uint64_t u64() {
    auto s = take(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | s[static_cast<std::size_t>(i)];
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::vector<double> f64s(std::uint64_t n) {
    if (n > remaining() / 8) throw Error(ErrorCode::kCorrupted, "model file truncated");
    std::vector<double> out(n);
    for (double& v : out) v = f64();
    return out;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::vector<std::uint8_t> serialize_model(const TrainedModels& models,
                                          const PipelineConfig& config) {
  Writer w;
  w.bytes(kMagic.data(), kMagic.size());
  w.u8(kModelFormatVersion);

  const std::string text = to_config_text(config);
  w.u32(static_cast<std::uint32_t>(text.size()));
  w.bytes(text.data(), text.size());

  const EigenModel& e = models.eigen;
  w.u64(e.height);
  w.u64(e.width);
  w.u64(e.k());
  w.f64s(e.mean);
  w.f64s(e.eigenvalues);
  w.f64s(e.basis);

  const MlpModel& m = models.mlp;
  w.u64(m.layer_sizes.size());
  for (std::size_t s : m.layer_sizes) w.u64(s);
  for (const DenseLayer& layer : m.layers) {
    w.f64s(layer.weights);
    w.f64s(layer.biases);
  }

  w.u32(crc_of(w.buffer()));
  return std::move(w.buffer());
}

StoredModel deserialize_model(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= kMagic.size() &&
      !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::kUnsupportedFormat, "not a model file (bad magic)");
  }
  if (bytes.size() < kMagic.size() + 1 + 4) {
    throw Error(ErrorCode::kCorrupted, "model file truncated");
  }
  if (bytes[kMagic.size()] != kModelFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "model format version " + std::to_string(bytes[kMagic.size()]) +
                    ", expected " + std::to_string(kModelFormatVersion));
  }
  const auto body = bytes.first(bytes.size() - 4);
  Reader trailer(bytes.last(4));
  if (trailer.u32() != crc_of(body)) {
    throw Error(ErrorCode::kCorrupted, "model checksum mismatch");
  }

  Reader r(body);
  r.take(kMagic.size() + 1);
  StoredModel out;
  const std::uint32_t text_len = r.u32();
  const auto text = r.take(text_len);
  out.config = parse_config(std::string(text.begin(), text.end()));

  EigenModel& e = out.models.eigen;
  e.height = r.u64();
  e.width = r.u64();
  const std::uint64_t k = r.u64();
  const std::uint64_t d = e.height * e.width;
  if (e.height != 0 && d / e.height != e.width) {
    throw Error(ErrorCode::kCorrupted, "model dimensions overflow");
  }
  e.mean = r.f64s(d);
  e.eigenvalues = r.f64s(k);
  if (k != 0 && d > r.remaining() / 8 / k) {
    throw Error(ErrorCode::kCorrupted, "model file truncated");
  }
  e.basis = r.f64s(d * k);

  const std::uint64_t num_sizes = r.u64();
  if (num_sizes < 2 || num_sizes > r.remaining() / 8) {
    throw Error(ErrorCode::kCorrupted, "bad MLP layer count");
  }
  std::vector<std::size_t> sizes;
  for (std::uint64_t i = 0; i < num_sizes; ++i) sizes.push_back(r.u64());
  MlpModel& m = out.models.mlp;
  m.layer_sizes = sizes;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    DenseLayer layer;
    layer.fan_in = sizes[l];
    layer.fan_out = sizes[l + 1];
    if (layer.fan_out != 0 && layer.fan_in > r.remaining() / 8 / layer.fan_out) {
      throw Error(ErrorCode::kCorrupted, "model file truncated");
    }
    layer.weights = r.f64s(layer.fan_in * layer.fan_out);
    layer.biases = r.f64s(layer.fan_out);
    layer.weight_velocity.assign(layer.weights.size(), 0.0);
    layer.bias_velocity.assign(layer.fan_out, 0.0);
    m.layers.push_back(std::move(layer));
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kCorrupted, "trailing bytes in model file");
  }
  if (sizes.front() != e.k()) {
    throw Error(ErrorCode::kCorrupted, "MLP input size does not match PCA components");
  }
  return out;
}

void save_model(const TrainedModels& models, const PipelineConfig& config,
                const std::filesystem::path& path) {
  const auto bytes = serialize_model(models, config);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kWriteFailed, path.string() + ": cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kWriteFailed, path.string() + ": write failed");
}

StoredModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string() + ": cannot open");
  const std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in), {});
  return deserialize_model(bytes);
}

}  // namespace qf
