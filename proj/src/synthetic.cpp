#include "qf/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qf/error.hpp"
#include "qf/manifest.hpp"
#include "qf/pgm.hpp"

namespace qf {
namespace {

namespace fs = std::filesystem;

// Explicit mappings keep datasets identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

struct Blob {
  double cy, cx, sigma, amplitude;
};

struct Pattern {
  std::vector<Blob> blobs;
  double freq_y, freq_x, phase;
};

Pattern random_pattern(Rng& rng) {
  Pattern p;
  for (int i = 0; i < 5; ++i) {
    p.blobs.push_back(Blob{rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85),
                           rng.uniform(0.08, 0.2), rng.uniform(0.4, 1.0)});
  }
  p.freq_y = rng.uniform(0.5, 2.0);
  p.freq_x = rng.uniform(0.5, 2.0);
  p.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return p;
}

// Renders the pattern into [lo, hi] with per-blob amplitude jitter.
Image render(const Pattern& p, std::size_t h, std::size_t w, double lo, double hi,
             Rng& rng, double jitter) {
  std::vector<double> amps;
  for (const Blob& b : p.blobs) amps.push_back(b.amplitude * (1.0 + jitter * rng.normal()));
  Image img(h, w);
  for (std::size_t r = 0; r < h; ++r) {
    const double y = (static_cast<double>(r) + 0.5) / static_cast<double>(h);
    for (std::size_t c = 0; c < w; ++c) {
      const double x = (static_cast<double>(c) + 0.5) / static_cast<double>(w);
      double v = 0.3 * std::sin(2.0 * std::numbers::pi * (p.freq_y * y + p.freq_x * x) + p.phase);
      for (std::size_t i = 0; i < p.blobs.size(); ++i) {
        const Blob& b = p.blobs[i];
        const double d2 = (y - b.cy) * (y - b.cy) + (x - b.cx) * (x - b.cx);
        v += amps[i] * std::exp(-d2 / (2.0 * b.sigma * b.sigma));
      }
      img(r, c) = v;
    }
  }
  // Each sample is stretched onto [lo, hi].
  Image out = normalize_minmax(img);
  for (double& v : out.pixels()) v = lo + (hi - lo) * v;
  return out;
}

void add_noise(Image& img, double sigma, Rng& rng) {
  for (double& v : img.pixels()) v = std::clamp(v + sigma * rng.normal(), 0.0, 1.0);
}

}  // namespace

fs::path write_synthetic_dataset(const fs::path& root, const SyntheticOptions& opt) {
  if (opt.num_classes < 1 || opt.pairs_per_class < 1 ||
      opt.test_per_class >= opt.pairs_per_class) {
    throw Error(ErrorCode::kInvalidArgument,
                "synthetic dataset needs >= 1 training pair per class");
  }
  if (!(opt.illumination_min > 0.0 && opt.illumination_min <= opt.illumination_max)) {
    throw Error(ErrorCode::kInvalidArgument, "bad illumination range");
  }
  Rng rng(opt.seed);
  Manifest manifest;
  for (std::size_t c = 0; c < opt.num_classes; ++c) {
    const Pattern visual_pattern = random_pattern(rng);
    const Pattern thermal_pattern = random_pattern(rng);
    const std::string name = "class_" + std::to_string(c);
    const fs::path dir = root / name;
    fs::create_directories(dir / "visual");
    fs::create_directories(dir / "thermal");
    manifest.class_names[c] = name;
    const std::size_t n_train = opt.pairs_per_class - opt.test_per_class;
    for (std::size_t i = 0; i < opt.pairs_per_class; ++i) {
      const bool is_test = i >= n_train;
      // Visual peaks at 0.45 so a 2x illumination gain stays below 1.
      Image visual = render(visual_pattern, opt.height, opt.width, 0.1, 0.45, rng, 0.05);
      Image thermal = render(thermal_pattern, opt.height, opt.width, 0.35, 0.85, rng, 0.05);
      add_noise(visual, opt.noise_sigma, rng);
      add_noise(thermal, opt.noise_sigma, rng);
      if (is_test) {
        visual = scaled(visual, rng.uniform(opt.illumination_min, opt.illumination_max));
      }
      const std::string file = "sample_" + std::to_string(i) + ".pgm";
      save_pgm(visual, dir / "visual" / file, 65535);
      save_pgm(thermal, dir / "thermal" / file, 65535);
      manifest.entries.push_back(ManifestEntry{c, dir / "visual" / file,
                                               dir / "thermal" / file,
                                               is_test ? Split::kTest : Split::kTrain});
    }
  }
  const fs::path manifest_path = root / "manifest.csv";
  save_manifest(manifest, manifest_path);
  return manifest_path;
}

}  // namespace qf
