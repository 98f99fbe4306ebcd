#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace qf {

enum class Split { kTrain, kTest };

struct ManifestEntry {
  std::size_t class_id = 0;
  std::filesystem::path visual;
  std::filesystem::path thermal;
  Split split = Split::kTrain;
};

/// Validated list of visual/thermal pairs. Every test class also appears
/// in training and every referenced file exists.
struct Manifest {
  std::vector<ManifestEntry> entries;
  std::map<std::size_t, std::string> class_names;

  std::vector<ManifestEntry> select(Split split) const;
};

inline constexpr const char* kManifestHeader = "class_id,visual_path,thermal_path,split";

/// CSV with header `class_id,visual_path,thermal_path,split`. Relative paths
/// resolve against `base_dir`. `#` lines are comments, except
/// `# class <id> <name>` which records a class label.
Manifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

/// Paths are written relative to the manifest's directory when possible.
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

/// Scans `<root>/<class>/visual/*.pgm` paired by file name with
/// `<root>/<class>/thermal/*.pgm`. Class directories are numbered in sorted
/// order. Within each class a seeded shuffle sends round(train_frac * n)
/// pairs (at least one) to training and the rest to test.
Manifest generate_manifest(const std::filesystem::path& root, std::uint64_t seed,
                           double train_frac);

}  // namespace qf
