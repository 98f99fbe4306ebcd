#include "qf/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

namespace fs = std::filesystem;

std::vector<ManifestEntry> Manifest::select(Split split) const {
  std::vector<ManifestEntry> out;
  std::copy_if(entries.begin(), entries.end(), std::back_inserter(out),
               [split](const ManifestEntry& e) { return e.split == split; });
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kParseError,
              "manifest line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void parse_class_directive(const std::string& line, Manifest& manifest) {
  std::istringstream ss(line.substr(1));
  std::string word;
  std::size_t id = 0;
  std::string name;
  if (ss >> word && word == "class" && ss >> id && ss >> std::ws &&
      std::getline(ss, name) && !name.empty()) {
    manifest.class_names[id] = trim(name);
  }
}

}  // namespace

Manifest parse_manifest(std::istream& in, const fs::path& base_dir) {
  Manifest manifest;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (line_no == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      parse_class_directive(line, manifest);
      continue;
    }
    if (!header_seen) {
      if (line != kManifestHeader) {
        parse_fail(line_no, std::string("expected header '") + kManifestHeader + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 4) {
      parse_fail(line_no, "expected 4 fields, found " + std::to_string(fields.size()));
    }
    ManifestEntry entry;
    const std::string& id = fields[0];
    auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), entry.class_id);
    if (id.empty() || ec != std::errc() || ptr != id.data() + id.size()) {
      parse_fail(line_no, "bad class_id '" + id + "'");
    }
    if (fields[1].empty() || fields[2].empty()) parse_fail(line_no, "empty path");
    entry.visual = fs::path(fields[1]).is_absolute() ? fs::path(fields[1]) : base_dir / fields[1];
    entry.thermal = fs::path(fields[2]).is_absolute() ? fs::path(fields[2]) : base_dir / fields[2];
    if (fields[3] == "train") {
      entry.split = Split::kTrain;
    } else if (fields[3] == "test") {
      entry.split = Split::kTest;
    } else {
      parse_fail(line_no, "split must be 'train' or 'test', got '" + fields[3] + "'");
    }
    manifest.entries.push_back(std::move(entry));
  }
  if (!header_seen) parse_fail(line_no, "missing header");

  std::set<std::size_t> train_classes;
  for (const auto& e : manifest.entries) {
    if (e.split == Split::kTrain) train_classes.insert(e.class_id);
  }
  for (const auto& e : manifest.entries) {
    if (e.split == Split::kTest && !train_classes.count(e.class_id)) {
      throw Error(ErrorCode::kValidation,
                  "class " + std::to_string(e.class_id) +
                      " appears in test but not in train");
    }
  }
  for (const auto& e : manifest.entries) {
    for (const fs::path* p : {&e.visual, &e.thermal}) {
      if (!fs::exists(*p)) {
        throw Error(ErrorCode::kFileNotFound, p->string() + ": referenced file missing");
      }
    }
  }
  return manifest;
}

Manifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string() + ": cannot open");
  return parse_manifest(in, path.parent_path());
}

void save_manifest(const Manifest& manifest, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kWriteFailed, path.string() + ": cannot open for writing");
  const fs::path base = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  for (const auto& [id, name] : manifest.class_names) {
    out << "# class " << id << ' ' << name << '\n';
  }
  out << kManifestHeader << '\n';
  auto rel = [&](const fs::path& p) {
    std::error_code ec;
    fs::path r = fs::relative(p, base, ec);
    return (ec || r.empty()) ? p.generic_string() : r.generic_string();
  };
  for (const auto& e : manifest.entries) {
    out << e.class_id << ',' << rel(e.visual) << ',' << rel(e.thermal) << ','
        << (e.split == Split::kTrain ? "train" : "test") << '\n';
  }
  if (!out) throw Error(ErrorCode::kWriteFailed, path.string() + ": write failed");
}

Manifest generate_manifest(const fs::path& root, std::uint64_t seed, double train_frac) {
  if (!(train_frac > 0.0 && train_frac <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train fraction must lie in (0,1]");
  }
  if (!fs::is_directory(root)) {
    throw Error(ErrorCode::kFileNotFound, root.string() + ": not a directory");
  }
  std::vector<fs::path> class_dirs;
  for (const auto& item : fs::directory_iterator(root)) {
    if (item.is_directory() && fs::is_directory(item.path() / "visual") &&
        fs::is_directory(item.path() / "thermal")) {
      class_dirs.push_back(item.path());
    }
  }
  std::sort(class_dirs.begin(), class_dirs.end());
  if (class_dirs.empty()) {
    throw Error(ErrorCode::kValidation,
                root.string() + ": no <class>/visual and <class>/thermal directories");
  }

  std::mt19937_64 rng(seed);
  Manifest manifest;
  for (std::size_t id = 0; id < class_dirs.size(); ++id) {
    const fs::path& dir = class_dirs[id];
    manifest.class_names[id] = dir.filename().string();
    std::vector<std::string> names;
    for (const auto& item : fs::directory_iterator(dir / "visual")) {
      if (item.is_regular_file() && item.path().extension() == ".pgm" &&
          fs::exists(dir / "thermal" / item.path().filename())) {
        names.push_back(item.path().filename().string());
      }
    }
    if (names.empty()) continue;
    std::sort(names.begin(), names.end());
    for (std::size_t i = names.size(); i > 1; --i) {
      std::swap(names[i - 1], names[rng() % i]);
    }
    const auto n_train = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::lround(train_frac * static_cast<double>(names.size()))),
        1, names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      manifest.entries.push_back(ManifestEntry{id, dir / "visual" / names[i],
                                               dir / "thermal" / names[i],
                                               i < n_train ? Split::kTrain : Split::kTest});
    }
  }
  return manifest;
}

}  // namespace qf
