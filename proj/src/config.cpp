#include "qf/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

void PipelineConfig::validate() const {
  quotient.validate();
  train.validate();
  if (height == 0 || width == 0) {
    throw Error(ErrorCode::kInvalidArgument, "target size must be positive");
  }
  const std::size_t factor = quotient.method == QuotientMethod::kDecomposeLevel1 ? 2 : 4;
  if (height % factor != 0 || width % factor != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "target size " + std::to_string(height) + "x" + std::to_string(width) +
                    " must be divisible by " + std::to_string(factor) +
                    " for quotient method " +
                    std::to_string(static_cast<int>(quotient.method)));
  }
  if (crop && (crop->height == 0 || crop->width == 0)) {
    throw Error(ErrorCode::kInvalidArgument, "crop rectangle must be non-empty");
  }
  if (pca.k_max < 1) {
    throw Error(ErrorCode::kInvalidArgument, "k_max must be >= 1");
  }
  for (std::size_t h : hidden_layers) {
    if (h == 0) throw Error(ErrorCode::kInvalidArgument, "hidden layer sizes must be >= 1");
  }
}

std::size_t PipelineConfig::feature_height() const {
  return quotient.method == QuotientMethod::kDecomposeLevel1 ? height : height / 2;
}

std::size_t PipelineConfig::feature_width() const {
  return quotient.method == QuotientMethod::kDecomposeLevel1 ? width : width / 2;
}

std::string_view to_string(FusionVariant variant) {
  switch (variant) {
    case FusionVariant::kNone: return "none";
    case FusionVariant::kSelect: return "select";
    case FusionVariant::kSum: return "sum";
  }
  return "none";
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(std::size_t line, const std::string& key,
                            const std::string& value) {
  throw Error(ErrorCode::kParseError, "config line " + std::to_string(line) +
                                          ": bad value '" + value + "' for " + key);
}

template <typename T>
T parse_number(const std::string& value, std::size_t line, const std::string& key) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(line, key, value);
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& value, std::size_t line,
                                         const std::string& key) {
  std::vector<std::size_t> out;
  if (value.empty()) return out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_number<std::size_t>(trim(item), line, key));
  }
  return out;
}

bool parse_bool(const std::string& value, std::size_t line, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(line, key, value);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParseError,
                  "config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "crop") {
      if (value == "none" || value.empty()) {
        cfg.crop.reset();
      } else {
        const auto parts = parse_size_list(value, line_no, key);
        if (parts.size() != 4) bad_value(line_no, key, value);
        cfg.crop = CropRect{parts[0], parts[1], parts[2], parts[3]};
      }
    } else if (key == "height") {
      cfg.height = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "width") {
      cfg.width = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "method") {
      const int m = parse_number<int>(value, line_no, key);
      if (m == 1) {
        cfg.quotient.method = QuotientMethod::kDecomposeLevel1;
      } else if (m == 2) {
        cfg.quotient.method = QuotientMethod::kReconstructLevel2;
      } else {
        bad_value(line_no, key, value);
      }
    } else if (key == "epsilon_rel") {
      cfg.quotient.epsilon_rel = parse_number<double>(value, line_no, key);
    } else if (key == "k_max") {
      cfg.pca.k_max = parse_number<std::size_t>(value, line_no, key);
    } else if (key == "rank_tolerance") {
      cfg.pca.rank_tolerance = parse_number<double>(value, line_no, key);
    } else if (key == "hidden") {
      cfg.hidden_layers = parse_size_list(value, line_no, key);
    } else if (key == "learning_rate") {
      cfg.train.learning_rate = parse_number<double>(value, line_no, key);
    } else if (key == "momentum") {
      cfg.train.momentum = parse_number<double>(value, line_no, key);
    } else if (key == "max_epochs") {
      cfg.train.max_epochs = parse_number<int>(value, line_no, key);
    } else if (key == "target_mse") {
      cfg.train.target_mse = parse_number<double>(value, line_no, key);
    } else if (key == "seed") {
      cfg.train.seed = parse_number<std::uint64_t>(value, line_no, key);
    } else if (key == "shuffle") {
      cfg.train.shuffle = parse_bool(value, line_no, key);
    } else if (key == "fusion") {
      if (value == "none") {
        cfg.fusion = FusionVariant::kNone;
      } else if (value == "select") {
        cfg.fusion = FusionVariant::kSelect;
      } else if (value == "sum") {
        cfg.fusion = FusionVariant::kSum;
      } else {
        bad_value(line_no, key, value);
      }
    } else {
      throw Error(ErrorCode::kParseError,
                  "config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const PipelineConfig& c) {
  std::ostringstream out;
  if (c.crop) {
    out << "crop=" << c.crop->top << ',' << c.crop->left << ',' << c.crop->height << ','
        << c.crop->width << '\n';
  } else {
    out << "crop=none\n";
  }
  out << "height=" << c.height << '\n'
      << "width=" << c.width << '\n'
      << "method=" << static_cast<int>(c.quotient.method) << '\n'
      << "epsilon_rel=" << format_double(c.quotient.epsilon_rel) << '\n'
      << "k_max=" << c.pca.k_max << '\n'
      << "rank_tolerance=" << format_double(c.pca.rank_tolerance) << '\n'
      << "hidden=";
  for (std::size_t i = 0; i < c.hidden_layers.size(); ++i) {
    out << (i ? "," : "") << c.hidden_layers[i];
  }
  out << '\n'
      << "learning_rate=" << format_double(c.train.learning_rate) << '\n'
      << "momentum=" << format_double(c.train.momentum) << '\n'
      << "max_epochs=" << c.train.max_epochs << '\n'
      << "target_mse=" << format_double(c.train.target_mse) << '\n'
      << "seed=" << c.train.seed << '\n'
      << "shuffle=" << (c.train.shuffle ? "true" : "false") << '\n'
      << "fusion=" << to_string(c.fusion) << '\n';
  return out.str();
}

void apply_env_overrides(PipelineConfig& config) {
  if (const char* seed = std::getenv("QF_SEED"); seed && *seed) {
    const std::string value = seed;
    config.train.seed = parse_number<std::uint64_t>(value, 0, "QF_SEED");
  }
}

}  // namespace qf
