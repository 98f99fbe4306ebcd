#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qf {

/// round-half-away-from-zero(100 * recognized / tested), computed in
/// integer arithmetic. Throws for tested == 0 or recognized > tested.
int recognition_rate(std::size_t tested, std::size_t recognized);

struct ClassResult {
  std::size_t class_id = 0;
  std::size_t tested = 0;
  std::size_t recognized = 0;
  int rate_percent = 0;

  friend bool operator==(const ClassResult&, const ClassResult&) = default;
};

struct RecognitionReport {
  std::vector<ClassResult> classes;  ///< ascending class_id
  std::map<std::size_t, std::string> class_names;

  std::size_t total_tested() const;
  std::size_t total_recognized() const;
  /// Unweighted mean of the per-class integer rates, rounded half away
  /// from zero. This is the headline average.
  int average_rate_percent() const;
  double unweighted_mean_percent() const;
  /// 100 * sum(recognized) / sum(tested).
  double pooled_rate_percent() const;

  friend bool operator==(const RecognitionReport&, const RecognitionReport&) = default;
};

/// Builds a report from (tested, recognized) counts keyed by class id.
/// Throws kValidation when there are no counts.
RecognitionReport make_report(
    const std::map<std::size_t, std::pair<std::size_t, std::size_t>>& counts);

enum class ReportFormat { kText, kCsv };

std::string format_report(const RecognitionReport& report, ReportFormat format);
void emit_report(const RecognitionReport& report, ReportFormat format,
                 const std::filesystem::path& path);

}  // namespace qf
