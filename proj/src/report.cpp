#include "qf/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

int recognition_rate(std::size_t tested, std::size_t recognized) {
  if (tested == 0) {
    throw Error(ErrorCode::kInvalidArgument, "recognition rate of zero tested images");
  }
  if (recognized > tested) {
    throw Error(ErrorCode::kInvalidArgument, "recognized exceeds tested");
  }
  // floor(100 r / t + 1/2) for non-negative operands.
  return static_cast<int>((200 * recognized + tested) / (2 * tested));
}

std::size_t RecognitionReport::total_tested() const {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.tested;
  return n;
}

std::size_t RecognitionReport::total_recognized() const {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.recognized;
  return n;
}

int RecognitionReport::average_rate_percent() const {
  if (classes.empty()) return 0;
  long sum = 0;
  for (const auto& c : classes) sum += c.rate_percent;
  const auto m = static_cast<long>(classes.size());
  return static_cast<int>((2 * sum + m) / (2 * m));
}

double RecognitionReport::unweighted_mean_percent() const {
  if (classes.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& c : classes) sum += c.rate_percent;
  return sum / static_cast<double>(classes.size());
}

double RecognitionReport::pooled_rate_percent() const {
  const std::size_t t = total_tested();
  return t == 0 ? 0.0 : 100.0 * static_cast<double>(total_recognized()) / static_cast<double>(t);
}

RecognitionReport make_report(
    const std::map<std::size_t, std::pair<std::size_t, std::size_t>>& counts) {
  if (counts.empty()) {
    throw Error(ErrorCode::kValidation, "report has no tested classes");
  }
  RecognitionReport report;
  for (const auto& [id, tr] : counts) {
    report.classes.push_back(
        ClassResult{id, tr.first, tr.second, recognition_rate(tr.first, tr.second)});
  }
  return report;
}

std::string format_report(const RecognitionReport& report, ReportFormat format) {
  if (report.classes.empty()) {
    throw Error(ErrorCode::kValidation, "refusing to format an empty report");
  }
  std::ostringstream out;
  if (format == ReportFormat::kCsv) {
    out << "class,tested,recognized,rate_percent\n";
    for (const auto& c : report.classes) {
      out << c.class_id << ',' << c.tested << ',' << c.recognized << ',' << c.rate_percent
          << '\n';
    }
    out << "average," << report.total_tested() << ',' << report.total_recognized() << ','
        << report.average_rate_percent() << '\n';
    return out.str();
  }

  char line[160];
  std::snprintf(line, sizeof line, "%-16s %8s %11s %6s\n", "Class", "Tested", "Recognized",
                "Rate");
  out << line;
  for (const auto& c : report.classes) {
    std::string label = "Class " + std::to_string(c.class_id);
    if (auto it = report.class_names.find(c.class_id); it != report.class_names.end()) {
      label = it->second;
    }
    std::snprintf(line, sizeof line, "%-16.16s %8zu %11zu %5d%%\n", label.c_str(), c.tested,
                  c.recognized, c.rate_percent);
    out << line;
  }
  std::snprintf(line, sizeof line, "%-16s %8zu %11zu %5d%%\n", "Average",
                report.total_tested(), report.total_recognized(),
                report.average_rate_percent());
  out << line;
  std::snprintf(line, sizeof line, "(pooled over all test images: %.2f%%)\n",
                report.pooled_rate_percent());
  out << line;
  return out.str();
}

void emit_report(const RecognitionReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
  const std::string text = format_report(report, format);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kWriteFailed, path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kWriteFailed, path.string() + ": write failed");
}

}  // namespace qf
