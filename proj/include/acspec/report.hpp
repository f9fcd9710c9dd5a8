#ifndef ACSPEC_REPORT_HPP
#define ACSPEC_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "acspec/formulas.hpp"
#include "acspec/spectrum.hpp"

namespace acspec {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportEntry {
  std::string groupoid;
  std::string kind;  // "ac" | "assoc"
  int n = 0;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> expected;
  std::string verdict;  // "match" | "mismatch" | "no-formula"
  double millis = 0.0;

  bool operator==(const ReportEntry& rhs) const = default;
};

struct ReportDocument {
  std::string version = kToolVersion;
  std::string command;
  std::vector<ReportEntry> entries;

  bool all_match() const;
  bool operator==(const ReportDocument& rhs) const = default;
};

std::string emit_json(const ReportDocument& doc);
std::string emit_csv(const ReportDocument& doc);
std::string emit_text(const ReportDocument& doc);
ReportDocument parse_json_report(const std::string& text);

/// Expected value from the known closed forms where one exists; modular
/// Catalan and k-depth columns fall back to the depth-equivalence engine,
/// an independent computation path. nullopt = no cross-check available.
std::optional<BigCount> expected_count(const std::string& catalog_id, SpectrumKind kind, int n,
                                       int jobs = 1);

ReportEntry make_report_entry(const std::string& groupoid_label,
                              const std::optional<std::string>& catalog_id, SpectrumKind kind,
                              const SpectrumEntry& computed, int jobs = 1);

}  // namespace acspec

#endif
