#pragma once

// Machine-readable suite reports. Formats are documented in docs/report.md.

#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

#include "cfinsler/harness/suite.hpp"

namespace cfinsler {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Json, Csv };

/// Throws ConfigError for anything other than "json" or "csv".
ReportFormat parse_report_format(const std::string& name);

nlohmann::json report_to_json(const SuiteReport& report);
std::map<std::string, Aggregate> aggregates_from_json(const nlohmann::json& j);

/// The 8 fixed columns followed by one column per selected criterion.
std::vector<std::string> csv_columns(const SuiteReport& report);

void write_json(const SuiteReport& report, std::ostream& os);
void write_csv(const SuiteReport& report, std::ostream& os);

/// destination "" or "-" is standard output. IoError when the file cannot be written.
void emit_report(const SuiteReport& report, ReportFormat format, const std::string& destination);

}  // namespace cfinsler
