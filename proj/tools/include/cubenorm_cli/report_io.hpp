#pragma once

// JSON and CSV serialization of reports. Exact quantities travel as "p/q"
// strings; floats as JSON numbers, or as the strings "inf", "-inf", "nan"
// when not finite.

#include "cubenorm/bounds.hpp"
#include "cubenorm/report.hpp"
#include "cubenorm/sphere_forms.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cubenorm::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

struct ReportDocument {
  std::string schema_version = kSchemaVersion;
  std::string command;
  Json config = Json::object();
  Json results = Json::object();
  /// Distinct check anchors appearing in the results, in first-seen order.
  std::vector<std::string> provenance;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

Json value_to_json(const Value& v);
Value value_from_json(const Json& j);

Json report_to_json(const BoundReport& r);
BoundReport report_from_json(const Json& j);

Json record_to_json(const ConjectureRecord& r);
ConjectureRecord record_from_json(const Json& j);

Json row_to_json(const SphereTableRow& row);
SphereTableRow row_from_json(const Json& j);

Json document_to_json(const ReportDocument& doc);
ReportDocument document_from_json(const Json& j);
std::string dump_document(const ReportDocument& doc);
ReportDocument parse_document(const std::string& text);

/// Collects anchors of every check in the reports, deduplicated.
std::vector<std::string> collect_anchors(const std::vector<BoundReport>& reports);

/// RFC 4180: fields with comma, quote, CR or LF are quoted, quotes doubled;
/// records end in CRLF.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

std::string reports_to_csv(const std::vector<BoundReport>& reports);
std::string records_to_csv(const std::vector<ConjectureRecord>& records);

/// Shortest round-trip decimal.
std::string format_double(double v);

}  // namespace cubenorm::cli
