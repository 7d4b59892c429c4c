#include "cubenorm_cli/report_io.hpp"

#include "cubenorm/errors.hpp"

#include <charconv>
#include <cmath>
#include <unordered_set>

namespace cubenorm::cli {

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

Json double_to_json(double v) {
  if (std::isfinite(v)) {
    return v;
  }
  return format_double(v);
}

double double_from_json(const Json& j) {
  if (j.is_number()) {
    return j.get<double>();
  }
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  throw DomainError("not a float: " + s);
}

const char* severity_name(Severity s) { return s == Severity::hard ? "hard" : "soft"; }

Severity parse_severity(const std::string& s) {
  if (s == "hard") return Severity::hard;
  if (s == "soft") return Severity::soft;
  throw DomainError("unknown severity: " + s);
}

}  // namespace

Json value_to_json(const Value& v) {
  if (const auto* q = std::get_if<BigRational>(&v)) {
    return rational_string(*q);
  }
  return double_to_json(std::get<double>(v));
}

Value value_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.find('/') != std::string::npos) {
      return parse_rational(s);
    }
  }
  return double_from_json(j);
}

Json report_to_json(const BoundReport& r) {
  Json checks = Json::array();
  for (const Check& c : r.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"lhs", value_to_json(c.lhs)},
                          {"relation", relation_symbol(c.relation)},
                          {"rhs", value_to_json(c.rhs)},
                          {"passed", c.passed},
                          {"severity", severity_name(c.severity)},
                          {"anchor", c.anchor}});
  }
  return Json{{"subject", r.subject},
              {"applicable", r.applicable},
              {"overall", r.overall()},
              {"note", r.note},
              {"checks", std::move(checks)}};
}

BoundReport report_from_json(const Json& j) {
  BoundReport r;
  r.subject = j.at("subject").get<std::string>();
  r.applicable = j.at("applicable").get<bool>();
  r.note = j.at("note").get<std::string>();
  for (const Json& c : j.at("checks")) {
    r.checks.push_back(Check{c.at("name").get<std::string>(), value_from_json(c.at("lhs")),
                             parse_relation(c.at("relation").get<std::string>()), value_from_json(c.at("rhs")),
                             c.at("passed").get<bool>(), parse_severity(c.at("severity").get<std::string>()),
                             c.at("anchor").get<std::string>()});
  }
  if (j.at("overall").get<bool>() != r.overall()) {
    throw DomainError("report overall flag disagrees with its checks");
  }
  return r;
}

Json record_to_json(const ConjectureRecord& r) {
  Json j{{"n", r.n},
         {"k", r.k},
         {"mu_est", double_to_json(r.mu_est)},
         {"energy_ratio", rational_string(r.energy_ratio)},
         {"gap", double_to_json(r.gap)},
         {"upper_gap", double_to_json(r.upper_gap)},
         {"flag", r.flag}};
  if (r.certificate) {
    Json coords = Json::array();
    for (double v : r.certificate->coords) {
      coords.push_back(double_to_json(v));
    }
    j["certificate"] = std::move(coords);
  }
  return j;
}

ConjectureRecord record_from_json(const Json& j) {
  ConjectureRecord r;
  r.n = j.at("n").get<int>();
  r.k = j.at("k").get<int>();
  r.mu_est = double_from_json(j.at("mu_est"));
  r.energy_ratio = parse_rational(j.at("energy_ratio").get<std::string>());
  r.gap = double_from_json(j.at("gap"));
  r.upper_gap = double_from_json(j.at("upper_gap"));
  r.flag = j.at("flag").get<std::string>();
  if (j.contains("certificate")) {
    std::vector<double> coords;
    for (const Json& v : j.at("certificate")) {
      coords.push_back(double_from_json(v));
    }
    r.certificate = SpectrumVector(SupportSet::sphere(r.n, r.k), std::move(coords));
  }
  return r;
}

Json row_to_json(const SphereTableRow& row) {
  Json j{{"t", row.t}, {"s_t", rational_string(row.s_t)}};
  j["ratio_to_prev"] = row.ratio_to_prev ? Json(rational_string(*row.ratio_to_prev)) : Json(nullptr);
  j["cumulative"] = rational_string(row.cumulative);
  return j;
}

SphereTableRow row_from_json(const Json& j) {
  SphereTableRow row;
  row.t = j.at("t").get<int>();
  row.s_t = parse_rational(j.at("s_t").get<std::string>());
  if (!j.at("ratio_to_prev").is_null()) {
    row.ratio_to_prev = parse_rational(j.at("ratio_to_prev").get<std::string>());
  }
  row.cumulative = parse_rational(j.at("cumulative").get<std::string>());
  return row;
}

Json document_to_json(const ReportDocument& doc) {
  return Json{{"schema_version", doc.schema_version},
              {"command", doc.command},
              {"config", doc.config},
              {"results", doc.results},
              {"provenance", doc.provenance}};
}

ReportDocument document_from_json(const Json& j) {
  ReportDocument doc;
  doc.schema_version = j.at("schema_version").get<std::string>();
  if (doc.schema_version != kSchemaVersion) {
    throw DomainError("unsupported schema_version " + doc.schema_version);
  }
  doc.command = j.at("command").get<std::string>();
  doc.config = j.at("config");
  doc.results = j.at("results");
  doc.provenance = j.at("provenance").get<std::vector<std::string>>();
  return doc;
}

std::string dump_document(const ReportDocument& doc) { return document_to_json(doc).dump(2) + "\n"; }

ReportDocument parse_document(const std::string& text) { return document_from_json(Json::parse(text)); }

std::vector<std::string> collect_anchors(const std::vector<BoundReport>& reports) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const BoundReport& r : reports) {
    for (const Check& c : r.checks) {
      if (!c.anchor.empty() && seen.insert(c.anchor).second) {
        out.push_back(c.anchor);
      }
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string reports_to_csv(const std::vector<BoundReport>& reports) {
  std::string out =
      csv_row({"report", "subject", "applicable", "check", "lhs", "relation", "rhs", "passed", "severity", "anchor"});
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const BoundReport& r = reports[i];
    for (const Check& c : r.checks) {
      out += csv_row({std::to_string(i), r.subject, r.applicable ? "true" : "false", c.name, value_string(c.lhs),
                      relation_symbol(c.relation), value_string(c.rhs), c.passed ? "true" : "false",
                      severity_name(c.severity), c.anchor});
    }
  }
  return out;
}

std::string records_to_csv(const std::vector<ConjectureRecord>& records) {
  std::string out = csv_row({"n", "k", "mu_est", "energy_ratio", "gap", "upper_gap", "flag"});
  for (const ConjectureRecord& r : records) {
    out += csv_row({std::to_string(r.n), std::to_string(r.k), format_double(r.mu_est),
                    rational_string(r.energy_ratio), format_double(r.gap), format_double(r.upper_gap), r.flag});
  }
  return out;
}

}  // namespace cubenorm::cli
