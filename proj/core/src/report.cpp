#include "cubenorm/report.hpp"

#include "cubenorm/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace cubenorm {

double value_as_double(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    return *d;
  }
  return to_double(std::get<BigRational>(v));
}

std::string value_string(const Value& v) {
  if (const auto* q = std::get_if<BigRational>(&v)) {
    return rational_string(*q);
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), std::get<double>(v));
  return std::string(buf, res.ptr);
}

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::le: return "<=";
    case Relation::lt: return "<";
    case Relation::ge: return ">=";
    case Relation::gt: return ">";
    case Relation::eq: return "==";
    case Relation::approx: return "~=";
  }
  return "?";
}

Relation parse_relation(const std::string& s) {
  for (Relation r : {Relation::le, Relation::lt, Relation::ge, Relation::gt, Relation::eq, Relation::approx}) {
    if (s == relation_symbol(r)) {
      return r;
    }
  }
  throw DomainError("unknown relation symbol: " + s);
}

bool holds(double lhs, Relation rel, double rhs, double slack) {
  if (std::isnan(lhs) || std::isnan(rhs)) {
    return false;
  }
  const double pad = slack == 0.0 ? 0.0 : slack * std::abs(rhs);
  switch (rel) {
    case Relation::le: return lhs <= rhs + pad;
    case Relation::lt: return lhs < rhs + pad;
    case Relation::ge: return lhs >= rhs - pad;
    case Relation::gt: return lhs > rhs - pad;
    case Relation::eq:
    case Relation::approx: return std::abs(lhs - rhs) <= pad;
  }
  return false;
}

bool holds(const BigRational& lhs, Relation rel, const BigRational& rhs) {
  const int c = cmp(lhs, rhs);
  switch (rel) {
    case Relation::le: return c <= 0;
    case Relation::lt: return c < 0;
    case Relation::ge: return c >= 0;
    case Relation::gt: return c > 0;
    case Relation::eq:
    case Relation::approx: return c == 0;
  }
  return false;
}

bool BoundReport::overall() const { return hard_failures() == 0; }

std::size_t BoundReport::hard_failures() const {
  if (!applicable) {
    return 0;
  }
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) {
    return c.severity == Severity::hard && !c.passed;
  }));
}

void BoundReport::add(std::string name, Value lhs, Relation rel, Value rhs, bool passed, std::string anchor,
                      Severity severity) {
  checks.push_back(Check{std::move(name), std::move(lhs), rel, std::move(rhs), passed, severity, std::move(anchor)});
}

void BoundReport::add_float(std::string name, double lhs, Relation rel, double rhs, std::string anchor,
                            double slack, Severity severity) {
  const bool ok = holds(lhs, rel, rhs, slack);
  add(std::move(name), lhs, rel, rhs, ok, std::move(anchor), severity);
}

void BoundReport::add_exact(std::string name, const BigRational& lhs, Relation rel, const BigRational& rhs,
                            std::string anchor, Severity severity) {
  const bool ok = holds(lhs, rel, rhs);
  add(std::move(name), lhs, rel, rhs, ok, std::move(anchor), severity);
}

void BoundReport::append(const BoundReport& other, const std::string& prefix) {
  for (const Check& c : other.checks) {
    Check copy = c;
    copy.name = prefix + c.name;
    if (!other.applicable) {
      copy.severity = Severity::soft;
    }
    checks.push_back(std::move(copy));
  }
}

}  // namespace cubenorm
