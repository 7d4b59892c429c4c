#pragma once

#include "cubenorm/exact.hpp"

#include <string>
#include <variant>
#include <vector>

namespace cubenorm {

/// Either an exact rational or a diagnostic float.
using Value = std::variant<double, BigRational>;

double value_as_double(const Value& v);
std::string value_string(const Value& v);

enum class Relation { le, lt, ge, gt, eq, approx };
enum class Severity { hard, soft };

const char* relation_symbol(Relation r);
Relation parse_relation(const std::string& s);

struct Check {
  std::string name;
  Value lhs;
  Relation relation = Relation::le;
  Value rhs;
  bool passed = false;
  Severity severity = Severity::hard;
  /// Short tag naming the inequality or identity being instantiated.
  std::string anchor;
};

/// A set of inequality instances about one subject. overall is the conjunction
/// of hard checks; soft checks are recorded but never flip it. A report whose
/// precondition does not hold is marked not applicable and passes vacuously.
struct BoundReport {
  std::string subject;
  std::vector<Check> checks;
  bool applicable = true;
  std::string note;

  bool overall() const;
  std::size_t hard_failures() const;

  void add(std::string name, Value lhs, Relation rel, Value rhs, bool passed, std::string anchor,
           Severity severity = Severity::hard);
  /// Float comparison lhs REL rhs with multiplicative slack on the right side.
  void add_float(std::string name, double lhs, Relation rel, double rhs, std::string anchor,
                 double slack = 0.0, Severity severity = Severity::hard);
  /// Exact comparison of two rationals.
  void add_exact(std::string name, const BigRational& lhs, Relation rel, const BigRational& rhs,
                 std::string anchor, Severity severity = Severity::hard);
  void append(const BoundReport& other, const std::string& prefix);
};

bool holds(double lhs, Relation rel, double rhs, double slack);
bool holds(const BigRational& lhs, Relation rel, const BigRational& rhs);

}  // namespace cubenorm
