#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ldolc/analytic_rules.hpp"
#include "ldolc/certificates.hpp"
#include "ldolc/oracle.hpp"
#include "ldolc/problem.hpp"
#include "ldolc/trajectory.hpp"
#include "ldolc/value_dp.hpp"

namespace ldolc::io {

using nlohmann::json;

/// Optional per-file run settings stored under "defaults".
struct RunDefaults {
  std::optional<Rational> x0;
  std::optional<Rational> eps;
  std::optional<std::size_t> horizon;
  bool relaxed_validation = false;
};

struct ProblemDocument {
  Problem problem;
  RunDefaults defaults;
};

/// {"b": "...", "p": {"prefix": [...], "tail": {"kind": "zero"} |
///  {"kind": "geometric", "first": "...", "ratio": "..."}}, "c": {...}, "a": {...}}
/// Rationals are strings ("num/den" or decimal) or JSON integers.
/// Throws ParseError.
ProblemDocument parse_problem_document(std::string_view text);

json to_json(const TailedSequence& sequence);
json to_json(const Problem& problem);
json to_json(const ProblemDocument& document);
TailedSequence sequence_from_json(const json& node);
Rational rational_from_json(const json& node);

/// Header `t,x`, one row per head period.
std::string trajectory_csv(const Trajectory& trajectory);
Trajectory parse_trajectory_csv(std::string_view text);

/// Header `t,x,V`, one row per breakpoint of each V^t (terminal included).
std::string value_table_csv(const ValueTable& table);

json to_json(const Trajectory& trajectory);
json to_json(const ValidationReport& report);
json to_json(const ProblemClass& cls);
json to_json(const std::vector<PeriodCertificate>& certificates);
json to_json(const CertificateReport& report);
json to_json(const ViolationReport& report);
json to_json(const OracleResult& result);
json to_json(const RuleResult& result);

}  // namespace ldolc::io
