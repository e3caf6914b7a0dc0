#include "ldolc/io.hpp"

#include <sstream>

#include "ldolc/errors.hpp"

namespace ldolc::io {

Rational rational_from_json(const json& node) {
  if (node.is_string()) return parse_rational(node.get<std::string>());
  if (node.is_number_integer()) return parse_rational(node.dump());
  throw ParseError("expected a rational string or integer, got " + node.dump());
}

TailedSequence sequence_from_json(const json& node) {
  if (!node.is_object()) throw ParseError("sequence must be an object");
  std::vector<Rational> prefix;
  if (node.contains("prefix")) {
    if (!node["prefix"].is_array()) throw ParseError("sequence prefix must be an array");
    for (const auto& v : node["prefix"]) prefix.push_back(rational_from_json(v));
  }
  Tail tail = ZeroTail{};
  if (node.contains("tail")) {
    const json& t = node["tail"];
    const std::string kind = t.is_object() && t.contains("kind") && t["kind"].is_string()
                                 ? t["kind"].get<std::string>()
                                 : "";
    if (kind == "geometric") {
      if (!t.contains("first") || !t.contains("ratio")) {
        throw ParseError("geometric tail needs first and ratio");
      }
      tail = GeometricTail{rational_from_json(t["first"]), rational_from_json(t["ratio"])};
    } else if (kind != "zero") {
      throw ParseError("tail kind must be \"zero\" or \"geometric\"");
    }
  }
  try {
    return TailedSequence(std::move(prefix), std::move(tail));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

ProblemDocument parse_problem_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("problem document must be a JSON object");
  for (const char* key : {"b", "p", "c", "a"}) {
    if (!root.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  }
  ProblemDocument doc{Problem{rational_from_json(root["b"]), sequence_from_json(root["p"]),
                              sequence_from_json(root["c"]), sequence_from_json(root["a"])},
                      {}};
  if (root.contains("defaults")) {
    const json& d = root["defaults"];
    if (!d.is_object()) throw ParseError("defaults must be an object");
    if (d.contains("x0")) doc.defaults.x0 = rational_from_json(d["x0"]);
    if (d.contains("eps")) doc.defaults.eps = rational_from_json(d["eps"]);
    if (d.contains("horizon")) {
      if (!d["horizon"].is_number_unsigned()) throw ParseError("horizon must be a nonnegative integer");
      doc.defaults.horizon = d["horizon"].get<std::size_t>();
    }
    if (d.contains("relaxed_validation")) {
      if (!d["relaxed_validation"].is_boolean()) throw ParseError("relaxed_validation must be boolean");
      doc.defaults.relaxed_validation = d["relaxed_validation"].get<bool>();
    }
  }
  return doc;
}

json to_json(const TailedSequence& sequence) {
  json prefix = json::array();
  for (const auto& v : sequence.prefix()) prefix.push_back(to_string(v));
  json tail = {{"kind", "zero"}};
  if (const auto* g = std::get_if<GeometricTail>(&sequence.tail())) {
    tail = {{"kind", "geometric"}, {"first", to_string(g->first)}, {"ratio", to_string(g->ratio)}};
  }
  return {{"prefix", prefix}, {"tail", tail}};
}

json to_json(const Problem& problem) {
  return {{"b", to_string(problem.b)},
          {"p", to_json(problem.p)},
          {"c", to_json(problem.c)},
          {"a", to_json(problem.a)}};
}

json to_json(const ProblemDocument& document) {
  json out = to_json(document.problem);
  json defaults = json::object();
  if (document.defaults.x0) defaults["x0"] = to_string(*document.defaults.x0);
  if (document.defaults.eps) defaults["eps"] = to_string(*document.defaults.eps);
  if (document.defaults.horizon) defaults["horizon"] = *document.defaults.horizon;
  if (document.defaults.relaxed_validation) defaults["relaxed_validation"] = true;
  if (!defaults.empty()) out["defaults"] = defaults;
  return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::ostringstream out;
  out << "t,x\n";
  for (std::size_t i = 0; i < trajectory.head().size(); ++i) {
    out << trajectory.start() + i << ',' << to_string(trajectory.head()[i]) << '\n';
  }
  return out.str();
}

Trajectory parse_trajectory_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x", 0) != 0) {
    throw ParseError("trajectory CSV must start with header t,x");
  }
  std::optional<std::size_t> start;
  std::vector<Rational> head;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("trajectory row without comma: " + line);
    std::size_t t = 0;
    try {
      std::size_t used = 0;
      t = std::stoul(line.substr(0, comma), &used);
      if (used != comma) throw ParseError("bad period");
    } catch (const std::exception&) {
      throw ParseError("bad period in trajectory row: " + line);
    }
    if (!start) start = t;
    if (t != *start + head.size()) throw ParseError("trajectory periods must be consecutive");
    head.push_back(parse_rational(std::string_view(line).substr(comma + 1)));
  }
  if (!start) throw ParseError("trajectory CSV has no rows");
  return Trajectory(*start, std::move(head));
}

std::string value_table_csv(const ValueTable& table) {
  std::ostringstream out;
  out << "t,x,V\n";
  for (std::size_t t = table.start; t <= table.horizon + 1; ++t) {
    for (const auto& point : table.at(t).breakpoints()) {
      out << t << ',' << to_string(point.x) << ',' << to_string(point.value) << '\n';
    }
  }
  return out.str();
}

json to_json(const Trajectory& trajectory) {
  json head = json::array();
  for (const auto& v : trajectory.head()) head.push_back(to_string(v));
  return {{"start", trajectory.start()}, {"head", head}};
}

json to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json item = {{"what", v.what}};
    item["index"] = v.index ? json(*v.index) : json(nullptr);
    violations.push_back(item);
  }
  return {{"ok", report.ok()}, {"violations", violations}};
}

namespace {
json optional_index(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }
}  // namespace

json to_json(const ProblemClass& cls) {
  json two_phase = nullptr;
  if (cls.two_phase) two_phase = {{"t_plus", cls.two_phase->t_plus}, {"t_minus", cls.two_phase->t_minus}};
  return {{"strictly_alternating", cls.strictly_alternating},
          {"eventually_conclusive", optional_index(cls.eventually_conclusive)},
          {"strongly_eventually_conclusive", optional_index(cls.strongly_eventually_conclusive)},
          {"two_phase", two_phase},
          {"positivity_margin", cls.positivity_margin}};
}

json to_json(const std::vector<PeriodCertificate>& certificates) {
  json out = json::array();
  for (const auto& c : certificates) {
    out.push_back({{"t", c.t},
                   {"lambda", to_string(c.lambda)},
                   {"mu", to_string(c.mu)},
                   {"gamma", to_string(c.gamma)}});
  }
  return out;
}

json to_json(const CertificateReport& report) {
  json periods = json::array();
  for (const auto& p : report.periods) {
    periods.push_back({{"t", p.t},
                       {"nonnegative", p.nonnegative},
                       {"primal_feasible", p.primal_feasible},
                       {"slack_previous", p.slack_previous},
                       {"slack_next", p.slack_next},
                       {"slack_box", p.slack_box},
                       {"stationarity", p.stationarity},
                       {"value_equality", p.value_equality},
                       {"idle_upper", p.idle_upper},
                       {"reduced", p.reduced},
                       {"transversality_term", to_string(p.transversality_term)}});
  }
  return {{"ok", report.ok()},
          {"coverage", report.coverage},
          {"transversality", report.transversality},
          {"first_failure", report.first_failure ? json(*report.first_failure) : json(nullptr)},
          {"periods", periods}};
}

json to_json(const ViolationReport& report) {
  json out = json::array();
  for (const auto& v : report.violations) {
    out.push_back({{"t", v.t},
                   {"a_sign", v.a_sign},
                   {"p_sign", v.p_sign},
                   {"expected", to_string(v.expected)},
                   {"actual", to_string(v.actual)}});
  }
  return out;
}

json to_json(const OracleResult& result) {
  return {{"best_value", to_string(result.best_value)},
          {"best_trajectory", to_json(result.best_trajectory)},
          {"enumerated_count", result.enumerated_count.get_str()}};
}

json to_json(const RuleResult& result) {
  return {{"rule", result.rule},
          {"variant", result.variant},
          {"value", to_string(result.value)},
          {"head_value", to_string(result.head_value)},
          {"truncation_bound", to_string(result.truncation_bound)},
          {"trajectory", to_json(result.trajectory)}};
}

}  // namespace ldolc::io
