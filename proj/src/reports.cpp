#include "coocfeat/reports.hpp"

#include "json.hpp"
#include "util.hpp"

namespace coocfeat {

using ordered_json = nlohmann::ordered_json;

std::string to_json(const FeatureScoreReport& report) {
  ordered_json doc;
  doc["task"] = report.task;
  doc["method"] = std::string(to_string(report.method));
  auto entries = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json row;
    row["feature"] = e.feature;
    row["score"] = e.score;
    row["method"] = std::string(to_string(e.method));
    row["degenerate"] = e.degenerate;
    row["exact"] = e.exact ? ordered_json(*e.exact) : ordered_json(nullptr);
    entries.push_back(std::move(row));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

std::string to_tsv(const FeatureScoreReport& report) {
  std::string out = "feature\tscore\tmethod\tdegenerate\texact\n";
  for (const auto& e : report.entries) {
    out += e.feature + '\t' + format_double(e.score) + '\t' + std::string(to_string(e.method)) + '\t' +
           (e.degenerate ? "1" : "0") + '\t' + e.exact.value_or("") + '\n';
  }
  return out;
}

std::string to_json(const DecompositionReport& r, const std::string& bound_exact) {
  ordered_json doc;
  doc["total"] = r.total;
  doc["fit_part"] = r.fit_part;
  doc["bound_part"] = r.bound_part;
  doc["feature"] = r.feature;
  doc["function"] = r.function;
  doc["task"] = r.task;
  doc["residual"] = r.residual();
  doc["identity_ok"] = r.identity_ok();
  doc["bound_exact"] = bound_exact.empty() ? ordered_json(nullptr) : ordered_json(bound_exact);
  return doc.dump(2) + "\n";
}

std::string to_tsv(const DecompositionReport& r, const std::string& bound_exact) {
  return "total\tfit_part\tbound_part\tfeature\tfunction\ttask\tresidual\tidentity_ok\tbound_exact\n" +
         format_double(r.total) + '\t' + format_double(r.fit_part) + '\t' + format_double(r.bound_part) + '\t' +
         r.feature + '\t' + r.function + '\t' + r.task + '\t' + format_double(r.residual()) + '\t' +
         (r.identity_ok() ? "1" : "0") + '\t' + bound_exact + '\n';
}

std::string to_json(const Theorem3Report& r) {
  ordered_json doc;
  doc["label_side"] = r.label_side;
  doc["profile_side"] = r.profile_side;
  doc["product"] = r.product;
  return doc.dump(2) + "\n";
}

std::string to_json(const SelectionResult& result) {
  ordered_json doc;
  doc["task"] = result.task;
  doc["budget"] = result.budget;
  auto names = ordered_json::array();
  auto trace = ordered_json::array();
  auto exact = ordered_json::array();
  for (const auto& s : result.steps) {
    names.push_back(s.name);
    trace.push_back(s.bound);
    exact.push_back(s.exact ? ordered_json(*s.exact) : ordered_json(nullptr));
  }
  doc["selected"] = std::move(names);
  doc["trace"] = std::move(trace);
  doc["trace_exact"] = std::move(exact);
  return doc.dump(2) + "\n";
}

std::string to_tsv(const SelectionResult& result) {
  std::string out = "step\tfeature\tbound\texact\n";
  for (std::size_t i = 0; i < result.steps.size(); ++i) {
    const auto& s = result.steps[i];
    out += std::to_string(i + 1) + '\t' + s.name + '\t' + format_double(s.bound) + '\t' + s.exact.value_or("") + '\n';
  }
  return out;
}

std::string to_json(const SuiteReport& report) {
  ordered_json doc;
  doc["suite"] = report.suite;
  doc["seed"] = report.seed;
  doc["instances"] = report.instances;
  doc["skipped"] = report.skipped;
  doc["passed"] = report.passed();
  auto checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json row;
    row["name"] = c.name;
    row["max_residual"] = c.max_residual;
    row["tolerance"] = c.tolerance;
    row["checked"] = c.checked;
    row["failures"] = c.failures;
    row["failing_seed"] = c.failing_seed ? ordered_json(*c.failing_seed) : ordered_json(nullptr);
    row["failing_instance"] = c.failing_instance ? ordered_json(*c.failing_instance) : ordered_json(nullptr);
    checks.push_back(std::move(row));
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2) + "\n";
}

std::string to_tsv(const SuiteReport& report) {
  std::string out = "identity\tmax_residual\ttolerance\tchecked\tstatus\treproduce\n";
  for (const auto& c : report.checks) {
    std::string reproduce;
    if (c.failing_seed) {
      reproduce = "instance=" + std::to_string(*c.failing_instance) + " seed=" + std::to_string(*c.failing_seed);
    }
    out += c.name + '\t' + format_double(c.max_residual) + '\t' + format_double(c.tolerance) + '\t' +
           std::to_string(c.checked) + '\t' + (c.passed() ? "PASS" : "FAIL") + '\t' + reproduce + '\n';
  }
  return out;
}

}  // namespace coocfeat
