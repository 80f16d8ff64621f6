#pragma once

// JSON and TSV renderings of the report types. JSON key order is fixed;
// TSV is a header row plus data rows, LF terminated.

#include <string>

#include "coocfeat/select.hpp"
#include "coocfeat/theorems.hpp"
#include "coocfeat/verify.hpp"

namespace coocfeat {

std::string to_json(const FeatureScoreReport& report);
std::string to_tsv(const FeatureScoreReport& report);

// `bound_exact` is the bound as a reduced fraction when counts permit.
std::string to_json(const DecompositionReport& report, const std::string& bound_exact = "");
std::string to_tsv(const DecompositionReport& report, const std::string& bound_exact = "");

std::string to_json(const Theorem3Report& report);

std::string to_json(const SelectionResult& result);
std::string to_tsv(const SelectionResult& result);

std::string to_json(const SuiteReport& report);
std::string to_tsv(const SuiteReport& report);

}  // namespace coocfeat
