#pragma once

#include "vopt/report_json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vopt {

struct CatalogProblem {
    std::string name;
    std::string vp_text;
};

/// The bundled example set (same content as the data/*.vp files).
const std::vector<CatalogProblem>& catalog_problems();
const CatalogProblem& catalog_problem(const std::string& name);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
};

struct CatalogResult {
    std::vector<CriterionResult> criteria;
    Json report;
    bool all_passed = false;
};

/// Runs the full catalog twice (the second run backs the determinism
/// criterion) and evaluates every acceptance expectation.
CatalogResult run_catalog(std::uint64_t seed);

} // namespace vopt
