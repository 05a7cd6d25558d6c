#pragma once

// Randomized and golden verification suites, one per family of results:
// holder, hy, young, sets, sinc, embeddings, uncertainty, bv.

#include <string>
#include <vector>

#include <json.hpp>

#include "mustar/config.hpp"
#include "mustar/inequalities.hpp"

namespace mustar {

struct SuiteResult {
    std::string name;
    std::uint64_t seed = 0;
    std::string config_digest;
    std::vector<InequalityReport> reports;
    int pass = 0;
    int fail = 0;
    int inconclusive = 0;
    double worst_relative_slack = std::numeric_limits<double>::infinity();
    nlohmann::json extra;  // suite-specific tables (sinc constants, constants...)

    void add(InequalityReport rep);
    nlohmann::json to_json(bool include_cases = true) const;
};

std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

// "all": every suite in a fixed order.
std::vector<SuiteResult> run_suites(const std::string& name, const RunConfig& cfg);

nlohmann::json suites_to_json(const std::vector<SuiteResult>& results, const RunConfig& cfg,
                              bool include_cases = true);

}  // namespace mustar
