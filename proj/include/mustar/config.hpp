#pragma once

// Run configuration shared by the CLI and the suites; parseable from a flat
// key = value file.  The seed and a config digest are embedded in every
// report for reproducibility.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "mustar/grid.hpp"
#include "mustar/norms.hpp"

namespace mustar {

struct RunConfig {
    double window_T = 8.0;            // x window is [-T, T]
    std::size_t grid_points = 4096;
    LogGrid xlog{1e-3, 1e3, 200};
    double tol_rel = 1e-6;
    double tol_quad = 1e-4;
    int dict_dilations = 5;
    int dict_translations = 9;
    int dict_modulations = 17;
    int depth = 18;                   // self-similar recursion depth K
    std::uint64_t seed = 7;
    std::size_t cases = 100;
    int uncertainty_N = 256;
    std::string out_dir;              // env MUSTAR_OUT_DIR overrides
    AdaptiveOptions adaptive;
    std::size_t remainder_points_per_decade = 200;
    double remainder_linear_cap = 0.2;

    static RunConfig from_file(const std::string& path);
    void apply_line(const std::string& line, std::size_t lineno);

    Dictionary dictionary() const;
    std::string canonical() const;
    std::string digest() const;
    nlohmann::json to_json() const;
};

}  // namespace mustar
