#include "mustar/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mustar/inequalities.hpp"

namespace mustar {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

void RunConfig::apply_line(const std::string& raw, std::size_t lineno) {
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    auto d = [&] { return std::stod(val); };
    auto u = [&] { return static_cast<std::uint64_t>(std::stoull(val)); };
    if (key == "window_T") window_T = d();
    else if (key == "grid_points") grid_points = static_cast<std::size_t>(u());
    else if (key == "xlog_min") xlog.xmin = d();
    else if (key == "xlog_max") xlog.xmax = d();
    else if (key == "xlog_points") xlog.points = static_cast<std::size_t>(u());
    else if (key == "tol_rel") tol_rel = d();
    else if (key == "tol_quad") tol_quad = d();
    else if (key == "dict_dilations") dict_dilations = static_cast<int>(u());
    else if (key == "dict_translations") dict_translations = static_cast<int>(u());
    else if (key == "dict_modulations") dict_modulations = static_cast<int>(u());
    else if (key == "depth_K") depth = static_cast<int>(u());
    else if (key == "seed") seed = u();
    else if (key == "cases") cases = static_cast<std::size_t>(u());
    else if (key == "uncertainty_N") uncertainty_N = static_cast<int>(u());
    else if (key == "out_dir") out_dir = val;
    else if (key == "y_window0") adaptive.window0 = d();
    else if (key == "y_doublings") adaptive.doublings = static_cast<int>(u());
    else if (key == "y_step") adaptive.y_step = d();
    else if (key == "divergence_ratio") adaptive.divergence_ratio = d();
    else if (key == "remainder_points_per_decade") remainder_points_per_decade = static_cast<std::size_t>(u());
    else if (key == "remainder_linear_cap") remainder_linear_cap = d();
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    RunConfig cfg;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) cfg.apply_line(line, ++n);
    return cfg;
}

Dictionary RunConfig::dictionary() const {
    Dictionary dict;
    for (int i = 0; i < dict_dilations; ++i)
        dict.dilations.push_back(std::pow(2.0, i - dict_dilations / 2));
    for (int i = 0; i < dict_translations; ++i)
        dict.translations.push_back(-4.0 + 8.0 * static_cast<double>(i) /
                                               std::max(dict_translations - 1, 1));
    for (int i = 0; i < dict_modulations; ++i)
        dict.modulations.push_back(-4.0 + 8.0 * static_cast<double>(i) /
                                              std::max(dict_modulations - 1, 1));
    return dict;
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os.precision(17);
    os << "cases=" << cases << ";depth_K=" << depth << ";dict=" << dict_dilations << "x"
       << dict_translations << "x" << dict_modulations << ";divergence_ratio="
       << adaptive.divergence_ratio << ";grid_points=" << grid_points
       << ";remainder_cap=" << remainder_linear_cap << ";remainder_ppd="
       << remainder_points_per_decade << ";seed=" << seed << ";tol_quad=" << tol_quad
       << ";tol_rel=" << tol_rel << ";uncertainty_N=" << uncertainty_N << ";window_T=" << window_T
       << ";xlog=" << xlog.xmin << ":" << xlog.xmax << ":" << xlog.points
       << ";y_doublings=" << adaptive.doublings << ";y_step=" << adaptive.y_step
       << ";y_window0=" << adaptive.window0;
    return os.str();
}

std::string RunConfig::digest() const { return mustar::digest(canonical()); }

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["canonical"] = canonical();
    j["digest"] = digest();
    j["seed"] = seed;
    return j;
}

}  // namespace mustar
