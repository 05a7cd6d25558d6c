// mustar: measure norms, Fourier-Stieltjes transforms, and verification
// suites from declarative problem descriptions.
//
// Exit codes: 0 pass, 1 failures present, 2 configuration/parse error,
// 3 numerical-integrity error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mustar/config.hpp"
#include "mustar/measure_spec.hpp"
#include "mustar/reports.hpp"
#include "mustar/suites.hpp"

namespace {

using namespace mustar;

ExponentPair parse_p(const std::string& text) {
    if (text == "inf" || text == "infinity") return ExponentPair::infinity();
    return ExponentPair(std::stod(text));
}

std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    if (const char* dir = std::getenv("MUSTAR_OUT_DIR")) {
        std::string d(dir);
        if (!d.empty() && d.back() != '/') d += '/';
        return d + path;
    }
    return path;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    const std::string resolved = resolve_out(out_path);
    std::ofstream f(resolved);
    if (!f) throw std::invalid_argument("cannot open output file '" + resolved + "'");
    f << text << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"measure-space Lp toolkit: dual norms, transforms, inequality suites"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key = value configuration file")
        ->configurable(false);

    // norm ------------------------------------------------------------------
    auto* norm_cmd = app.add_subcommand("norm", "dual norm of a measure");
    std::string norm_measure, norm_p = "2", norm_restrict, norm_out;
    norm_cmd->add_option("--measure", norm_measure, "measure description")->required();
    norm_cmd->add_option("--p", norm_p, "exponent in [1, inf]");
    norm_cmd->add_option("--restrict", norm_restrict, "restriction interval a,b");
    norm_cmd->add_option("--out", norm_out, "output path (default stdout)");

    // transform -------------------------------------------------------------
    auto* tr_cmd = app.add_subcommand("transform", "Fourier-Stieltjes transform samples");
    std::string tr_measure, tr_out, tr_format = "csv";
    double tr_ymin = -8.0, tr_ymax = 8.0;
    std::size_t tr_points = 1025;
    tr_cmd->add_option("--measure", tr_measure, "measure description")->required();
    tr_cmd->add_option("--ymin", tr_ymin, "grid start");
    tr_cmd->add_option("--ymax", tr_ymax, "grid end");
    tr_cmd->add_option("--points", tr_points, "grid points");
    tr_cmd->add_option("--format", tr_format, "csv or json");
    tr_cmd->add_option("--out", tr_out, "output path (default stdout)");

    // suite -----------------------------------------------------------------
    auto* suite_cmd = app.add_subcommand("suite", "run a verification suite");
    std::string suite_name, suite_out;
    std::size_t suite_cases = 0;
    std::uint64_t suite_seed = 0;
    bool suite_summary_only = false;
    bool seed_given = false, cases_given = false;
    suite_cmd->add_option("name", suite_name, "holder|hy|young|sets|sinc|embeddings|uncertainty|bv|all")
        ->required();
    suite_cmd->add_option("--cases", suite_cases, "randomized cases per suite")
        ->each([&](const std::string&) { cases_given = true; });
    suite_cmd->add_option("--seed", suite_seed, "random seed")
        ->each([&](const std::string&) { seed_given = true; });
    suite_cmd->add_flag("--summary-only", suite_summary_only, "omit per-case reports");
    suite_cmd->add_option("--out", suite_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::from_file(config_path);

    if (norm_cmd->parsed()) {
        const Measure mu = parse_measure(norm_measure);
        const ExponentPair p = parse_p(norm_p);
        NormResult res;
        if (!norm_restrict.empty()) {
            const auto comma = norm_restrict.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--restrict expects 'a,b'");
            const double a = std::stod(norm_restrict.substr(0, comma));
            const double b = std::stod(norm_restrict.substr(comma + 1));
            res = restricted_star_norm(mu, p, SetOfIntervals::single(a, b), cfg.adaptive, cfg.depth);
        } else {
            res = star_norm(mu, p, cfg.adaptive, cfg.depth);
        }
        nlohmann::json j = to_json(res);
        j["p"] = norm_p;
        j["measure"] = norm_measure;
        j["config"] = cfg.to_json();
        emit(j.dump(2), norm_out);
        return 0;
    }

    if (tr_cmd->parsed()) {
        if (tr_points < 2) throw std::invalid_argument("--points must be >= 2");
        const Measure mu = parse_measure(tr_measure);
        const TransformResult res =
            fourier_stieltjes(mu, GridSpec::over(tr_ymin, tr_ymax, tr_points), cfg.depth);
        if (tr_format == "csv") {
            emit(transform_csv(res), tr_out);
        } else if (tr_format == "json") {
            nlohmann::json j = to_json(res);
            j["measure"] = tr_measure;
            j["config"] = cfg.to_json();
            emit(j.dump(2), tr_out);
        } else {
            throw std::invalid_argument("--format must be csv or json");
        }
        return 0;
    }

    // suite
    if (cases_given) cfg.cases = suite_cases;
    if (seed_given) cfg.seed = suite_seed;
    const std::vector<SuiteResult> results = run_suites(suite_name, cfg);
    emit(suites_to_json(results, cfg, !suite_summary_only).dump(2), suite_out);
    int fails = 0;
    for (const auto& r : results) fails += r.fail;
    return fails > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mustar::NumericalIntegrityError& e) {
        std::cerr << "numerical integrity error: " << e.what() << "\n";
        return 3;
    } catch (const mustar::SpecParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
