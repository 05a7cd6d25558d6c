#include "mustar/reports.hpp"

#include <cmath>
#include <sstream>

namespace mustar {

using nlohmann::json;

json json_num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

namespace {

const char* method_name(NormMethod m) {
    switch (m) {
        case NormMethod::Duality: return "duality";
        case NormMethod::DictionaryLowerBound: return "dictionary-lower-bound";
        default: return "quadrature";
    }
}

const char* method_name(TransformMethod m) {
    switch (m) {
        case TransformMethod::ClosedForm: return "closed-form";
        case TransformMethod::IfsProduct: return "ifs-product";
        default: return "quadrature";
    }
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Conclusive: return "conclusive";
        case CheckStatus::ConsistentDivergent: return "consistent-divergent";
        default: return "inconclusive";
    }
}

}  // namespace

json to_json(const NormResult& r) {
    json diag;
    diag["partial_norms"] = json::array();
    for (double v : r.diagnostics.partial_norms) diag["partial_norms"].push_back(json_num(v));
    diag["increments"] = json::array();
    for (double v : r.diagnostics.increments) diag["increments"].push_back(json_num(v));
    diag["increment_ratio"] = json_num(r.diagnostics.increment_ratio);
    diag["tail_estimate"] = json_num(r.diagnostics.tail_estimate);
    diag["window_final"] = json_num(r.diagnostics.window_final);
    diag["scale_factor"] = json_num(r.diagnostics.scale_factor);
    if (r.diagnostics.divergent_block)
        diag["divergent_block"] = json_num(*r.diagnostics.divergent_block);
    json j;
    j["value"] = json_num(r.value);
    j["method"] = method_name(r.method);
    j["divergent"] = r.divergent;
    if (r.p1_caveat) j["p1_caveat"] = true;
    j["certified_error"] = json_num(r.certified_error);
    j["diagnostics"] = std::move(diag);
    return j;
}

json to_json(const InequalityReport& r) {
    json j;
    j["name"] = r.name;
    j["lhs"] = json_num(r.lhs);
    j["rhs"] = json_num(r.rhs);
    j["constant_used"] = json_num(r.constant_used);
    j["slack"] = json_num(r.slack);
    j["relative_slack"] = json_num(r.relative_slack);
    j["tolerance"] = json_num(r.tolerance);
    j["pass"] = r.pass;
    j["status"] = status_name(r.status);
    j["inputs_digest"] = r.inputs_digest;
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.extras.empty()) {
        json e;
        for (const auto& [k, v] : r.extras) e[k] = json_num(v);
        j["extras"] = std::move(e);
    }
    return j;
}

json to_json(const TransformResult& r) {
    json j;
    j["method"] = method_name(r.method);
    j["certified_error"] = json_num(r.certified_error);
    j["start"] = json_num(r.grid.start());
    j["step"] = json_num(r.grid.step());
    json vals = json::array();
    for (const auto& v : r.grid.values()) {
        vals.push_back(json::array({json_num(v.real()), json_num(v.imag())}));
    }
    j["values"] = std::move(vals);
    return j;
}

json to_json(const SincConstants& s) {
    json j;
    j["s"] = json_num(s.s);
    j["numeric"] = json_num(s.numeric_norm);
    j["ballint"] = json_num(s.ballint);
    j["paper_bound"] = json_num(s.paper_bound);
    if (s.ball_bound) j["ball_bound"] = json_num(*s.ball_bound);
    return j;
}

json to_json(const LimitingOperator& op) {
    json j;
    j["N"] = op.N;
    j["E"] = op.E.indices;
    j["F"] = op.F.indices;
    json sv = json::array();
    for (double v : op.singular_values) sv.push_back(json_num(v));
    j["singular_values"] = std::move(sv);
    j["sigma"] = json_num(op.sigma());
    j["donoho_stark_envelope"] = json_num(op.donoho_stark_envelope());
    return j;
}

json to_json(const NoDoubleSupportReport& r) {
    json j;
    j["N"] = r.N;
    j["sigma"] = json_num(r.sigma);
    j["one_minus_sigma_sq"] = json_num(r.one_minus_sigma_sq);
    j["zero_kernel"] = r.zero_kernel;
    j["note"] = r.note;
    if (r.witness) {
        json w = json::array();
        for (const auto& v : *r.witness) w.push_back(json::array({json_num(v.real()), json_num(v.imag())}));
        j["witness"] = std::move(w);
        j["witness_offset_mass"] = json_num(r.witness_offset_mass);
    }
    return j;
}

json to_json(const TheoremMainReport& r) {
    json j;
    j["gamma"] = json_num(r.gamma);
    j["p"] = json_num(r.p);
    j["vp_star"] = to_json(r.vp);
    j["gamma_l1"] = json_num(r.gamma_norm.value);
    json dm = json::array();
    for (double v : r.gamma_norm.decade_mass) dm.push_back(json_num(v));
    j["gamma_l1_decades"] = std::move(dm);
    j["ratio"] = json_num(r.ratio);
    j["inconclusive"] = r.inconclusive;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string transform_csv(const TransformResult& r) {
    std::ostringstream os;
    os << "y,re,im,abs\n";
    os.precision(12);
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        const cplx v = r.grid[i];
        os << r.grid.x(i) << "," << v.real() << "," << v.imag() << "," << std::abs(v) << "\n";
    }
    return os.str();
}

}  // namespace mustar
