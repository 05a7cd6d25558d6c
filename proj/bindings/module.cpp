// Python bindings for the measure-Lp toolkit: measures, transforms, norms,
// the inequality checks, and the verification suites.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mustar/bv.hpp"
#include "mustar/config.hpp"
#include "mustar/measure_spec.hpp"
#include "mustar/reports.hpp"
#include "mustar/suites.hpp"
#include "mustar/uncertainty.hpp"

namespace py = pybind11;
using namespace mustar;

namespace {

ExponentPair make_p(double p) { return ExponentPair(p); }

py::dict norm_result_dict(const NormResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["divergent"] = r.divergent;
    d["p1_caveat"] = r.p1_caveat;
    d["certified_error"] = r.certified_error;
    d["window_final"] = r.diagnostics.window_final;
    d["partial_norms"] = r.diagnostics.partial_norms;
    d["increment_ratio"] = r.diagnostics.increment_ratio;
    d["tail_estimate"] = r.diagnostics.tail_estimate;
    return d;
}

py::dict report_dict(const InequalityReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["constant_used"] = r.constant_used;
    d["slack"] = r.slack;
    d["relative_slack"] = r.relative_slack;
    d["pass"] = r.pass;
    d["status"] = r.status == CheckStatus::Conclusive
                      ? "conclusive"
                      : (r.status == CheckStatus::Inconclusive ? "inconclusive"
                                                               : "consistent-divergent");
    d["note"] = r.note;
    d["inputs_digest"] = r.inputs_digest;
    py::dict extras;
    for (const auto& [k, v] : r.extras) extras[py::str(k)] = v;
    d["extras"] = extras;
    return d;
}

GridFunction grid_function_from(double start, double step, const std::vector<cplx>& values) {
    return GridFunction(start, step, values);
}

}  // namespace

PYBIND11_MODULE(_mustar, m) {
    m.doc() = "measure-space Lp machinery: Fourier-Stieltjes transforms, dual norms, "
              "inequality verification";

    py::register_exception<NumericalIntegrityError>(m, "NumericalIntegrityError");
    py::register_exception<SpecParseError>(m, "SpecParseError");

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init(&grid_function_from), py::arg("start"), py::arg("step"), py::arg("values"))
        .def_property_readonly("start", &GridFunction::start)
        .def_property_readonly("step", &GridFunction::step)
        .def_property_readonly("values", [](const GridFunction& f) { return f.values(); })
        .def("__len__", &GridFunction::size)
        .def("interp", &GridFunction::interp)
        .def("integral", &GridFunction::integral);

    py::class_<Measure>(m, "Measure")
        .def_static("zero", &Measure::zero)
        .def_static("delta", [](double a) { return Measure::delta(a); }, py::arg("a"))
        .def_static("cantor", &Measure::cantor)
        .def_static("atoms",
                    [](const std::vector<std::pair<double, cplx>>& atoms) {
                        std::vector<Atom> as;
                        for (const auto& [p, w] : atoms) as.push_back(Atom{p, w});
                        return Measure::atoms(std::move(as));
                    })
        .def_static("density", [](const GridFunction& g) { return Measure::density(g); })
        .def_static("parse", &parse_measure)
        .def("restrict",
             [](const Measure& mu, double a, double b) {
                 return restrict(mu, SetOfIntervals::single(a, b));
             })
        .def("total_variation", [](const Measure& mu) { return total_variation(mu).value; })
        .def("tail_mass", [](const Measure& mu, double t) { return tail_mass(mu, t); });

    m.def("integrate",
          [](const GridFunction& h, const Measure& mu, int depth) { return integrate(h, mu, depth); },
          py::arg("h"), py::arg("mu"), py::arg("depth") = 18);

    m.def("convolve",
          [](const GridFunction& f, const Measure& mu, int depth) { return convolve(f, mu, depth); },
          py::arg("f"), py::arg("mu"), py::arg("depth") = 14);

    m.def("fourier_stieltjes",
          [](const Measure& mu, double y0, double y1, std::size_t n, int depth) {
              const TransformResult r = fourier_stieltjes(mu, GridSpec::over(y0, y1, n), depth);
              py::dict d;
              d["values"] = r.grid.values();
              d["start"] = r.grid.start();
              d["step"] = r.grid.step();
              d["certified_error"] = r.certified_error;
              d["method"] = r.method == TransformMethod::ClosedForm
                                ? "closed-form"
                                : (r.method == TransformMethod::IfsProduct ? "ifs-product"
                                                                           : "quadrature");
              return d;
          },
          py::arg("mu"), py::arg("ymin"), py::arg("ymax"), py::arg("points"), py::arg("depth") = 18);

    m.def("fourier_function",
          [](const GridFunction& f, double y0, double y1, std::size_t n) {
              const TransformResult r = fourier_function(f, GridSpec::over(y0, y1, n));
              return r.grid.values();
          },
          py::arg("f"), py::arg("ymin"), py::arg("ymax"), py::arg("points"));

    m.def("cantor_product", [](double y, int depth) {
        const CantorPoint c = cantor_product(y, depth);
        return py::make_tuple(c.value, c.certified_error);
    });

    m.def("lp_norm",
          [](const GridFunction& f, double p) { return lp_norm(f, make_p(p)); });

    m.def("hat_norm",
          [](const GridFunction& f, double p) { return norm_result_dict(hat_norm(f, make_p(p))); });

    m.def("star_norm",
          [](const Measure& mu, double p) { return norm_result_dict(star_norm(mu, make_p(p))); });

    m.def("restricted_star_norm", [](const Measure& mu, double p, double a, double b) {
        return norm_result_dict(restricted_star_norm(mu, make_p(p), SetOfIntervals::single(a, b)));
    });

    m.def("star_norm_lower", [](const Measure& mu, double p) {
        const LowerBoundResult r = star_norm_lower(mu, make_p(p), Dictionary::defaults());
        return py::make_tuple(r.value, r.witness);
    });

    m.def("op_norm", [](const GridFunction& g, double p, double xmin, double xmax, std::size_t pts) {
        return op_norm(g, make_p(p), LogGrid{xmin, xmax, pts});
    });

    m.def("vp_star_norm", [](const Measure& mu_f, double p) {
        return norm_result_dict(vp_star_norm_measure(mu_f, make_p(p), LogGrid{}));
    });

    m.def("sinc_constant", [](double s) {
        const SincConstants c = sinc_constant(s);
        py::dict d;
        d["s"] = c.s;
        d["numeric"] = c.numeric_norm;
        d["ballint"] = c.ballint;
        d["paper_bound"] = c.paper_bound;
        if (c.ball_bound) d["ball_bound"] = *c.ball_bound;
        return d;
    });

    m.def("check_hausdorff_young", [](const Measure& mu, double p) {
        return report_dict(check_hausdorff_young(mu, make_p(p), Dictionary::small()));
    });

    m.def("check_holder", [](const Measure& mu, const GridFunction& f, double p, double q) {
        return report_dict(check_holder(mu, f, make_p(p), make_p(q)));
    });

    m.def("check_young", [](const Measure& mu, const GridFunction& f, double p, double q) {
        return report_dict(check_young(mu, f, make_p(p), make_p(q)));
    });

    py::class_<BVFunction>(m, "BVFunction")
        .def_static("from_derivative",
                    [](const Measure& m_, int depth) { return BVFunction::from_derivative(m_, depth); },
                    py::arg("mu_f"), py::arg("depth") = 18)
        .def_static("unit_jump", &BVFunction::unit_jump)
        .def_static("cantor_complement", &BVFunction::cantor_complement, py::arg("depth") = 18)
        .def("eval", &BVFunction::eval)
        .def("scaled_argument", &BVFunction::scaled_argument)
        .def_property_readonly("mu_f", [](const BVFunction& f) { return f.mu_f; });

    m.def("cantor_staircase", &cantor_staircase, py::arg("t"), py::arg("depth") = 40);
    m.def("leading_term", &leading_term);
    m.def("remainder_l1", [](const BVFunction& f, double gamma) {
        const RemainderNorm r = remainder_l1(f, gamma);
        return py::make_tuple(r.value, r.decade_mass);
    });

    m.def("theorem_main_report", [](const BVFunction& f, double p, double gamma) {
        const TheoremMainReport r = theorem_main_report(f, make_p(p), gamma);
        py::dict d;
        d["gamma"] = r.gamma;
        d["p"] = r.p;
        d["vp_star"] = norm_result_dict(r.vp);
        d["gamma_l1"] = r.gamma_norm.value;
        d["ratio"] = r.ratio;
        d["inconclusive"] = r.inconclusive;
        return d;
    });

    py::class_<IndexSet>(m, "IndexSet")
        .def(py::init<int, std::vector<int>>())
        .def_static("all", &IndexSet::all)
        .def_static("arithmetic", &IndexSet::arithmetic)
        .def_readonly("N", &IndexSet::N)
        .def_readonly("indices", &IndexSet::indices);

    m.def("build_limiting_operator", [](int N, const IndexSet& E, const IndexSet& F) {
        const LimitingOperator op = build_limiting_operator(N, E, F);
        py::dict d;
        d["sigma"] = op.sigma();
        d["singular_values"] = op.singular_values;
        d["donoho_stark_envelope"] = op.donoho_stark_envelope();
        return d;
    });

    m.def("no_double_support", [](int N, const IndexSet& E, const IndexSet& F) {
        const NoDoubleSupportReport r = no_double_support(N, E, F);
        py::dict d;
        d["sigma"] = r.sigma;
        d["zero_kernel"] = r.zero_kernel;
        d["note"] = r.note;
        if (r.witness) d["witness"] = *r.witness;
        d["witness_offset_mass"] = r.witness_offset_mass;
        return d;
    });

    m.def("measure_annihilation_check",
          [](const std::vector<cplx>& w, const IndexSet& E, const IndexSet& F) {
              return report_dict(measure_annihilation_check(w, E, F));
          });

    m.def("unitary_dft", &unitary_dft);

    m.def("run_suite", [](const std::string& name, std::size_t cases, std::uint64_t seed) {
        RunConfig cfg;
        cfg.cases = cases;
        cfg.seed = seed;
        const auto results = run_suites(name, cfg);
        return suites_to_json(results, cfg).dump(2);
    }, py::arg("name"), py::arg("cases") = 100, py::arg("seed") = 7);
}
