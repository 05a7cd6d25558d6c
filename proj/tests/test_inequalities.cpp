#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mustar/inequalities.hpp"
#include "mustar/suites.hpp"

using namespace mustar;

namespace {

GridFunction gaussian_grid(double center = 0.0, double sigma = 1.0) {
    return GridFunction::sample(GridSpec{-8.0, 1.0 / 256.0, 4096}, [&](double x) {
        const double u = (x - center) / sigma;
        return cplx{std::exp(-M_PI * u * u), 0.0};
    });
}

RunConfig quick_config() {
    RunConfig cfg;
    cfg.cases = 12;
    cfg.seed = 7;
    return cfg;
}

}  // namespace

TEST_CASE("report bookkeeping") {
    const InequalityReport r = InequalityReport::make("t", 1.0, 2.0, 1.0, 1e-6, "d");
    CHECK(r.pass);
    CHECK(r.slack == doctest::Approx(1.0));
    CHECK(r.relative_slack == doctest::Approx(0.5));
    const InequalityReport bad = InequalityReport::make("t", 2.0 + 1e-3, 2.0, 1.0, 1e-6, "d");
    CHECK_FALSE(bad.pass);
    // tolerance admits tiny overshoot
    const InequalityReport edge = InequalityReport::make("t", 2.0 * (1.0 + 5e-7), 2.0, 1.0, 1e-6, "d");
    CHECK(edge.pass);
}

TEST_CASE("holder inequality on gaussian data") {
    const GridFunction f = gaussian_grid();
    const Measure mu = Measure::density(gaussian_grid(0.5, 1.3));
    const InequalityReport r = check_holder(mu, f, ExponentPair(4.0), ExponentPair(4.0));
    CHECK(r.status == CheckStatus::Conclusive);
    CHECK(r.pass);
    CHECK(r.extras.at("r") == doctest::Approx(2.0));
}

TEST_CASE("holder with zero f is trivial") {
    const GridFunction z = GridFunction::zeros(GridSpec{-8.0, 1.0 / 64.0, 1025});
    const InequalityReport r =
        check_holder(Measure::density(gaussian_grid()), z, ExponentPair(4.0), ExponentPair(4.0));
    CHECK(r.pass);
    CHECK(r.lhs == doctest::Approx(0.0));
}

TEST_CASE("holder r = 1 case resembles the classical inequality") {
    // q = p': 1/r = 1/p + 1/p' = 1
    const GridFunction f = gaussian_grid(0.2, 0.8);
    const Measure mu = Measure::density(gaussian_grid(-0.4, 1.1));
    const InequalityReport r = check_holder(mu, f, ExponentPair(1.5), ExponentPair(3.0));
    CHECK(r.pass);
    CHECK(r.extras.at("r") == doctest::Approx(1.0));
}

TEST_CASE("holder with an atomic measure at p = 1") {
    const GridFunction f = gaussian_grid();
    const Measure mu = Measure::atoms({Atom{-1.0, cplx{0.7, 0.3}}, Atom{2.0, cplx{-0.2, 0.5}}});
    const InequalityReport r = check_holder(mu, f, ExponentPair(1.0), ExponentPair::infinity());
    CHECK(r.status == CheckStatus::Conclusive);
    CHECK(r.pass);
}

TEST_CASE("holder divergent right side is inconclusive") {
    const InequalityReport r = check_holder(Measure::delta(0.0), gaussian_grid(), ExponentPair(2.0),
                                            ExponentPair(4.0));
    CHECK(r.status == CheckStatus::Inconclusive);
}

TEST_CASE("hausdorff-young golden cases") {
    const Dictionary dict = Dictionary::small();
    const InequalityReport d0 = check_hausdorff_young(Measure::delta(0.0), ExponentPair(1.0), dict);
    CHECK(d0.pass);
    CHECK(d0.lhs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(d0.extras.at("lower_bound") >= 0.99);

    const InequalityReport g2 =
        check_hausdorff_young(Measure::density(gaussian_grid()), ExponentPair(2.0), dict);
    CHECK(g2.pass);
    CHECK(g2.lhs == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-5));

    // mu = (delta_0 + delta_1)/2: |mu-hat| = |cos(pi y)|, sup = 1
    const Measure half =
        Measure::atoms({Atom{0.0, cplx{0.5, 0.0}}, Atom{1.0, cplx{0.5, 0.0}}});
    const InequalityReport hh = check_hausdorff_young(half, ExponentPair(1.0), dict);
    CHECK(hh.pass);
    CHECK(hh.lhs == doctest::Approx(1.0).epsilon(1e-6));

    const InequalityReport div = check_hausdorff_young(Measure::delta(0.0), ExponentPair(1.5), dict);
    CHECK(div.status == CheckStatus::ConsistentDivergent);
}

TEST_CASE("young inequality on gaussian data (proof-form exponents)") {
    const GridFunction f = gaussian_grid();
    const Measure mu = Measure::density(gaussian_grid(0.3, 0.9));
    // 1/r = 1/p + 1/q - 1 = 1/2
    const InequalityReport r =
        check_young(mu, f, ExponentPair(4.0 / 3.0), ExponentPair(4.0 / 3.0));
    CHECK(r.status == CheckStatus::Conclusive);
    CHECK(r.pass);
    CHECK(r.extras.at("r") == doctest::Approx(2.0));
}

TEST_CASE("young with a delta is the translation smoke test") {
    // p = 1 makes r = q; convolution with delta_a translates, and the hat norm
    // is modulation invariant
    const GridFunction f = gaussian_grid();
    const InequalityReport r = check_young(Measure::delta(0.8), f, ExponentPair(1.0), ExponentPair(2.0));
    CHECK(r.pass);
    CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-6));  // equality: |f-hat| is unchanged
    const InequalityReport z = check_young(Measure::delta(0.8),
                                           GridFunction::zeros(GridSpec{-4.0, 0.01, 801}),
                                           ExponentPair(1.0), ExponentPair(2.0));
    CHECK(z.lhs == doctest::Approx(0.0));
}

TEST_CASE("young rejects exponents outside the proof relation") {
    CHECK_THROWS_AS(check_young(Measure::density(gaussian_grid()), gaussian_grid(),
                                ExponentPair(4.0), ExponentPair(4.0)),
                    std::invalid_argument);
}

TEST_CASE("sinc constants golden values") {
    const SincConstants c2 = sinc_constant(2.0);
    CHECK(c2.numeric_norm == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(c2.ballint == doctest::Approx(1.0).epsilon(1e-4));
    REQUIRE(c2.ball_bound.has_value());
    CHECK(*c2.ball_bound == doctest::Approx(1.0));

    const SincConstants cinf = sinc_constant(std::numeric_limits<double>::infinity());
    CHECK(cinf.numeric_norm == 1.0);
    CHECK(cinf.paper_bound == 1.0);

    const SincConstants c4 = sinc_constant(4.0);
    CHECK(c4.numeric_norm <= c4.paper_bound);
    CHECK(c4.ballint <= std::sqrt(0.5) + 1e-6);
    // (1/pi) integral (sin t / t)^4 dt = 2/3 exactly
    CHECK(c4.ballint == doctest::Approx(2.0 / 3.0).epsilon(1e-5));

    // independent coarse quadrature oracle at s = 4
    double oracle = 0.0;
    const double T = 200.0, h = 1e-3;
    for (double t = h; t < T; t += h) oracle += std::pow(std::sin(t) / t, 4.0) * h;
    oracle = (2.0 * (oracle + 0.5 * h)) / M_PI;  // symmetric + rough origin cell
    CHECK(c4.ballint == doctest::Approx(oracle).epsilon(1e-2));

    CHECK_THROWS_AS(sinc_constant(1.0), std::invalid_argument);
}

TEST_CASE("embedding blocks on a gaussian measure") {
    const Measure mu = Measure::density(gaussian_grid());
    const InequalityReport r = check_embedding_blocks(mu, Interval{-1.0, 1.0}, ExponentPair(1.5),
                                                      ExponentPair(3.0), 1.0);
    CHECK(r.status == CheckStatus::Conclusive);
    CHECK(r.pass);
    CHECK(r.extras.at("q") == doctest::Approx(3.0));
    // zero measure: both sides vanish
    const InequalityReport z = check_embedding_blocks(Measure::zero(), Interval{-1.0, 1.0},
                                                      ExponentPair(1.5), ExponentPair(3.0), 1.0);
    CHECK(z.pass);
}

TEST_CASE("set bound (restricted norm against the global norm)") {
    const Measure mu = Measure::density(gaussian_grid(0.2, 1.4));
    for (auto [p, q] : {std::pair{1.0, 2.0}, {1.5, 3.0}, {2.0, 2.0}}) {
        const InequalityReport r = check_set_bound(mu, SetOfIntervals::single(-1.0, 1.5),
                                                   ExponentPair(p), ExponentPair(q));
        CHECK(r.pass);
    }
}

TEST_CASE("vpstar embedding blocks on the cantor derivative") {
    const Measure mu_f = scaled(Measure::cantor(), cplx{-1.0, 0.0});
    const auto reports = check_vpstar_embedding(mu_f, ExponentPair(1.4), ExponentPair(1.2),
                                                LogGrid{1e-2, 4.0, 16});
    REQUIRE(!reports.empty());
    int conclusive = 0;
    for (const auto& r : reports) {
        if (r.name == "vpstar-embedding-block" && r.status == CheckStatus::Conclusive) {
            CHECK(r.pass);
            ++conclusive;
        }
    }
    CHECK(conclusive >= 5);
    const auto& agg = reports.back();
    CHECK(agg.name == "vpstar-embedding");
    CHECK(agg.extras.at("measured_constant") > 0.0);
}

TEST_CASE("random inputs are reproducible") {
    RandomInputs a(42), b(42);
    const Measure ma = a.measure(7u);
    const std::string da = a.describe_last();
    const Measure mb = b.measure(7u);
    CHECK(da == b.describe_last());
    CHECK(total_variation(ma).value == doctest::Approx(total_variation(mb).value));
}

TEST_CASE("small randomized suites run clean") {
    RunConfig cfg = quick_config();
    for (const char* name : {"sets", "sinc"}) {
        const SuiteResult r = run_suite(name, cfg);
        CHECK(r.fail == 0);
        CHECK(r.pass > 0);
    }
}

TEST_CASE("suite json is deterministic for a fixed seed") {
    RunConfig cfg = quick_config();
    cfg.cases = 6;
    const auto j1 = suites_to_json(run_suites("sets", cfg), cfg).dump();
    const auto j2 = suites_to_json(run_suites("sets", cfg), cfg).dump();
    CHECK(j1 == j2);
}
