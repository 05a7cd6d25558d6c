#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mustar/measure.hpp"

using namespace mustar;

namespace {

GridFunction gaussian(double center = 0.0, double sigma = 1.0) {
    return GridFunction::sample(GridSpec{-8.0, 1.0 / 256.0, 4097}, [&](double x) {
        const double u = (x - center) / sigma;
        return cplx{std::exp(-M_PI * u * u), 0.0};
    });
}

GridFunction box_density(double a, double b) {
    const double h = 1.0 / 256.0;
    const double lo = a - 32.0 * h;
    const auto n = static_cast<std::size_t>(std::ceil((b - a + 64.0 * h) / h)) + 1;
    return GridFunction::sample(GridSpec{lo, h, n}, [&](double x) {
        const double l = std::max(x - 0.5 * h, a), r = std::min(x + 0.5 * h, b);
        return cplx{std::max(r - l, 0.0) / h, 0.0};
    });
}

// Independent oracle: integrate h against the Cantor measure by enumerating
// all 2^depth cells of the iterated function system.
double cantor_integral_oracle(const std::function<double(double)>& h, int depth) {
    double acc = 0.0;
    const auto cells = 1u << depth;
    const double len = std::pow(3.0, -depth);
    for (unsigned c = 0; c < cells; ++c) {
        double a = 0.0, scale = 1.0;
        for (int k = 0; k < depth; ++k) {
            scale /= 3.0;
            if (c >> k & 1u) a += 2.0 * scale;
        }
        acc += h(a + 0.5 * len) / static_cast<double>(cells);
    }
    return acc;
}

}  // namespace

TEST_CASE("total variation golden values") {
    CHECK(total_variation(Measure::delta(1.0, cplx{-1.0, 0.0})).value == doctest::Approx(1.0));
    CHECK(total_variation(Measure::cantor()).value == doctest::Approx(1.0));
    const auto tv = total_variation(Measure::density(box_density(0.0, 2.0)));
    CHECK(tv.value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(tv.exact);
}

TEST_CASE("sum total variation marks upper bounds") {
    const Measure m = Measure::sum({{cplx{1.0, 0.0}, Measure::delta(0.0)},
                                    {cplx{-1.0, 0.0}, Measure::delta(0.0)}});
    const auto tv = total_variation(m);
    CHECK(tv.value == doctest::Approx(2.0));
    CHECK_FALSE(tv.exact);
}

TEST_CASE("restrict keeps or drops atoms by half-open membership") {
    const Measure d1 = Measure::delta(1.0);
    CHECK(total_variation(restrict(d1, SetOfIntervals::single(0.5, 2.0))).value ==
          doctest::Approx(1.0));
    CHECK(total_variation(restrict(d1, SetOfIntervals::single(2.0, 3.0))).value ==
          doctest::Approx(0.0));
    // atom sits on the boundary: [1, 2) contains it, [0, 1) does not
    CHECK(total_variation(restrict(d1, SetOfIntervals::single(1.0, 2.0))).value ==
          doctest::Approx(1.0));
    CHECK(total_variation(restrict(d1, SetOfIntervals::single(0.0, 1.0))).value ==
          doctest::Approx(0.0));
}

TEST_CASE("restriction of a restriction composes to the intersection") {
    const Measure m = restrict(restrict(Measure::density(box_density(0.0, 4.0)),
                                        SetOfIntervals::single(0.0, 3.0)),
                               SetOfIntervals::single(1.0, 4.0));
    CHECK(total_variation(m).value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("restricted Lebesgue density has interval length as total variation") {
    const Measure m = restrict(Measure::density(box_density(0.0, 4.0)),
                               SetOfIntervals::single(1.0, 3.0));
    CHECK(total_variation(m).value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("scale_product basics") {
    const GridFunction one =
        GridFunction::sample(GridSpec{-8.0, 1.0 / 64.0, 1025}, [](double) { return cplx{1.0, 0.0}; });
    const GridFunction ident =
        GridFunction::sample(GridSpec{-8.0, 1.0 / 64.0, 1025}, [](double x) { return cplx{x, 0.0}; });

    const Measure c = Measure::cantor();
    CHECK(integrate(one, scale_product(one, c)).real() == doctest::Approx(1.0).epsilon(1e-9));

    const Measure d2 = Measure::delta(2.0);
    const Measure x_d2 = scale_product(ident, d2);
    CHECK(integrate(one, x_d2).real() == doctest::Approx(2.0));

    // indicator disjoint from the Cantor support annihilates the measure
    const GridFunction chi_12 = GridFunction::sample(
        GridSpec{-8.0, 1.0 / 64.0, 1025},
        [](double x) { return cplx{(x > 1.0 && x < 2.0) ? 1.0 : 0.0, 0.0}; });
    CHECK(std::abs(integrate(one, scale_product(chi_12, c))) < 1e-12);
}

TEST_CASE("integrate golden values") {
    const GridFunction g = gaussian();
    CHECK(integrate(g, Measure::delta(0.0)).real() == doctest::Approx(1.0));

    const GridFunction one =
        GridFunction::sample(GridSpec{-2.0, 1.0 / 64.0, 257}, [](double) { return cplx{1.0, 0.0}; });
    CHECK(integrate(one, Measure::cantor()).real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrate x against the Cantor measure matches the cell oracle") {
    const double oracle = cantor_integral_oracle([](double x) { return x; }, 16);
    CHECK(oracle == doctest::Approx(0.5).epsilon(1e-7));  // symmetry about 1/2
    const cplx lib = integrate([](double x) { return cplx{x, 0.0}; }, Measure::cantor(), 18);
    CHECK(lib.real() == doctest::Approx(0.5).epsilon(1e-9));
    // a nonlinear moment, against the independent enumeration
    const double oracle2 = cantor_integral_oracle([](double x) { return std::cos(3.0 * x); }, 16);
    const cplx lib2 = integrate([](double x) { return cplx{std::cos(3.0 * x), 0.0}; },
                                Measure::cantor(), 18);
    CHECK(lib2.real() == doctest::Approx(oracle2).epsilon(1e-8));
}

TEST_CASE("convolution with atoms translates") {
    const GridFunction g = gaussian();
    const GridFunction conv = convolve(g, Measure::delta(0.0));
    CHECK(std::abs(conv.interp(0.3) - g.interp(0.3)) < 1e-12);

    const GridFunction shifted = convolve(g, Measure::delta(1.5));
    CHECK(std::abs(shifted.interp(1.5) - g.interp(0.0)) < 1e-12);

    const Measure pair = Measure::atoms({Atom{-1.0, cplx{0.5, 0.0}}, Atom{1.0, cplx{0.5, 0.0}}});
    const GridFunction two = convolve(g, pair);
    CHECK(two.interp(0.0).real() == doctest::Approx(std::exp(-M_PI)).epsilon(1e-9));
}

TEST_CASE("convolution mass is multiplicative for positive inputs") {
    const GridFunction g = gaussian(0.5, 0.7);
    const Measure mu = Measure::sum({{cplx{0.75, 0.0}, Measure::cantor()},
                                     {cplx{0.5, 0.0}, Measure::delta(-1.0)}});
    const GridFunction conv = convolve(g, mu);
    const double mass_f = g.integral().real();
    const double mass_mu = integrate([](double) { return cplx{1.0, 0.0}; }, mu, 14).real();
    CHECK(conv.integral().real() == doctest::Approx(mass_f * mass_mu).epsilon(1e-4));
}

TEST_CASE("linearity of the pairing") {
    std::mt19937_64 rng(411);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    const GridFunction h = gaussian(0.3, 1.3);
    for (int t = 0; t < 25; ++t) {
        const Measure a = Measure::delta(U(rng), cplx{U(rng), U(rng)});
        const Measure b = Measure::delta(U(rng), cplx{U(rng), U(rng)});
        const cplx alpha{U(rng), U(rng)}, beta{U(rng), U(rng)};
        const Measure combo = Measure::sum({{alpha, a}, {beta, b}});
        const cplx lhs = integrate(h, combo);
        const cplx rhs = alpha * integrate(h, a) + beta * integrate(h, b);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("restriction consistency against indicator products") {
    const GridFunction h = gaussian(0.2, 0.9);
    const SetOfIntervals E = SetOfIntervals::single(-0.75, 0.6);
    const Measure parts = Measure::sum({{cplx{1.0, 0.0}, Measure::cantor()},
                                        {cplx{0.5, 0.5}, Measure::delta(0.25)},
                                        {cplx{1.0, 0.0}, Measure::density(box_density(-2.0, 2.0))}});
    const cplx a = integrate(h, restrict(parts, E));
    auto h_chi = [&](double x) { return E.contains(x) ? h.interp(x) : cplx{0.0, 0.0}; };
    const cplx b = integrate(h_chi, parts, 18);
    CHECK(std::abs(a - b) < 2e-4);  // quadrature tolerance at the cut points
}

TEST_CASE("restriction never increases total variation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int t = 0; t < 20; ++t) {
        std::vector<Atom> atoms;
        for (int k = 0; k < 4; ++k) atoms.push_back(Atom{U(rng), cplx{U(rng), U(rng)}});
        const Measure m = Measure::sum({{cplx{1.0, 0.0}, Measure::atoms(atoms)},
                                        {cplx{0.3, 0.1}, Measure::cantor()}});
        const double lo = U(rng), len = std::abs(U(rng)) + 0.1;
        const double full = total_variation(m).value;
        const double cut = total_variation(restrict(m, SetOfIntervals::single(lo, lo + len))).value;
        CHECK(cut <= full + 1e-12);
    }
}

TEST_CASE("tail mass drives BV-style evaluation") {
    const Measure c = Measure::cantor();
    CHECK(tail_mass(c, -1.0).real() == doctest::Approx(1.0));
    CHECK(tail_mass(c, 2.0).real() == doctest::Approx(0.0));
    CHECK(tail_mass(c, 0.5).real() == doctest::Approx(0.5).epsilon(1e-9));
    // atom exactly at the cut is excluded: (t, inf)
    CHECK(tail_mass(Measure::delta(1.0), 1.0).real() == doctest::Approx(0.0));
    CHECK(tail_mass(Measure::delta(1.0), 0.999).real() == doctest::Approx(1.0));
}

TEST_CASE("affine pushforward preserves mass and scales support") {
    const Measure c = affine_pushforward(Measure::cantor(), 2.0, 1.0);
    const Interval hull = support_hull(c);
    CHECK(hull.lo == doctest::Approx(1.0));
    CHECK(hull.hi == doctest::Approx(3.0));
    CHECK(total_variation(c).value == doctest::Approx(1.0));
    CHECK(tail_mass(c, 2.0).real() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("flatten folds sums and merges equal atoms") {
    const Measure m = Measure::sum(
        {{cplx{2.0, 0.0}, Measure::delta(1.0)},
         {cplx{1.0, 0.0}, Measure::sum({{cplx{3.0, 0.0}, Measure::delta(1.0)},
                                        {cplx{1.0, 0.0}, Measure::delta(-1.0)}})}});
    const Measure f = flatten(m);
    REQUIRE(f.is_atomic());
    const auto& atoms = std::get<AtomicPart>(f.storage()).atoms;
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].position == doctest::Approx(-1.0));
    CHECK(atoms[1].weight.real() == doctest::Approx(5.0));
    // idempotent
    const Measure ff = flatten(f);
    REQUIRE(ff.is_atomic());
    CHECK(std::get<AtomicPart>(ff.storage()).atoms.size() == 2);
}
