#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mustar/measure.hpp"
#include "mustar/transforms.hpp"

using namespace mustar;

namespace {

GridFunction gaussian_grid() {
    return GridFunction::sample(GridSpec{-8.0, 16.0 / 4096.0, 4096},
                                [](double x) { return cplx{std::exp(-M_PI * x * x), 0.0}; });
}

// Independent oracle: plain trapezoid quadrature of the transform integrand
// over the function's window, no phase tricks or FFTs.
cplx quadrature_oracle(const GridFunction& f, double y) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double w = (j == 0 || j + 1 == f.size()) ? 0.5 : 1.0;
        acc += w * f[j] * std::polar(1.0, -kTwoPi * f.x(j) * y);
    }
    return acc * f.step();
}

}  // namespace

TEST_CASE("gaussian is a fixed point of the transform") {
    const TransformResult tr = fourier_function(gaussian_grid(), GridSpec::over(-4.0, 4.0, 1025));
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.grid.size(); ++i) {
        const double y = tr.grid.x(i);
        worst = std::max(worst, std::abs(tr.grid[i] - cplx{std::exp(-M_PI * y * y), 0.0}));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("box transform matches sin(2 pi R y)/(pi y) under the forward convention") {
    const double R = 1.0;
    const double h = 1.0 / 256.0;
    const GridFunction box = GridFunction::sample(
        GridSpec{-R - 0.125, h, static_cast<std::size_t>((2.0 * R + 0.25) / h) + 1}, [&](double x) {
            const double l = std::max(x - 0.5 * h, -R), r = std::min(x + 0.5 * h, R);
            return cplx{std::max(r - l, 0.0) / h, 0.0};
        });
    const TransformResult tr = fourier_function(box, GridSpec::over(-3.0, 3.0, 301));
    for (std::size_t i = 0; i < tr.grid.size(); ++i) {
        const double y = tr.grid.x(i);
        const double expected = std::abs(y) < 1e-9 ? 2.0 * R : std::sin(kTwoPi * R * y) / (M_PI * y);
        CHECK(std::abs(tr.grid[i] - cplx{expected, 0.0}) < 2e-3);
        CHECK(std::abs(tr.grid[i] - quadrature_oracle(box, y)) < 1e-9);
    }
}

TEST_CASE("zero transforms to zero") {
    const GridFunction z = GridFunction::zeros(GridSpec{-2.0, 0.01, 401});
    const TransformResult tr = fourier_function(z, GridSpec::over(-4.0, 4.0, 33));
    CHECK(tr.grid.max_abs() == 0.0);
}

TEST_CASE("delta transform is a pure phase") {
    const double a = 0.7;
    const TransformResult tr = fourier_stieltjes(Measure::delta(a), GridSpec::over(-20.0, 20.0, 801));
    for (std::size_t i = 0; i < tr.grid.size(); ++i) {
        const double y = tr.grid.x(i);
        CHECK(std::abs(tr.grid[i] - std::polar(1.0, -kTwoPi * a * y)) < 1e-12);
        CHECK(std::abs(std::abs(tr.grid[i]) - 1.0) < 1e-12);
    }
    CHECK(tr.method == TransformMethod::ClosedForm);
}

TEST_CASE("delta at zero transforms to one") {
    const TransformResult tr = fourier_stieltjes(Measure::delta(0.0), GridSpec::over(-5.0, 5.0, 11));
    for (std::size_t i = 0; i < tr.grid.size(); ++i)
        CHECK(std::abs(tr.grid[i] - cplx{1.0, 0.0}) < 1e-14);
}

TEST_CASE("cantor product formula against the measure-integration oracle") {
    const Measure c = Measure::cantor();
    for (double y : {0.0, 0.35, 0.6, 1.7, 3.7, 11.25, 20.25}) {
        const CantorPoint cp = cantor_product(y, 18);
        const cplx oracle =
            integrate([y](double x) { return std::polar(1.0, -kTwoPi * x * y); }, c, 20);
        CHECK(std::abs(cp.value - oracle) < 1e-7);
    }
    CHECK(cantor_product(0.0, 5).value == cplx{1.0, 0.0});
    // the k = depth factor hits cos(pi/2) at y = 3^depth / 4
    const int d = 6;
    const double yq = std::pow(3.0, d) / 4.0;
    CHECK(std::abs(cantor_product(yq, d).value) < 1e-12);
    for (double y : {2.0, 55.5, 1234.5, 9999.0})
        CHECK(std::abs(cantor_product(y, 18).value) <= 1.0 + 1e-12);
}

TEST_CASE("cantor transform through the spectrum dispatch") {
    const TransformResult tr = fourier_stieltjes(Measure::cantor(), GridSpec::over(-2.0, 2.0, 257));
    CHECK(tr.method == TransformMethod::IfsProduct);
    CHECK(std::abs(tr.grid.interp(0.0) - cplx{1.0, 0.0}) < 1e-9);
    for (std::size_t i = 0; i < tr.grid.size(); ++i) {
        const CantorPoint cp = cantor_product(tr.grid.x(i), 18);
        CHECK(std::abs(tr.grid[i] - cp.value) < 1e-9);
    }
}

TEST_CASE("affine image of the cantor measure keeps the closed form") {
    const Measure moved = affine_pushforward(Measure::cantor(), 1.7, -0.4);
    const TransformResult tr = fourier_stieltjes(moved, GridSpec::over(-4.0, 4.0, 129));
    for (std::size_t i = 0; i < tr.grid.size(); ++i) {
        const double y = tr.grid.x(i);
        const cplx expect =
            std::polar(1.0, -kTwoPi * (-0.4) * y) * cantor_product(1.7 * y, 18).value;
        CHECK(std::abs(tr.grid[i] - expect) < 1e-9);
    }
}

TEST_CASE("density fast path agrees with per-point summation") {
    const GridFunction g = gaussian_grid();
    const Spectrum s = make_spectrum(g);
    const std::size_t n = 513;
    std::vector<cplx> fast(n);
    s.eval_grid(-1.0, 1.0 / 256.0, fast);  // aligned grid exercises the FFT path
    for (std::size_t i = 0; i < n; i += 37) {
        const double y = -1.0 + static_cast<double>(i) / 256.0;
        CHECK(std::abs(fast[i] - s.eval_point(y)) < 1e-9);
        CHECK(std::abs(fast[i] - quadrature_oracle(g, y)) < 1e-9);
    }
}

TEST_CASE("transform is bounded by the total variation") {
    const Measure mu = Measure::sum({{cplx{0.5, 0.25}, Measure::cantor()},
                                     {cplx{1.0, 0.0}, Measure::atoms({Atom{-2.0, cplx{0.3, 0.4}},
                                                                      Atom{1.0, cplx{-0.7, 0.1}}})}});
    const double tv = total_variation(mu).value;
    const TransformResult tr = fourier_stieltjes(mu, GridSpec::over(-40.0, 40.0, 2001));
    CHECK(tr.grid.max_abs() <= tv + 1e-9);
}

TEST_CASE("transform linearity") {
    const Measure a = Measure::delta(0.3, cplx{1.0, -0.5});
    const Measure b = Measure::cantor();
    const cplx ca{0.7, 0.2}, cb{-0.4, 1.1};
    const Measure combo = Measure::sum({{ca, a}, {cb, b}});
    const GridSpec ys = GridSpec::over(-6.0, 6.0, 97);
    const TransformResult ta = fourier_stieltjes(a, ys);
    const TransformResult tb = fourier_stieltjes(b, ys);
    const TransformResult tc = fourier_stieltjes(combo, ys);
    for (std::size_t i = 0; i < ys.count; ++i) {
        const cplx expect = ca * ta.grid[i] + cb * tb.grid[i];
        CHECK(std::abs(tc.grid[i] - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("Fubini pairing of test functions against measures") {
    const Measure mu = Measure::sum(
        {{cplx{1.0, 0.3}, Measure::atoms({Atom{0.5, cplx{0.8, 0.2}}, Atom{-1.2, cplx{0.4, -0.6}}})},
         {cplx{0.7, 0.0}, Measure::cantor()}});
    const double s = 0.8;
    const Spectrum spec = make_spectrum(mu, 18);
    const double W = 24.0, hy = 1.0 / 256.0;
    const auto n = static_cast<std::size_t>(2.0 * W / hy) + 1;
    std::vector<cplx> v(n);
    spec.eval_grid(-W, hy, v);
    cplx lhs{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        const double y = -W + hy * static_cast<double>(i);
        lhs += w * v[i] * std::exp(-M_PI * y * y / (s * s)) / s;
    }
    lhs *= hy;
    const cplx rhs =
        integrate([&](double x) { return cplx{std::exp(-M_PI * s * s * x * x), 0.0}; }, mu, 18);
    CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("Parseval sanity for the unit interval indicator") {
    const Spectrum s = make_spectrum(SetOfIntervals::single(-0.5, 0.5));
    const double W = 128.0, h = 1.0 / 64.0;
    const auto n = static_cast<std::size_t>(2.0 * W / h) + 1;
    std::vector<cplx> v(n);
    s.eval_grid(-W, h, v);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        acc += w * std::norm(v[i]);
    }
    acc = acc * h + 1.0 / (M_PI * M_PI * W);  // analytic tail beyond the window
    CHECK(std::sqrt(acc) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("interval union transform at zero gives the measure of the set") {
    const SetOfIntervals E(std::vector<Interval>{{-2.0, -0.5}, {0.25, 1.0}});
    const TransformResult tr = fourier_interval_union(E, GridSpec::over(-1.0, 1.0, 3));
    CHECK(tr.grid.interp(0.0).real() == doctest::Approx(E.measure()));
    CHECK(tr.method == TransformMethod::ClosedForm);
}

TEST_CASE("weighted singular part goes through the spectral convolution") {
    const GridFunction f = GridFunction::sample(
        GridSpec{-8.0, 1.0 / 256.0, 4096},
        [](double x) { return cplx{std::exp(-M_PI * (x - 0.4) * (x - 0.4) / 2.25), 0.0}; });
    const Measure wmu = scale_product(f, Measure::cantor());
    const TransformResult tr = fourier_stieltjes(wmu, GridSpec::over(-8.0, 8.0, 257));
    for (std::size_t i = 0; i < tr.grid.size(); i += 16) {
        const double y = tr.grid.x(i);
        const cplx oracle = integrate(
            [&](double x) { return f.interp(x) * std::polar(1.0, -kTwoPi * x * y); },
            Measure::cantor(), 20);
        CHECK(std::abs(tr.grid[i] - oracle) < 2e-4);
    }
}

TEST_CASE("restricted cantor transform equals the pruned-cell oracle") {
    const SetOfIntervals E = SetOfIntervals::single(0.2, 0.8);
    const Measure rc = restrict(Measure::cantor(), E);
    const TransformResult tr = fourier_stieltjes(rc, GridSpec::over(-10.0, 10.0, 161));
    for (std::size_t i = 0; i < tr.grid.size(); i += 8) {
        const double y = tr.grid.x(i);
        const cplx oracle =
            integrate([y](double x) { return std::polar(1.0, -kTwoPi * x * y); }, rc, 20);
        CHECK(std::abs(tr.grid[i] - oracle) < 1e-5);
    }
}

TEST_CASE("inverse transform round trip on a gaussian") {
    const GridFunction g = gaussian_grid();
    const TransformResult tr = fourier_function(g, GridSpec{-16.0, 1.0 / 256.0, 8193});
    const GridFunction back = inverse_transform(tr.grid, GridSpec::over(-2.0, 2.0, 129));
    for (std::size_t i = 0; i < back.size(); ++i) {
        const double x = back.x(i);
        CHECK(std::abs(back[i] - cplx{std::exp(-M_PI * x * x), 0.0}) < 1e-6);
    }
}
