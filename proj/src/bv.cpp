#include "mustar/bv.hpp"

#include <algorithm>
#include <cmath>

#include "mustar/transforms.hpp"

namespace mustar {

double eval_bv(const BVFunction& f, double t) { return f.eval(t); }

double cantor_staircase(double t, int depth) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double value = 0.0;
    double w = 0.5;
    for (int k = 0; k < depth; ++k) {
        if (t >= 2.0 / 3.0) {
            value += w;
            t = 3.0 * t - 2.0;
        } else if (t <= 1.0 / 3.0) {
            t = 3.0 * t;
        } else {
            return value + w;  // middle plateau
        }
        w *= 0.5;
    }
    return value + w;
}

namespace {

// integral of sin(2 pi (x t - gamma)) dmu_f(t) from the transform values:
// mu-hat(x) = integral cos dmu - i integral sin dmu.
double sine_pairing(const Spectrum& spec, double gamma, double x) {
    const cplx mh = spec.eval_point(x);
    const double c2g = std::cos(kTwoPi * gamma);
    const double s2g = std::sin(kTwoPi * gamma);
    return -c2g * mh.imag() - s2g * mh.real();
}

}  // namespace

BvTransform fourier_bv(const BVFunction& f, double gamma, const GridSpec& xgrid, double tolerance) {
    const Interval hull = support_hull(f.mu_f);
    const double t_end = std::max(hull.hi, 1e-6);
    double xmax = 0.0;
    for (std::size_t i = 0; i < xgrid.count; ++i) xmax = std::max(xmax, std::abs(xgrid.point(i)));

    // direct path: quadrature against the evaluated f on a grid resolving the
    // fastest oscillation in play; jumps of f cost O(h) per node, so the base
    // resolution stays fine
    const auto nt = std::min<std::size_t>(
        std::max<std::size_t>(32768, static_cast<std::size_t>(32.0 * xmax * t_end)), 1u << 21);
    const double ht = t_end / static_cast<double>(nt);
    std::vector<double> fvals(nt + 1);
    for (std::size_t i = 0; i <= nt; ++i)
        fvals[i] = f.eval(ht * static_cast<double>(i) + 1e-15);

    const Spectrum spec = make_spectrum(f.mu_f, f.depth);
    const double f0 = f.eval(1e-15);

    GridFunction direct = GridFunction::zeros(xgrid);
    GridFunction stieltjes = GridFunction::zeros(xgrid);
    double worst = 0.0;
    for (std::size_t m = 0; m < xgrid.count; ++m) {
        const double x = xgrid.point(m);
        double acc = 0.0;
        for (std::size_t i = 0; i <= nt; ++i) {
            const double t = ht * static_cast<double>(i);
            const double w = (i == 0 || i == nt) ? 0.5 : 1.0;
            acc += w * fvals[i] * std::cos(kTwoPi * (x * t - gamma));
        }
        direct[m] = acc * ht;
        if (std::abs(x) < 1e-12) {
            stieltjes[m] = direct[m];  // x = 0: the identity degenerates; use quadrature
        } else {
            stieltjes[m] =
                (f0 * std::sin(kTwoPi * gamma) - sine_pairing(spec, gamma, x)) / (kTwoPi * x);
        }
        worst = std::max(worst, std::abs(direct[m] - stieltjes[m]));
    }

    if (worst > tolerance) {
        throw NumericalIntegrityError(
            "fourier_bv: direct and Stieltjes paths disagree by " + std::to_string(worst) +
            " (tolerance " + std::to_string(tolerance) + ", gamma " + std::to_string(gamma) + ")");
    }
    return {std::move(stieltjes), std::move(direct), worst};
}

double leading_term(const BVFunction& f, double gamma, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("leading_term: x must be positive");
    const double s = std::sin(kTwoPi * gamma);
    if (s == 0.0) return 0.0;
    return f.eval(1.0 / x) * s / (kTwoPi * x);
}

double remainder_point(const BVFunction& f, double gamma, double x) {
    // Gamma(x) = -( sin(2 pi gamma) mu((0, 1/x]) + integral sin(2 pi (xt - gamma)) dmu ) / (2 pi x)
    const Spectrum spec = make_spectrum(f.mu_f, f.depth);
    const double m01 =
        (tail_mass(f.mu_f, 0.0, f.depth) - tail_mass(f.mu_f, 1.0 / x, f.depth)).real();
    return -(std::sin(kTwoPi * gamma) * m01 + sine_pairing(spec, gamma, x)) / (kTwoPi * x);
}

GridFunction remainder(const BVFunction& f, double gamma, const GridSpec& xgrid) {
    const Spectrum spec = make_spectrum(f.mu_f, f.depth);
    const double s2g = std::sin(kTwoPi * gamma);
    const double tail0 = tail_mass(f.mu_f, 0.0, f.depth).real();
    GridFunction out = GridFunction::zeros(xgrid);
    for (std::size_t m = 0; m < xgrid.count; ++m) {
        const double x = xgrid.point(m);
        if (!(x > 0.0)) continue;
        const double m01 = tail0 - tail_mass(f.mu_f, 1.0 / x, f.depth).real();
        out[m] = -(s2g * m01 + sine_pairing(spec, gamma, x)) / (kTwoPi * x);
    }
    return out;
}

RemainderNorm remainder_l1(const BVFunction& f, double gamma, const RemainderGrid& grid) {
    // hybrid nodes: geometric, with spacing capped so large-x oscillation stays resolved
    std::vector<double> xs;
    const double growth = std::pow(10.0, 1.0 / static_cast<double>(grid.points_per_decade));
    double x = grid.xmin;
    while (x < grid.xmax) {
        xs.push_back(x);
        const double dx = std::min(x * (growth - 1.0), grid.linear_cap);
        x += dx;
    }
    xs.push_back(grid.xmax);

    const Spectrum spec = make_spectrum(f.mu_f, f.depth);
    const double s2g = std::sin(kTwoPi * gamma);
    const double tail0 = tail_mass(f.mu_f, 0.0, f.depth).real();
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double m01 = tail0 - tail_mass(f.mu_f, 1.0 / xs[i], f.depth).real();
        ys[i] = std::abs(-(s2g * m01 + sine_pairing(spec, gamma, xs[i])) / (kTwoPi * xs[i]));
    }

    RemainderNorm out;
    out.nodes = xs.size();
    const int dec_lo = static_cast<int>(std::floor(std::log10(grid.xmin) + 1e-12));
    const int dec_hi = static_cast<int>(std::ceil(std::log10(grid.xmax) - 1e-12));
    out.decade_mass.assign(static_cast<std::size_t>(std::max(dec_hi - dec_lo, 1)), 0.0);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double seg = 0.5 * (ys[i] + ys[i + 1]) * (xs[i + 1] - xs[i]);
        out.value += seg;
        const double xm = 0.5 * (xs[i] + xs[i + 1]);
        auto d = static_cast<std::size_t>(
            std::clamp(static_cast<int>(std::floor(std::log10(xm))) - dec_lo, 0,
                       static_cast<int>(out.decade_mass.size()) - 1));
        out.decade_mass[d] += seg;
    }
    return out;
}

TheoremMainReport theorem_main_report(const BVFunction& f, const ExponentPair& p, double gamma,
                                      const LogGrid& vp_grid, const RemainderGrid& rgrid,
                                      const AdaptiveOptions& opts) {
    TheoremMainReport rep;
    rep.gamma = gamma;
    rep.p = p.p();
    rep.vp = vp_star_norm_measure(f.mu_f, p, vp_grid, opts, f.depth);
    rep.gamma_norm = remainder_l1(f, gamma, rgrid);
    if (rep.vp.divergent) {
        rep.inconclusive = true;
        rep.note = "Vp* norm divergent: theorem hypothesis unmet";
        return rep;
    }
    rep.ratio = rep.vp.value > 0.0 ? rep.gamma_norm.value / rep.vp.value : 0.0;
    rep.note = "empirical constant; the absolute constant is not asserted";
    return rep;
}

InequalityReport check_embst(const BVFunction& f, const ExponentPair& p, const LogGrid& vp_grid,
                             const AdaptiveOptions& opts) {
    const double tv = total_variation(f.mu_f).value;
    const NormResult vp = vp_star_norm_measure(f.mu_f, p, vp_grid, opts, f.depth);
    const std::string dg = digest("embst|p=" + std::to_string(p.p()) + "|tv=" + std::to_string(tv));
    if (vp.divergent) {
        InequalityReport rep = InequalityReport::make("embst", tv, std::numeric_limits<double>::infinity(),
                                                      0.0, 1e-6, dg);
        rep.status = CheckStatus::Inconclusive;
        rep.note = "Vp* norm divergent";
        return rep;
    }
    const double measured = vp.value > 0.0 ? tv / vp.value : 0.0;
    InequalityReport rep = InequalityReport::make("embst", tv, std::max(measured, 1.0) * vp.value,
                                                  std::max(measured, 1.0), 1e-6, dg);
    rep.extras["total_variation"] = tv;
    rep.extras["vp_star"] = vp.value;
    rep.extras["measured_constant"] = measured;
    rep.note = "constant measured, not asserted";
    return rep;
}

}  // namespace mustar
