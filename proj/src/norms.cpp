#include "mustar/norms.hpp"

#include <algorithm>
#include <cmath>

namespace mustar {

namespace {

constexpr double kMasterStep = 1.0 / 256.0;

double pow_safe(double base, double e) { return base <= 0.0 ? 0.0 : std::pow(base, e); }

// Composite Simpson over samples[-(N)..N] stored in a flat array of length 2N+1.
double simpson_abs_power(const std::vector<cplx>& samples, std::size_t center, std::size_t N,
                         double dy, double pprime) {
    if (N == 0) return 0.0;
    auto term = [&](std::size_t offset) {
        return std::pow(std::abs(samples[offset]), pprime);
    };
    double acc = term(center - N) + term(center + N);
    for (std::size_t k = 1; k < 2 * N; ++k)
        acc += term(center - N + k) * ((k % 2 == 1) ? 4.0 : 2.0);
    return acc * dy / 3.0;
}

}  // namespace

double lp_norm(const GridFunction& f, const ExponentPair& p) {
    if (p.is_infinite()) return f.max_abs();
    return std::pow(f.abs_power_integral(p.p()), 1.0 / p.p());
}

NormResult adaptive_pnorm(const Spectrum& spectrum, double p_conjugate, const AdaptiveOptions& opts,
                          double certified_sample_error) {
    NormResult out;
    out.method = NormMethod::Duality;

    const double Wmax = opts.window0 * std::pow(2.0, opts.doublings);
    const auto Nmax = static_cast<std::size_t>(std::llround(Wmax / opts.y_step));

    if (std::isinf(p_conjugate)) {
        // sup norm over the largest window; never flagged divergent
        std::vector<cplx> samples(2 * Nmax + 1);
        spectrum.eval_grid(-static_cast<double>(Nmax) * opts.y_step, opts.y_step, samples);
        double sup = 0.0;
        for (const auto& v : samples) sup = std::max(sup, std::abs(v));
        out.value = sup;
        out.diagnostics.partial_norms = {sup};
        out.diagnostics.window_final = Wmax;
        out.certified_error = certified_sample_error;
        return out;
    }

    std::vector<cplx> samples(2 * Nmax + 1, cplx{0.0, 0.0});
    const std::size_t center = Nmax;
    std::size_t filled = 0;  // samples known for offsets in [center-filled, center+filled]

    auto ensure = [&](std::size_t N) {
        if (N <= filled && filled > 0) return;
        if (filled == 0) {
            spectrum.eval_grid(-static_cast<double>(N) * opts.y_step, opts.y_step,
                               std::span<cplx>(samples.data() + (center - N), 2 * N + 1));
        } else {
            const std::size_t add = N - filled;
            spectrum.eval_grid(-static_cast<double>(N) * opts.y_step, opts.y_step,
                               std::span<cplx>(samples.data() + (center - N), add));
            spectrum.eval_grid(static_cast<double>(filled + 1) * opts.y_step, opts.y_step,
                               std::span<cplx>(samples.data() + (center + filled + 1), add));
        }
        filled = N;
    };

    std::vector<double> v;  // p'-power integrals over the nested windows
    double W = opts.window0;
    bool early = false;
    for (int k = 0; k <= opts.doublings; ++k, W *= 2.0) {
        const auto N = static_cast<std::size_t>(std::llround(W / opts.y_step));
        ensure(N);
        v.push_back(simpson_abs_power(samples, center, N, opts.y_step, p_conjugate));
        out.diagnostics.partial_norms.push_back(pow_safe(v.back(), 1.0 / p_conjugate));
        out.diagnostics.window_final = W;
        if (k >= 1) {
            const double inc = std::max(v[k] - v[k - 1], 0.0);
            out.diagnostics.increments.push_back(inc);
            if (inc <= 1e-14 * v[k] + 1e-300) {
                early = true;
                break;
            }
        }
    }

    double tail = 0.0;
    bool divergent = false;
    const auto& incs = out.diagnostics.increments;
    if (!early && incs.size() >= 2) {
        const double r_last = incs.back() / std::max(incs[incs.size() - 2], 1e-300);
        out.diagnostics.increment_ratio = r_last;
        const bool decay_failed = r_last > opts.divergence_ratio;
        const bool material = incs.back() > opts.material_fraction * v.back() + 1e-300;
        if (decay_failed && material) {
            divergent = true;
        } else {
            out.diagnostics.slow_tail_growth = decay_failed;
            if (incs.back() > 0.0) {
                const double r = std::min(r_last, opts.divergence_ratio);
                tail = incs.back() * r / (1.0 - r);
            }
        }
    }

    out.diagnostics.tail_estimate = tail;
    if (divergent) {
        out.divergent = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    const double total = v.back() + (opts.include_tail ? tail : 0.0);
    out.value = pow_safe(total, 1.0 / p_conjugate);
    out.certified_error =
        certified_sample_error * std::pow(2.0 * out.diagnostics.window_final, 1.0 / p_conjugate);
    return out;
}

// ---- star / hat norms ------------------------------------------------------------

namespace {

struct ScaledMeasure {
    Measure nu;
    double scale = 1.0;  // nu = pushforward of mu under x -> scale * (x - center)
};

// Dual-norm scaling: if nu is the pushforward of mu under x -> s*(x - c) then
// |nu-hat(y)| = |mu-hat(s*y)|, so ||mu||_p* = s^(1/p') * ||nu||_p*.  Blocks with
// tiny support are scaled up so the doubling windows resolve their transforms;
// upscaled densities are refined onto the standard grid exactly.
ScaledMeasure normalize_support(const Measure& mu) {
    const Interval hull = support_hull(mu);
    const double D = hull.length();
    double s = 1.0;
    if (D > 32.0) s = 8.0 / D;
    else if (D > 0.0 && D < 1.0) s = 2.0 / D;
    if (s == 1.0) return {mu, 1.0};
    return {affine_pushforward(mu, s, -s * hull.mid()), s};
}

}  // namespace

NormResult star_norm(const Measure& mu, const ExponentPair& p, const AdaptiveOptions& opts, int depth) {
    const ScaledMeasure sm = normalize_support(mu);
    const Spectrum spec = make_spectrum(sm.nu, depth);
    const double Wmax = opts.window0 * std::pow(2.0, opts.doublings);
    NormResult out = adaptive_pnorm(spec, p.conjugate(), opts, spec.certified_error(Wmax));
    const double sfac =
        std::isinf(p.conjugate()) ? 1.0 : std::pow(sm.scale, 1.0 / p.conjugate());
    if (!out.divergent) {
        out.value *= sfac;
        out.certified_error *= sfac;
    }
    out.diagnostics.scale_factor = sm.scale;
    out.diagnostics.window_final *= sm.scale;  // report in original coordinates
    out.p1_caveat = (p.p() == 1.0);
    return out;
}

NormResult restricted_star_norm(const Measure& mu, const ExponentPair& p, const SetOfIntervals& E,
                                const AdaptiveOptions& opts, int depth) {
    return star_norm(restrict(mu, E), p, opts, depth);
}

NormResult hat_norm(const GridFunction& f, const ExponentPair& p, const AdaptiveOptions& opts) {
    NormResult out = star_norm(Measure::density(f), p, opts);
    out.method = NormMethod::Quadrature;
    return out;
}

NormResult hat_norm_indicator(const SetOfIntervals& E, const ExponentPair& p,
                              const AdaptiveOptions& opts) {
    const Spectrum spec = make_spectrum(E);
    NormResult out = adaptive_pnorm(spec, p.conjugate(), opts, 1e-13 * std::max(E.measure(), 1.0));
    out.method = NormMethod::Quadrature;
    out.p1_caveat = (p.p() == 1.0);
    return out;
}

// ---- dictionary lower bound ----------------------------------------------------------

Dictionary Dictionary::defaults() {
    Dictionary d;
    d.dilations = {0.25, 0.5, 1.0, 2.0, 4.0};
    for (int i = 0; i < 9; ++i) d.translations.push_back(-4.0 + i * 1.0);
    for (int i = 0; i < 17; ++i) d.modulations.push_back(-4.0 + i * 0.5);
    return d;
}

Dictionary Dictionary::small() {
    Dictionary d;
    d.dilations = {0.5, 1.0, 2.0};
    for (int i = 0; i < 5; ++i) d.translations.push_back(-4.0 + i * 2.0);
    for (int i = 0; i < 9; ++i) d.modulations.push_back(-4.0 + i * 1.0);
    return d;
}

namespace {

// Candidate witness g(x) = exp(-pi ((x-c)/sigma)^2) exp(2 pi i w x); the
// value is |integral of g-hat against mu| / (grid norm of g in L^p).
double gaussian_witness_value(const Measure& mu, const ExponentPair& p, double c, double sigma,
                              double w, int depth) {
    if (!(sigma > 1e-4) || sigma > 1e4) return 0.0;
    double norm_p = 1.0;
    if (!p.is_infinite()) {
        const GridSpec gs = GridSpec::over(c - 7.0 * sigma, c + 7.0 * sigma, 513);
        double acc = 0.0;
        for (std::size_t i = 0; i < gs.count; ++i) {
            const double x = gs.point(i);
            const double g = std::exp(-M_PI * (x - c) * (x - c) / (sigma * sigma));
            const double t = std::pow(g, p.p());
            acc += (i == 0 || i + 1 == gs.count) ? 0.5 * t : t;
        }
        norm_p = std::pow(acc * gs.step, 1.0 / p.p());
    }
    if (!(norm_p > 0.0)) return 0.0;
    auto ghat = [&](double x) -> cplx {
        const double u = x - w;
        return sigma * std::exp(-M_PI * sigma * sigma * u * u) *
               std::polar(1.0, -kTwoPi * c * u);
    };
    const cplx val = integrate(ghat, mu, depth);
    return std::abs(val) / norm_p;
}

}  // namespace

LowerBoundResult star_norm_lower(const Measure& mu, const ExponentPair& p, const Dictionary& dict,
                                 const AdaptiveOptions& opts, int depth) {
    LowerBoundResult best;

    auto consider = [&](double c, double sigma, double w, const char* tag) {
        const double v = gaussian_witness_value(mu, p, c, sigma, w, depth);
        if (v > best.value) {
            best.value = v;
            best.witness = std::string(tag) + " c=" + std::to_string(c) +
                           " sigma=" + std::to_string(sigma) + " w=" + std::to_string(w);
        }
        return v;
    };

    double bc = 0.0, bs = 1.0, bw = 0.0;
    double bval = 0.0;
    auto tally = [&](double c, double sigma, double w) {
        const double v = gaussian_witness_value(mu, p, c, sigma, w, depth);
        if (v > bval) {
            bval = v;
            bc = c;
            bs = sigma;
            bw = w;
        }
    };
    for (double sigma : dict.dilations)
        for (double c : dict.translations)
            for (double w : dict.modulations) tally(c, sigma, w);

    // spectral seeds: a bump at the peak of |mu-hat| whose linear phase
    // cancels the local phase slope; realizes the sup-norm witness at p = 1
    // and gives the ascent a good basin elsewhere
    {
        const Spectrum spec = make_spectrum(mu, depth);
        const double dy = 1.0 / 256.0;
        const std::size_t N = 4096;  // scan [-16, 16]
        std::vector<cplx> s(2 * N + 1);
        spec.eval_grid(-static_cast<double>(N) * dy, dy, s);
        std::size_t best = N;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (std::abs(s[i]) > std::abs(s[best])) best = i;
        if (std::abs(s[best]) > 0.0 && best > 0 && best + 1 < s.size()) {
            const double ystar = (-static_cast<double>(N) + static_cast<double>(best)) * dy;
            const cplx ratio = s[best + 1] * std::conj(s[best - 1]);
            const double slope = std::arg(ratio) / (2.0 * dy);  // d(arg mu-hat)/dy at the peak
            const double wseed = -slope / kTwoPi;
            for (double sigma : {0.05, 0.15, 0.4}) tally(ystar, sigma, wseed);
        }
    }
    consider(bc, bs, bw, "gaussian");

    if (dict.refine && bval > 0.0) {
        // coordinate ascent: golden-section on each parameter in turn
        const double gr = 0.6180339887498949;
        auto golden = [&](auto value_of, double lo, double hi) {
            double a = lo, b = hi;
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = value_of(x1), f2 = value_of(x2);
            for (int it = 0; it < 12; ++it) {
                if (f1 < f2) {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = value_of(x2);
                } else {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = value_of(x1);
                }
            }
            return f1 > f2 ? x1 : x2;
        };
        for (int sweep = 0; sweep < 2; ++sweep) {
            bs = golden([&](double s) { return gaussian_witness_value(mu, p, bc, s, bw, depth); },
                        bs / 3.0, bs * 3.0);
            bc = golden([&](double c) { return gaussian_witness_value(mu, p, c, bs, bw, depth); },
                        bc - 1.5, bc + 1.5);
            bw = golden([&](double w) { return gaussian_witness_value(mu, p, bc, bs, w, depth); },
                        bw - 1.5, bw + 1.5);
        }
        consider(bc, bs, bw, "gaussian-refined");
    }

    // Matched witness: the Lp-duality extremal profile |mu-hat|^{p'-1} with
    // conjugate phase, resampled to x space and integrated against mu there.
    if (dict.matched_witness && !p.is_infinite() && p.p() > 1.0 && p.conjugate() >= 2.0) {
        NormResult duality = star_norm(mu, p, opts, depth);
        if (!duality.divergent && duality.value > 0.0) {
            const double W = std::min(duality.diagnostics.window_final, 127.0);
            const double dy = kMasterStep;
            const auto N = static_cast<std::size_t>(std::llround(W / dy));
            const Spectrum spec = make_spectrum(mu, depth);
            std::vector<cplx> s(2 * N + 1);
            spec.eval_grid(-static_cast<double>(N) * dy, dy, s);
            const double pprime = p.conjugate();
            GridFunction g0(-static_cast<double>(N) * dy, dy, std::vector<cplx>(2 * N + 1));
            for (std::size_t i = 0; i < s.size(); ++i) {
                const double a = std::abs(s[i]);
                g0[i] = a > 0.0 ? std::conj(s[i]) * std::pow(a, pprime - 2.0) : cplx{0.0, 0.0};
            }
            const double gnorm = std::pow(g0.abs_power_integral(p.p()), 1.0 / p.p());
            if (gnorm > 0.0) {
                g0.scale(cplx{1.0 / gnorm, 0.0});
                // h = g0-hat on a master-aligned grid covering the support
                const Interval hull = support_hull(mu);
                const double x_lo_master = -0.5 / dy;
                auto snap = [&](double x) {
                    return x_lo_master +
                           std::floor((x - x_lo_master) / kMasterStep) * kMasterStep;
                };
                const double xa = snap(hull.lo - 0.5) - kMasterStep;
                const double xb = hull.hi + 0.5;
                const auto nx = static_cast<std::size_t>(std::ceil((xb - xa) / kMasterStep)) + 1;
                GridFunction conj_g0 = g0;
                for (auto& v : conj_g0.values()) v = std::conj(v);
                GridFunction h = inverse_transform(conj_g0, GridSpec{xa, kMasterStep, nx});
                for (auto& v : h.values()) v = std::conj(v);
                const cplx raw = integrate(h, mu, depth);
                const double v = std::abs(raw) * (1.0 - 5e-4);
                if (v > best.value) {
                    best.value = v;
                    best.witness = "matched-witness";
                }
            }
        }
    }

    return best;
}

// ---- Op norm ------------------------------------------------------------------------

double op_norm(const GridFunction& g, const ExponentPair& p, const LogGrid& xrange) {
    if (p.p() <= 1.0) throw std::invalid_argument("op_norm: requires p in (1, inf]");
    const std::vector<double> xs = xrange.nodes();
    constexpr std::size_t kInner = 64;  // shared nodes keep the power-mean inequality exact
    std::vector<double> integrand(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double h = x / static_cast<double>(kInner);
        if (p.is_infinite()) {
            double sup = 0.0;
            for (std::size_t j = 0; j <= kInner; ++j)
                sup = std::max(sup, std::abs(g.interp(x + h * static_cast<double>(j))));
            integrand[i] = sup;
        } else {
            double acc = 0.0;
            for (std::size_t j = 0; j <= kInner; ++j) {
                const double w = (j == 0 || j == kInner) ? 0.5 : 1.0;
                acc += w * std::pow(std::abs(g.interp(x + h * static_cast<double>(j))), p.p());
            }
            integrand[i] = std::pow(acc * h / x, 1.0 / p.p());
        }
    }
    return trapezoid(xs, integrand);
}

// ---- Vp* norm -------------------------------------------------------------------------

NormResult vp_star_norm_measure(const Measure& mu_f, const ExponentPair& p, const LogGrid& xrange,
                                const AdaptiveOptions& opts, int depth) {
    NormResult out;
    out.method = NormMethod::Duality;
    out.p1_caveat = (p.p() == 1.0);
    const std::vector<double> xs = xrange.nodes();
    std::vector<double> integrand(xs.size(), 0.0);
    const Interval hull = support_hull(mu_f);
    const double tv_total = total_variation(mu_f).value;
    double cert = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        if (2.0 * x <= hull.lo || x >= hull.hi) continue;
        const SetOfIntervals block = SetOfIntervals::single(x, 2.0 * x);
        const Measure restricted = restrict(mu_f, block);
        if (total_variation(restricted).value <= 1e-13 * std::max(tv_total, 1.0)) continue;
        const NormResult nr = star_norm(restricted, p, opts, depth);
        if (nr.divergent) {
            out.divergent = true;
            out.value = std::numeric_limits<double>::infinity();
            out.diagnostics.divergent_block = x;
            return out;
        }
        const double wfac = std::pow(x, -p.inv());
        integrand[i] = wfac * nr.value;
        cert += wfac * nr.certified_error;
    }
    out.value = trapezoid(xs, integrand);
    out.certified_error = cert * (xs.back() - xs.front()) / static_cast<double>(xs.size());
    return out;
}

}  // namespace mustar
