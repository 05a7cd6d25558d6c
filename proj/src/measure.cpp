#include "mustar/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mustar {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ---- self-similar cell machinery -----------------------------------------
//
// The cell of a word j1..jd is S_{j1} o ... o S_{jd}(window) = [r^d w.lo + a,
// r^d w.hi + a); extending the word on the right maps a -> a + r^d * t_j.

struct IfsCell {
    double a = 0.0;   // affine offset of S_w
    int depth = 0;
    double mass = 1.0;
};

Interval cell_interval(const SelfSimilarPart& ss, const IfsCell& c) {
    const double rd = std::pow(ss.ratio, c.depth);
    return {c.a + rd * ss.window.lo, c.a + rd * ss.window.hi};
}

// Enumerate depth-K leaf cells intersecting E (whole line when E == nullptr).
// boundary = true marks leaves that only partially overlap E.
template <typename Leaf>
void enumerate_leaf_cells(const SelfSimilarPart& ss, const SetOfIntervals* E, int K,
                          Leaf&& leaf) {
    std::vector<IfsCell> stack{IfsCell{}};
    while (!stack.empty()) {
        IfsCell c = stack.back();
        stack.pop_back();
        const Interval iv = cell_interval(ss, c);
        int cls = 1;
        if (E) cls = E->classify(iv.lo, iv.hi);
        if (cls == 0) continue;
        if (c.depth >= K) {
            leaf(c, iv, cls == 2);
            continue;
        }
        const double rd = std::pow(ss.ratio, c.depth);
        for (std::size_t j = 0; j < ss.translations.size(); ++j) {
            stack.push_back(IfsCell{c.a + rd * ss.translations[j], c.depth + 1,
                                    c.mass * ss.weights[j]});
        }
    }
}

// Decompose supp(mu) ∩ E into maximal cells fully inside E plus depth-K
// boundary leaves; the inside cells can then use the closed-form transform.
template <typename Inside, typename Boundary>
void maximal_inside_cells(const SelfSimilarPart& ss, const SetOfIntervals& E, int K,
                          Inside&& inside, Boundary&& boundary) {
    std::vector<IfsCell> stack{IfsCell{}};
    while (!stack.empty()) {
        IfsCell c = stack.back();
        stack.pop_back();
        const Interval iv = cell_interval(ss, c);
        const int cls = E.classify(iv.lo, iv.hi);
        if (cls == 0) continue;
        if (cls == 1) {
            inside(c);
            continue;
        }
        if (c.depth >= K) {
            boundary(c, iv);
            continue;
        }
        const double rd = std::pow(ss.ratio, c.depth);
        for (std::size_t j = 0; j < ss.translations.size(); ++j) {
            stack.push_back(IfsCell{c.a + rd * ss.translations[j], c.depth + 1,
                                    c.mass * ss.weights[j]});
        }
    }
}

// ---- density segment quadrature -------------------------------------------
//
// Integral of F(x) * g~(x) over E ∩ [grid window], splitting cells at segment
// boundaries with interpolated density values.

template <typename F>
cplx density_segment_integral(const GridFunction& g, const SetOfIntervals* E, F&& f) {
    if (g.size() < 2) return {0.0, 0.0};
    std::vector<Interval> segs;
    const Interval window{g.start(), g.x_end()};
    if (E) {
        const SetOfIntervals clipped = E->clip(window);
        segs = clipped.parts();
    } else {
        segs.push_back(window);
    }
    cplx total{0.0, 0.0};
    for (const auto& seg : segs) {
        if (seg.empty()) continue;
        // Node list: segment endpoints plus interior grid nodes.
        auto node_value = [&](double x) { return f(x) * g.interp(x); };
        double prev_x = seg.lo;
        cplx prev_v = node_value(prev_x);
        const auto first_idx = static_cast<long long>(std::ceil((seg.lo - g.start()) / g.step() - 1e-12));
        const auto last_idx = static_cast<long long>(std::floor((seg.hi - g.start()) / g.step() + 1e-12));
        cplx acc{0.0, 0.0};
        for (long long i = std::max<long long>(first_idx, 0);
             i <= std::min<long long>(last_idx, static_cast<long long>(g.size()) - 1); ++i) {
            const double x = g.x(static_cast<std::size_t>(i));
            if (x <= prev_x + 1e-15) continue;
            if (x >= seg.hi - 1e-15) break;
            const cplx v = node_value(x);
            acc += 0.5 * (prev_v + v) * (x - prev_x);
            prev_x = x;
            prev_v = v;
        }
        if (seg.hi > prev_x) {
            const cplx v = node_value(seg.hi);
            acc += 0.5 * (prev_v + v) * (seg.hi - prev_x);
        }
        total += acc;
    }
    return total;
}

const SetOfIntervals* restriction_ptr(const Measure& mu) {
    return mu.restriction() ? &*mu.restriction() : nullptr;
}

Measure push_down(const Measure& parent, const Measure& child) {
    Measure c = child;
    if (parent.restriction()) c = c.with_restriction(*parent.restriction());
    if (parent.weight()) c = c.with_weight(*parent.weight());
    return c;
}

}  // namespace

// ---- Measure basics --------------------------------------------------------

void Measure::validate() const {
    if (const auto* at = std::get_if<AtomicPart>(&storage_)) {
        for (const auto& a : at->atoms) {
            if (!std::isfinite(a.position) || !finite(a.weight))
                throw std::invalid_argument("Measure: atom positions/weights must be finite");
        }
    } else if (const auto* ss = std::get_if<SelfSimilarPart>(&storage_)) {
        if (!(ss->ratio > 0.0 && ss->ratio < 1.0))
            throw std::invalid_argument("Measure: self-similar ratio must lie in (0,1)");
        if (ss->translations.empty() || ss->translations.size() != ss->weights.size())
            throw std::invalid_argument("Measure: self-similar translations/weights mismatch");
        double s = 0.0;
        for (double w : ss->weights) {
            if (!(w >= 0.0)) throw std::invalid_argument("Measure: self-similar weights must be nonnegative");
            s += w;
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw std::invalid_argument("Measure: self-similar weights must sum to 1");
    } else if (const auto* d = std::get_if<DensityPart>(&storage_)) {
        for (const auto& v : d->samples.values())
            if (!finite(v)) throw std::invalid_argument("Measure: density samples must be finite");
    }
}

Measure Measure::sum(std::vector<std::pair<cplx, Measure>> terms) {
    SumPart part;
    part.terms.reserve(terms.size());
    for (auto& [c, m] : terms)
        part.terms.push_back(SumTerm{c, std::make_shared<const Measure>(std::move(m))});
    return Measure(Variant{std::move(part)});
}

Measure Measure::with_restriction(const SetOfIntervals& E) const {
    Measure out = *this;
    out.restriction_ = restriction_ ? restriction_->intersect(E) : E;
    return out;
}

Measure Measure::with_weight(GridFunction w) const {
    Measure out = *this;
    if (weight_) {
        // compose pointwise on the existing weight grid
        GridFunction composed = *weight_;
        for (std::size_t i = 0; i < composed.size(); ++i)
            composed[i] *= w.interp(composed.x(i));
        out.weight_ = std::make_shared<const GridFunction>(std::move(composed));
    } else {
        out.weight_ = std::make_shared<const GridFunction>(std::move(w));
    }
    return out;
}

Measure restrict(const Measure& mu, const SetOfIntervals& E) { return mu.with_restriction(E); }

// ---- integrate -------------------------------------------------------------

cplx integrate(const std::function<cplx(double)>& h, const Measure& mu, int depth) {
    const auto* E = restriction_ptr(mu);
    const auto& w = mu.weight();
    auto hw = [&](double x) -> cplx { return w ? h(x) * w->interp(x) : h(x); };

    if (const auto* at = std::get_if<AtomicPart>(&mu.storage())) {
        cplx acc{0.0, 0.0};
        for (const auto& a : at->atoms) {
            if (E && !E->contains(a.position)) continue;
            acc += a.weight * hw(a.position);
        }
        return acc;
    }
    if (const auto* d = std::get_if<DensityPart>(&mu.storage())) {
        return density_segment_integral(d->samples, E, hw);
    }
    if (const auto* ss = std::get_if<SelfSimilarPart>(&mu.storage())) {
        cplx acc{0.0, 0.0};
        enumerate_leaf_cells(*ss, E, depth, [&](const IfsCell& c, const Interval& iv, bool boundary) {
            double m = c.mass;
            if (boundary && E) {
                if (!E->contains(iv.mid())) return;
            }
            acc += m * hw(iv.mid());
        });
        return acc;
    }
    const auto& sum = std::get<SumPart>(mu.storage());
    cplx acc{0.0, 0.0};
    for (const auto& t : sum.terms) acc += t.coefficient * integrate(h, push_down(mu, *t.term), depth);
    return acc;
}

cplx integrate(const GridFunction& h, const Measure& mu, int depth) {
    const Interval hull = support_hull(mu);
    if (!h.covers(hull.lo, hull.hi))
        throw std::domain_error("integrate: test function window does not cover the measure support");
    return integrate([&](double x) { return h.interp(x); }, mu, depth);
}

// ---- total variation --------------------------------------------------------

TotalVariation total_variation(const Measure& mu) {
    const auto* E = restriction_ptr(mu);
    const auto& w = mu.weight();
    auto wabs = [&](double x) -> double { return w ? std::abs(w->interp(x)) : 1.0; };

    if (const auto* at = std::get_if<AtomicPart>(&mu.storage())) {
        double acc = 0.0;
        for (const auto& a : at->atoms) {
            if (E && !E->contains(a.position)) continue;
            acc += std::abs(a.weight) * wabs(a.position);
        }
        return {acc, true};
    }
    if (const auto* d = std::get_if<DensityPart>(&mu.storage())) {
        GridFunction absg = d->samples;
        for (std::size_t i = 0; i < absg.size(); ++i) absg[i] = std::abs(absg[i]);
        const cplx tv = density_segment_integral(absg, E, [&](double x) -> cplx {
            return cplx{wabs(x), 0.0};
        });
        return {tv.real(), true};
    }
    if (const auto* ss = std::get_if<SelfSimilarPart>(&mu.storage())) {
        if (!w) {
            if (!E) return {1.0, true};  // probability measure
            double acc = 0.0;
            maximal_inside_cells(
                *ss, *E, 18, [&](const IfsCell& c) { acc += c.mass; },
                [&](const IfsCell& c, const Interval& iv) {
                    if (E->contains(iv.mid())) acc += c.mass;
                });
            return {acc, true};
        }
        double acc = 0.0;
        enumerate_leaf_cells(*ss, E, 14, [&](const IfsCell& c, const Interval& iv, bool boundary) {
            if (boundary && E && !E->contains(iv.mid())) return;
            acc += c.mass * wabs(iv.mid());
        });
        return {acc, true};
    }
    const auto& sum = std::get<SumPart>(mu.storage());
    double acc = 0.0;
    bool exact = true;
    std::size_t live = 0;
    for (const auto& t : sum.terms) {
        if (std::abs(t.coefficient) == 0.0) continue;
        const TotalVariation tv = total_variation(push_down(mu, *t.term));
        acc += std::abs(t.coefficient) * tv.value;
        exact = exact && tv.exact;
        if (tv.value > 0.0) ++live;
    }
    return {acc, exact && live <= 1};
}

// ---- tail and set mass -------------------------------------------------------

cplx set_mass(const Measure& mu, const SetOfIntervals& E, int depth) {
    // constant integrand: self-similar parts sum whole-cell masses directly
    // instead of enumerating all depth-K leaves
    if (const auto* ss = std::get_if<SelfSimilarPart>(&mu.storage())) {
        if (!mu.weight()) {
            const SetOfIntervals eff =
                mu.restriction() ? mu.restriction()->intersect(E) : E;
            cplx acc{0.0, 0.0};
            maximal_inside_cells(
                *ss, eff, depth, [&](const IfsCell& c) { acc += c.mass; },
                [&](const IfsCell& c, const Interval& iv) {
                    if (eff.contains(iv.mid())) acc += c.mass;
                });
            return acc;
        }
    }
    if (const auto* sum = std::get_if<SumPart>(&mu.storage())) {
        cplx acc{0.0, 0.0};
        for (const auto& t : sum->terms)
            acc += t.coefficient * set_mass(push_down(mu, *t.term), E, depth);
        return acc;
    }
    return integrate([](double) { return cplx{1.0, 0.0}; }, mu.with_restriction(E), depth);
}

cplx tail_mass(const Measure& mu, double t, int depth) {
    const Interval hull = support_hull(mu);
    const double hi = std::max(hull.hi, t) + 1.0;
    if (t >= hull.hi) return {0.0, 0.0};
    // (t, inf): shift the left endpoint up by one ulp-scale nudge so an atom
    // exactly at t is excluded (half-open sets are closed on the left).
    const double lo = std::nextafter(t, std::numeric_limits<double>::infinity());
    return set_mass(mu, SetOfIntervals::single(lo, hi), depth);
}

// ---- scale product -------------------------------------------------------------

Measure scale_product(const GridFunction& f, const Measure& mu) {
    const Interval hull = support_hull(mu);
    if (!f.covers(hull.lo, hull.hi))
        throw std::domain_error("scale_product: function window does not cover the measure support");

    if (const auto* at = std::get_if<AtomicPart>(&mu.storage())) {
        const auto* E = restriction_ptr(mu);
        const auto& w = mu.weight();
        AtomicPart out;
        for (const auto& a : at->atoms) {
            if (E && !E->contains(a.position)) continue;
            cplx wt = a.weight * f.interp(a.position);
            if (w) wt *= w->interp(a.position);
            out.atoms.push_back(Atom{a.position, wt});
        }
        return Measure(Measure::Variant{std::move(out)});
    }
    if (const auto* d = std::get_if<DensityPart>(&mu.storage())) {
        GridFunction g = d->samples;
        for (std::size_t i = 0; i < g.size(); ++i) g[i] *= f.interp(g.x(i));
        Measure out = Measure::density(std::move(g));
        if (mu.restriction()) out = out.with_restriction(*mu.restriction());
        if (mu.weight()) out = out.with_weight(*mu.weight());
        return out;
    }
    if (mu.is_self_similar()) {
        return mu.with_weight(f);
    }
    const auto& sum = std::get<SumPart>(mu.storage());
    std::vector<std::pair<cplx, Measure>> terms;
    for (const auto& t : sum.terms)
        terms.emplace_back(t.coefficient, scale_product(f, push_down(mu, *t.term)));
    return Measure::sum(std::move(terms));
}

// ---- convolution ---------------------------------------------------------------

GridFunction convolve(const GridFunction& f, const Measure& mu, int depth) {
    const Interval hull = support_hull(mu);
    const double lo = f.start() + std::min(hull.lo, 0.0) - f.step();
    const double hi = f.x_end() + std::max(hull.hi, 0.0) + f.step();
    const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / f.step())) + 1;
    GridFunction out = GridFunction::zeros(GridSpec{lo, f.step(), count});

    std::function<void(const Measure&, cplx)> accumulate = [&](const Measure& m, cplx coef) {
        const auto* e = restriction_ptr(m);
        const auto& wm = m.weight();
        auto wfac = [&](double y) -> cplx { return wm ? wm->interp(y) : cplx{1.0, 0.0}; };
        if (const auto* at = std::get_if<AtomicPart>(&m.storage())) {
            for (const auto& a : at->atoms) {
                if (e && !e->contains(a.position)) continue;
                const cplx c = coef * a.weight * wfac(a.position);
                for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * f.interp(out.x(i) - a.position);
            }
        } else if (const auto* d = std::get_if<DensityPart>(&m.storage())) {
            // (f * g dx)(x) via the same segment quadrature used by integrate
            for (std::size_t i = 0; i < out.size(); ++i) {
                const double x = out.x(i);
                out[i] += coef * density_segment_integral(d->samples, e, [&](double y) {
                    return f.interp(x - y) * wfac(y);
                });
            }
        } else if (const auto* ss = std::get_if<SelfSimilarPart>(&m.storage())) {
            std::vector<std::pair<double, double>> leaves;  // (mid, mass)
            enumerate_leaf_cells(*ss, e, depth, [&](const IfsCell& c, const Interval& iv, bool boundary) {
                if (boundary && e && !e->contains(iv.mid())) return;
                leaves.emplace_back(iv.mid(), c.mass);
            });
            for (std::size_t i = 0; i < out.size(); ++i) {
                const double x = out.x(i);
                cplx acc{0.0, 0.0};
                for (const auto& [mid, mass] : leaves) acc += mass * wfac(mid) * f.interp(x - mid);
                out[i] += coef * acc;
            }
        } else {
            const auto& sum = std::get<SumPart>(m.storage());
            for (const auto& t : sum.terms) accumulate(push_down(m, *t.term), coef * t.coefficient);
        }
    };

    accumulate(mu, cplx{1.0, 0.0});
    return out;
}

// ---- support, pushforward, flatten -----------------------------------------------

Interval support_hull(const Measure& mu) {
    const auto* E = restriction_ptr(mu);
    Interval iv{0.0, 0.0};
    if (const auto* at = std::get_if<AtomicPart>(&mu.storage())) {
        bool first = true;
        for (const auto& a : at->atoms) {
            if (E && !E->contains(a.position)) continue;
            if (first) {
                iv = {a.position, a.position};
                first = false;
            } else {
                iv = {std::min(iv.lo, a.position), std::max(iv.hi, a.position)};
            }
        }
        return iv;
    }
    if (const auto* d = std::get_if<DensityPart>(&mu.storage())) {
        iv = {d->samples.start(), d->samples.x_end()};
    } else if (const auto* ss = std::get_if<SelfSimilarPart>(&mu.storage())) {
        if (E) {
            // tight hull of the surviving cells; a restricted sliver can be
            // far narrower than the restriction interval itself
            bool first = true;
            auto grow = [&](const IfsCell& c) {
                const Interval cell = cell_interval(*ss, c);
                const Interval clipped{std::max(cell.lo, E->hull().lo),
                                       std::min(cell.hi, E->hull().hi)};
                if (first) {
                    iv = clipped;
                    first = false;
                } else {
                    iv = {std::min(iv.lo, clipped.lo), std::max(iv.hi, clipped.hi)};
                }
            };
            maximal_inside_cells(*ss, *E, 24, grow,
                                 [&](const IfsCell& c, const Interval&) { grow(c); });
            if (first) return {0.0, 0.0};
            return iv;
        }
        iv = ss->window;
    } else {
        const auto& sum = std::get<SumPart>(mu.storage());
        bool first = true;
        for (const auto& t : sum.terms) {
            if (std::abs(t.coefficient) == 0.0) continue;
            const Interval c = support_hull(push_down(mu, *t.term));
            if (c.lo == 0.0 && c.hi == 0.0 && total_variation(push_down(mu, *t.term)).value <= 0.0)
                continue;
            if (first) {
                iv = c;
                first = false;
            } else {
                iv = {std::min(iv.lo, c.lo), std::max(iv.hi, c.hi)};
            }
        }
        if (first) iv = {0.0, 0.0};
        return iv;
    }
    if (E && !E->empty()) {
        const Interval rh = E->hull();
        iv = {std::max(iv.lo, rh.lo), std::min(iv.hi, std::max(rh.hi, iv.lo))};
        if (iv.hi < iv.lo) iv = {iv.lo, iv.lo};
    }
    return iv;
}

Measure affine_pushforward(const Measure& mu, double scale, double shift) {
    if (!(scale > 0.0)) throw std::invalid_argument("affine_pushforward: scale must be positive");
    Measure out = mu;
    if (const auto* at = std::get_if<AtomicPart>(&mu.storage())) {
        AtomicPart p;
        for (const auto& a : at->atoms) p.atoms.push_back(Atom{scale * a.position + shift, a.weight});
        out = Measure(Measure::Variant{std::move(p)});
    } else if (const auto* d = std::get_if<DensityPart>(&mu.storage())) {
        GridFunction g(scale * d->samples.start() + shift, scale * d->samples.step(),
                       d->samples.values());
        g.scale(cplx{1.0 / scale, 0.0});
        out = Measure::density(std::move(g));
    } else if (const auto* ss = std::get_if<SelfSimilarPart>(&mu.storage())) {
        SelfSimilarPart p = *ss;
        for (auto& t : p.translations) t = scale * t + shift * (1.0 - p.ratio);
        p.window = {scale * p.window.lo + shift, scale * p.window.hi + shift};
        out = Measure(Measure::Variant{std::move(p)});
    } else {
        const auto& sum = std::get<SumPart>(mu.storage());
        std::vector<std::pair<cplx, Measure>> terms;
        for (const auto& t : sum.terms)
            terms.emplace_back(t.coefficient, affine_pushforward(*t.term, scale, shift));
        out = Measure::sum(std::move(terms));
    }
    if (mu.restriction()) {
        std::vector<Interval> ivs;
        for (const auto& r : mu.restriction()->parts())
            ivs.push_back({scale * r.lo + shift, scale * r.hi + shift});
        out = out.with_restriction(SetOfIntervals(std::move(ivs)));
    }
    if (mu.weight()) {
        const auto& w = *mu.weight();
        out = out.with_weight(GridFunction(scale * w.start() + shift, scale * w.step(), w.values()));
    }
    return out;
}

Measure scaled(const Measure& mu, cplx c) {
    return Measure::sum({{c, mu}});
}

namespace {

void flatten_into(const Measure& mu, cplx coef, std::vector<std::pair<cplx, Measure>>& out) {
    if (mu.is_sum() && !mu.weight()) {
        const auto& sum = std::get<SumPart>(mu.storage());
        for (const auto& t : sum.terms) {
            Measure child = *t.term;
            if (mu.restriction()) child = child.with_restriction(*mu.restriction());
            flatten_into(child, coef * t.coefficient, out);
        }
        return;
    }
    out.emplace_back(coef, mu);
}

}  // namespace

Measure flatten(const Measure& mu) {
    std::vector<std::pair<cplx, Measure>> leaves;
    flatten_into(mu, cplx{1.0, 0.0}, leaves);

    // Fold coefficients into atomic leaves and merge atoms at equal positions.
    std::map<double, cplx> merged_atoms;
    std::vector<std::pair<cplx, Measure>> rest;
    for (auto& [c, m] : leaves) {
        if (m.is_atomic() && !m.weight()) {
            const auto* E = restriction_ptr(m);
            for (const auto& a : std::get<AtomicPart>(m.storage()).atoms) {
                if (E && !E->contains(a.position)) continue;
                merged_atoms[a.position] += c * a.weight;
            }
        } else if (std::abs(c) != 0.0) {
            rest.emplace_back(c, m);
        }
    }
    AtomicPart ap;
    for (const auto& [pos, wt] : merged_atoms)
        if (std::abs(wt) != 0.0) ap.atoms.push_back(Atom{pos, wt});

    if (rest.empty()) return Measure(Measure::Variant{std::move(ap)});
    std::vector<std::pair<cplx, Measure>> terms;
    if (!ap.atoms.empty()) terms.emplace_back(cplx{1.0, 0.0}, Measure(Measure::Variant{std::move(ap)}));
    for (auto& r : rest) terms.push_back(std::move(r));
    if (terms.size() == 1 && std::abs(terms[0].first - cplx{1.0, 0.0}) == 0.0) return terms[0].second;
    return Measure::sum(std::move(terms));
}

}  // namespace mustar
