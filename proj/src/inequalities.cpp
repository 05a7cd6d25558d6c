#include "mustar/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mustar {

namespace {

double protect(double x) { return std::max(std::abs(x), 1e-300); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

InequalityReport InequalityReport::make(std::string name, double lhs, double rhs, double constant,
                                        double tolerance, std::string dg) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant_used = constant;
    r.tolerance = tolerance;
    r.inputs_digest = std::move(dg);
    if (std::isinf(lhs) && std::isinf(rhs)) {
        r.slack = 0.0;
        r.relative_slack = 0.0;
        r.pass = true;
    } else {
        r.slack = rhs - lhs;
        r.relative_slack = r.slack / protect(rhs);
        r.pass = lhs <= rhs * (1.0 + tolerance) + 1e-300;
    }
    return r;
}

std::string digest(const std::string& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---- Hoelder ---------------------------------------------------------------------

InequalityReport check_holder(const Measure& mu, const GridFunction& f, const ExponentPair& p,
                              const ExponentPair& q, const AdaptiveOptions& opts,
                              std::string digest_hint) {
    const double inv_r = p.inv() + q.inv();
    if (inv_r > 1.0 + 1e-12)
        throw std::invalid_argument("check_holder: need 1/p + 1/q <= 1");
    const ExponentPair r = ExponentPair::from_inv(inv_r);

    const NormResult fq = hat_norm(f, q, opts);
    const NormResult sp = star_norm(mu, p, opts);
    const std::string dg = digest(digest_hint + "|holder|p=" + fmt(p.p()) + "|q=" + fmt(q.p()));

    if (fq.divergent || sp.divergent) {
        InequalityReport rep = InequalityReport::make("holder", 0.0, std::numeric_limits<double>::infinity(),
                                                      1.0, 1e-6, dg);
        rep.status = CheckStatus::Inconclusive;
        rep.pass = false;
        rep.note = "divergent right-hand side";
        return rep;
    }

    const NormResult lhs = star_norm(scale_product(f, mu), r, opts);
    const double rhs = fq.value * sp.value;
    const double cert = lhs.certified_error + fq.certified_error * sp.value +
                        sp.certified_error * fq.value;
    const double tol = 1e-6 + cert / protect(rhs);
    InequalityReport rep = InequalityReport::make("holder", lhs.value, rhs, 1.0, tol, dg);
    rep.extras["p"] = p.p();
    rep.extras["q"] = q.p();
    rep.extras["r"] = r.p();
    rep.extras["hat_norm_f"] = fq.value;
    rep.extras["star_norm_mu"] = sp.value;
    if (lhs.divergent) {
        rep.status = CheckStatus::Inconclusive;
        rep.pass = false;
        rep.note = "left side flagged divergent against finite right side";
    }
    return rep;
}

// ---- Hausdorff-Young --------------------------------------------------------------

InequalityReport check_hausdorff_young(const Measure& mu, const ExponentPair& p,
                                       const Dictionary& dict, const AdaptiveOptions& opts,
                                       std::string digest_hint) {
    if (p.p() > 2.0 + 1e-12)
        throw std::invalid_argument("check_hausdorff_young: needs p in [1, 2]");
    const std::string dg = digest(digest_hint + "|hy|p=" + fmt(p.p()));
    const NormResult sn = star_norm(mu, p, opts);

    if (sn.divergent) {
        InequalityReport rep =
            InequalityReport::make("hausdorff-young", std::numeric_limits<double>::infinity(),
                                   std::numeric_limits<double>::infinity(), 1.0, 1e-6, dg);
        rep.status = CheckStatus::ConsistentDivergent;
        rep.note = "both sides divergent (consistent)";
        return rep;
    }

    // Duality estimator: lhs and rhs share the computation; the dictionary
    // lower bound supplies the independent route.
    InequalityReport rep = InequalityReport::make("hausdorff-young", sn.value, sn.value, 1.0, 1e-6, dg);
    if (!sn.diagnostics.partial_norms.empty())
        rep.extras["windowed_norm"] = sn.diagnostics.partial_norms.back() *
                                      (std::isinf(p.conjugate())
                                           ? 1.0
                                           : std::pow(sn.diagnostics.scale_factor, 1.0 / p.conjugate()));
    const LowerBoundResult lb = star_norm_lower(mu, p, dict, opts);
    rep.extras["lower_bound"] = lb.value;
    rep.extras["gap"] = (sn.value - lb.value) / protect(sn.value);
    rep.note = lb.witness;
    const double tol = 1e-6 + (sn.certified_error + 1e-9) / protect(sn.value);
    if (lb.value > sn.value * (1.0 + tol)) {
        rep.pass = false;
        rep.note = "dictionary lower bound exceeds the duality value: " + lb.witness;
    }
    rep.extras["p1_caveat"] = sn.p1_caveat ? 1.0 : 0.0;
    return rep;
}

// ---- Young ----------------------------------------------------------------------------

InequalityReport check_young(const Measure& mu, const GridFunction& f, const ExponentPair& p,
                             const ExponentPair& q, const AdaptiveOptions& opts,
                             std::string digest_hint) {
    const double inv_r = p.inv() + q.inv() - 1.0;
    if (inv_r < -1e-12 || inv_r > 1.0 + 1e-12)
        throw std::invalid_argument("check_young: need 1 <= 1/p + 1/q <= 2");
    const ExponentPair r = ExponentPair::from_inv(std::max(inv_r, 0.0));

    const NormResult fq = hat_norm(f, q, opts);
    const NormResult sp = star_norm(mu, p, opts);
    const std::string dg = digest(digest_hint + "|young|p=" + fmt(p.p()) + "|q=" + fmt(q.p()));

    if (fq.divergent || sp.divergent) {
        InequalityReport rep = InequalityReport::make("young", 0.0, std::numeric_limits<double>::infinity(),
                                                      1.0, 1e-6, dg);
        rep.status = CheckStatus::Inconclusive;
        rep.pass = false;
        rep.note = "divergent right-hand side";
        return rep;
    }

    const GridFunction conv = convolve(f, mu);
    const NormResult lhs = hat_norm(conv, r, opts);
    const double rhs = fq.value * sp.value;
    const double cert = lhs.certified_error + fq.certified_error * sp.value +
                        sp.certified_error * fq.value;
    const double tol = 1e-6 + cert / protect(rhs);
    InequalityReport rep = InequalityReport::make("young", lhs.value, rhs, 1.0, tol, dg);
    rep.extras["p"] = p.p();
    rep.extras["q"] = q.p();
    rep.extras["r"] = r.p();
    if (lhs.divergent) {
        rep.status = CheckStatus::Inconclusive;
        rep.pass = false;
        rep.note = "left side flagged divergent against finite right side";
    }
    return rep;
}

// ---- sinc constants ----------------------------------------------------------------------

SincConstants sinc_constant(double s) {
    if (!(s > 1.0)) throw std::invalid_argument("sinc_constant: requires s > 1");
    SincConstants out;
    out.s = s;
    if (std::isinf(s)) {
        out.numeric_norm = 1.0;
        out.ballint = 1.0;
        out.paper_bound = 1.0;
        return out;
    }
    const double T = 500.0 * M_PI;
    const double h = s < 2.0 ? 1.0 / 2048.0 : 1.0 / 512.0;
    const auto n = static_cast<std::size_t>(T / h);
    auto f = [&](double t) {
        if (t < 1e-12) return 1.0;
        return std::pow(std::abs(std::sin(t) / t), s);
    };
    double acc = 0.5 * (f(0.0) + f(T));
    for (std::size_t i = 1; i < n; ++i) acc += f(h * static_cast<double>(i));
    acc *= h;
    // tail: mean of |sin|^s over a period times t^{-s}
    const double mean_s = std::exp(std::lgamma(0.5 * (s + 1.0)) - std::lgamma(0.5 * s + 1.0)) /
                          std::sqrt(M_PI);
    const double tail = mean_s * std::pow(T, 1.0 - s) / (s - 1.0);
    const double integral = 2.0 * (acc + tail);  // over the whole line
    out.ballint = integral / M_PI;
    out.numeric_norm = std::pow(out.ballint, 1.0 / s);
    const double sprime = s / (s - 1.0);
    out.paper_bound = std::pow(2.0 * sprime / M_PI, 1.0 / s);
    if (s >= 2.0) out.ball_bound = std::sqrt(2.0 / s);
    return out;
}

// ---- embedding blocks -----------------------------------------------------------------------

namespace {

// Bound for || sin(pi .)/(pi .) ||_s from the elementary split.
double sinc_norm_bound(double s) {
    if (std::isinf(s)) return 1.0;
    const double sprime = s / (s - 1.0);
    return std::pow(2.0 * sprime / M_PI, 1.0 / s);
}

}  // namespace

InequalityReport check_embedding_blocks(const Measure& mu, const Interval& E, const ExponentPair& p,
                                        const ExponentPair& r, double R, const AdaptiveOptions& opts,
                                        std::string digest_hint) {
    if (!(p.p() < r.p()))
        throw std::invalid_argument("check_embedding_blocks: needs p < r");
    if (E.lo < -R - 1e-12 || E.hi > R + 1e-12)
        throw std::invalid_argument("check_embedding_blocks: E must lie in [-R, R]");
    const double inv_q = p.inv() - r.inv();
    const ExponentPair q = ExponentPair::from_inv(inv_q);
    const ExponentPair qp = q.dual();

    const SetOfIntervals Eset = SetOfIntervals::single(E.lo, E.hi);
    const NormResult rn = restricted_star_norm(mu, r, Eset, opts);
    const std::string dg = digest(digest_hint + "|embed|p=" + fmt(p.p()) + "|r=" + fmt(r.p()) +
                                  "|R=" + fmt(R));
    if (rn.divergent) {
        InequalityReport rep = InequalityReport::make("embedding-blocks", 0.0,
                                                      std::numeric_limits<double>::infinity(), 1.0,
                                                      1e-6, dg);
        rep.status = CheckStatus::Inconclusive;
        rep.note = "divergent restricted r-norm";
        rep.pass = false;
        return rep;
    }
    const NormResult ln = restricted_star_norm(mu, p, Eset, opts);
    // || chi_{[-R,R]} ||_{L-hat^q} = || (chi)-hat ||_{q'} = C_{q'} (2R)^{1/q}
    const double constant = sinc_norm_bound(qp.p()) * std::pow(2.0 * R, q.inv());
    const double rhs = constant * rn.value;
    const double cert = ln.certified_error + rn.certified_error * constant;
    const double tol = 1e-6 + cert / protect(rhs);
    InequalityReport rep = InequalityReport::make("embedding-blocks", ln.value, rhs, constant, tol, dg);
    rep.extras["q"] = q.p();
    // the paper's literal constant C_q R^{1/q'}, recorded for comparison
    rep.extras["paper_literal_constant"] = sinc_norm_bound(q.p()) * std::pow(R, qp.inv());
    if (ln.divergent) {
        rep.pass = false;
        rep.status = CheckStatus::Inconclusive;
        rep.note = "finite r-norm with divergent p-norm (violates the inclusion)";
    }
    return rep;
}

InequalityReport check_set_bound(const Measure& mu, const SetOfIntervals& E, const ExponentPair& p,
                                 const ExponentPair& q, const AdaptiveOptions& opts,
                                 std::string digest_hint) {
    if (p.p() > q.p() + 1e-12)
        throw std::invalid_argument("check_set_bound: needs p <= q");
    const double inv_r = p.inv() - q.inv();
    const NormResult qn = star_norm(mu, q, opts);
    const std::string dg = digest(digest_hint + "|setbound|p=" + fmt(p.p()) + "|q=" + fmt(q.p()));
    if (qn.divergent) {
        InequalityReport rep = InequalityReport::make("set-bound", 0.0,
                                                      std::numeric_limits<double>::infinity(), 1.0,
                                                      1e-6, dg);
        rep.status = CheckStatus::Inconclusive;
        rep.note = "divergent q-norm";
        rep.pass = false;
        return rep;
    }
    const NormResult ln = restricted_star_norm(mu, p, E, opts);
    const double factor = std::pow(E.measure(), inv_r);
    const double rhs = qn.value * factor;
    const double tol = 1e-6 + (ln.certified_error + qn.certified_error * factor) / protect(rhs);
    InequalityReport rep = InequalityReport::make("set-bound", ln.value, rhs, factor, tol, dg);
    rep.extras["set_measure"] = E.measure();
    return rep;
}

std::vector<InequalityReport> check_vpstar_embedding(const Measure& mu_f, const ExponentPair& p1,
                                                     const ExponentPair& p2, const LogGrid& blocks,
                                                     const AdaptiveOptions& opts,
                                                     std::string digest_hint) {
    if (!(p1.p() > p2.p() && p2.p() > 1.0))
        throw std::invalid_argument("check_vpstar_embedding: needs p1 > p2 > 1");
    const double inv_q = p2.inv() - p1.inv();  // 1/q = (p1 - p2)/(p1 p2)
    const ExponentPair q = ExponentPair::from_inv(inv_q);
    const ExponentPair qp = q.dual();
    const Interval hull = support_hull(mu_f);

    std::vector<InequalityReport> reports;
    double worst_ratio = 0.0;
    const double tv_total = total_variation(mu_f).value;
    for (double x : blocks.nodes()) {
        if (2.0 * x <= hull.lo || x >= hull.hi) continue;
        const SetOfIntervals block = SetOfIntervals::single(x, 2.0 * x);
        const Measure restricted = restrict(mu_f, block);
        if (total_variation(restricted).value <= 1e-13 * std::max(tv_total, 1.0)) continue;
        const NormResult n1 = star_norm(restricted, p1, opts);
        const NormResult n2 = star_norm(restricted, p2, opts);
        const std::string dg =
            digest(digest_hint + "|vps-block|x=" + fmt(x) + "|p1=" + fmt(p1.p()) + "|p2=" + fmt(p2.p()));
        if (n1.divergent || n2.divergent) {
            InequalityReport rep = InequalityReport::make(
                "vpstar-embedding-block", n2.value, std::numeric_limits<double>::infinity(), 1.0,
                1e-6, dg);
            rep.status = CheckStatus::Inconclusive;
            rep.extras["x"] = x;
            reports.push_back(std::move(rep));
            continue;
        }
        const double constant = sinc_norm_bound(qp.p()) * std::pow(4.0 * x, q.inv());
        const double rhs = constant * n1.value;
        const double tol = 1e-6 + (n2.certified_error + n1.certified_error * constant) / protect(rhs);
        InequalityReport rep =
            InequalityReport::make("vpstar-embedding-block", n2.value, rhs, constant, tol, dg);
        rep.extras["x"] = x;
        if (n1.value > 0.0) worst_ratio = std::max(worst_ratio, n2.value / n1.value);
        reports.push_back(std::move(rep));
    }

    const NormResult vp1 = vp_star_norm_measure(mu_f, p1, blocks, opts);
    const NormResult vp2 = vp_star_norm_measure(mu_f, p2, blocks, opts);
    const std::string dg = digest(digest_hint + "|vps-agg|p1=" + fmt(p1.p()) + "|p2=" + fmt(p2.p()));
    const double measured = vp1.value > 0.0 ? vp2.value / vp1.value : 0.0;
    InequalityReport agg = InequalityReport::make("vpstar-embedding", vp2.value,
                                                  std::max(measured, 1.0) * vp1.value,
                                                  std::max(measured, 1.0), 1e-6, dg);
    agg.extras["vp1"] = vp1.value;
    agg.extras["vp2"] = vp2.value;
    agg.extras["measured_constant"] = measured;
    agg.extras["worst_block_ratio"] = worst_ratio;
    agg.note = "embedding constant measured, not asserted";
    if (vp1.divergent || vp2.divergent) {
        agg.status = CheckStatus::Inconclusive;
        agg.pass = false;
    }
    reports.push_back(std::move(agg));
    return reports;
}

// ---- randomized inputs -------------------------------------------------------------------------

std::uint64_t RandomInputs::next_raw() {
    // splitmix64: fully specified, platform independent
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double RandomInputs::uniform(double lo, double hi) {
    const double u = static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

int RandomInputs::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_raw() % static_cast<std::uint64_t>(hi - lo + 1));
}

cplx RandomInputs::unit_complex() {
    const double phi = uniform(0.0, kTwoPi);
    return std::polar(1.0, phi);
}

Measure RandomInputs::atoms(int max_atoms) {
    const int n = uniform_int(1, max_atoms);
    std::vector<Atom> as;
    std::ostringstream d;
    d << "atoms[";
    for (int i = 0; i < n; ++i) {
        const double pos = uniform(-4.0, 4.0);
        const cplx w = uniform(0.2, 1.5) * unit_complex();
        as.push_back(Atom{pos, w});
        d << "(" << fmt(pos) << "," << fmt(w.real()) << "," << fmt(w.imag()) << ")";
    }
    d << "]";
    last_description_ = d.str();
    return Measure::atoms(std::move(as));
}

Measure RandomInputs::gaussian_mixture_density(int max_bumps) {
    const int n = uniform_int(1, max_bumps);
    struct Bump {
        double c, s;
        cplx a;
    };
    std::vector<Bump> bumps;
    std::ostringstream d;
    d << "gaussmix[";
    for (int i = 0; i < n; ++i) {
        Bump b{uniform(-3.0, 3.0), uniform(0.4, 1.6), uniform(0.3, 1.2) * unit_complex()};
        bumps.push_back(b);
        d << "(" << fmt(b.c) << "," << fmt(b.s) << ")";
    }
    d << "]";
    last_description_ = d.str();
    const GridSpec gs{-8.0, 1.0 / 256.0, 4096};
    return Measure::density(GridFunction::sample(gs, [&](double x) {
        cplx acc{0.0, 0.0};
        for (const auto& b : bumps) acc += b.a * std::exp(-M_PI * (x - b.c) * (x - b.c) / (b.s * b.s));
        return acc;
    }));
}

Measure RandomInputs::cantor_component() {
    const double scale = uniform(0.5, 2.0);
    const double shift = uniform(-2.0, 2.0);
    last_description_ = "cantor[s=" + fmt(scale) + ",t=" + fmt(shift) + "]";
    return affine_pushforward(Measure::cantor(), scale, shift);
}

Measure RandomInputs::measure(unsigned kinds) {
    std::vector<std::pair<cplx, Measure>> parts;
    std::ostringstream d;
    const double roll = uniform(0.0, 1.0);
    auto add = [&](Measure m, cplx c) {
        d << last_description_ << ";";
        parts.emplace_back(c, std::move(m));
    };
    const bool can_atoms = kinds & 1u;
    const bool can_density = kinds & 2u;
    const bool can_cantor = kinds & 4u;
    if (can_atoms && (!can_density || roll < 0.3)) add(atoms(), cplx{1.0, 0.0});
    if (can_density && (roll >= 0.3 || !can_atoms) && roll < 0.85) add(gaussian_mixture_density(), cplx{1.0, 0.0});
    if (can_cantor && roll >= 0.85) add(cantor_component(), uniform(0.4, 1.2) * unit_complex());
    if (parts.empty()) add(gaussian_mixture_density(), cplx{1.0, 0.0});
    last_description_ = d.str();
    if (parts.size() == 1 && parts[0].first == cplx{1.0, 0.0}) return parts[0].second;
    return Measure::sum(std::move(parts));
}

GridFunction RandomInputs::smooth_function(int max_bumps) {
    Measure m = gaussian_mixture_density(max_bumps);
    return std::get<DensityPart>(m.storage()).samples;
}

SetOfIntervals RandomInputs::interval_union(int max_parts, double lo, double hi) {
    const int n = uniform_int(1, max_parts);
    std::vector<double> pts;
    for (int i = 0; i < 2 * n; ++i) pts.push_back(uniform(lo, hi));
    std::sort(pts.begin(), pts.end());
    std::vector<Interval> ivs;
    std::ostringstream d;
    d << "set[";
    for (int i = 0; i < n; ++i) {
        ivs.push_back({pts[2 * i], pts[2 * i + 1]});
        d << "[" << fmt(pts[2 * i]) << "," << fmt(pts[2 * i + 1]) << ")";
    }
    d << "]";
    last_description_ = d.str();
    return SetOfIntervals(std::move(ivs));
}

}  // namespace mustar
