#include "mustar/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "mustar/detail/fft.hpp"

namespace mustar {

namespace {

cplx unit_phase(double angle) { return std::polar(1.0, angle); }

double sinc(double z) {
    if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

// ---- emitters ---------------------------------------------------------------

class Emitter {
public:
    virtual ~Emitter() = default;
    virtual void add_grid(double y0, double dy, std::span<cplx> out) const = 0;
    virtual cplx point(double y) const = 0;
    virtual double certified(double ymax) const = 0;
    virtual TransformMethod method() const = 0;
};

class AtomsEmitter final : public Emitter {
public:
    explicit AtomsEmitter(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        for (const auto& a : atoms_) abs_sum_ += std::abs(a.weight);
    }

    void add_grid(double y0, double dy, std::span<cplx> out) const override {
        for (const auto& a : atoms_) {
            cplx phase = unit_phase(-kTwoPi * a.position * y0);
            const cplx rot = unit_phase(-kTwoPi * a.position * dy);
            for (auto& o : out) {
                o += a.weight * phase;
                phase *= rot;
            }
        }
    }

    cplx point(double y) const override {
        cplx acc{0.0, 0.0};
        for (const auto& a : atoms_) acc += a.weight * unit_phase(-kTwoPi * a.position * y);
        return acc;
    }

    double certified(double) const override { return 1e-11 * abs_sum_; }
    TransformMethod method() const override { return TransformMethod::ClosedForm; }

private:
    std::vector<Atom> atoms_;
    double abs_sum_ = 0.0;
};

// Phase-corrected summation for a density sampled on a uniform grid, with a
// cached power-of-two FFT for aligned output grids (step kappa = 1/(h*M)).
class DensityEmitter final : public Emitter {
public:
    explicit DensityEmitter(GridFunction f, double extra_certified = 0.0)
        : f_(std::move(f)), extra_certified_(extra_certified) {
        // coefficient vector c_j = h * w_j * f_j with trapezoid weights
        const std::size_t n = f_.size();
        coef_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
            coef_[j] = f_.step() * w * f_[j];
        }
        M_ = std::max<std::size_t>(detail::next_pow2(n), 65536);
        kappa_ = 1.0 / (f_.step() * static_cast<double>(M_));
        // last-decade tail estimate, charged only when the edges have not decayed
        if (f_.edge_abs() > 1e-9) {
            const std::size_t dec = std::max<std::size_t>(n / 10, 1);
            for (std::size_t j = 0; j < dec && j < n; ++j)
                tail_estimate_ += (std::abs(f_[j]) + std::abs(f_[n - 1 - j])) * f_.step();
        }
    }

    double master_step() const { return kappa_; }

    void add_grid(double y0, double dy, std::span<cplx> out) const override {
        const double r = dy / kappa_;
        const double o = (y0 + 0.5 / f_.step()) / kappa_;  // offset from y_lo = -1/(2h)
        const double rr = std::round(r), ro = std::round(o);
        const bool aligned = std::abs(r - rr) < 1e-9 * std::max(1.0, std::abs(r)) &&
                             std::abs(o - ro) < 1e-6;
        if (aligned && rr >= 1.0) {
            ensure_master();
            const auto stride = static_cast<long long>(rr);
            auto idx = static_cast<long long>(ro);
            bool all_in = true;
            for (std::size_t i = 0; i < out.size(); ++i) {
                const long long k = idx + stride * static_cast<long long>(i);
                if (k < 0 || k >= static_cast<long long>(M_)) {
                    all_in = false;
                    break;
                }
            }
            if (all_in) {
                for (std::size_t i = 0; i < out.size(); ++i) {
                    const long long k = idx + stride * static_cast<long long>(i);
                    out[i] += master_[static_cast<std::size_t>(k)];
                }
                return;
            }
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += point(y0 + dy * static_cast<double>(i));
    }

    cplx point(double y) const override {
        cplx acc{0.0, 0.0};
        cplx rotor{1.0, 0.0};
        const cplx rot = unit_phase(-kTwoPi * f_.step() * y);
        for (std::size_t j = 0; j < coef_.size(); ++j) {
            acc += coef_[j] * rotor;
            rotor *= rot;
        }
        return acc * unit_phase(-kTwoPi * f_.start() * y);
    }

    double certified(double) const override {
        return tail_estimate_ + extra_certified_ + 1e-12 * f_.max_abs() * f_.step() * static_cast<double>(f_.size());
    }
    TransformMethod method() const override { return TransformMethod::Quadrature; }

private:
    void ensure_master() const {
        std::call_once(master_once_, [this] {
            std::vector<cplx> b(M_, cplx{0.0, 0.0});
            // y_lo = -1/(2h)  =>  exp(-2*pi*i*j*h*y_lo) = (-1)^j
            for (std::size_t j = 0; j < coef_.size(); ++j)
                b[j] = (j % 2 == 0) ? coef_[j] : -coef_[j];
            detail::fft_forward(b);
            master_.resize(M_);
            const double y_lo = -0.5 / f_.step();
            for (std::size_t m = 0; m < M_; ++m) {
                const double y = y_lo + kappa_ * static_cast<double>(m);
                master_[m] = b[m] * unit_phase(-kTwoPi * f_.start() * y);
            }
        });
    }

    GridFunction f_;
    std::vector<cplx> coef_;
    std::size_t M_ = 0;
    double kappa_ = 0.0;
    double tail_estimate_ = 0.0;
    double extra_certified_ = 0.0;
    mutable std::once_flag master_once_;
    mutable std::vector<cplx> master_;
};

// ---- self-similar closed form ------------------------------------------------

struct CanonicalAffine {
    bool ok = false;
    double scale = 1.0;   // mu = pushforward of the canonical Cantor measure
    double offset = 0.0;  // under x -> scale*x + offset
};

CanonicalAffine detect_canonical_cantor(const SelfSimilarPart& ss) {
    CanonicalAffine out;
    if (ss.translations.size() != 2 || ss.weights.size() != 2) return out;
    if (std::abs(ss.ratio - 1.0 / 3.0) > 1e-13) return out;
    if (std::abs(ss.weights[0] - 0.5) > 1e-13 || std::abs(ss.weights[1] - 0.5) > 1e-13) return out;
    const double s = ss.window.length();
    const double b = ss.window.lo;
    if (!(s > 0.0)) return out;
    double t0 = ss.translations[0], t1 = ss.translations[1];
    if (t0 > t1) std::swap(t0, t1);
    const double scale_tol = 1e-11 * (1.0 + std::abs(b) + s);
    if (std::abs(t0 - b * (2.0 / 3.0)) > scale_tol) return out;
    if (std::abs(t1 - (s * 2.0 / 3.0 + b * 2.0 / 3.0)) > scale_tol) return out;
    out.ok = true;
    out.scale = s;
    out.offset = b;
    return out;
}

// Full-measure transform of a self-similar part by the truncated product
// formula; returns the value, with truncation error bounded by cert(y).
struct SelfSimilarFormula {
    SelfSimilarPart part;
    CanonicalAffine canonical;
    int depth = 18;
    double mean = 0.0;  // first moment, closes the truncated recursion

    explicit SelfSimilarFormula(SelfSimilarPart p, int K) : part(std::move(p)), depth(K) {
        canonical = detect_canonical_cantor(part);
        double wt = 0.0;
        for (std::size_t j = 0; j < part.translations.size(); ++j)
            wt += part.weights[j] * part.translations[j];
        mean = wt / (1.0 - part.ratio);
    }

    cplx value(double y) const {
        if (canonical.ok) {
            const CantorPoint cp = cantor_product(canonical.scale * y, depth);
            return unit_phase(-kTwoPi * canonical.offset * y) * cp.value;
        }
        cplx acc{1.0, 0.0};
        double u = y;
        for (int k = 0; k < depth; ++k) {
            cplx p{0.0, 0.0};
            for (std::size_t j = 0; j < part.translations.size(); ++j)
                p += part.weights[j] * unit_phase(-kTwoPi * part.translations[j] * u);
            acc *= p;
            u *= part.ratio;
        }
        return acc * unit_phase(-kTwoPi * u * mean);
    }

    double cert(double ymax) const {
        const double rK = std::pow(part.ratio, depth);
        if (canonical.ok) return cantor_product(canonical.scale * ymax, depth).certified_error;
        const double d = part.window.length();
        return std::min(2.0, 0.5 * std::pow(kTwoPi * rK * ymax * d, 2.0));
    }
};

// Restricted / unrestricted self-similar transform via maximal inside cells:
// each cell S_w(window) contributes mass * exp(-2*pi*i*a_w*y) * F(r^d * y).
class SelfSimilarEmitter final : public Emitter {
public:
    struct Cell {
        double a = 0.0;
        int depth = 0;
        cplx mass{1.0, 0.0};
    };

    SelfSimilarEmitter(SelfSimilarPart part, cplx coef, const SetOfIntervals* E, int K)
        : formula_(part, K) {
        if (!E) {
            cells_.push_back(Cell{0.0, 0, coef});
        } else {
            decompose(part, *E, K, coef);
        }
        std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
            return a.depth < b.depth || (a.depth == b.depth && a.a < b.a);
        });
    }

    void add_grid(double y0, double dy, std::span<cplx> out) const override {
        std::vector<cplx> base(out.size());
        std::size_t i0 = 0;
        while (i0 < cells_.size()) {
            std::size_t i1 = i0;
            while (i1 < cells_.size() && cells_[i1].depth == cells_[i0].depth) ++i1;
            const double rd = std::pow(formula_.part.ratio, cells_[i0].depth);
            for (std::size_t m = 0; m < out.size(); ++m)
                base[m] = formula_.value(rd * (y0 + dy * static_cast<double>(m)));
            for (std::size_t c = i0; c < i1; ++c) {
                cplx phase = unit_phase(-kTwoPi * cells_[c].a * y0);
                const cplx rot = unit_phase(-kTwoPi * cells_[c].a * dy);
                for (std::size_t m = 0; m < out.size(); ++m) {
                    out[m] += cells_[c].mass * phase * base[m];
                    phase *= rot;
                }
            }
            i0 = i1;
        }
        for (const auto& a : boundary_atoms_) {
            cplx phase = unit_phase(-kTwoPi * a.position * y0);
            const cplx rot = unit_phase(-kTwoPi * a.position * dy);
            for (auto& o : out) {
                o += a.weight * phase;
                phase *= rot;
            }
        }
    }

    cplx point(double y) const override {
        cplx acc{0.0, 0.0};
        for (const auto& c : cells_)
            acc += c.mass * unit_phase(-kTwoPi * c.a * y) *
                   formula_.value(std::pow(formula_.part.ratio, c.depth) * y);
        for (const auto& a : boundary_atoms_) acc += a.weight * unit_phase(-kTwoPi * a.position * y);
        return acc;
    }

    double certified(double ymax) const override {
        double worst = 0.0;
        for (const auto& c : cells_)
            worst += std::abs(c.mass) *
                     formula_.cert(std::pow(formula_.part.ratio, c.depth) * ymax);
        return worst + boundary_mass_;
    }

    TransformMethod method() const override { return TransformMethod::IfsProduct; }

private:
    void decompose(const SelfSimilarPart& ss, const SetOfIntervals& E, int K, cplx coef) {
        struct Node {
            double a;
            int depth;
            double mass;
        };
        std::vector<Node> stack{{0.0, 0, 1.0}};
        while (!stack.empty()) {
            const Node n = stack.back();
            stack.pop_back();
            const double rd = std::pow(ss.ratio, n.depth);
            const Interval iv{n.a + rd * ss.window.lo, n.a + rd * ss.window.hi};
            const int cls = E.classify(iv.lo, iv.hi);
            if (cls == 0) continue;
            if (cls == 1) {
                cells_.push_back(Cell{n.a, n.depth, coef * n.mass});
                continue;
            }
            if (n.depth >= K) {
                // unresolved boundary leaf: keep as a point mass when its
                // midpoint lies in E, account for the mass either way
                if (E.contains(iv.mid())) boundary_atoms_.push_back(Atom{iv.mid(), coef * n.mass});
                boundary_mass_ += std::abs(coef) * n.mass;
                continue;
            }
            for (std::size_t j = 0; j < ss.translations.size(); ++j)
                stack.push_back(Node{n.a + rd * ss.translations[j], n.depth + 1, n.mass * ss.weights[j]});
        }
    }

    SelfSimilarFormula formula_;
    std::vector<Cell> cells_;
    std::vector<Atom> boundary_atoms_;
    double boundary_mass_ = 0.0;
};

class IndicatorEmitter final : public Emitter {
public:
    explicit IndicatorEmitter(SetOfIntervals E) : E_(std::move(E)) {}

    void add_grid(double y0, double dy, std::span<cplx> out) const override {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += point(y0 + dy * static_cast<double>(i));
    }

    cplx point(double y) const override {
        cplx acc{0.0, 0.0};
        for (const auto& iv : E_.parts()) {
            const double L = iv.length();
            acc += unit_phase(-0.5 * kTwoPi * (iv.lo + iv.hi) * y) * L * sinc(0.5 * kTwoPi * L * y);
        }
        return acc;
    }

    double certified(double) const override { return 1e-13 * E_.measure(); }
    TransformMethod method() const override { return TransformMethod::ClosedForm; }

private:
    SetOfIntervals E_;
};

// Spectral convolution (w*mu)-hat = w-hat * mu-hat for weighted singular parts.
class WeightedEmitter final : public Emitter {
public:
    WeightedEmitter(std::unique_ptr<Emitter> inner, const GridFunction& w, double inner_tv)
        : inner_(std::move(inner)), inner_tv_(inner_tv) {
        // sample w-hat on its master grid and truncate to the essential band
        DensityEmitter we(w);
        deta_ = we.master_step();
        const double band_target = 1e-9;
        // locate band by scanning outward from eta = 0
        const double eta_cap = 48.0;
        const auto half = static_cast<std::size_t>(eta_cap / deta_);
        std::vector<cplx> vals(2 * half + 1);
        we.add_grid(-static_cast<double>(half) * deta_, deta_, vals);
        double total = 0.0;
        for (const auto& v : vals) total += std::abs(v) * deta_;
        double tail = 0.0;
        std::size_t lo = 0, hi = vals.size() - 1;
        while (lo + 8 < hi) {
            const double next = tail + (std::abs(vals[lo]) + std::abs(vals[hi])) * deta_;
            if (next > band_target * std::max(total, 1e-30) + 1e-14) break;
            tail = next;
            ++lo;
            --hi;
        }
        // enforce an odd count for Simpson weights
        if ((hi - lo) % 2 != 0 && lo > 0) --lo;
        eta0_ = (static_cast<double>(lo) - static_cast<double>(half)) * deta_;
        q_.assign(vals.begin() + static_cast<long>(lo), vals.begin() + static_cast<long>(hi) + 1);
        for (std::size_t m = 0; m < q_.size(); ++m) {
            double sw = (m == 0 || m + 1 == q_.size()) ? 1.0 / 3.0 : (m % 2 == 1 ? 4.0 / 3.0 : 2.0 / 3.0);
            q_[m] *= sw * deta_;
        }
        band_tail_ = tail;
        for (const auto& v : q_) q_abs_sum_ += std::abs(v);
    }

    void add_grid(double y0, double dy, std::span<cplx> out) const override {
        const double ratio = dy / deta_;
        if (std::abs(ratio - 1.0) < 1e-9 && !q_.empty()) {
            const std::size_t nw = q_.size();
            std::vector<cplx> ext(out.size() + nw - 1, cplx{0.0, 0.0});
            // y_i - eta_m = (y0 - eta_max) + (i + (nw-1-m)) * dy
            const double ext0 = y0 - (eta0_ + static_cast<double>(nw - 1) * deta_);
            inner_->add_grid(ext0, dy, ext);
            for (std::size_t i = 0; i < out.size(); ++i) {
                cplx acc{0.0, 0.0};
                for (std::size_t m = 0; m < nw; ++m) acc += q_[m] * ext[i + (nw - 1 - m)];
                out[i] += acc;
            }
            return;
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += point(y0 + dy * static_cast<double>(i));
    }

    cplx point(double y) const override {
        cplx acc{0.0, 0.0};
        for (std::size_t m = 0; m < q_.size(); ++m)
            acc += q_[m] * inner_->point(y - (eta0_ + static_cast<double>(m) * deta_));
        return acc;
    }

    double certified(double ymax) const override {
        const double eta_max = std::abs(eta0_) + static_cast<double>(q_.size()) * deta_;
        return inner_->certified(ymax + eta_max) * q_abs_sum_ + band_tail_ * inner_tv_ +
               1e-8 * q_abs_sum_ * inner_tv_;
    }

    TransformMethod method() const override { return TransformMethod::Quadrature; }

private:
    std::unique_ptr<Emitter> inner_;
    double inner_tv_ = 1.0;
    double deta_ = 0.0;
    double eta0_ = 0.0;
    std::vector<cplx> q_;
    double q_abs_sum_ = 0.0;
    double band_tail_ = 0.0;
};

}  // namespace

// ---- cantor product -----------------------------------------------------------

CantorPoint cantor_product(double y, int depth) {
    if (depth < 1) throw std::invalid_argument("cantor_product: depth must be >= 1");
    double prod = 1.0;
    double p3 = 1.0;
    for (int k = 1; k <= depth; ++k) {
        p3 /= 3.0;
        prod *= std::cos(kTwoPi * y * p3);
    }
    const cplx phase = unit_phase(-M_PI * y * (1.0 - p3));
    // product tail: |1 - prod_{k>depth} cos(2*pi*y/3^k)| <= (2*pi*y)^2 * 3^(-2*depth) / 4
    const double tail_prod = 0.25 * std::pow(kTwoPi * y * p3, 2.0);
    // phase tail: truncated phase vs the limit exp(-pi*i*y)
    const double tail_phase = M_PI * std::abs(y) * p3;
    CantorPoint out;
    out.value = phase * prod;
    out.certified_error = std::min(2.0, tail_prod + tail_phase);
    return out;
}

// ---- Spectrum ------------------------------------------------------------------

class Spectrum::Impl {
public:
    std::vector<std::unique_ptr<Emitter>> emitters;

    void eval_grid(double y0, double dy, std::span<cplx> out) const {
        std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
        for (const auto& e : emitters) e->add_grid(y0, dy, out);
    }

    cplx eval_point(double y) const {
        cplx acc{0.0, 0.0};
        for (const auto& e : emitters) acc += e->point(y);
        return acc;
    }

    double certified(double ymax) const {
        double acc = 0.0;
        for (const auto& e : emitters) acc += e->certified(ymax);
        return acc;
    }

    TransformMethod method() const {
        TransformMethod m = TransformMethod::ClosedForm;
        for (const auto& e : emitters) {
            if (e->method() == TransformMethod::Quadrature) return TransformMethod::Quadrature;
            if (e->method() == TransformMethod::IfsProduct) m = TransformMethod::IfsProduct;
        }
        return m;
    }
};

void Spectrum::eval_grid(double y0, double dy, std::span<cplx> out) const {
    impl_->eval_grid(y0, dy, out);
}
cplx Spectrum::eval_point(double y) const { return impl_->eval_point(y); }
double Spectrum::certified_error(double ymax) const { return impl_->certified(ymax); }
TransformMethod Spectrum::method() const { return impl_->method(); }

namespace {

constexpr double kStandardStep = 1.0 / 256.0;

// Resample a density onto the standard step (exact for refinements whose new
// nodes start at the same origin).
GridFunction standardize_density(const GridFunction& g, double* resample_err) {
    if (std::abs(g.step() - kStandardStep) < 1e-15) {
        if (resample_err) *resample_err = 0.0;
        return g;
    }
    const double span = g.x_end() - g.start();
    const auto count = static_cast<std::size_t>(std::ceil(span / kStandardStep)) + 1;
    GridFunction out = GridFunction::sample(GridSpec{g.start(), kStandardStep, count},
                                            [&](double x) { return g.interp(x); });
    if (resample_err) {
        if (g.step() > kStandardStep * (1.0 - 1e-12)) {
            // refinement of the interpolant: exact up to rounding
            *resample_err = 1e-13 * g.max_abs() * span;
        } else {
            double kink = 0.0;
            for (std::size_t i = 1; i + 1 < g.size(); ++i)
                kink += std::abs(g[i + 1] - 2.0 * g[i] + g[i - 1]);
            *resample_err = 0.125 * kStandardStep * kink;
        }
    }
    return out;
}

// Clip a density grid to [lo, hi] plus one pad cell on each side; keeps the
// sample step, dropping far-away (restricted-out or zero) stretches.
GridFunction clip_to_window(const GridFunction& g, double lo, double hi) {
    if (g.size() < 2) return g;
    const auto first = static_cast<long long>(std::floor((lo - g.start()) / g.step())) - 1;
    const auto last = static_cast<long long>(std::ceil((hi - g.start()) / g.step())) + 1;
    const auto a = static_cast<std::size_t>(std::clamp<long long>(first, 0, static_cast<long long>(g.size()) - 1));
    const auto b = static_cast<std::size_t>(std::clamp<long long>(last, 0, static_cast<long long>(g.size()) - 1));
    if (a == 0 && b + 1 == g.size()) return g;
    std::vector<cplx> vals(g.values().begin() + static_cast<long>(a),
                           g.values().begin() + static_cast<long>(b) + 1);
    return GridFunction(g.x(a), g.step(), std::move(vals));
}

// Fold a restriction into density samples by cell-average coverage.
GridFunction apply_coverage(const GridFunction& g, const SetOfIntervals& E, double* err) {
    GridFunction out = g;
    double e = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double lo = out.x(i) - 0.5 * out.step();
        const double hi = out.x(i) + 0.5 * out.step();
        const double cov = E.overlap_length(lo, hi) / (hi - lo);
        if (cov < 1.0 - 1e-14 && cov > 1e-14) e += std::abs(out[i]) * out.step();
        out[i] *= cov;
    }
    if (err) *err = 0.5 * e;
    return out;
}

void collect_emitters(const Measure& mu, cplx coef, int depth, Spectrum::Impl& impl,
                      std::vector<Atom>& atom_pool) {
    const auto* E = mu.restriction() ? &*mu.restriction() : nullptr;

    if (const auto* at = std::get_if<AtomicPart>(&mu.storage())) {
        for (const auto& a : at->atoms) {
            if (E && !E->contains(a.position)) continue;
            cplx w = coef * a.weight;
            if (mu.weight()) w *= mu.weight()->interp(a.position);
            atom_pool.push_back(Atom{a.position, w});
        }
        return;
    }
    if (const auto* d = std::get_if<DensityPart>(&mu.storage())) {
        double err1 = 0.0, err2 = 0.0;
        GridFunction g = d->samples;
        if (mu.weight()) {
            for (std::size_t i = 0; i < g.size(); ++i) g[i] *= mu.weight()->interp(g.x(i));
        }
        if (E && !E->empty()) {
            // clip before standardizing, so narrow restrictions of wide (or
            // rescaled) grids do not blow up the resample size
            const Interval h = E->hull();
            g = clip_to_window(g, h.lo, h.hi);
        }
        g = standardize_density(g, &err1);
        if (E) g = apply_coverage(g, *E, &err2);
        g.scale(coef);
        impl.emitters.push_back(std::make_unique<DensityEmitter>(std::move(g), (err1 + err2) * std::abs(coef)));
        return;
    }
    if (const auto* ss = std::get_if<SelfSimilarPart>(&mu.storage())) {
        auto inner = std::make_unique<SelfSimilarEmitter>(*ss, coef, E, depth);
        if (mu.weight()) {
            Measure bare(Measure::Variant{*ss});
            const double tv =
                std::abs(coef) * (E ? total_variation(bare.with_restriction(*E)).value : 1.0);
            impl.emitters.push_back(
                std::make_unique<WeightedEmitter>(std::move(inner), *mu.weight(), tv));
        } else {
            impl.emitters.push_back(std::move(inner));
        }
        return;
    }
    const auto& sum = std::get<SumPart>(mu.storage());
    for (const auto& t : sum.terms) {
        Measure child = *t.term;
        if (E) child = child.with_restriction(*E);
        if (mu.weight()) child = child.with_weight(*mu.weight());
        collect_emitters(child, coef * t.coefficient, depth, impl, atom_pool);
    }
}

}  // namespace

Spectrum make_spectrum(const Measure& mu, int depth) {
    auto impl = std::make_shared<Spectrum::Impl>();
    std::vector<Atom> atom_pool;
    collect_emitters(mu, cplx{1.0, 0.0}, depth, *impl, atom_pool);
    if (!atom_pool.empty())
        impl->emitters.push_back(std::make_unique<AtomsEmitter>(std::move(atom_pool)));
    return Spectrum(std::move(impl));
}

Spectrum make_spectrum(const GridFunction& f) {
    auto impl = std::make_shared<Spectrum::Impl>();
    double err = 0.0;
    impl->emitters.push_back(std::make_unique<DensityEmitter>(standardize_density(f, &err), err));
    return Spectrum(std::move(impl));
}

Spectrum make_spectrum(const SetOfIntervals& E) {
    auto impl = std::make_shared<Spectrum::Impl>();
    impl->emitters.push_back(std::make_unique<IndicatorEmitter>(E));
    return Spectrum(std::move(impl));
}

// ---- public transform entry points ------------------------------------------------

namespace {

TransformResult sample_spectrum(const Spectrum& s, const GridSpec& ygrid) {
    std::vector<cplx> vals(ygrid.count);
    s.eval_grid(ygrid.start, ygrid.step, vals);
    TransformResult out;
    out.grid = GridFunction(ygrid.start, ygrid.step, std::move(vals));
    out.method = s.method();
    out.certified_error = s.certified_error(std::max(std::abs(ygrid.start), std::abs(ygrid.end())));
    return out;
}

}  // namespace

TransformResult fourier_function(const GridFunction& f, const GridSpec& ygrid) {
    return sample_spectrum(make_spectrum(f), ygrid);
}

TransformResult fourier_stieltjes(const Measure& mu, const GridSpec& ygrid, int depth) {
    return sample_spectrum(make_spectrum(mu, depth), ygrid);
}

TransformResult fourier_interval_union(const SetOfIntervals& E, const GridSpec& ygrid) {
    return sample_spectrum(make_spectrum(E), ygrid);
}

GridFunction inverse_transform(const GridFunction& spectrum_samples, const GridSpec& xgrid) {
    const std::size_t ny = spectrum_samples.size();
    const double dy = spectrum_samples.step();
    const double y0 = spectrum_samples.start();
    GridFunction out = GridFunction::zeros(xgrid);

    // FFT fast path when dy * dx * M == 1 for a power-of-two M >= ny and the
    // requested x grid indexes into the conjugate master grid
    const std::size_t M = detail::next_pow2(std::max<std::size_t>(ny, 2));
    const double dx_master = 1.0 / (dy * static_cast<double>(M));
    const double r = xgrid.step / dx_master;
    const double rr = std::round(r);
    if (std::abs(r - rr) < 1e-9 && rr >= 1.0) {
        // c_j = sum_m v'_m exp(+2*pi*i*m*j/M), x_j = x_lo + j*dx_master, x_lo = -1/(2*dy)
        std::vector<cplx> b(M, cplx{0.0, 0.0});
        const double x_lo = -0.5 / dy;
        for (std::size_t m = 0; m < ny; ++m) {
            double w = (m == 0 || m + 1 == ny) ? 0.5 : 1.0;
            // exp(+2*pi*i*y_m*x_lo) with y_m = y0 + m*dy; dy*x_lo = -1/2 -> (-1)^m
            const cplx ph = unit_phase(kTwoPi * y0 * x_lo) * ((m % 2 == 0) ? 1.0 : -1.0);
            b[m] = spectrum_samples[m] * w * dy * ph;
        }
        // inverse-sign DFT via conjugation
        for (auto& v : b) v = std::conj(v);
        detail::fft_forward(b);
        for (auto& v : b) v = std::conj(v);
        const double o = (xgrid.start - x_lo) / dx_master;
        const double ro = std::round(o);
        if (std::abs(o - ro) < 1e-6) {
            bool all_in = true;
            for (std::size_t j = 0; j < xgrid.count; ++j) {
                const long long k = static_cast<long long>(ro) + static_cast<long long>(rr) * static_cast<long long>(j);
                if (k < 0 || k >= static_cast<long long>(M)) {
                    all_in = false;
                    break;
                }
            }
            if (all_in) {
                for (std::size_t j = 0; j < xgrid.count; ++j) {
                    const auto k = static_cast<std::size_t>(static_cast<long long>(ro) +
                                                            static_cast<long long>(rr) * static_cast<long long>(j));
                    const double x = xgrid.point(j);
                    out[j] = b[k] * unit_phase(kTwoPi * y0 * (x - x_lo));
                }
                return out;
            }
        }
    }

    for (std::size_t j = 0; j < xgrid.count; ++j) {
        const double x = xgrid.point(j);
        cplx acc{0.0, 0.0};
        cplx rotor{1.0, 0.0};
        const cplx rot = unit_phase(kTwoPi * dy * x);
        for (std::size_t m = 0; m < ny; ++m) {
            double w = (m == 0 || m + 1 == ny) ? 0.5 : 1.0;
            acc += spectrum_samples[m] * w * rotor;
            rotor *= rot;
        }
        out[j] = acc * dy * unit_phase(kTwoPi * y0 * x);
    }
    return out;
}

}  // namespace mustar
