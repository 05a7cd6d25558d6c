#pragma once

// Measure data model: finite complex measures on the real line, represented
// as atoms, grid densities, self-similar (IFS) measures, or weighted sums,
// optionally carrying a restriction set and a pointwise weight function.
// All operations are pure; Measure values are immutable and freely shareable.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "mustar/grid.hpp"
#include "mustar/intervals.hpp"

namespace mustar {

struct Atom {
    double position = 0.0;
    cplx weight{0.0, 0.0};
};

struct AtomicPart {
    std::vector<Atom> atoms;
};

struct DensityPart {
    GridFunction samples;  // d(mu) = g(x) dx on the sample window
};

// Attractor measure of the IFS  S_j(x) = ratio * x + translation_j  with
// probability weights; the canonical example is the middle-thirds Cantor
// measure (ratio 1/3, translations {0, 2/3}, weights {1/2, 1/2}).
struct SelfSimilarPart {
    double ratio = 1.0 / 3.0;
    std::vector<double> translations;
    std::vector<double> weights;
    Interval window{0.0, 1.0};
};

class Measure;

struct SumTerm {
    cplx coefficient{1.0, 0.0};
    std::shared_ptr<const Measure> term;
};

struct SumPart {
    std::vector<SumTerm> terms;
};

struct TotalVariation {
    double value = 0.0;
    bool exact = true;  // false: upper bound (cancellation across sum terms possible)
};

class Measure {
public:
    using Variant = std::variant<AtomicPart, DensityPart, SelfSimilarPart, SumPart>;

    Measure() : storage_(AtomicPart{}) {}
    explicit Measure(Variant v) : storage_(std::move(v)) { validate(); }

    static Measure zero() { return Measure(AtomicPart{}); }
    static Measure delta(double a, cplx weight = {1.0, 0.0}) {
        return Measure(AtomicPart{{Atom{a, weight}}});
    }
    static Measure atoms(std::vector<Atom> as) { return Measure(AtomicPart{std::move(as)}); }
    static Measure density(GridFunction g) { return Measure(DensityPart{std::move(g)}); }
    static Measure self_similar(double ratio, std::vector<double> translations,
                                std::vector<double> weights, Interval window) {
        return Measure(SelfSimilarPart{ratio, std::move(translations), std::move(weights), window});
    }
    static Measure cantor() {
        return self_similar(1.0 / 3.0, {0.0, 2.0 / 3.0}, {0.5, 0.5}, Interval{0.0, 1.0});
    }
    static Measure sum(std::vector<std::pair<cplx, Measure>> terms);

    const Variant& storage() const { return storage_; }
    const std::optional<SetOfIntervals>& restriction() const { return restriction_; }
    const std::shared_ptr<const GridFunction>& weight() const { return weight_; }

    bool is_atomic() const { return std::holds_alternative<AtomicPart>(storage_); }
    bool is_density() const { return std::holds_alternative<DensityPart>(storage_); }
    bool is_self_similar() const { return std::holds_alternative<SelfSimilarPart>(storage_); }
    bool is_sum() const { return std::holds_alternative<SumPart>(storage_); }

    Measure with_restriction(const SetOfIntervals& E) const;
    Measure with_weight(GridFunction w) const;

private:
    void validate() const;

    Variant storage_;
    std::optional<SetOfIntervals> restriction_;       // identity when absent
    std::shared_ptr<const GridFunction> weight_;      // pointwise factor when present
};

// ---- basic measure operations -------------------------------------------

TotalVariation total_variation(const Measure& mu);

Measure restrict(const Measure& mu, const SetOfIntervals& E);

// (f mu)(F) = integral over F of f dmu.
Measure scale_product(const GridFunction& f, const Measure& mu);

// Pairing against an arbitrary integrand (exact sums for atoms, trapezoid
// quadrature for densities, depth-K cell recursion for self-similar parts).
cplx integrate(const std::function<cplx(double)>& h, const Measure& mu, int depth);
cplx integrate(const GridFunction& h, const Measure& mu, int depth = 18);

// mu((t, +inf)) -- tail mass, used to evaluate BV functions.
cplx tail_mass(const Measure& mu, double t, int depth = 18);

// mu(E) for a finite union of intervals.
cplx set_mass(const Measure& mu, const SetOfIntervals& E, int depth = 18);

// Samples of (f * mu)(x) = integral of f(x - y) dmu(y); the output grid is
// f's grid widened by the support hull of mu (same step).
GridFunction convolve(const GridFunction& f, const Measure& mu, int depth = 14);

// Smallest interval carrying the (restricted) measure, up to grid/window size.
Interval support_hull(const Measure& mu);

// Pushforward under T(x) = scale * x + shift (scale != 0).
Measure affine_pushforward(const Measure& mu, double scale, double shift);

// Canonical form: sums flattened, coefficients folded into atoms, atoms at
// equal positions merged.  Idempotent.
Measure flatten(const Measure& mu);

// Multiply by a complex scalar.
Measure scaled(const Measure& mu, cplx c);

}  // namespace mustar
