#pragma once

// Fourier transforms of grid functions and Fourier-Stieltjes transforms of
// measures.  Forward convention exp(-2*pi*i*x*y) throughout; the inverse uses
// exp(+2*pi*i*x*y).  Closed forms are dispatched where they exist (atoms,
// self-similar product formula, interval indicators); densities go through
// phase-corrected summation with an FFT fast path on aligned grids.

#include <memory>
#include <span>
#include <vector>

#include "mustar/grid.hpp"
#include "mustar/intervals.hpp"
#include "mustar/measure.hpp"

namespace mustar {

enum class TransformMethod { ClosedForm, Quadrature, IfsProduct };

struct TransformResult {
    GridFunction grid;  // samples of the transform on the requested y grid
    TransformMethod method = TransformMethod::Quadrature;
    double certified_error = 0.0;
};

// Truncated product formula for the middle-thirds Cantor measure transform:
// exp(-pi*i*y*(1-3^-depth)) * prod_{k=1..depth} cos(2*pi*y/3^k).
// certified_error bounds the distance to the exact (infinite-depth) value.
struct CantorPoint {
    cplx value{0.0, 0.0};
    double certified_error = 0.0;
};
CantorPoint cantor_product(double y, int depth);

// Spectrum: a reusable sampler of mu-hat (or f-hat).  eval_grid fills
// out[i] = transform(y0 + i*dy); uniform grids hit the fast paths.
class Spectrum {
public:
    class Impl;
    explicit Spectrum(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    void eval_grid(double y0, double dy, std::span<cplx> out) const;
    cplx eval_point(double y) const;
    double certified_error(double ymax = 256.0) const;
    TransformMethod method() const;

private:
    std::shared_ptr<const Impl> impl_;
};

Spectrum make_spectrum(const Measure& mu, int depth = 18);
Spectrum make_spectrum(const GridFunction& f);
Spectrum make_spectrum(const SetOfIntervals& E);

// f-hat(y) = integral f(x) exp(-2*pi*i*x*y) dx for the piecewise-linear
// interpolant of f (trapezoid weights, phase-corrected).
TransformResult fourier_function(const GridFunction& f, const GridSpec& ygrid);

// mu-hat(y) = integral exp(-2*pi*i*x*y) dmu(x).
TransformResult fourier_stieltjes(const Measure& mu, const GridSpec& ygrid, int depth = 18);

// Exact transform of a finite union of intervals.
TransformResult fourier_interval_union(const SetOfIntervals& E, const GridSpec& ygrid);

// Inverse transform samples of a spectrum given on a uniform y grid:
// g(x) = sum_m values[m] * exp(+2*pi*i*y_m*x) * dy  (trapezoid in y).
GridFunction inverse_transform(const GridFunction& spectrum_samples, const GridSpec& xgrid);

}  // namespace mustar
