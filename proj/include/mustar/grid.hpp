#pragma once

// Uniform complex-valued sample grids and the quadrature helpers used
// throughout the library.  A GridFunction is interpreted as the piecewise
// linear interpolant of its samples; all integrals below are exact for that
// interpolant (composite trapezoid).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mustar {

using cplx = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct GridSpec {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double point(std::size_t i) const { return start + step * static_cast<double>(i); }
    double end() const { return count == 0 ? start : point(count - 1); }

    // n points with node spacing (b-a)/(n-1), endpoints included.
    static GridSpec over(double a, double b, std::size_t n) {
        if (n < 2 || !(b > a)) throw std::invalid_argument("GridSpec::over: need n >= 2 and b > a");
        return GridSpec{a, (b - a) / static_cast<double>(n - 1), n};
    }
};

class GridFunction {
public:
    GridFunction() = default;
    GridFunction(double start, double step, std::vector<cplx> values)
        : start_(start), step_(step), values_(std::move(values)) {
        if (!(step_ > 0.0)) throw std::invalid_argument("GridFunction: step must be positive");
    }

    static GridFunction sample(const GridSpec& g, const std::function<cplx(double)>& f) {
        std::vector<cplx> v(g.count);
        for (std::size_t i = 0; i < g.count; ++i) v[i] = f(g.point(i));
        return GridFunction(g.start, g.step, std::move(v));
    }

    static GridFunction zeros(const GridSpec& g) {
        return GridFunction(g.start, g.step, std::vector<cplx>(g.count, cplx{0.0, 0.0}));
    }

    double start() const { return start_; }
    double step() const { return step_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    double x(std::size_t i) const { return start_ + step_ * static_cast<double>(i); }
    double x_end() const { return empty() ? start_ : x(size() - 1); }
    GridSpec spec() const { return GridSpec{start_, step_, size()}; }

    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    cplx operator[](std::size_t i) const { return values_[i]; }
    cplx& operator[](std::size_t i) { return values_[i]; }

    bool covers(double a, double b) const {
        return !empty() && start_ <= a + 1e-12 && x_end() >= b - 1e-12;
    }

    // Linear interpolation; zero outside the window.
    cplx interp(double xq) const {
        if (empty()) return {0.0, 0.0};
        const double u = (xq - start_) / step_;
        if (u < 0.0 || u > static_cast<double>(size() - 1)) return {0.0, 0.0};
        const auto i = static_cast<std::size_t>(u);
        if (i + 1 >= size()) return values_.back();
        const double t = u - static_cast<double>(i);
        return values_[i] * (1.0 - t) + values_[i + 1] * t;
    }

    // Trapezoid integral of the samples.
    cplx integral() const {
        if (size() < 2) return {0.0, 0.0};
        cplx acc = 0.5 * (values_.front() + values_.back());
        for (std::size_t i = 1; i + 1 < size(); ++i) acc += values_[i];
        return acc * step_;
    }

    // Trapezoid integral of |f|^p.
    double abs_power_integral(double p) const {
        if (size() < 2) return 0.0;
        auto term = [&](std::size_t i) { return std::pow(std::abs(values_[i]), p); };
        double acc = 0.5 * (term(0) + term(size() - 1));
        for (std::size_t i = 1; i + 1 < size(); ++i) acc += term(i);
        return acc * step_;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    double edge_abs() const {
        if (empty()) return 0.0;
        return std::max(std::abs(values_.front()), std::abs(values_.back()));
    }

    GridFunction& scale(cplx c) {
        for (auto& v : values_) v *= c;
        return *this;
    }

    GridFunction translated(double a) const {
        return GridFunction(start_ + a, step_, values_);
    }

private:
    double start_ = 0.0;
    double step_ = 1.0;
    std::vector<cplx> values_;
};

// Geometric grid on [xmin, xmax], used for the dyadic-block norms.
struct LogGrid {
    double xmin = 1e-3;
    double xmax = 1e3;
    std::size_t points = 200;

    std::vector<double> nodes() const {
        if (points < 2 || !(xmax > xmin) || !(xmin > 0.0))
            throw std::invalid_argument("LogGrid: need xmax > xmin > 0 and points >= 2");
        std::vector<double> xs(points);
        const double la = std::log(xmin), lb = std::log(xmax);
        for (std::size_t i = 0; i < points; ++i)
            xs[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(points - 1));
        xs.front() = xmin;
        xs.back() = xmax;
        return xs;
    }
};

// Trapezoid integral of y-samples over arbitrary sorted nodes.
inline double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        acc += 0.5 * (ys[i] + ys[i + 1]) * (xs[i + 1] - xs[i]);
    return acc;
}

}  // namespace mustar
