#pragma once

// Finite unions of disjoint half-open intervals [lo, hi).  The half-open
// convention decides atom membership deterministically.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mustar {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi > lo ? hi - lo : 0.0; }
    bool contains(double x) const { return x >= lo && x < hi; }
    bool empty() const { return !(hi > lo); }
    double mid() const { return 0.5 * (lo + hi); }
};

class SetOfIntervals {
public:
    SetOfIntervals() = default;

    explicit SetOfIntervals(std::vector<Interval> parts) {
        for (const auto& iv : parts) {
            if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
                throw std::invalid_argument("SetOfIntervals: endpoints must be finite");
            if (!iv.empty()) parts_.push_back(iv);
        }
        std::sort(parts_.begin(), parts_.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        // merge overlapping / touching pieces
        std::vector<Interval> merged;
        for (const auto& iv : parts_) {
            if (!merged.empty() && iv.lo <= merged.back().hi) {
                merged.back().hi = std::max(merged.back().hi, iv.hi);
            } else {
                merged.push_back(iv);
            }
        }
        parts_ = std::move(merged);
    }

    static SetOfIntervals single(double lo, double hi) {
        return SetOfIntervals(std::vector<Interval>{{lo, hi}});
    }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    double measure() const {
        double m = 0.0;
        for (const auto& iv : parts_) m += iv.length();
        return m;
    }

    bool contains(double x) const {
        for (const auto& iv : parts_) {
            if (x < iv.lo) return false;
            if (x < iv.hi) return true;
        }
        return false;
    }

    Interval hull() const {
        if (parts_.empty()) return {0.0, 0.0};
        return {parts_.front().lo, parts_.back().hi};
    }

    SetOfIntervals intersect(const SetOfIntervals& other) const {
        std::vector<Interval> out;
        std::size_t i = 0, j = 0;
        while (i < parts_.size() && j < other.parts_.size()) {
            const auto& a = parts_[i];
            const auto& b = other.parts_[j];
            const double lo = std::max(a.lo, b.lo);
            const double hi = std::min(a.hi, b.hi);
            if (hi > lo) out.push_back({lo, hi});
            if (a.hi < b.hi) ++i; else ++j;
        }
        return SetOfIntervals(std::move(out));
    }

    SetOfIntervals clip(const Interval& window) const {
        return intersect(SetOfIntervals(std::vector<Interval>{window}));
    }

    // Length of the overlap with [lo, hi).
    double overlap_length(double lo, double hi) const {
        double m = 0.0;
        for (const auto& iv : parts_) {
            const double a = std::max(lo, iv.lo);
            const double b = std::min(hi, iv.hi);
            if (b > a) m += b - a;
        }
        return m;
    }

    // Relation of [lo, hi) to the set: 0 disjoint, 1 contained, 2 partial.
    int classify(double lo, double hi) const {
        const double len = hi - lo;
        const double ov = overlap_length(lo, hi);
        if (ov <= 0.0) return 0;
        if (ov >= len * (1.0 - 1e-14)) return 1;
        return 2;
    }

private:
    std::vector<Interval> parts_;
};

}  // namespace mustar
