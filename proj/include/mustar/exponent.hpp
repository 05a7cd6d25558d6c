#pragma once

// Exponents p in [1, inf] together with the conjugate p' (1/p + 1/p' = 1,
// with the convention 1/inf = 0).

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mustar {

class ExponentPair {
public:
    explicit ExponentPair(double p) : p_(p) {
        if (std::isnan(p_) || p_ < 1.0)
            throw std::invalid_argument("ExponentPair: p must lie in [1, inf]");
        if (std::isinf(p_)) {
            conj_ = 1.0;
        } else if (p_ == 1.0) {
            conj_ = std::numeric_limits<double>::infinity();
        } else {
            conj_ = p_ / (p_ - 1.0);
        }
    }

    double p() const { return p_; }
    double conjugate() const { return conj_; }
    bool is_infinite() const { return std::isinf(p_); }
    ExponentPair dual() const { return ExponentPair(conj_); }

    // 1/p with the 1/inf = 0 convention.
    double inv() const { return is_infinite() ? 0.0 : 1.0 / p_; }

    std::string str() const {
        if (is_infinite()) return "inf";
        double r = p_;
        if (r == static_cast<long long>(r)) return std::to_string(static_cast<long long>(r));
        std::string s = std::to_string(r);
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }

    static ExponentPair infinity() { return ExponentPair(std::numeric_limits<double>::infinity()); }

    // Exponent from 1/p; inv = 0 means infinity.
    static ExponentPair from_inv(double inv) {
        if (inv < -1e-12 || inv > 1.0 + 1e-12)
            throw std::invalid_argument("ExponentPair::from_inv: 1/p must lie in [0, 1]");
        if (inv <= 1e-12) return infinity();
        return ExponentPair(1.0 / std::min(inv, 1.0));
    }

private:
    double p_;
    double conj_;
};

}  // namespace mustar
