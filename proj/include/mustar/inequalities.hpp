#pragma once

// Verification harness: each inequality of the measure-Lp theory becomes a
// check producing an InequalityReport; randomized suites sweep these checks.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mustar/exponent.hpp"
#include "mustar/measure.hpp"
#include "mustar/norms.hpp"

namespace mustar {

enum class CheckStatus { Conclusive, Inconclusive, ConsistentDivergent };

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 1.0;  // multiplicative constant already folded into rhs
    double slack = 0.0;          // rhs - lhs
    double relative_slack = 0.0;
    double tolerance = 1e-6;
    bool pass = false;
    CheckStatus status = CheckStatus::Conclusive;
    std::string inputs_digest;
    std::string note;
    std::map<std::string, double> extras;

    static InequalityReport make(std::string name, double lhs, double rhs, double constant,
                                 double tolerance, std::string digest);
};

// FNV-1a digest of a canonical input description, recorded for reproducibility.
std::string digest(const std::string& canonical);

// ---- single checks ---------------------------------------------------------

// ||f mu||*_r <= ||f||_{L-hat^q} ||mu||*_p  with 1/r = 1/q + 1/p.
InequalityReport check_holder(const Measure& mu, const GridFunction& f, const ExponentPair& p,
                              const ExponentPair& q, const AdaptiveOptions& opts = {},
                              std::string digest_hint = {});

// ||mu-hat||_{p'} <= ||mu||_p*  for p in [1,2]; with the duality estimator the
// two sides share the computation, so the report doubles as a consistency
// check and records the dictionary lower bound.
InequalityReport check_hausdorff_young(const Measure& mu, const ExponentPair& p,
                                       const Dictionary& dict, const AdaptiveOptions& opts = {},
                                       std::string digest_hint = {});

// ||f * mu||_{L-hat^r} <= ||f||_{L-hat^q} ||mu||_p*  with 1/r = 1/p + 1/q - 1
// (the relation used in the proof; see decisions ledger).
InequalityReport check_young(const Measure& mu, const GridFunction& f, const ExponentPair& p,
                             const ExponentPair& q, const AdaptiveOptions& opts = {},
                             std::string digest_hint = {});

// Constants of sin(pi t)/(pi t): numeric L^s norm, the elementary bound
// (2s'/pi)^{1/s}, and the sharp bound sqrt(2/s) for the normalized integral
// (1/pi) * integral |sin t / t|^s dt when s >= 2.
struct SincConstants {
    double s = 2.0;
    double numeric_norm = 0.0;            // C_s = || sin(pi .)/(pi .) ||_s
    double ballint = 0.0;                 // (1/pi) integral |sin t / t|^s dt
    double paper_bound = 0.0;             // (2s'/pi)^{1/s}, 1 at s = inf
    std::optional<double> ball_bound;     // sqrt(2/s) for s >= 2
};
SincConstants sinc_constant(double s);

// ||mu||*_{p,E} <= ||chi_{[-R,R]}||_{L-hat^q} ||mu||*_{r,E}, q = rp/(r-p);
// the constant is the convention-consistent C_{q'} (2R)^{1/q} (see ledger).
InequalityReport check_embedding_blocks(const Measure& mu, const Interval& E, const ExponentPair& p,
                                        const ExponentPair& r, double R,
                                        const AdaptiveOptions& opts = {},
                                        std::string digest_hint = {});

// ||mu||*_{p,E} <= ||mu||_q* |E|^{1/r}, 1/r = 1/p - 1/q.
InequalityReport check_set_bound(const Measure& mu, const SetOfIntervals& E, const ExponentPair& p,
                                 const ExponentPair& q, const AdaptiveOptions& opts = {},
                                 std::string digest_hint = {});

// Per-block form of the V*_{p1} -> V*_{p2} embedding; returns the block
// reports followed by one aggregated report with the measured constant.
std::vector<InequalityReport> check_vpstar_embedding(const Measure& mu_f, const ExponentPair& p1,
                                                     const ExponentPair& p2, const LogGrid& blocks,
                                                     const AdaptiveOptions& opts = {},
                                                     std::string digest_hint = {});

// ---- randomized inputs -------------------------------------------------------

class RandomInputs {
public:
    explicit RandomInputs(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);
    cplx unit_complex();

    Measure atoms(int max_atoms = 5);
    Measure gaussian_mixture_density(int max_bumps = 3);
    Measure cantor_component();
    // kinds: bitmask 1 = atoms, 2 = density, 4 = cantor
    Measure measure(unsigned kinds);
    GridFunction smooth_function(int max_bumps = 3);
    SetOfIntervals interval_union(int max_parts = 4, double lo = -6.0, double hi = 6.0);

    std::string describe_last() const { return last_description_; }

private:
    std::uint64_t next_raw();
    std::uint64_t state_;
    std::string last_description_;
};

}  // namespace mustar
