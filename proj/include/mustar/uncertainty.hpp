#pragma once

// Desk-scale discrete analog of the uncertainty principle: time-frequency
// limiting operators on an N-point cyclic grid, their singular values, the
// annihilating-pair constant, and the annihilation inequality for vectors
// supported on a time set.

#include <optional>
#include <vector>

#include "mustar/grid.hpp"
#include "mustar/inequalities.hpp"

namespace mustar {

struct IndexSet {
    int N = 0;
    std::vector<int> indices;  // sorted, distinct, within [0, N)

    IndexSet() = default;
    IndexSet(int n, std::vector<int> idx);
    std::size_t size() const { return indices.size(); }
    bool contains(int i) const;

    static IndexSet all(int n);
    static IndexSet arithmetic(int n, int start, int stride);
};

struct LimitingOperator {
    int N = 0;
    IndexSet E;  // frequency set
    IndexSet F;  // time set
    std::vector<double> singular_values;  // descending, in [0, 1]

    double sigma() const { return singular_values.empty() ? 0.0 : singular_values.front(); }
    double donoho_stark_envelope() const;
};

// Singular values of P_F o DFT_N o P_E (dense SVD; N capped at 2048).
LimitingOperator build_limiting_operator(int N, const IndexSet& E, const IndexSet& F);

// Discrete annihilation inequality: for mu supported in F,
// ||mu||_2 <= (1 - sigma^2)^(-1/2) ||mu-hat||_{l2(E^c)}.
InequalityReport measure_annihilation_check(const std::vector<cplx>& weights, const IndexSet& E,
                                            const IndexSet& F);

struct NoDoubleSupportReport {
    int N = 0;
    double sigma = 0.0;
    double one_minus_sigma_sq = 0.0;
    bool zero_kernel = false;
    std::optional<std::vector<cplx>> witness;       // time vector with transform in E
    double witness_offset_mass = 0.0;               // l2 mass of the witness transform off E
    std::string note;
};

// Certifies that only the zero vector is supported in F with transform in E
// (sigma < 1), or produces the kernel witness where the discrete model
// departs from the continuum statement (e.g. picket fences).
NoDoubleSupportReport no_double_support(int N, const IndexSet& E, const IndexSet& F);

// Unitary DFT of a length-N vector: (1/sqrt(N)) sum_j v_j exp(-2 pi i jk/N).
std::vector<cplx> unitary_dft(const std::vector<cplx>& v);

}  // namespace mustar
