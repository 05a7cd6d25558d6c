#include "mustar/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace mustar {

IndexSet::IndexSet(int n, std::vector<int> idx) : N(n), indices(std::move(idx)) {
    if (N < 2) throw std::invalid_argument("IndexSet: N must be >= 2");
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (int i : indices)
        if (i < 0 || i >= N) throw std::invalid_argument("IndexSet: index out of range");
}

bool IndexSet::contains(int i) const {
    return std::binary_search(indices.begin(), indices.end(), i);
}

IndexSet IndexSet::all(int n) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    return IndexSet(n, std::move(idx));
}

IndexSet IndexSet::arithmetic(int n, int start, int stride) {
    std::vector<int> idx;
    for (int i = start; i < n; i += stride) idx.push_back(i);
    return IndexSet(n, std::move(idx));
}

double LimitingOperator::donoho_stark_envelope() const {
    return std::sqrt(static_cast<double>(E.size()) * static_cast<double>(F.size()) /
                     static_cast<double>(N));
}

namespace {

Eigen::MatrixXcd dft_submatrix(int N, const IndexSet& rows, const IndexSet& cols) {
    Eigen::MatrixXcd M(rows.size(), cols.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b) {
            const double ang = -kTwoPi * static_cast<double>(rows.indices[a]) *
                               static_cast<double>(cols.indices[b]) / static_cast<double>(N);
            M(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                scale * std::polar(1.0, ang);
        }
    return M;
}

}  // namespace

std::vector<cplx> unitary_dft(const std::vector<cplx>& v) {
    const std::size_t N = v.size();
    std::vector<cplx> out(N, cplx{0.0, 0.0});
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t k = 0; k < N; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < N; ++j) {
            const double ang = -kTwoPi * static_cast<double>(j) * static_cast<double>(k) /
                               static_cast<double>(N);
            acc += v[j] * std::polar(1.0, ang);
        }
        out[k] = scale * acc;
    }
    return out;
}

LimitingOperator build_limiting_operator(int N, const IndexSet& E, const IndexSet& F) {
    if (N < 2) throw std::invalid_argument("build_limiting_operator: N must be >= 2");
    if (N > 2048) throw std::invalid_argument("build_limiting_operator: N capped at 2048");
    if (E.N != N || F.N != N)
        throw std::invalid_argument("build_limiting_operator: index sets must match N");
    if (E.indices.empty() || F.indices.empty())
        throw std::invalid_argument("build_limiting_operator: E and F must be nonempty");

    const Eigen::MatrixXcd M = dft_submatrix(N, F, E);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    LimitingOperator op;
    op.N = N;
    op.E = E;
    op.F = F;
    op.singular_values.assign(svd.singularValues().data(),
                              svd.singularValues().data() + svd.singularValues().size());
    return op;
}

InequalityReport measure_annihilation_check(const std::vector<cplx>& weights, const IndexSet& E,
                                            const IndexSet& F) {
    const int N = F.N;
    if (static_cast<int>(weights.size()) != N)
        throw std::invalid_argument("measure_annihilation_check: weights must have length N");
    for (int j = 0; j < N; ++j)
        if (std::abs(weights[static_cast<std::size_t>(j)]) > 0.0 && !F.contains(j))
            throw std::invalid_argument("measure_annihilation_check: weights must vanish off F");

    std::string dg = digest("annihilation|N=" + std::to_string(N) +
                            "|E=" + std::to_string(E.size()) + "|F=" + std::to_string(F.size()));

    double sigma = 0.0;
    if (!E.indices.empty()) {
        sigma = build_limiting_operator(N, E, F).sigma();
    }
    if (sigma >= 1.0 - 1e-9) {
        InequalityReport rep = InequalityReport::make("measure-annihilation", 0.0, 0.0, 0.0, 1e-9, dg);
        rep.status = CheckStatus::Inconclusive;
        rep.pass = false;
        rep.note = "sigma too close to 1; constant blows up";
        rep.extras["sigma"] = sigma;
        return rep;
    }

    const std::vector<cplx> spec = unitary_dft(weights);
    double l2 = 0.0, l2_off_E = 0.0;
    for (int k = 0; k < N; ++k) {
        const double a2 = std::norm(weights[static_cast<std::size_t>(k)]);
        l2 += a2;
        if (!E.contains(k)) l2_off_E += std::norm(spec[static_cast<std::size_t>(k)]);
    }
    const double C = 1.0 / std::sqrt(1.0 - sigma * sigma);
    InequalityReport rep = InequalityReport::make("measure-annihilation", std::sqrt(l2),
                                                  C * std::sqrt(l2_off_E), C, 1e-9, dg);
    rep.extras["sigma"] = sigma;
    return rep;
}

NoDoubleSupportReport no_double_support(int N, const IndexSet& E, const IndexSet& F) {
    NoDoubleSupportReport rep;
    rep.N = N;
    if (E.indices.empty() || F.indices.empty()) {
        rep.zero_kernel = true;
        rep.one_minus_sigma_sq = 1.0;
        rep.note = "empty set: trivially annihilating";
        return rep;
    }
    // rows E, cols F: A v = (transform of the time vector v) restricted to E
    const Eigen::MatrixXcd A = dft_submatrix(N, E, F);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinV);
    rep.sigma = svd.singularValues()(0);
    rep.one_minus_sigma_sq = 1.0 - rep.sigma * rep.sigma;
    rep.zero_kernel = rep.sigma < 1.0 - 1e-9;
    if (rep.zero_kernel) {
        rep.note = "sigma < 1: no nonzero vector supported in F has transform supported in E";
        return rep;
    }
    // kernel witness: embed the top right singular vector into the time domain
    const Eigen::VectorXcd v = svd.matrixV().col(0);
    std::vector<cplx> witness(static_cast<std::size_t>(N), cplx{0.0, 0.0});
    for (std::size_t b = 0; b < F.size(); ++b)
        witness[static_cast<std::size_t>(F.indices[b])] = v(static_cast<Eigen::Index>(b));
    const std::vector<cplx> spec = unitary_dft(witness);
    double off = 0.0;
    for (int k = 0; k < N; ++k)
        if (!E.contains(k)) off += std::norm(spec[static_cast<std::size_t>(k)]);
    rep.witness = std::move(witness);
    rep.witness_offset_mass = std::sqrt(off);
    rep.note = "sigma = 1: discrete model departs from the continuum statement; witness attached";
    return rep;
}

}  // namespace mustar
