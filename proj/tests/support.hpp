// support.hpp — random generators and independent oracles for the test suites
//
// Nothing here calls into the code paths it is used to check: the Taylor
// series, hand-written superoperators and index loops are separate routes.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "qnoise/lindblad.hpp"

namespace qnoise::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Operator random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Operator m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = {g(rng), g(rng)};
    return m;
}

inline Operator random_operator(Rng& rng, std::size_t d, double scale = 1.0) {
    return random_matrix(rng, d, d, scale);
}

inline Operator random_hermitian(Rng& rng, std::size_t d, double scale = 1.0) {
    const Operator a = random_operator(rng, d, scale);
    return 0.5 * (a + a.adjoint());
}

inline Vector random_vector(Rng& rng, std::size_t d) {
    return random_matrix(rng, d, 1).col(0);
}

inline Operator random_density(Rng& rng, std::size_t d) {
    const Operator r = random_operator(rng, d);
    const Operator rho = r * r.adjoint();
    return rho / rho.trace();
}

/// Uniform valid (n, m); boundary forces |m|² = n(n+1).
inline NoiseParams random_noise(Rng& rng, bool boundary = false) {
    NoiseParams p;
    p.gamma = uniform(rng, 0.5, 2.0);
    p.sigma = uniform(rng, -1.0, 1.0);
    p.n = uniform(rng, 0.0, 3.0);
    const double rmax = std::sqrt(p.n * (p.n + 1.0));
    const double r = boundary ? rmax : uniform(rng, 0.0, 1.0) * rmax;
    p.m = std::polar(r, uniform(rng, -M_PI, M_PI));
    p.alpha = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    return p;
}

inline SystemModel random_model(Rng& rng, std::size_t d) {
    return {random_operator(rng, d, 0.7), random_hermitian(rng, d), random_noise(rng)};
}

inline Operator sigma_minus() {
    Operator s = Operator::Zero(2, 2);
    s(0, 1) = 1.0; // index 0 = ground, 1 = excited
    return s;
}

inline Operator sigma_z() {
    Operator s = Operator::Zero(2, 2);
    s(0, 0) = -1.0;
    s(1, 1) = 1.0;
    return s;
}

inline SystemModel qubit_damping(double gamma, double n = 0.0, cplx m = {}) {
    NoiseParams p;
    p.gamma = gamma;
    p.n = n;
    p.m = m;
    return {sigma_minus(), Operator::Zero(2, 2), p};
}

/// Σ_k A^k / k! until the terms stop contributing.
inline Operator taylor_exp(const Operator& a, int terms = 80) {
    Operator sum = Operator::Identity(a.rows(), a.cols());
    Operator term = sum;
    for (int k = 1; k < terms; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

/// Superoperator of X ↦ A X B built entry by entry from its action on matrix
/// units (no Kronecker identity involved).
inline Eigen::MatrixXcd brute_superop(const std::function<Operator(const Operator&)>& map,
                                      std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXcd s(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            Operator e = Operator::Zero(n, n);
            e(i, j) = 1.0;
            const Operator img = map(e);
            for (Eigen::Index c = 0; c < n; ++c)
                for (Eigen::Index r = 0; r < n; ++r) s(r + n * c, i + n * j) = img(r, c);
        }
    }
    return s;
}

/// Amplitude-damping Liouvillian ϱ ↦ γ(σ₋ϱσ₊ − ½{σ₊σ₋, ϱ}) typed in by hand for
/// the column-stacked basis (ϱ00, ϱ10, ϱ01, ϱ11), index 1 = excited.
inline Eigen::MatrixXcd amplitude_damping_liouvillian(double gamma) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(4, 4);
    s(0, 3) = gamma;          // ϱ00' = γ ϱ11
    s(1, 1) = -0.5 * gamma;   // ϱ10' = −γ/2 ϱ10
    s(2, 2) = -0.5 * gamma;   // ϱ01' = −γ/2 ϱ01
    s(3, 3) = -gamma;         // ϱ11' = −γ ϱ11
    return s;
}

inline double max_abs(const Eigen::MatrixXcd& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

} // namespace qnoise::testing
