#include "qnoise/araki_woods.hpp"

#include <cmath>

#include "qnoise/errors.hpp"

namespace qnoise {

bool validate_gaussian(const GaussianSpec& spec, double tol) {
    return spec.n >= 0.0 && std::norm(spec.m) <= spec.n * (spec.n + 1.0) + tol;
}

SplitCoefficients scalar_split(const GaussianSpec& spec, double tol) {
    if (!validate_gaussian(spec, tol)) {
        throw DomainError("scalar_split: (n, m) violates |m|^2 <= n(n+1)");
    }
    if (spec.n == 0.0) return {1.0, 0.0, {0.0, 0.0}};
    const double y = std::sqrt(spec.n);
    const double x2 = spec.n + 1.0 - std::norm(spec.m) / spec.n;
    return {std::sqrt(std::max(x2, 0.0)), y, spec.m / y};
}

SplitResiduals split_residuals(const SplitCoefficients& s, const GaussianSpec& spec) {
    const double x2 = s.x * s.x, y2 = s.y * s.y, z2 = std::norm(s.z);
    return {std::abs(x2 - y2 + z2 - 1.0), std::abs(x2 + z2 - (spec.n + 1.0)),
            std::abs(s.y * s.z - spec.m)};
}

OperatorGaussianSpec OperatorGaussianSpec::from_scalar(const GaussianSpec& spec) {
    Operator n(1, 1), m(1, 1);
    n(0, 0) = spec.n;
    m(0, 0) = std::conj(spec.m);
    return {n, m, {}};
}

OperatorSplit operator_split(const OperatorGaussianSpec& spec, double tol) {
    const Operator& n = spec.N;
    const Operator& m = spec.M;
    if (!is_square(n) || m.rows() != n.rows() || m.cols() != n.cols()) {
        throw ShapeError("operator_split: N and M must be square of equal size");
    }
    if (!is_psd(n, tol)) throw DomainError("operator_split: N is not positive semidefinite");
    if (const double c = op_norm(commutator(n, m)); c > tol) {
        throw CommutationError("operator_split: ||[N, M]|| = " + std::to_string(c));
    }

    const Operator kernel =
        hermitian_function(n, [tol](double v) { return std::abs(v) <= tol ? 1.0 : 0.0; });
    if (const double k = op_norm(m * kernel); k > tol) {
        throw KernelError("operator_split: M is nonzero on ker N (" + std::to_string(k) + ")");
    }
    const Operator id = identity(static_cast<std::size_t>(n.rows()));
    const Operator bound = n * (n + id) - m.adjoint() * m;
    if (!is_psd(hermitian_part(bound), tol)) {
        throw DomainError("operator_split: M^dagger M exceeds N(N+1)");
    }

    OperatorSplit out;
    out.Y = mat_sqrt_psd(n, tol);
    const Operator y_pinv =
        hermitian_function(n, [tol](double v) { return v <= tol ? 0.0 : 1.0 / std::sqrt(v); });
    out.Z = y_pinv * m;
    out.X = mat_sqrt_psd(hermitian_part(n + id - out.Z.adjoint() * out.Z), tol);
    return out;
}

Operator fock_annihilator(std::size_t cutoff) {
    const auto c = static_cast<Eigen::Index>(cutoff);
    Operator a = Operator::Zero(c, c);
    for (Eigen::Index k = 1; k < c; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

std::size_t fock_dimension(std::size_t modes, std::size_t cutoff) {
    std::size_t dim = 1;
    for (std::size_t k = 0; k < modes; ++k) dim *= cutoff;
    return dim;
}

Operator mode_annihilator(std::size_t mode, std::size_t modes, std::size_t cutoff) {
    if (mode >= modes) throw ShapeError("mode_annihilator: mode index out of range");
    Operator out = Operator::Identity(1, 1);
    for (std::size_t k = 0; k < modes; ++k) {
        out = kron(out, k == mode ? fock_annihilator(cutoff) : identity(cutoff));
    }
    return out;
}

Operator represent_annihilator(const Vector& phi, const OperatorSplit& split,
                               const Conjugation& j, std::size_t cutoff) {
    const auto k = static_cast<std::size_t>(phi.size());
    if (k == 0 || split.X.rows() != phi.size() || split.Y.rows() != phi.size() ||
        split.Z.rows() != phi.size()) {
        throw ShapeError("represent_annihilator: test vector and split dimensions differ");
    }
    if (cutoff < 2) throw ShapeError("represent_annihilator: cutoff must be at least 2");

    const Vector x_phi = split.X * phi;
    const Vector jy_phi = j.apply(split.Y * phi);
    const Vector z_phi = split.Z * phi;

    const std::size_t side = fock_dimension(k, cutoff);
    Operator a1 = Operator::Zero(static_cast<Eigen::Index>(side), static_cast<Eigen::Index>(side));
    Operator a2 = a1;
    for (std::size_t l = 0; l < k; ++l) {
        const Operator b = mode_annihilator(l, k, cutoff);
        const auto li = static_cast<Eigen::Index>(l);
        // A(ψ) = Σ conj(ψ_l) b_l and A†(ψ) = Σ ψ_l b_l†.
        a1 += std::conj(x_phi(li)) * b;
        a2 += jy_phi(li) * b.adjoint() + std::conj(z_phi(li)) * b;
    }
    const Operator id = identity(side);
    return kron(a1, id) + kron(id, a2);
}

cplx double_vacuum_expectation(const Operator& op) {
    return op(0, 0);
}

DoubledMoments doubled_moments(const Vector& phi, const Vector& psi, const OperatorSplit& split,
                               const Conjugation& j, std::size_t cutoff) {
    const Operator a_phi = represent_annihilator(phi, split, j, cutoff);
    const Operator a_psi = represent_annihilator(psi, split, j, cutoff);
    return {double_vacuum_expectation(a_phi * a_psi.adjoint()),
            double_vacuum_expectation(a_phi * a_psi),
            double_vacuum_expectation(a_phi.adjoint() * a_psi.adjoint())};
}

std::string moment_convention(const OperatorGaussianSpec& spec, const Vector& phi,
                              std::size_t cutoff, double tol) {
    const OperatorSplit split = operator_split(spec, tol);
    const cplx measured = doubled_moments(phi, phi, split, spec.j, cutoff).a_adag;
    const cplx with_n = phi.dot(spec.N * phi);
    const cplx with_n1 = with_n + phi.squaredNorm();
    if (std::abs(measured - with_n1) <= tol) return "N+1";
    if (std::abs(measured - with_n) <= tol) return "N";
    return "neither";
}

} // namespace qnoise
