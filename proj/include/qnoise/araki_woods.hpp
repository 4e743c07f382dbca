// araki_woods.hpp — Gaussian states as vacua of a doubled Fock space
//
// A single mode with moments ⟨a⟩ = α, ⟨aa†⟩ = n+1, ⟨aa⟩ = m is represented as
//   a = x a1 + y a2† + z a2 + α
// on two vacuum modes, with x = √(n+1−|m|²/n), y = √n, z = m/√n. The operator
// version replaces (n, m) by commuting (N, M) on a finite one-particle space.

#pragma once

#include <cstddef>
#include <string>

#include "qnoise/linalg.hpp"

namespace qnoise {

struct GaussianSpec {
    double n = 0.0;
    cplx m{0.0, 0.0};
    cplx alpha{0.0, 0.0};
};

/// |m|² ≤ n(n+1) + tol (and n ≥ 0).
bool validate_gaussian(const GaussianSpec& spec, double tol = kDefaultTol);

struct SplitCoefficients {
    double x = 1.0;
    double y = 0.0;
    cplx z{0.0, 0.0};
};

struct SplitResiduals {
    double commutation = 0.0; // | |x|²−|y|²+|z|² − 1 |
    double occupation = 0.0;  // | |x|²+|z|² − (n+1) |
    double squeezing = 0.0;   // | yz − m |
};

/// x, y on the nonnegative branch, phase carried by z; n = 0 gives (1, 0, 0).
SplitCoefficients scalar_split(const GaussianSpec& spec, double tol = kDefaultTol);
SplitResiduals split_residuals(const SplitCoefficients& split, const GaussianSpec& spec);

/// Antilinear conjugation j: entrywise complex conjugation in the
/// computational basis of the one-particle space.
struct Conjugation {
    Vector apply(const Vector& v) const { return v.conjugate(); }
    std::string describe() const { return "entrywise complex conjugation, computational basis"; }
};

struct OperatorGaussianSpec {
    Operator N;
    Operator M;
    Conjugation j;

    /// One-mode spec whose doubled annihilator A(e₁) equals x a1 + y a2† + z a2.
    /// A(φ) is antilinear in φ, so this uses M = conj(m).
    static OperatorGaussianSpec from_scalar(const GaussianSpec& spec);
};

struct OperatorSplit {
    Operator X;
    Operator Y;
    Operator Z;
};

/// X = √(N+1−|M|²/N), Y = √N, Z = M/√N, with N⁻¹ taken as the pseudo-inverse
/// on ker N. Throws CommutationError, KernelError or DomainError.
OperatorSplit operator_split(const OperatorGaussianSpec& spec, double tol = kDefaultTol);

// Truncated Fock space helpers. A mode keeps levels 0..cutoff−1; multi-mode
// spaces are Kronecker products with mode 0 as the most significant factor.

Operator fock_annihilator(std::size_t cutoff);
Operator mode_annihilator(std::size_t mode, std::size_t modes, std::size_t cutoff);
std::size_t fock_dimension(std::size_t modes, std::size_t cutoff);

/// Image of the annihilator A(φ) under the doubling
///   A(φ) ↦ A1(Xφ)⊗1 + 1⊗A2†(jYφ) + 1⊗A2(Zφ),
/// acting on (cutoff^k)⊗(cutoff^k) for a k-dimensional one-particle space.
Operator represent_annihilator(const Vector& phi, const OperatorSplit& split,
                               const Conjugation& j, std::size_t cutoff);

/// Double-vacuum expectation ⟨Ω|op|Ω⟩; Ω is basis vector 0.
cplx double_vacuum_expectation(const Operator& op);

struct DoubledMoments {
    cplx a_adag;    // ⟨A(φ)A†(ψ)⟩
    cplx a_a;       // ⟨A(φ)A(ψ)⟩
    cplx adag_adag; // ⟨A†(φ)A†(ψ)⟩
};

DoubledMoments doubled_moments(const Vector& phi, const Vector& psi, const OperatorSplit& split,
                               const Conjugation& j, std::size_t cutoff);

/// "N+1" when the measured ⟨A(φ)A†(φ)⟩ matches ⟨φ|(N+1)φ⟩, "N" when it
/// matches ⟨φ|Nφ⟩, "neither" otherwise.
std::string moment_convention(const OperatorGaussianSpec& spec, const Vector& phi,
                              std::size_t cutoff, double tol = 1e-9);

} // namespace qnoise
