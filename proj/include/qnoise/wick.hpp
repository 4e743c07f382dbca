// wick.hpp — time-ordered ↔ normal-ordered QSDE coefficients
//
// A time-ordered evolution dU/dt = −i E_ij [a⁺]^i [a⁻]^j U is rewritten in
// normal order dV/dt = L_ij [a⁺]^i V [a⁻]^j using the endpoint contraction
// a⁻_t U_t = (1 + iκE11)⁻¹ (U_t a⁻_t − iκ E10 U_t). With R = (1 + iκE11)⁻¹:
//
//   L11 = −i E11 R        L10 = −i R E10
//   L01 = −i E01 R        L00 = −i E00 − κ E01 R E10
//
// The sign of the κ term in L00 is the one produced by the contraction; it is
// the sign for which Hermitian generators give unitary L.

#pragma once

#include "qnoise/noise_algebra.hpp"

namespace qnoise {

struct ConversionOptions {
    /// Largest admissible 2-norm condition number of (1 + iκE11) or (1 + κL11).
    double max_condition = 1e12;
};

ItoCoefficients time_to_normal(const ItoCoefficients& e, const NoiseParams& params,
                               const ConversionOptions& opts = {});

ItoCoefficients normal_to_time(const ItoCoefficients& l, const NoiseParams& params,
                               const ConversionOptions& opts = {});

/// Hudson-Parthasarathy parametrization L11 = (W−1)/γ, L10 = L, L01 = −L†W,
/// L00 = −½γ L†L − iH.
struct HPParameters {
    Operator W;
    Operator L;
    Operator H;
    /// ‖L01 + L†W‖ and ‖L00 + ½γL†L + iH‖.
    double coupling_residual = 0.0;
    double hamiltonian_residual = 0.0;
};

/// Throws NotUnitaryError when the Eq.-10-style defect or either
/// reconstruction residual exceeds tol.
HPParameters hp_extract(const ItoCoefficients& l, double gamma, double tol = kDefaultTol);

} // namespace qnoise
