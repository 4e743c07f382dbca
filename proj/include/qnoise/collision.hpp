// collision.hpp — repeated-interaction oracle for the Gaussian master equation
//
// Each step couples the system to a fresh pair of ancilla modes (1, 2) in the
// joint vacuum through the increment
//   B = √(γΔt) (x b1 + y b2† + z b2),
// so that ⟨BB†⟩ = γΔt(n+1), ⟨B†B⟩ = γΔt n, ⟨BB⟩ = γΔt m on the double
// vacuum. The step unitary is
//   U = exp(−i[(F + α*C + αC†)Δt ⊗ 1 + C ⊗ B† + C† ⊗ B]),
// after which the ancillas are traced out. The symmetric step reproduces
// κ = γ/2 only, so comparisons against the master equation use σ = 0.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qnoise/lindblad.hpp"

namespace qnoise {

struct CollisionConfig {
    double dt = 0.01;
    std::size_t steps = 100;
    std::size_t cutoff = 5;
    SystemModel model;
    SplitCoefficients split;

    /// Derives the split from model.noise and validates the record.
    static CollisionConfig make(const SystemModel& model, double dt, std::size_t steps,
                                std::size_t cutoff);

    /// Throws DomainError on dt ≤ 0, cutoff < 2, cutoff < 3 for a non-vacuum
    /// bath, or a split inconsistent with the noise parameters.
    void validate(double tol = kDefaultTol) const;

    std::size_t ancilla_dim() const { return cutoff * cutoff; }
};

/// Increment operator B on the two-mode ancilla space (cutoff² levels).
Operator increment_operator(const CollisionConfig& config);

/// Ancilla-vacuum second moments of B, normalised by γΔt.
struct IncrementMoments {
    cplx b_bdag;
    cplx bdag_b;
    cplx b_b;
    cplx bdag_bdag;
};
IncrementMoments increment_moments(const CollisionConfig& config);

/// Step unitary on system ⊗ ancilla (system is the leading factor).
Operator step_unitary(const CollisionConfig& config);

/// K_k = (1 ⊗ ⟨k|) U (1 ⊗ |Ω⟩) for every ancilla basis state k.
std::vector<Operator> step_kraus(const Operator& unitary, std::size_t system_dim,
                                 std::size_t ancilla_dim);

/// Probability of finding either ancilla mode in its top Fock level after one
/// step from the maximally mixed system state.
double boundary_population(const CollisionConfig& config, const Operator& unitary);

inline constexpr double kTruncationThreshold = 1e-3;

struct CollisionRun {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    double boundary_population = 0.0;
    std::vector<std::string> warnings;
};

/// Runs config.steps collisions; states[k] is the system at t = k·dt.
CollisionRun simulate(const CollisionConfig& config, const DensityMatrix& rho0);

struct ConvergenceRow {
    double dt = 0.0;
    std::size_t steps = 0;
    double max_trace_distance = 0.0;
    double boundary_population = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    /// Least-squares slope of log(error) against log(dt).
    double fitted_order = 0.0;
    bool monotone = true;
    /// Every error is below the round-off floor; fitted_order is meaningless.
    bool at_floor = false;
    std::vector<std::string> warnings;
};

inline constexpr double kConvergenceFloor = 1e-11;

/// For each dt, max over the trajectory of the trace distance between the
/// collision state and exp(t L′) ϱ0. dts must be strictly decreasing.
ConvergenceTable convergence_study(const SystemModel& model, const DensityMatrix& rho0,
                                   double t_final, const std::vector<double>& dts,
                                   std::size_t cutoff);

} // namespace qnoise
