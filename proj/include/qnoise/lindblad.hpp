// lindblad.hpp — Gaussian-bath generator, master equation and evolution
//
// For Υ_t = C a⁺_t + C† a⁻_t + F driven by a Gaussian white noise with
// parameters (γ, σ, n, m, α), the normal-ordered unitary has dt-coefficient
// −G with
//   G = i(F + α*C + αC†) + κ Q,
//   Q = (n+1)C†C + nCC† + m*CC + mC†C†,
// and the Heisenberg generator is
//   L(X) = γ[(n+1)C†XC + nCXC† + m*CXC + mC†XC†] − XG − G†X.
// The m pairing is the one fixed by the Itô table; it makes L(1) = 0.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qnoise/araki_woods.hpp"
#include "qnoise/noise_algebra.hpp"

namespace qnoise {

struct SystemModel {
    Operator C;
    Operator F;
    NoiseParams noise;

    std::size_t dim() const { return static_cast<std::size_t>(C.rows()); }

    /// Shapes agree, F is Hermitian and the noise is a valid Gaussian record.
    void validate(double tol = kDefaultTol) const;
    /// Shape checks only; used by operations that also probe invalid m.
    void check_shape() const;
};

class DensityMatrix {
public:
    /// Throws DomainError unless rho is Hermitian, PSD and unit trace within tol.
    explicit DensityMatrix(Operator rho, double tol = kDefaultTol);

    static DensityMatrix pure(const Vector& psi);
    /// |k⟩⟨k| in a d-dimensional space.
    static DensityMatrix basis_state(std::size_t dim, std::size_t k);

    const Operator& matrix() const { return rho_; }
    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }

private:
    Operator rho_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
/// ½‖a − b‖₁ on raw operators.
double trace_distance(const Operator& a, const Operator& b);

Operator gaussian_q(const SystemModel& model);
Operator effective_G(const SystemModel& model);

SuperOperator heisenberg_generator(const SystemModel& model);
/// Trace dual: L′(ϱ) = γ[(n+1)CϱC† + nC†ϱC + m*CϱC + mC†ϱC†] − Gϱ − ϱG†.
SuperOperator schrodinger_liouvillian(const SystemModel& model);

/// X ↦ i[H, X]
SuperOperator commutator_superop(const Operator& h);

struct HamiltonianFit {
    Operator H;
    double residual = 0.0; // max entry of S − i[H, ·]
};

/// Least-squares (minimum-norm) H with S ≈ i[H, ·].
HamiltonianFit hamiltonian_of_commutator(const SuperOperator& s);

struct GKSForm {
    Operator H_eff;
    std::array<Operator, 2> jumps; // (C, C†)
    Eigen::Matrix2cd kossakowski;
    double min_eigenvalue = 0.0;
    bool psd = true;
    double residual = 0.0;
};

/// L(X) = i[H_eff, X] + Σ_jk K_jk (V_j† X V_k − ½{V_j†V_k, X}), V = (C, C†),
/// K = γ [[n+1, m], [m*, n]], H_eff = F + α*C + αC† + σQ.
GKSForm gks_decompose(const SystemModel& model, double tol = 1e-10);
/// Heisenberg generator rebuilt from a GKS form.
SuperOperator gks_generator(const GKSForm& form);

enum class Method { Expm, RK4 };

struct EvolveOptions {
    /// Overrides the default RK4 step (grid spacing / 20, capped by the
    /// generator norm scale).
    std::optional<double> rk4_step;
    double tol = 1e-8;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

/// Default RK4 step for one grid interval.
double default_rk4_step(const SystemModel& model, double spacing);

Trajectory evolve(const SystemModel& model, const DensityMatrix& rho0,
                  const std::vector<double>& grid, Method method, const EvolveOptions& opts = {});

/// Unique zero of L′, from its smallest right singular vector. Throws
/// MultiplicityError when the kernel is not one-dimensional.
DensityMatrix steady_state(const SystemModel& model, double tol = 1e-10);

/// Choi matrix Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|) of a Schrödinger-picture map.
Operator choi_matrix(const SuperOperator& channel);

/// Piecewise-constant function on [0, knots.back()): values[k] on
/// [knots[k], knots[k+1]), zero outside.
struct StepFunction {
    std::vector<double> knots;
    std::vector<cplx> values;

    static StepFunction constant(cplx value, double until);
    static StepFunction zero() { return {{0.0}, {}}; }

    /// Throws FormatError unless knots start at 0, increase strictly and
    /// number values.size() + 1.
    void validate() const;
    cplx at(double s) const;
};

enum class Weighting {
    Unweighted,    // annihilator eigenvalue g(t)
    GammaWeighted, // annihilator eigenvalue γ g(t), matching ⟨ε(f)|ε(g)⟩ = exp γ⟨f|g⟩
};

/// T_t with dT/ds = (L00 + w f*(s) L10 + w g(s) L01 + w² f*(s) g(s) L11) T,
/// T_0 = 1, where w = γ or 1 by weighting; the reduced exponential-vector
/// matrix element ⟨φ⊗ε(f)|V_t ψ⊗ε(g)⟩ / ⟨ε(f)|ε(g)⟩ = ⟨φ|T_t ψ⟩.
Operator exp_vector_propagator(const ItoCoefficients& l, const StepFunction& f,
                               const StepFunction& g, double t, double gamma,
                               Weighting weighting = Weighting::Unweighted);

/// Two-channel time-ordered coefficients of Υ_t in the doubled
/// representation a⁻ = x a1⁻ + y a2⁺ + z a2⁻ + α (channel 1, then 2).
ItoCoefficients doubled_time_ordered(const SystemModel& model, double tol = kDefaultTol);

} // namespace qnoise
