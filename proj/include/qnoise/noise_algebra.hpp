// noise_algebra.hpp — quantum stochastic differentials with operator coefficients
//
// Two bases are supported:
//   Vacuum4   — slots (i,j) ∈ {0,1}², the integrand [a⁺]^i X^{ij} [a⁻]^j dt
//   Gaussian3 — slots dt, dA, dA† for the Gaussian-bath Brownian motions
//
// The Itô correction for a coincident product uses the two-sided weight
// γ = κ + κ*; one-sided (endpoint) contractions, as in the Wick conversion,
// use κ itself.

#pragma once

#include <array>
#include <cstddef>
#include <map>

#include "qnoise/linalg.hpp"

namespace qnoise {

/// Bath record: commutator weight κ = γ/2 + iσ and Gaussian moments
/// ⟨a⟩ = α, ⟨aa†⟩ = n+1, ⟨aa⟩ = m.
struct NoiseParams {
    double gamma = 1.0;
    double sigma = 0.0;
    double n = 0.0;
    cplx m{0.0, 0.0};
    cplx alpha{0.0, 0.0};

    cplx kappa() const { return {0.5 * gamma, sigma}; }

    /// |m|² − n(n+1); positive values break positivity of the state.
    double gaussian_excess() const { return std::norm(m) - n * (n + 1.0); }
    bool is_gaussian(double tol = kDefaultTol) const;

    /// Throws DomainError unless γ > 0, n ≥ 0 and |m|² ≤ n(n+1) + tol.
    void validate(double tol = kDefaultTol) const;

    static NoiseParams vacuum(double gamma = 1.0) { return {gamma, 0.0, 0.0, {}, {}}; }
};

enum class Basis { Vacuum4, Gaussian3 };

enum class Slot { V00, V01, V10, V11, Dt, DA, DAdag };

/// Vacuum4 slot for creation power i and annihilation power j.
Slot vacuum_slot(int i, int j);

class QSDifferential {
public:
    static QSDifferential vacuum(std::size_t dim) { return {Basis::Vacuum4, dim}; }
    static QSDifferential gaussian(std::size_t dim) { return {Basis::Gaussian3, dim}; }

    Basis basis() const { return basis_; }
    std::size_t dim() const { return dim_; }

    /// Coefficient at `slot`; zero when the slot was never set.
    Operator get(Slot slot) const;
    QSDifferential& set(Slot slot, Operator coeff);
    QSDifferential with(Slot slot, Operator coeff) const;

    const std::map<Slot, Operator>& coefficients() const { return coeffs_; }

private:
    QSDifferential(Basis basis, std::size_t dim);

    Basis basis_;
    std::size_t dim_;
    std::map<Slot, Operator> coeffs_;
};

/// Itô correction (d̂X)(d̂Y) in the vacuum table: Z^{il} = γ X^{i1} Y^{1l}.
QSDifferential ito_product_vacuum(const QSDifferential& x, const QSDifferential& y,
                                  const NoiseParams& params);

/// Itô correction in the Gaussian table. Only the dt slot is populated:
/// γ[(n+1) X_dA Y_dA† + n X_dA† Y_dA + m X_dA Y_dA + m* X_dA† Y_dA†].
QSDifferential ito_product_gaussian(const QSDifferential& x, const QSDifferential& y,
                                    const NoiseParams& params);

QSDifferential differential_adjoint(const QSDifferential& x);

enum class Ordering { TimeOrdered, NormalOrdered };

/// Coefficient quadruple of a QSDE. With k noise channels the blocks are
/// c00: d×d, c01: d×kd, c10: kd×d, c11: kd×kd; single-channel use has k = 1.
struct ItoCoefficients {
    Ordering kind = Ordering::NormalOrdered;
    Operator c00, c01, c10, c11;

    static ItoCoefficients zero(Ordering kind, std::size_t dim, std::size_t channels = 1);

    std::size_t dim() const { return static_cast<std::size_t>(c00.rows()); }
    std::size_t channels() const;

    /// Throws ShapeError when the blocks are inconsistent.
    void check_shape() const;

    /// E11, E00 Hermitian and E10† = E01, i.e. the stochastic Hamiltonian is
    /// Hermitian.
    bool hermitian_generator(double tol = kDefaultTol) const;
};

/// max_{ij} ‖L_ij + L_ji† + γ L_1i† L_1j‖ (largest singular value).
double unitarity_defect(const ItoCoefficients& l, double gamma);

} // namespace qnoise
