// linalg.hpp — dense complex linear algebra on the system space
//
// Vectorization is column stacking throughout the library:
//   vec(X)[i + d*j] = X(i, j),   vec(A X B) = (B^T ⊗ A) vec(X).
// Every superoperator in qnoise is written against this convention.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace qnoise {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;

/// Linear map on column-stacked d×d operators, stored as a d²×d² matrix.
class SuperOperator {
public:
    SuperOperator() = default;
    SuperOperator(std::size_t dim, Eigen::MatrixXcd matrix);

    static SuperOperator zero(std::size_t dim);
    static SuperOperator identity(std::size_t dim);
    /// X ↦ A X B
    static SuperOperator sandwich(const Operator& a, const Operator& b);

    std::size_t dim() const { return dim_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    Operator apply(const Operator& x) const;

    SuperOperator operator+(const SuperOperator& o) const;
    SuperOperator operator-(const SuperOperator& o) const;
    SuperOperator operator*(cplx s) const;

private:
    std::size_t dim_ = 0;
    Eigen::MatrixXcd matrix_;
};

Operator identity(std::size_t dim);
Operator adjoint(const Operator& a);

bool is_square(const Operator& a);
bool is_hermitian(const Operator& a, double tol = kDefaultTol);
bool is_unitary(const Operator& a, double tol = kDefaultTol);
bool is_psd(const Operator& a, double tol = kDefaultTol);

/// Largest singular value.
double op_norm(const Operator& a);
/// Sum of singular values.
double trace_norm(const Operator& a);

Operator hermitian_part(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);

/// Matrix exponential by scaling and squaring around a Padé core
/// (degrees 3..13, Higham's selection thresholds). Throws RangeError when the
/// squaring phase overflows and DomainError on non-finite input.
Operator mat_exp(const Operator& a);
SuperOperator mat_exp(const SuperOperator& s);

/// exp(scale·H) for Hermitian H through its eigendecomposition. Exactly
/// unitary for purely imaginary scale.
Operator exp_hermitian(const Operator& h, cplx scale);

/// f(H) for Hermitian H, applied to the real spectrum.
Operator hermitian_function(const Operator& h, const std::function<double(double)>& f);

/// PSD square root; eigenvalues in [-tol, 0) are clamped, anything below
/// throws DomainError.
Operator mat_sqrt_psd(const Operator& a, double tol = kDefaultTol);

/// Moore-Penrose inverse of a Hermitian matrix, with eigenvalues below tol
/// treated as kernel.
Operator pinv_hermitian(const Operator& a, double tol = kDefaultTol);

/// 2-norm condition number.
double condition_number(const Operator& a);

Operator kron(const Operator& a, const Operator& b);
Vector vectorize(const Operator& a);
Operator devectorize(const Vector& v, std::size_t dim);

enum class Side { First, Second };

/// Partial trace of an operator on C^{d1} ⊗ C^{d2}; `traced` names the factor
/// that is removed.
Operator partial_trace(const Operator& a, std::size_t d1, std::size_t d2, Side traced);

} // namespace qnoise
