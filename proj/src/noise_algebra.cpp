#include "qnoise/noise_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnoise/errors.hpp"

namespace qnoise {

namespace {

bool slot_in_basis(Slot slot, Basis basis) {
    switch (slot) {
    case Slot::V00:
    case Slot::V01:
    case Slot::V10:
    case Slot::V11:
        return basis == Basis::Vacuum4;
    case Slot::Dt:
    case Slot::DA:
    case Slot::DAdag:
        return basis == Basis::Gaussian3;
    }
    return false;
}

void require_pair(const QSDifferential& x, const QSDifferential& y, Basis basis,
                  const char* what) {
    if (x.basis() != basis || y.basis() != basis) {
        throw BasisError(std::string(what) + ": differentials are not in the expected basis");
    }
    if (x.dim() != y.dim()) throw ShapeError(std::string(what) + ": dimension mismatch");
}

} // namespace

bool NoiseParams::is_gaussian(double tol) const {
    return gaussian_excess() <= tol;
}

void NoiseParams::validate(double tol) const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw DomainError("noise: gamma must be positive, got " + std::to_string(gamma));
    }
    if (!(n >= 0.0) || !std::isfinite(n)) {
        throw DomainError("noise: n must be nonnegative, got " + std::to_string(n));
    }
    if (!std::isfinite(sigma) || !std::isfinite(m.real()) || !std::isfinite(m.imag()) ||
        !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw DomainError("noise: non-finite parameter");
    }
    if (!is_gaussian(tol)) {
        throw DomainError("noise: |m|^2 = " + std::to_string(std::norm(m)) +
                          " exceeds n(n+1) = " + std::to_string(n * (n + 1.0)));
    }
}

Slot vacuum_slot(int i, int j) {
    static constexpr std::array<Slot, 4> slots = {Slot::V00, Slot::V01, Slot::V10, Slot::V11};
    return slots.at(static_cast<std::size_t>(2 * i + j));
}

QSDifferential::QSDifferential(Basis basis, std::size_t dim) : basis_(basis), dim_(dim) {
    if (dim == 0) throw ShapeError("QSDifferential: dimension must be positive");
}

Operator QSDifferential::get(Slot slot) const {
    if (!slot_in_basis(slot, basis_)) throw BasisError("QSDifferential: slot not in basis");
    if (auto it = coeffs_.find(slot); it != coeffs_.end()) return it->second;
    const auto d = static_cast<Eigen::Index>(dim_);
    return Operator::Zero(d, d);
}

QSDifferential& QSDifferential::set(Slot slot, Operator coeff) {
    if (!slot_in_basis(slot, basis_)) throw BasisError("QSDifferential: slot not in basis");
    const auto d = static_cast<Eigen::Index>(dim_);
    if (coeff.rows() != d || coeff.cols() != d) {
        throw ShapeError("QSDifferential: coefficient is not " + std::to_string(dim_) + "x" +
                         std::to_string(dim_));
    }
    coeffs_[slot] = std::move(coeff);
    return *this;
}

QSDifferential QSDifferential::with(Slot slot, Operator coeff) const {
    QSDifferential copy = *this;
    copy.set(slot, std::move(coeff));
    return copy;
}

QSDifferential ito_product_vacuum(const QSDifferential& x, const QSDifferential& y,
                                  const NoiseParams& params) {
    require_pair(x, y, Basis::Vacuum4, "ito_product_vacuum");
    QSDifferential out = QSDifferential::vacuum(x.dim());
    for (int i = 0; i < 2; ++i) {
        for (int l = 0; l < 2; ++l) {
            const Operator z = params.gamma * x.get(vacuum_slot(i, 1)) * y.get(vacuum_slot(1, l));
            if (!z.isZero(0.0)) out.set(vacuum_slot(i, l), z);
        }
    }
    return out;
}

QSDifferential ito_product_gaussian(const QSDifferential& x, const QSDifferential& y,
                                    const NoiseParams& params) {
    require_pair(x, y, Basis::Gaussian3, "ito_product_gaussian");
    const Operator xa = x.get(Slot::DA), xc = x.get(Slot::DAdag);
    const Operator ya = y.get(Slot::DA), yc = y.get(Slot::DAdag);
    const Operator dt = params.gamma * ((params.n + 1.0) * xa * yc + params.n * xc * ya +
                                        params.m * xa * ya + std::conj(params.m) * xc * yc);
    QSDifferential out = QSDifferential::gaussian(x.dim());
    if (!dt.isZero(0.0)) out.set(Slot::Dt, dt);
    return out;
}

QSDifferential differential_adjoint(const QSDifferential& x) {
    QSDifferential out = x.basis() == Basis::Vacuum4 ? QSDifferential::vacuum(x.dim())
                                                     : QSDifferential::gaussian(x.dim());
    for (const auto& [slot, coeff] : x.coefficients()) {
        Slot target = slot;
        switch (slot) {
        case Slot::V01: target = Slot::V10; break;
        case Slot::V10: target = Slot::V01; break;
        case Slot::DA: target = Slot::DAdag; break;
        case Slot::DAdag: target = Slot::DA; break;
        default: break;
        }
        out.set(target, coeff.adjoint());
    }
    return out;
}

ItoCoefficients ItoCoefficients::zero(Ordering kind, std::size_t dim, std::size_t channels) {
    const auto d = static_cast<Eigen::Index>(dim);
    const auto kd = static_cast<Eigen::Index>(dim * channels);
    return {kind, Operator::Zero(d, d), Operator::Zero(d, kd), Operator::Zero(kd, d),
            Operator::Zero(kd, kd)};
}

std::size_t ItoCoefficients::channels() const {
    return c00.rows() == 0 ? 0 : static_cast<std::size_t>(c11.rows() / c00.rows());
}

void ItoCoefficients::check_shape() const {
    const auto d = c00.rows();
    if (d == 0 || c00.cols() != d) throw ShapeError("ItoCoefficients: c00 must be square");
    const auto kd = c11.rows();
    if (kd == 0 || c11.cols() != kd || kd % d != 0) {
        throw ShapeError("ItoCoefficients: c11 must be square with a multiple of dim rows");
    }
    if (c01.rows() != d || c01.cols() != kd) throw ShapeError("ItoCoefficients: bad c01 shape");
    if (c10.rows() != kd || c10.cols() != d) throw ShapeError("ItoCoefficients: bad c10 shape");
}

bool ItoCoefficients::hermitian_generator(double tol) const {
    check_shape();
    return is_hermitian(c00, tol) && is_hermitian(c11, tol) &&
           (c10.adjoint() - c01).cwiseAbs().maxCoeff() <= tol;
}

double unitarity_defect(const ItoCoefficients& l, double gamma) {
    l.check_shape();
    const Operator d00 = l.c00 + l.c00.adjoint() + gamma * l.c10.adjoint() * l.c10;
    const Operator d01 = l.c01 + l.c10.adjoint() + gamma * l.c10.adjoint() * l.c11;
    const Operator d10 = l.c10 + l.c01.adjoint() + gamma * l.c11.adjoint() * l.c10;
    const Operator d11 = l.c11 + l.c11.adjoint() + gamma * l.c11.adjoint() * l.c11;
    return std::max({op_norm(d00), op_norm(d01), op_norm(d10), op_norm(d11)});
}

} // namespace qnoise
