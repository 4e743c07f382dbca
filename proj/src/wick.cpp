#include "qnoise/wick.hpp"

#include <string>

#include "qnoise/errors.hpp"

namespace qnoise {

namespace {

Operator checked_inverse(const Operator& a, const ConversionOptions& opts, const char* what) {
    const double cond = condition_number(a);
    if (!(cond <= opts.max_condition)) {
        throw SingularityError(std::string(what) + " is not invertible", cond);
    }
    return a.partialPivLu().inverse();
}

} // namespace

ItoCoefficients time_to_normal(const ItoCoefficients& e, const NoiseParams& params,
                               const ConversionOptions& opts) {
    e.check_shape();
    if (e.kind != Ordering::TimeOrdered) throw BasisError("time_to_normal: expects time-ordered E");
    const cplx kappa = params.kappa();
    const cplx i{0.0, 1.0};
    const Operator id = Operator::Identity(e.c11.rows(), e.c11.cols());
    const Operator r = checked_inverse(id + i * kappa * e.c11, opts, "time_to_normal: 1 + i*kappa*E11");

    ItoCoefficients l;
    l.kind = Ordering::NormalOrdered;
    l.c11 = -i * e.c11 * r;
    l.c10 = -i * r * e.c10;
    l.c01 = -i * e.c01 * r;
    l.c00 = -i * e.c00 - kappa * e.c01 * r * e.c10;
    return l;
}

ItoCoefficients normal_to_time(const ItoCoefficients& l, const NoiseParams& params,
                               const ConversionOptions& opts) {
    l.check_shape();
    if (l.kind != Ordering::NormalOrdered) throw BasisError("normal_to_time: expects normal-ordered L");
    const cplx kappa = params.kappa();
    const cplx i{0.0, 1.0};
    const Operator id = Operator::Identity(l.c11.rows(), l.c11.cols());

    // (1 + iκE11)⁻¹ = 1 + κL11, so E11 = i (1 + κL11)⁻¹ L11.
    const Operator r = id + kappa * l.c11;
    const Operator r_inv = checked_inverse(r, opts, "normal_to_time: 1 + kappa*L11");

    ItoCoefficients e;
    e.kind = Ordering::TimeOrdered;
    e.c11 = i * r_inv * l.c11;
    e.c10 = i * r_inv * l.c10;
    e.c01 = i * l.c01 * r_inv;
    e.c00 = i * (l.c00 + kappa * e.c01 * r * e.c10);
    return e;
}

HPParameters hp_extract(const ItoCoefficients& l, double gamma, double tol) {
    l.check_shape();
    const double defect = unitarity_defect(l, gamma);
    if (defect > tol) {
        throw NotUnitaryError("hp_extract: unitarity defect " + std::to_string(defect) +
                              " exceeds tolerance");
    }
    const cplx i{0.0, 1.0};
    HPParameters hp;
    hp.W = Operator::Identity(l.c11.rows(), l.c11.cols()) + gamma * l.c11;
    hp.L = l.c10;
    hp.H = (0.5 * i) * (l.c00 - l.c00.adjoint());
    hp.coupling_residual = op_norm(l.c01 + hp.L.adjoint() * hp.W);
    hp.hamiltonian_residual = op_norm(l.c00 + 0.5 * gamma * hp.L.adjoint() * hp.L + i * hp.H);
    if (!is_unitary(hp.W, tol) || hp.coupling_residual > tol || hp.hamiltonian_residual > tol) {
        throw NotUnitaryError("hp_extract: reconstruction residuals exceed tolerance");
    }
    return hp;
}

} // namespace qnoise
