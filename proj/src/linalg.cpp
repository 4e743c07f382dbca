#include "qnoise/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "qnoise/errors.hpp"

namespace qnoise {

namespace {

void require_square(const Operator& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw ShapeError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
}

double norm1(const Operator& a) {
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Padé numerator coefficients b_0..b_m; the denominator uses alternating signs.
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t N>
Operator pade_low(const Operator& a, const std::array<double, N>& b) {
    const auto n = a.rows();
    const Operator a2 = a * a;
    Operator even = b[0] * Operator::Identity(n, n);
    Operator odd = b[1] * Operator::Identity(n, n);
    Operator power = Operator::Identity(n, n);
    for (std::size_t k = 2; k < N; k += 2) {
        power = power * a2;
        even += b[k] * power;
        if (k + 1 < N) odd += b[k + 1] * power;
    }
    const Operator u = a * odd;
    return (even - u).partialPivLu().solve(even + u);
}

Operator pade13(const Operator& a) {
    const auto n = a.rows();
    const auto& b = kPade13;
    const Operator id = Operator::Identity(n, n);
    const Operator a2 = a * a;
    const Operator a4 = a2 * a2;
    const Operator a6 = a4 * a2;
    const Operator u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
             b[1] * id);
    const Operator v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return (v - u).partialPivLu().solve(v + u);
}

} // namespace

SuperOperator::SuperOperator(std::size_t dim, Eigen::MatrixXcd matrix)
    : dim_(dim), matrix_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(dim * dim);
    if (dim == 0 || matrix_.rows() != n || matrix_.cols() != n) {
        throw ShapeError("SuperOperator: matrix must be d^2 x d^2 with d = " +
                         std::to_string(dim));
    }
}

SuperOperator SuperOperator::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim * dim);
    return {dim, Eigen::MatrixXcd::Zero(n, n)};
}

SuperOperator SuperOperator::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim * dim);
    return {dim, Eigen::MatrixXcd::Identity(n, n)};
}

SuperOperator SuperOperator::sandwich(const Operator& a, const Operator& b) {
    require_square(a, "sandwich");
    require_square(b, "sandwich");
    if (a.rows() != b.rows()) throw ShapeError("sandwich: operand dimensions differ");
    return {static_cast<std::size_t>(a.rows()), kron(b.transpose(), a)};
}

Operator SuperOperator::apply(const Operator& x) const {
    if (static_cast<std::size_t>(x.rows()) != dim_ || static_cast<std::size_t>(x.cols()) != dim_) {
        throw ShapeError("SuperOperator::apply: operand is not " + std::to_string(dim_) + "x" +
                         std::to_string(dim_));
    }
    return devectorize(matrix_ * vectorize(x), dim_);
}

SuperOperator SuperOperator::operator+(const SuperOperator& o) const {
    if (o.dim_ != dim_) throw ShapeError("SuperOperator: dimension mismatch in +");
    return {dim_, matrix_ + o.matrix_};
}

SuperOperator SuperOperator::operator-(const SuperOperator& o) const {
    if (o.dim_ != dim_) throw ShapeError("SuperOperator: dimension mismatch in -");
    return {dim_, matrix_ - o.matrix_};
}

SuperOperator SuperOperator::operator*(cplx s) const {
    return {dim_, matrix_ * s};
}

Operator identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Operator::Identity(n, n);
}

Operator adjoint(const Operator& a) {
    return a.adjoint();
}

bool is_square(const Operator& a) {
    return a.rows() == a.cols() && a.rows() > 0;
}

bool is_hermitian(const Operator& a, double tol) {
    if (!is_square(a)) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Operator& a, double tol) {
    if (!is_square(a)) return false;
    const Operator id = Operator::Identity(a.rows(), a.cols());
    return (a.adjoint() * a - id).cwiseAbs().maxCoeff() <= tol &&
           (a * a.adjoint() - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const Operator& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

double op_norm(const Operator& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Operator> svd(a);
    return svd.singularValues()(0);
}

double trace_norm(const Operator& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Operator> svd(a);
    return svd.singularValues().sum();
}

Operator hermitian_part(const Operator& a) {
    return 0.5 * (a + a.adjoint());
}

Operator commutator(const Operator& a, const Operator& b) {
    return a * b - b * a;
}

Operator mat_exp(const Operator& a) {
    require_square(a, "mat_exp");
    if (!a.allFinite()) throw DomainError("mat_exp: input has non-finite entries");

    const double norm = norm1(a);
    if (norm <= kTheta3) return pade_low(a, kPade3);
    if (norm <= kTheta5) return pade_low(a, kPade5);
    if (norm <= kTheta7) return pade_low(a, kPade7);
    if (norm <= kTheta9) return pade_low(a, kPade9);

    const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    if (squarings > 1000) throw RangeError("mat_exp: norm too large for scaling and squaring");
    Operator r = pade13(a / std::ldexp(1.0, squarings));
    for (int k = 0; k < squarings; ++k) {
        r = r * r;
        if (!r.allFinite()) throw RangeError("mat_exp: overflow during squaring");
    }
    if (!r.allFinite()) throw RangeError("mat_exp: overflow");
    return r;
}

SuperOperator mat_exp(const SuperOperator& s) {
    return {s.dim(), mat_exp(s.matrix())};
}

Operator exp_hermitian(const Operator& h, cplx scale) {
    require_square(h, "exp_hermitian");
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(h));
    const Eigen::VectorXcd phases =
        (scale * es.eigenvalues().cast<cplx>()).array().exp().matrix();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Operator hermitian_function(const Operator& h, const std::function<double(double)>& f) {
    require_square(h, "hermitian_function");
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(h));
    Eigen::VectorXd values = es.eigenvalues();
    for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = f(values(i));
    return es.eigenvectors() * values.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Operator mat_sqrt_psd(const Operator& a, double tol) {
    require_square(a, "mat_sqrt_psd");
    if (!is_hermitian(a, tol)) throw DomainError("mat_sqrt_psd: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(a));
    const double lowest = es.eigenvalues().minCoeff();
    if (lowest < -tol) {
        throw DomainError("mat_sqrt_psd: input has eigenvalue " + std::to_string(lowest));
    }
    const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * roots.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Operator pinv_hermitian(const Operator& a, double tol) {
    return hermitian_function(a, [tol](double v) { return std::abs(v) <= tol ? 0.0 : 1.0 / v; });
}

double condition_number(const Operator& a) {
    require_square(a, "condition_number");
    Eigen::JacobiSVD<Operator> svd(a);
    const auto& s = svd.singularValues();
    const double smallest = s(s.size() - 1);
    if (smallest == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smallest;
}

Operator kron(const Operator& a, const Operator& b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vector vectorize(const Operator& a) {
    return Eigen::Map<const Vector>(a.data(), a.size());
}

Operator devectorize(const Vector& v, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    if (v.size() != d * d) {
        throw ShapeError("devectorize: vector of length " + std::to_string(v.size()) +
                         " cannot form a " + std::to_string(dim) + "x" + std::to_string(dim) +
                         " operator");
    }
    return Eigen::Map<const Operator>(v.data(), d, d);
}

Operator partial_trace(const Operator& a, std::size_t d1, std::size_t d2, Side traced) {
    const auto n1 = static_cast<Eigen::Index>(d1);
    const auto n2 = static_cast<Eigen::Index>(d2);
    if (d1 == 0 || d2 == 0 || a.rows() != n1 * n2 || a.cols() != n1 * n2) {
        throw ShapeError("partial_trace: operator is not (" + std::to_string(d1) + "*" +
                         std::to_string(d2) + ") square");
    }
    if (traced == Side::Second) {
        Operator out = Operator::Zero(n1, n1);
        for (Eigen::Index i = 0; i < n1; ++i)
            for (Eigen::Index j = 0; j < n1; ++j)
                for (Eigen::Index k = 0; k < n2; ++k) out(i, j) += a(i * n2 + k, j * n2 + k);
        return out;
    }
    Operator out = Operator::Zero(n2, n2);
    for (Eigen::Index k = 0; k < n1; ++k) out += a.block(k * n2, k * n2, n2, n2);
    return out;
}

} // namespace qnoise
