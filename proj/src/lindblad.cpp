#include "qnoise/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "qnoise/errors.hpp"

namespace qnoise {

namespace {

constexpr cplx kI{0.0, 1.0};

double max_abs(const Eigen::MatrixXcd& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

} // namespace

void SystemModel::check_shape() const {
    if (!is_square(C) || !is_square(F) || C.rows() != F.rows()) {
        throw ShapeError("SystemModel: C and F must be square of equal dimension");
    }
}

void SystemModel::validate(double tol) const {
    check_shape();
    if (!is_hermitian(F, tol)) throw DomainError("SystemModel: F is not Hermitian");
    noise.validate(tol);
}

DensityMatrix::DensityMatrix(Operator rho, double tol) : rho_(std::move(rho)) {
    if (!is_square(rho_)) throw ShapeError("DensityMatrix: matrix must be square");
    if (!rho_.allFinite()) throw DomainError("DensityMatrix: non-finite entries");
    if (!is_hermitian(rho_, tol)) throw DomainError("DensityMatrix: not Hermitian");
    if (std::abs(rho_.trace() - 1.0) > tol) {
        throw DomainError("DensityMatrix: trace is " + std::to_string(rho_.trace().real()));
    }
    if (!is_psd(rho_, tol)) throw DomainError("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
    const Vector u = psi.normalized();
    return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t k) {
    if (k >= dim) throw ShapeError("DensityMatrix::basis_state: index out of range");
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim));
    psi(static_cast<Eigen::Index>(k)) = 1.0;
    return pure(psi);
}

double trace_distance(const Operator& a, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("trace_distance: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(a - b), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    return trace_distance(a.matrix(), b.matrix());
}

Operator gaussian_q(const SystemModel& model) {
    model.check_shape();
    const Operator& c = model.C;
    const Operator cd = c.adjoint();
    const auto& p = model.noise;
    return (p.n + 1.0) * cd * c + p.n * c * cd + std::conj(p.m) * c * c + p.m * cd * cd;
}

Operator effective_G(const SystemModel& model) {
    const Operator& c = model.C;
    const auto& p = model.noise;
    const Operator h = model.F + std::conj(p.alpha) * c + p.alpha * c.adjoint();
    return kI * h + p.kappa() * gaussian_q(model);
}

SuperOperator heisenberg_generator(const SystemModel& model) {
    model.check_shape();
    const Operator& c = model.C;
    const Operator cd = c.adjoint();
    const auto& p = model.noise;
    const Operator g = effective_G(model);
    const Operator id = identity(model.dim());
    // X ↦ A X B is (Bᵀ ⊗ A) on column-stacked X.
    const Eigen::MatrixXcd s =
        p.gamma * ((p.n + 1.0) * kron(c.transpose(), cd) + p.n * kron(cd.transpose(), c) +
                   std::conj(p.m) * kron(c.transpose(), c) + p.m * kron(cd.transpose(), cd)) -
        kron(g.transpose(), id) - kron(id, g.adjoint());
    return {model.dim(), s};
}

SuperOperator schrodinger_liouvillian(const SystemModel& model) {
    model.check_shape();
    const Operator& c = model.C;
    const Operator cd = c.adjoint();
    const auto& p = model.noise;
    const Operator g = effective_G(model);
    const Operator id = identity(model.dim());
    const Eigen::MatrixXcd s =
        p.gamma * ((p.n + 1.0) * kron(cd.transpose(), c) + p.n * kron(c.transpose(), cd) +
                   std::conj(p.m) * kron(c.transpose(), c) + p.m * kron(cd.transpose(), cd)) -
        kron(id, g) - kron(g.conjugate(), id);
    return {model.dim(), s};
}

SuperOperator commutator_superop(const Operator& h) {
    const Operator id = identity(static_cast<std::size_t>(h.rows()));
    return {static_cast<std::size_t>(h.rows()), kI * (kron(id, h) - kron(h.transpose(), id))};
}

HamiltonianFit hamiltonian_of_commutator(const SuperOperator& s) {
    const std::size_t d = s.dim();
    const auto dd = static_cast<Eigen::Index>(d * d);
    // Column k of the design matrix is vec of the superoperator i[E_k, ·].
    Eigen::MatrixXcd design(dd * dd, dd);
    for (Eigen::Index k = 0; k < dd; ++k) {
        Operator e = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        e(k % static_cast<Eigen::Index>(d), k / static_cast<Eigen::Index>(d)) = 1.0;
        const Eigen::MatrixXcd m = commutator_superop(e).matrix();
        design.col(k) = Eigen::Map<const Vector>(m.data(), m.size());
    }
    const Vector target = Eigen::Map<const Vector>(s.matrix().data(), s.matrix().size());
    const Vector h = design.completeOrthogonalDecomposition().solve(target);
    HamiltonianFit fit;
    fit.H = devectorize(h, d);
    fit.residual = max_abs(s.matrix() - commutator_superop(fit.H).matrix());
    return fit;
}

GKSForm gks_decompose(const SystemModel& model, double tol) {
    model.check_shape();
    const auto& p = model.noise;
    GKSForm form;
    form.H_eff = model.F + std::conj(p.alpha) * model.C + p.alpha * model.C.adjoint() +
                 p.sigma * gaussian_q(model);
    form.jumps = {model.C, model.C.adjoint()};
    form.kossakowski << p.n + 1.0, p.m, std::conj(p.m), p.n;
    form.kossakowski *= p.gamma;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(form.kossakowski, Eigen::EigenvaluesOnly);
    form.min_eigenvalue = es.eigenvalues().minCoeff();
    form.psd = form.min_eigenvalue >= -tol * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    form.residual = max_abs(gks_generator(form).matrix() - heisenberg_generator(model).matrix());
    if (form.residual > tol) {
        throw DecompositionError("gks_decompose: reassembly residual " +
                                 std::to_string(form.residual));
    }
    return form;
}

SuperOperator gks_generator(const GKSForm& form) {
    const auto d = static_cast<std::size_t>(form.H_eff.rows());
    const Operator id = identity(d);
    SuperOperator out = commutator_superop(form.H_eff);
    Eigen::MatrixXcd s = out.matrix();
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            const cplx w = form.kossakowski(j, k);
            if (w == cplx{}) continue;
            const Operator vj_d = form.jumps[static_cast<std::size_t>(j)].adjoint();
            const Operator& vk = form.jumps[static_cast<std::size_t>(k)];
            const Operator prod = vj_d * vk;
            s += w * (kron(vk.transpose(), vj_d) -
                      0.5 * (kron(id, prod) + kron(prod.transpose(), id)));
        }
    }
    return {d, s};
}

double default_rk4_step(const SystemModel& model, double spacing) {
    const auto& p = model.noise;
    const double c2 = std::pow(op_norm(model.C), 2);
    const double scale =
        p.gamma * (2.0 * p.n + 1.0 + 2.0 * std::abs(p.m)) * c2 + op_norm(model.F);
    const double cap = scale > 0.0 ? 0.01 / scale : std::numeric_limits<double>::infinity();
    return std::min(spacing / 20.0, cap);
}

Trajectory evolve(const SystemModel& model, const DensityMatrix& rho0,
                  const std::vector<double>& grid, Method method, const EvolveOptions& opts) {
    model.check_shape();
    if (rho0.dim() != model.dim()) throw ShapeError("evolve: rho0 dimension differs from model");
    if (grid.empty() || grid.front() != 0.0) throw DomainError("evolve: grid must start at 0");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) throw DomainError("evolve: grid must be strictly increasing");
    }

    const SuperOperator lp = schrodinger_liouvillian(model);
    const Vector v0 = vectorize(rho0.matrix());
    const std::size_t d = model.dim();

    Trajectory traj;
    traj.times = grid;
    traj.states.reserve(grid.size());
    traj.states.push_back(rho0);

    if (method == Method::Expm) {
        for (std::size_t k = 1; k < grid.size(); ++k) {
            const Vector v = mat_exp(Eigen::MatrixXcd(grid[k] * lp.matrix())) * v0;
            traj.states.emplace_back(devectorize(v, d), opts.tol);
        }
        return traj;
    }

    const Eigen::MatrixXcd& a = lp.matrix();
    Vector v = v0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double spacing = grid[k] - grid[k - 1];
        const double h_max = opts.rk4_step ? *opts.rk4_step : default_rk4_step(model, spacing);
        const auto substeps = static_cast<long>(std::ceil(spacing / h_max - 1e-12));
        const double h = spacing / static_cast<double>(std::max(1L, substeps));
        for (long s = 0; s < std::max(1L, substeps); ++s) {
            const Vector k1 = a * v;
            const Vector k2 = a * (v + 0.5 * h * k1);
            const Vector k3 = a * (v + 0.5 * h * k2);
            const Vector k4 = a * (v + h * k3);
            v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        traj.states.emplace_back(devectorize(v, d), opts.tol);
    }
    return traj;
}

DensityMatrix steady_state(const SystemModel& model, double tol) {
    const SuperOperator lp = schrodinger_liouvillian(model);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lp.matrix(), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv(0));
    std::size_t kernel = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) <= 1e-8 * scale) ++kernel;
    }
    if (kernel != 1) throw MultiplicityError("steady_state: kernel of L' is not one-dimensional", kernel);

    const Vector v = svd.matrixV().col(sv.size() - 1);
    Operator rho = devectorize(v, model.dim());
    rho /= rho.trace();
    rho = hermitian_part(rho);
    const double residual = max_abs(lp.apply(rho));
    if (residual > tol) {
        throw DecompositionError("steady_state: residual " + std::to_string(residual));
    }
    return DensityMatrix(rho, std::max(tol, kDefaultTol));
}

Operator choi_matrix(const SuperOperator& channel) {
    const std::size_t d = channel.dim();
    const auto n = static_cast<Eigen::Index>(d);
    Operator choi = Operator::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Operator e = Operator::Zero(n, n);
            e(i, j) = 1.0;
            choi += kron(e, channel.apply(e));
        }
    }
    return choi;
}

StepFunction StepFunction::constant(cplx value, double until) {
    return {{0.0, until}, {value}};
}

void StepFunction::validate() const {
    if (knots.size() != values.size() + 1) {
        throw FormatError("StepFunction: need exactly one more knot than values");
    }
    if (knots.front() != 0.0) throw FormatError("StepFunction: first knot must be 0");
    for (std::size_t k = 1; k < knots.size(); ++k) {
        if (!std::isfinite(knots[k]) || !(knots[k] > knots[k - 1])) {
            throw FormatError("StepFunction: knots must increase strictly");
        }
    }
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw FormatError("StepFunction: non-finite value");
        }
    }
}

cplx StepFunction::at(double s) const {
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (s >= knots[k] && s < knots[k + 1]) return values[k];
    }
    return {};
}

Operator exp_vector_propagator(const ItoCoefficients& l, const StepFunction& f,
                               const StepFunction& g, double t, double gamma,
                               Weighting weighting) {
    l.check_shape();
    if (l.channels() != 1) throw ShapeError("exp_vector_propagator: single-channel L required");
    f.validate();
    g.validate();
    if (!(t >= 0.0)) throw DomainError("exp_vector_propagator: t must be nonnegative");

    std::set<double> cuts{0.0, t};
    for (const auto* fn : {&f, &g}) {
        for (double k : fn->knots) {
            if (k > 0.0 && k < t) cuts.insert(k);
        }
    }
    const double w = weighting == Weighting::GammaWeighted ? gamma : 1.0;
    Operator result = identity(l.dim());
    for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
        const double lo = *it, hi = *std::next(it);
        const double mid = 0.5 * (lo + hi);
        const cplx fs = w * std::conj(f.at(mid));
        const cplx gs = w * g.at(mid);
        const Operator gen = l.c00 + fs * l.c10 + gs * l.c01 + fs * gs * l.c11;
        result = mat_exp(Operator((hi - lo) * gen)) * result;
    }
    return result;
}

ItoCoefficients doubled_time_ordered(const SystemModel& model, double tol) {
    model.check_shape();
    const auto& p = model.noise;
    const SplitCoefficients split = scalar_split({p.n, p.m, p.alpha}, tol);
    const Operator& c = model.C;
    const Operator cd = c.adjoint();
    const auto d = static_cast<Eigen::Index>(model.dim());

    ItoCoefficients e = ItoCoefficients::zero(Ordering::TimeOrdered, model.dim(), 2);
    e.c00 = model.F + std::conj(p.alpha) * c + p.alpha * cd;
    // Creation coefficients: x C on a1⁺, z* C + y C† on a2⁺.
    e.c10.block(0, 0, d, d) = split.x * c;
    e.c10.block(d, 0, d, d) = std::conj(split.z) * c + split.y * cd;
    // Annihilation coefficients: x C† on a1⁻, y C + z C† on a2⁻.
    e.c01.block(0, 0, d, d) = split.x * cd;
    e.c01.block(0, d, d, d) = split.y * c + split.z * cd;
    return e;
}

} // namespace qnoise
