#include "qnoise/collision.hpp"

#include <cmath>
#include <string>

#include "qnoise/errors.hpp"

namespace qnoise {

namespace {

constexpr cplx kI{0.0, 1.0};

Operator apply_kraus(const std::vector<Operator>& kraus, const Operator& rho) {
    Operator out = Operator::Zero(rho.rows(), rho.cols());
    for (const auto& k : kraus) out += k * rho * k.adjoint();
    return out;
}

} // namespace

CollisionConfig CollisionConfig::make(const SystemModel& model, double dt, std::size_t steps,
                                      std::size_t cutoff) {
    model.validate();
    const auto& p = model.noise;
    CollisionConfig cfg{dt, steps, cutoff, model, scalar_split({p.n, p.m, p.alpha})};
    cfg.validate();
    return cfg;
}

void CollisionConfig::validate(double tol) const {
    model.check_shape();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("collision: dt must be positive");
    if (cutoff < 2) throw DomainError("collision: cutoff must be at least 2");
    const auto& p = model.noise;
    if ((p.n > 0.0 || p.m != cplx{}) && cutoff < 3) {
        throw DomainError("collision: cutoff >= 3 required for a thermal or squeezed bath");
    }
    const SplitResiduals r = split_residuals(split, {p.n, p.m, p.alpha});
    if (r.commutation > tol || r.occupation > tol || r.squeezing > tol) {
        throw DomainError("collision: split does not derive from the noise parameters");
    }
}

Operator increment_operator(const CollisionConfig& config) {
    const Operator b1 = mode_annihilator(0, 2, config.cutoff);
    const Operator b2 = mode_annihilator(1, 2, config.cutoff);
    const auto& s = config.split;
    return std::sqrt(config.model.noise.gamma * config.dt) *
           (s.x * b1 + s.y * b2.adjoint() + s.z * b2);
}

IncrementMoments increment_moments(const CollisionConfig& config) {
    const Operator b = increment_operator(config);
    const double scale = config.model.noise.gamma * config.dt;
    const Operator bd = b.adjoint();
    return {Operator(b * bd)(0, 0) / scale, Operator(bd * b)(0, 0) / scale,
            Operator(b * b)(0, 0) / scale, Operator(bd * bd)(0, 0) / scale};
}

Operator step_unitary(const CollisionConfig& config) {
    config.validate();
    const SystemModel& m = config.model;
    const auto& p = m.noise;
    const Operator b = increment_operator(config);
    const Operator id_anc = identity(config.ancilla_dim());
    const Operator h_sys = (m.F + std::conj(p.alpha) * m.C + p.alpha * m.C.adjoint()) * config.dt;
    const Operator h = kron(h_sys, id_anc) + kron(m.C, b.adjoint()) + kron(m.C.adjoint(), b);
    return exp_hermitian(h, -kI);
}

std::vector<Operator> step_kraus(const Operator& unitary, std::size_t system_dim,
                                 std::size_t ancilla_dim) {
    const auto d = static_cast<Eigen::Index>(system_dim);
    const auto a = static_cast<Eigen::Index>(ancilla_dim);
    if (unitary.rows() != d * a || unitary.cols() != d * a) {
        throw ShapeError("step_kraus: unitary is not (system * ancilla) square");
    }
    std::vector<Operator> kraus;
    kraus.reserve(ancilla_dim);
    for (Eigen::Index k = 0; k < a; ++k) {
        Operator op(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) op(i, j) = unitary(i * a + k, j * a);
        kraus.push_back(std::move(op));
    }
    return kraus;
}

double boundary_population(const CollisionConfig& config, const Operator& unitary) {
    const std::size_t d = config.model.dim();
    const std::size_t c = config.cutoff;
    const auto kraus = step_kraus(unitary, d, config.ancilla_dim());
    const Operator mixed = identity(d) / static_cast<double>(d);
    double pop = 0.0;
    for (std::size_t k = 0; k < kraus.size(); ++k) {
        const std::size_t n1 = k / c, n2 = k % c;
        if (n1 == c - 1 || n2 == c - 1) {
            pop += (kraus[k] * mixed * kraus[k].adjoint()).trace().real();
        }
    }
    return pop;
}

CollisionRun simulate(const CollisionConfig& config, const DensityMatrix& rho0) {
    config.validate();
    if (rho0.dim() != config.model.dim()) throw ShapeError("simulate: rho0 dimension differs");
    const Operator u = step_unitary(config);
    const auto kraus = step_kraus(u, config.model.dim(), config.ancilla_dim());

    CollisionRun run;
    run.boundary_population = boundary_population(config, u);
    if (run.boundary_population > kTruncationThreshold) {
        run.warnings.push_back("truncation: boundary population " +
                               std::to_string(run.boundary_population) + " at cutoff " +
                               std::to_string(config.cutoff));
    }
    run.times.reserve(config.steps + 1);
    run.states.reserve(config.steps + 1);
    run.times.push_back(0.0);
    run.states.push_back(rho0);
    Operator rho = rho0.matrix();
    for (std::size_t k = 1; k <= config.steps; ++k) {
        rho = apply_kraus(kraus, rho);
        run.times.push_back(static_cast<double>(k) * config.dt);
        run.states.emplace_back(rho, 1e-8);
    }
    return run;
}

ConvergenceTable convergence_study(const SystemModel& model, const DensityMatrix& rho0,
                                   double t_final, const std::vector<double>& dts,
                                   std::size_t cutoff) {
    if (dts.empty()) throw DomainError("convergence_study: empty dt list");
    for (std::size_t k = 1; k < dts.size(); ++k) {
        if (!(dts[k] < dts[k - 1])) throw DomainError("convergence_study: dts must decrease");
    }
    if (!(t_final > 0.0)) throw DomainError("convergence_study: t_final must be positive");

    const SuperOperator lp = schrodinger_liouvillian(model);
    ConvergenceTable table;
    for (double dt : dts) {
        const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
        const CollisionConfig cfg = CollisionConfig::make(model, dt, steps, cutoff);
        const CollisionRun run = simulate(cfg, rho0);
        for (const auto& w : run.warnings) table.warnings.push_back(w);

        const Eigen::MatrixXcd step = mat_exp(Eigen::MatrixXcd(dt * lp.matrix()));
        Vector v = vectorize(rho0.matrix());
        double worst = 0.0;
        for (std::size_t k = 1; k <= steps; ++k) {
            v = step * v;
            worst = std::max(worst, trace_distance(run.states[k].matrix(), devectorize(v, model.dim())));
        }
        table.rows.push_back({dt, steps, worst, run.boundary_population});
    }

    table.at_floor = true;
    for (const auto& r : table.rows) table.at_floor = table.at_floor && r.max_trace_distance < kConvergenceFloor;
    for (std::size_t k = 1; k < table.rows.size(); ++k) {
        if (table.rows[k].max_trace_distance > table.rows[k - 1].max_trace_distance &&
            table.rows[k].max_trace_distance > kConvergenceFloor) {
            table.monotone = false;
        }
    }
    if (!table.monotone) table.warnings.push_back("error is not monotone in dt");

    if (table.rows.size() >= 2 && !table.at_floor) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(table.rows.size());
        for (const auto& r : table.rows) {
            const double lx = std::log(r.dt);
            const double ly = std::log(std::max(r.max_trace_distance, 1e-300));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        table.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return table;
}

} // namespace qnoise
