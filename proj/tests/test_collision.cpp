#include <doctest.h>

#include "qnoise/collision.hpp"
#include "qnoise/errors.hpp"
#include "support.hpp"

using namespace qnoise;
using namespace qnoise::testing;

TEST_SUITE("collision-oracle") {

TEST_CASE("uncoupled system evolves under F alone") {
    Rng rng(71);
    const Operator f = random_hermitian(rng, 2);
    const SystemModel model{Operator::Zero(2, 2), f, NoiseParams::vacuum(1.0)};
    const auto cfg = CollisionConfig::make(model, 0.05, 1, 3);
    const Operator u = step_unitary(cfg);
    const Operator expected = kron(taylor_exp(cplx{0, -0.05} * f), identity(cfg.ancilla_dim()));
    CHECK(max_abs(u - expected) < 1e-12);
}

TEST_CASE("vacuum bath reduces to a single mode") {
    const auto cfg = CollisionConfig::make(qubit_damping(1.3), 0.02, 1, 4);
    const Operator b = increment_operator(cfg);
    const Operator expected = std::sqrt(1.3 * 0.02) * kron(fock_annihilator(4), identity(4));
    CHECK(max_abs(b - expected) < 1e-15);
}

TEST_CASE("increment commutator is gamma dt below the cutoff") {
    const auto cfg = CollisionConfig::make(qubit_damping(0.9, 1.0, cplx{0.5, 0.5}), 0.01, 1, 5);
    const Operator b = increment_operator(cfg);
    const Operator comm = b * b.adjoint() - b.adjoint() * b;
    const double scale = 0.9 * 0.01;
    for (std::size_t n1 = 0; n1 + 2 <= cfg.cutoff; ++n1) {
        for (std::size_t n2 = 0; n2 + 2 <= cfg.cutoff; ++n2) {
            const auto k = static_cast<Eigen::Index>(n1 * cfg.cutoff + n2);
            CHECK(std::abs(comm(k, k) - scale) < 1e-14);
        }
    }
}

TEST_CASE("increment moments reproduce the Ito table") {
    Rng rng(72);
    for (int trial = 0; trial < 50; ++trial) {
        const NoiseParams p = random_noise(rng, trial % 5 == 0);
        SystemModel model = qubit_damping(p.gamma, p.n, p.m);
        const auto cfg = CollisionConfig::make(model, uniform(rng, 0.001, 0.05), 1, 3);
        const auto mom = increment_moments(cfg);
        CHECK(std::abs(mom.b_bdag - (p.n + 1.0)) < 1e-10);
        CHECK(std::abs(mom.bdag_b - p.n) < 1e-10);
        CHECK(std::abs(mom.b_b - p.m) < 1e-10);
        CHECK(std::abs(mom.bdag_bdag - std::conj(p.m)) < 1e-10);
    }
}

TEST_CASE("Kraus route equals the dilation with an explicit partial trace") {
    Rng rng(73);
    SystemModel model = qubit_damping(1.0, 0.5, cplx{0.2, -0.3});
    model.F = random_hermitian(rng, 2);
    const auto cfg = CollisionConfig::make(model, 0.05, 1, 3);
    const Operator u = step_unitary(cfg);
    CHECK(is_unitary(u, 1e-10));
    const std::size_t a = cfg.ancilla_dim();
    Operator vac = Operator::Zero(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
    vac(0, 0) = 1.0;
    const Operator rho = random_density(rng, 2);
    const Operator joint = u * kron(rho, vac) * u.adjoint();
    const Operator literal = partial_trace(joint, 2, a, Side::Second);

    Operator via_kraus = Operator::Zero(2, 2);
    for (const auto& k : step_kraus(u, 2, a)) via_kraus += k * rho * k.adjoint();
    CHECK(max_abs(via_kraus - literal) < 1e-13);
    CHECK_THROWS_AS(step_kraus(u, 3, a), ShapeError);
}

TEST_CASE("vacuum damping follows exp(-gamma t)") {
    const double gamma = 1.0;
    const auto cfg = CollisionConfig::make(qubit_damping(gamma), 0.01, 500, 3);
    const auto run = simulate(cfg, DensityMatrix::basis_state(2, 1));
    REQUIRE(run.states.size() == 501);
    double worst = 0.0;
    for (std::size_t k = 0; k < run.states.size(); ++k) {
        worst = std::max(worst, std::abs(run.states[k].matrix()(1, 1).real() - std::exp(-gamma * run.times[k])));
    }
    CHECK(worst < 5e-3);
    CHECK(run.warnings.empty());
}

TEST_CASE("thermal bath relaxes toward n/(2n+1)") {
    const auto cfg = CollisionConfig::make(qubit_damping(1.0, 1.0), 0.01, 3000, 5);
    const auto run = simulate(cfg, DensityMatrix::basis_state(2, 0));
    CHECK(std::abs(run.states.back().matrix()(1, 1).real() - 1.0 / 3.0) < 1e-2);
}

TEST_CASE("first-order convergence against the master equation") {
    const auto table = convergence_study(qubit_damping(1.0), DensityMatrix::basis_state(2, 1), 2.0,
                                         {0.04, 0.02, 0.01}, 5);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.monotone);
    CHECK_FALSE(table.at_floor);
    for (std::size_t k = 1; k < 3; ++k) {
        const double ratio = table.rows[k - 1].max_trace_distance / table.rows[k].max_trace_distance;
        CHECK(ratio >= 1.5);
        CHECK(ratio <= 3.0);
    }
    CHECK(table.fitted_order >= 0.8);
}

TEST_CASE("cutoff sweep: larger cutoff does not change the thermal step much") {
    const SystemModel model = qubit_damping(1.0, 1.0);
    const auto rho0 = DensityMatrix::basis_state(2, 1);
    const auto r3 = simulate(CollisionConfig::make(model, 0.01, 100, 3), rho0);
    const auto r5 = simulate(CollisionConfig::make(model, 0.01, 100, 5), rho0);
    CHECK(r5.boundary_population <= r3.boundary_population);
    CHECK(trace_distance(r3.states.back(), r5.states.back()) < 1e-3);
}

TEST_CASE("closed system sits at the round-off floor") {
    Rng rng(74);
    const SystemModel model{Operator::Zero(2, 2), random_hermitian(rng, 2), NoiseParams::vacuum(1.0)};
    const auto table = convergence_study(model, DensityMatrix::basis_state(2, 1), 1.0, {0.1, 0.05}, 3);
    CHECK(table.at_floor);
}

TEST_CASE("trace is preserved across a run") {
    const auto cfg = CollisionConfig::make(qubit_damping(1.0, 1.0, cplx{0.8, 0.0}), 0.02, 200, 5);
    const auto run = simulate(cfg, DensityMatrix::basis_state(2, 1));
    for (const auto& s : run.states) CHECK(std::abs(s.matrix().trace() - 1.0) < 1e-10);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(CollisionConfig::make(qubit_damping(1.0), -0.1, 1, 3), DomainError);
    CHECK_THROWS_AS(CollisionConfig::make(qubit_damping(1.0, 1.0), 0.01, 1, 2), DomainError);
    CHECK_NOTHROW(CollisionConfig::make(qubit_damping(1.0), 0.01, 1, 2));
    CHECK_THROWS_AS(convergence_study(qubit_damping(1.0), DensityMatrix::basis_state(2, 1), 1.0,
                                      {0.01, 0.02}, 3),
                    DomainError);
}

}
