#include <doctest.h>

#include "qnoise/errors.hpp"
#include "qnoise/lindblad.hpp"
#include "qnoise/wick.hpp"
#include "support.hpp"

using namespace qnoise;
using namespace qnoise::testing;

namespace {

const cplx I{0, 1};

// L(X) typed in term by term, independent of the superoperator assembly.
Operator heisenberg_oracle(const SystemModel& model, const Operator& x) {
    const auto& p = model.noise;
    const Operator& c = model.C;
    const Operator cd = c.adjoint();
    const Operator h = model.F + std::conj(p.alpha) * c + p.alpha * cd;
    const Operator q = (p.n + 1.0) * cd * c + p.n * c * cd + std::conj(p.m) * c * c + p.m * cd * cd;
    const Operator g = I * h + p.kappa() * q;
    return p.gamma * ((p.n + 1.0) * cd * x * c + p.n * c * x * cd + std::conj(p.m) * c * x * c +
                      p.m * cd * x * cd) -
           x * g - g.adjoint() * x;
}

double population_excited(const DensityMatrix& rho) {
    return rho.matrix()(1, 1).real();
}

std::vector<double> linear_grid(double t_final, std::size_t points) {
    std::vector<double> grid(points);
    for (std::size_t k = 0; k < points; ++k) grid[k] = t_final * static_cast<double>(k) / static_cast<double>(points - 1);
    return grid;
}

} // namespace

TEST_SUITE("lindblad-engine") {

TEST_CASE("effective G examples") {
    const SystemModel vac = qubit_damping(1.0);
    const Operator sm = sigma_minus(), sp = sm.adjoint();
    CHECK(max_abs(effective_G(vac) - 0.5 * sp * sm) < 1e-15);

    SystemModel shifted = vac;
    shifted.noise.sigma = 0.3;
    const Operator g = effective_G(shifted);
    // Anti-Hermitian part picks up iσ C†C.
    CHECK(max_abs(0.5 * (g - g.adjoint()) - I * 0.3 * sp * sm) < 1e-15);
    CHECK(max_abs(0.5 * (g + g.adjoint()) - 0.5 * sp * sm) < 1e-15);
}

TEST_CASE("generator matches the term-by-term oracle and is unital") {
    Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
        const SystemModel model = random_model(rng, d);
        const SuperOperator l = heisenberg_generator(model);
        const Operator x = random_operator(rng, d);
        CHECK(max_abs(l.apply(x) - heisenberg_oracle(model, x)) < 1e-12);
        CHECK(max_abs(l.apply(identity(d))) < 1e-12);
    }
}

TEST_CASE("amplitude damping Liouvillian") {
    for (double gamma : {0.5, 1.0, 2.0}) {
        const SystemModel model = qubit_damping(gamma);
        CHECK(max_abs(schrodinger_liouvillian(model).matrix() - amplitude_damping_liouvillian(gamma)) < 1e-14);
        const Operator sm = sigma_minus(), sp = sm.adjoint();
        CHECK(max_abs(heisenberg_generator(model).apply(sp * sm) + gamma * sp * sm) < 1e-14);
    }
}

TEST_CASE("thermal qubit relaxation of sigma_z") {
    for (double n : {0.0, 0.5, 1.0, 3.0}) {
        SystemModel model = qubit_damping(1.3, n);
        model.noise.sigma = 0.4;
        const Operator expected = -1.3 * (2.0 * n + 1.0) * sigma_z() - 1.3 * identity(2);
        CHECK(max_abs(heisenberg_generator(model).apply(sigma_z()) - expected) < 1e-13);
    }
}

TEST_CASE("Schrodinger Liouvillian is the trace dual") {
    Rng rng(52);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
        const SystemModel model = random_model(rng, d);
        const Operator x = random_operator(rng, d), rho = random_operator(rng, d);
        const cplx lhs = (heisenberg_generator(model).apply(x) * rho).trace();
        const cplx rhs = (x * schrodinger_liouvillian(model).apply(rho)).trace();
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
        CHECK(std::abs(schrodinger_liouvillian(model).apply(rho).trace()) < 1e-12);
    }
}

TEST_CASE("superoperators agree with the matrix-unit construction") {
    Rng rng(53);
    const SystemModel model = random_model(rng, 3);
    const auto l = heisenberg_generator(model);
    const auto brute = brute_superop([&](const Operator& x) { return heisenberg_oracle(model, x); }, 3);
    CHECK(max_abs(l.matrix() - brute) < 1e-12);
}

TEST_CASE("closed system limit") {
    Rng rng(54);
    const Operator f = random_hermitian(rng, 3);
    const SystemModel model{Operator::Zero(3, 3), f, NoiseParams{}};
    CHECK(max_abs(heisenberg_generator(model).matrix() - commutator_superop(f).matrix()) < 1e-14);
}

TEST_CASE("GKS decomposition") {
    const SystemModel vac = qubit_damping(1.5);
    const GKSForm v = gks_decompose(vac);
    CHECK(v.psd);
    CHECK(std::abs(v.kossakowski(0, 0) - 1.5) < 1e-15);
    CHECK(std::abs(v.kossakowski(1, 1)) < 1e-15);
    CHECK(v.residual < 1e-12);

    const double n = 1.0;
    const cplx mb = std::polar(std::sqrt(n * (n + 1.0)), 0.3);
    const GKSForm b = gks_decompose(qubit_damping(1.0, n, mb));
    CHECK(b.psd);
    CHECK(std::abs(b.min_eigenvalue) < 1e-12);

    const GKSForm bad = gks_decompose(qubit_damping(1.0, n, 1.1 * mb));
    CHECK_FALSE(bad.psd);
    CHECK(bad.min_eigenvalue < -1e-3);

    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const SystemModel model = random_model(rng, 3);
        const GKSForm form = gks_decompose(model);
        CHECK(form.psd);
        CHECK(is_hermitian(form.H_eff, 1e-12));
        CHECK(max_abs(gks_generator(form).matrix() - heisenberg_generator(model).matrix()) < 1e-10);
    }
}

TEST_CASE("evolve: vacuum decay") {
    const double gamma = 0.7;
    const SystemModel model = qubit_damping(gamma);
    const std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
    const auto traj = evolve(model, DensityMatrix::basis_state(2, 1), grid, Method::Expm);
    REQUIRE(traj.states.size() == 4);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(population_excited(traj.states[k]) - std::exp(-gamma * grid[k])) < 1e-10);
    }
}

TEST_CASE("evolve: thermal relaxation approaches n/(2n+1)") {
    const SystemModel model = qubit_damping(1.0, 1.0);
    const auto traj = evolve(model, DensityMatrix::basis_state(2, 0), {0.0, 30.0}, Method::Expm);
    CHECK(std::abs(population_excited(traj.states.back()) - 1.0 / 3.0) < 1e-10);
}

TEST_CASE("evolve: expm and RK4 agree") {
    Rng rng(56);
    for (int trial = 0; trial < 5; ++trial) {
        const SystemModel model = random_model(rng, 3);
        const DensityMatrix rho0(random_density(rng, 3));
        const auto grid = linear_grid(1.0, 11);
        const auto a = evolve(model, rho0, grid, Method::Expm);
        const auto b = evolve(model, rho0, grid, Method::RK4);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            CHECK(trace_distance(a.states[k], b.states[k]) < 1e-8);
        }
    }
}

TEST_CASE("evolve: stationary state stays put") {
    const SystemModel model{Operator::Zero(2, 2), Operator::Zero(2, 2), NoiseParams{}};
    Rng rng(57);
    const DensityMatrix rho0(random_density(rng, 2));
    for (Method m : {Method::Expm, Method::RK4}) {
        const auto traj = evolve(model, rho0, {0.0, 1.0, 5.0}, m);
        for (const auto& s : traj.states) CHECK(max_abs(s.matrix() - rho0.matrix()) < 1e-14);
    }
}

TEST_CASE("evolve: grid and shape errors") {
    const SystemModel model = qubit_damping(1.0);
    const auto rho = DensityMatrix::basis_state(2, 0);
    CHECK_THROWS_AS(evolve(model, rho, {0.1, 1.0}, Method::Expm), DomainError);
    CHECK_THROWS_AS(evolve(model, rho, {0.0, 1.0, 1.0}, Method::Expm), DomainError);
    CHECK_THROWS_AS(evolve(model, rho, {}, Method::RK4), DomainError);
    CHECK_THROWS_AS(evolve(model, DensityMatrix::basis_state(3, 0), {0.0}, Method::Expm), ShapeError);
}

TEST_CASE("density matrix validation and trace distance") {
    CHECK_THROWS_AS(DensityMatrix(Operator(2.0 * identity(2))), DomainError);
    Operator neg = Operator::Zero(2, 2);
    neg(0, 0) = 1.2;
    neg(1, 1) = -0.2;
    CHECK_THROWS_AS(DensityMatrix{neg}, DomainError);
    const auto g = DensityMatrix::basis_state(2, 0), e = DensityMatrix::basis_state(2, 1);
    CHECK(trace_distance(g, g) == 0.0);
    CHECK(std::abs(trace_distance(g, e) - 1.0) < 1e-15);
    Operator mix = Operator::Zero(2, 2);
    mix(0, 0) = 0.8;
    mix(1, 1) = 0.2;
    CHECK(std::abs(trace_distance(g, DensityMatrix(mix)) - 0.2) < 1e-15);
}

TEST_CASE("steady state") {
    for (double n : {0.5, 1.0, 3.0}) {
        const auto ss = steady_state(qubit_damping(1.0, n));
        CHECK(std::abs(population_excited(ss) - n / (2.0 * n + 1.0)) < 1e-10);
    }
    const auto vac = steady_state(qubit_damping(2.0));
    CHECK(max_abs(vac.matrix() - DensityMatrix::basis_state(2, 0).matrix()) < 1e-10);

    const SystemModel sq = qubit_damping(1.0, 1.0, 0.8 * std::sqrt(2.0) * std::polar(1.0, M_PI / 4));
    const auto ss = steady_state(sq);
    const auto late = evolve(sq, DensityMatrix::basis_state(2, 1), {0.0, 50.0}, Method::Expm);
    CHECK(trace_distance(ss, late.states.back()) < 1e-9);

    const SystemModel closed{Operator::Zero(2, 2), sigma_z(), NoiseParams{}};
    try {
        steady_state(closed);
        FAIL("expected MultiplicityError");
    } catch (const MultiplicityError& err) {
        CHECK(err.kernel_dimension == 2);
    }
}

TEST_CASE("Choi matrix of the evolution is positive") {
    Rng rng(58);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemModel model = random_model(rng, 2 + static_cast<std::size_t>(trial % 2));
        const SuperOperator lp = schrodinger_liouvillian(model);
        const SuperOperator channel(model.dim(), mat_exp(SuperOperator(lp.dim(), 0.5 * lp.matrix())).matrix());
        const Operator choi = choi_matrix(channel);
        CHECK(is_psd(choi, 1e-8));
        // Trace preservation: partial trace over the output equals the identity.
        CHECK(max_abs(partial_trace(choi, model.dim(), model.dim(), Side::Second) - identity(model.dim())) < 1e-10);
    }
    // An unphysical transpose map fails the test.
    const SuperOperator transpose(2, brute_superop([](const Operator& x) { return Operator(x.transpose()); }, 2));
    CHECK_FALSE(is_psd(choi_matrix(transpose), 1e-8));
}

TEST_CASE("sigma shift is a Hamiltonian commutator") {
    Rng rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        SystemModel a = random_model(rng, 3);
        SystemModel b = a;
        b.noise.sigma = a.noise.sigma + uniform(rng, -1.0, 1.0);
        const SuperOperator diff = heisenberg_generator(b) - heisenberg_generator(a);
        const HamiltonianFit fit = hamiltonian_of_commutator(diff);
        CHECK(fit.residual <= 1e-10);
        CHECK(is_hermitian(fit.H, 1e-10));
        // Up to a multiple of the identity, ΔH = Δσ Q.
        const Operator expected = (b.noise.sigma - a.noise.sigma) * gaussian_q(a);
        const Operator gap = fit.H - expected;
        CHECK(max_abs(gap - (gap.trace() / 3.0) * identity(3)) < 1e-9);
    }
}

TEST_CASE("exponential-vector propagator") {
    const SystemModel model = qubit_damping(1.0);
    const Operator c = model.C;
    const ItoCoefficients l{Ordering::NormalOrdered, -effective_G(model), -c.adjoint(), c,
                            Operator::Zero(2, 2)};
    const double t = 0.8;

    const Operator zero_prop = exp_vector_propagator(l, StepFunction::zero(), StepFunction::zero(), t, 1.0);
    CHECK(max_abs(zero_prop - taylor_exp(t * l.c00)) < 1e-12);

    const cplx f{0.3, -0.2}, g{-0.1, 0.5};
    for (Weighting w : {Weighting::Unweighted, Weighting::GammaWeighted}) {
        const double gamma = 1.7;
        const double scale = w == Weighting::GammaWeighted ? gamma : 1.0;
        const Operator gen = l.c00 + scale * std::conj(f) * l.c10 + scale * g * l.c01 +
                             scale * scale * std::conj(f) * g * l.c11;
        const Operator prop = exp_vector_propagator(l, StepFunction::constant(f, t),
                                                    StepFunction::constant(g, t), t, gamma, w);
        CHECK(max_abs(prop - taylor_exp(t * gen)) < 1e-12);
    }

    // Piecewise f: propagator concatenates across the knot.
    const StepFunction fp{{0.0, 0.3, 1.0}, {f, -f}};
    const Operator g1 = l.c00 + std::conj(f) * l.c10;
    const Operator g2 = l.c00 - std::conj(f) * l.c10;
    const Operator expected = taylor_exp((t - 0.3) * g2) * taylor_exp(0.3 * g1);
    CHECK(max_abs(exp_vector_propagator(l, fp, StepFunction::zero(), t, 1.0) - expected) < 1e-12);

    CHECK_THROWS_AS(exp_vector_propagator(l, StepFunction{{0.0, 1.0}, {}}, StepFunction::zero(), t, 1.0),
                    FormatError);
    CHECK_THROWS_AS(exp_vector_propagator(l, StepFunction{{0.2, 1.0}, {f}}, StepFunction::zero(), t, 1.0),
                    FormatError);
}

TEST_CASE("doubled representation converts to the master-equation coefficients") {
    Rng rng(60);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemModel model = random_model(rng, 2 + static_cast<std::size_t>(trial % 2));
        const ItoCoefficients e = doubled_time_ordered(model);
        REQUIRE(e.channels() == 2);
        CHECK(e.hermitian_generator(1e-12));
        NoiseParams vac = NoiseParams::vacuum(model.noise.gamma);
        vac.sigma = model.noise.sigma;
        const ItoCoefficients l = time_to_normal(e, vac);
        CHECK(max_abs(l.c00 + effective_G(model)) < 1e-10);
        CHECK(max_abs(l.c10 + I * e.c10) < 1e-12);
        CHECK(unitarity_defect(l, vac.gamma) < 1e-10);
    }
}

}
