#include "qnoise/commands.hpp"

#include <iomanip>
#include <random>
#include <sstream>

#include "qnoise/collision.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/wick.hpp"

namespace qnoise::cli {

using nlohmann::json;

namespace {

json noise_json(const NoiseParams& p) {
    return {{"gamma", p.gamma},       {"sigma", p.sigma},         {"n", p.n},
            {"m_re", p.m.real()},     {"m_im", p.m.imag()},       {"alpha_re", p.alpha.real()},
            {"alpha_im", p.alpha.imag()}};
}

Operator random_density(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const auto n = static_cast<Eigen::Index>(d);
    Operator r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) r(i, k) = {g(rng), g(rng)};
    Operator rho = r * r.adjoint();
    return rho / rho.trace();
}

} // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ValidationError*>(&e)) return kValidation;
    if (dynamic_cast<const NumericalError*>(&e)) return kNumerical;
    if (dynamic_cast<const IoError*>(&e)) return kIo;
    return kNumerical;
}

json cmd_convert(const ModelFile& model, Direction direction, double tol) {
    json out = noise_json(model.noise);
    out["dim"] = model.dim;
    if (direction == Direction::Forward) {
        if (!model.E) throw FormatError("E: required for forward conversion");
        const ItoCoefficients l = time_to_normal(*model.E, model.noise);
        out["L"] = coefficients_to_json(l);
        out["unitarity_defect"] = unitarity_defect(l, model.noise.gamma);
        out["hermitian_generator"] = model.E->hermitian_generator(tol);
    } else {
        if (!model.L) throw FormatError("L: required for backward conversion");
        const ItoCoefficients e = normal_to_time(*model.L, model.noise);
        out["E"] = coefficients_to_json(e);
        out["unitarity_defect"] = unitarity_defect(*model.L, model.noise.gamma);
        out["hermitian_generator"] = e.hermitian_generator(tol);
    }
    return out;
}

json cmd_generator(const ModelFile& mf, std::uint64_t seed, double tol) {
    const SystemModel model = mf.system_model(tol);
    const SuperOperator heis = heisenberg_generator(model);
    const SuperOperator lp = schrodinger_liouvillian(model);
    const GKSForm gks = gks_decompose(model);

    std::mt19937_64 rng(seed);
    double duality = 0.0, trace_pres = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Operator rho = random_density(model.dim(), rng);
        const Operator x = random_density(model.dim(), rng) * cplx{1.0, 0.5};
        duality = std::max(duality, std::abs((rho * heis.apply(x)).trace() - (lp.apply(rho) * x).trace()));
        trace_pres = std::max(trace_pres, std::abs(lp.apply(rho).trace()));
    }
    const double unitality = heis.apply(identity(model.dim())).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gks.kossakowski, Eigen::EigenvaluesOnly);
    return {{"dim", model.dim()},
            {"seed", seed},
            {"liouvillian", matrix_to_json(lp.matrix())},
            {"heisenberg_generator", matrix_to_json(heis.matrix())},
            {"G", matrix_to_json(effective_G(model))},
            {"H_eff", matrix_to_json(gks.H_eff)},
            {"kossakowski", matrix_to_json(gks.kossakowski)},
            {"kossakowski_eigenvalues", {es.eigenvalues()(0), es.eigenvalues()(1)}},
            {"jump_basis", {"C", "C_dagger"}},
            {"psd", gks.psd},
            {"reassembly_residual", gks.residual},
            {"unitality_residual", unitality},
            {"trace_preservation_residual", trace_pres},
            {"duality_residual", duality},
            {"vectorization", "column-stacking"}};
}

void cmd_evolve(const ModelFile& mf, const DensityMatrix& rho0, double t_final, std::size_t points,
                Method method, double tol, std::ostream& csv) {
    const SystemModel model = mf.system_model(tol);
    if (points < 2) throw DomainError("points: need at least 2");
    if (!(t_final > 0.0)) throw DomainError("t-final: must be positive");
    std::vector<double> grid(points);
    for (std::size_t k = 0; k < points; ++k) {
        grid[k] = t_final * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    const Trajectory traj = evolve(model, rho0, grid, method);
    const std::size_t d = model.dim();
    const Operator cdc = model.C.adjoint() * model.C;

    csv << "t";
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r)
            csv << ",rho_" << r << "_" << c << "_re,rho_" << r << "_" << c << "_im";
    csv << ",trace,CdagC\n";
    csv << std::setprecision(17);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Operator& rho = traj.states[k].matrix();
        csv << traj.times[k];
        const Vector v = vectorize(rho);
        for (Eigen::Index i = 0; i < v.size(); ++i) csv << ',' << v(i).real() << ',' << v(i).imag();
        csv << ',' << rho.trace().real() << ',' << (rho * cdc).trace().real() << '\n';
    }
}

json cmd_steady(const ModelFile& mf, double tol) {
    const SystemModel model = mf.system_model(tol);
    const DensityMatrix ss = steady_state(model);
    const Operator residual = schrodinger_liouvillian(model).apply(ss.matrix());
    Eigen::SelfAdjointEigenSolver<Operator> es(ss.matrix(), Eigen::EigenvaluesOnly);
    json pops = json::array();
    for (Eigen::Index k = 0; k < ss.matrix().rows(); ++k) pops.push_back(ss.matrix()(k, k).real());
    return {{"dim", model.dim()},
            {"rho", matrix_to_json(ss.matrix())},
            {"populations", pops},
            {"min_eigenvalue", es.eigenvalues().minCoeff()},
            {"residual", residual.cwiseAbs().maxCoeff()},
            {"trace", ss.matrix().trace().real()}};
}

json cmd_oracle(const ModelFile& mf, const std::optional<DensityMatrix>& rho0,
                const std::vector<double>& dts, std::size_t cutoff, double t_final,
                std::ostream& csv) {
    const SystemModel model = mf.system_model();
    if (model.noise.sigma != 0.0) {
        throw DomainError("sigma: the collision oracle only reproduces sigma = 0");
    }
    const DensityMatrix start = rho0 ? *rho0 : DensityMatrix::basis_state(model.dim(), model.dim() - 1);
    const ConvergenceTable table = convergence_study(model, start, t_final, dts, cutoff);

    csv << "dt,steps,max_trace_distance,boundary_population\n" << std::setprecision(17);
    for (const auto& r : table.rows) {
        csv << r.dt << ',' << r.steps << ',' << r.max_trace_distance << ',' << r.boundary_population
            << '\n';
    }
    return {{"fitted_order", table.fitted_order},
            {"monotone", table.monotone},
            {"at_floor", table.at_floor},
            {"cutoff", cutoff},
            {"t_final", t_final},
            {"warnings", table.warnings}};
}

json cmd_split(double n, cplx m, double tol) {
    const GaussianSpec spec{n, m, {}};
    const SplitCoefficients s = scalar_split(spec, tol);
    const SplitResiduals r = split_residuals(s, spec);
    return {{"n", n},
            {"m", complex_to_json(m)},
            {"x", s.x},
            {"y", s.y},
            {"z", complex_to_json(s.z)},
            {"residuals",
             {{"commutation", r.commutation}, {"occupation", r.occupation}, {"squeezing", r.squeezing}}}};
}

std::vector<double> parse_dt_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw FormatError("dt-list: cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw FormatError("dt-list: empty");
    return out;
}

} // namespace qnoise::cli
