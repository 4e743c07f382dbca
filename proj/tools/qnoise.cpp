// qnoise — command-line front end for the Gaussian-bath master equation engine

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qnoise/commands.hpp"
#include "qnoise/errors.hpp"

namespace {

struct Options {
    std::string model;
    std::string rho0;
    std::string out;
    std::string direction = "forward";
    std::string method = "expm";
    std::string dt_list = "0.04,0.02,0.01";
    double t_final = 1.0;
    double tol = qnoise::kDefaultTol;
    double n = 0.0;
    double m_re = 0.0;
    double m_im = 0.0;
    std::size_t points = 11;
    std::size_t cutoff = 5;
    std::uint64_t seed = 0;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw qnoise::IoError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

} // namespace

int main(int argc, char** argv) {
    using namespace qnoise;
    Options o;
    CLI::App app{"Quantum white noise / Gaussian bath master equation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tol", o.tol, "Validation tolerance")->capture_default_str();
    app.add_option("--out", o.out, "Output path (default stdout)");

    auto* convert = app.add_subcommand("convert", "Time-ordered <-> normal-ordered coefficients");
    convert->add_option("--model", o.model)->required();
    convert->add_option("--direction", o.direction)
        ->check(CLI::IsMember({"forward", "backward"}))
        ->capture_default_str();

    auto* generator = app.add_subcommand("generator", "Liouvillian and GKS report");
    generator->add_option("--model", o.model)->required();
    generator->add_option("--seed", o.seed, "Seed for the duality spot check")->capture_default_str();

    auto* evolve = app.add_subcommand("evolve", "Master-equation trajectory as CSV");
    evolve->add_option("--model", o.model)->required();
    evolve->add_option("--rho0", o.rho0)->required();
    evolve->add_option("--t-final", o.t_final)->capture_default_str();
    evolve->add_option("--points", o.points)->capture_default_str();
    evolve->add_option("--method", o.method)
        ->check(CLI::IsMember({"expm", "rk4"}))
        ->capture_default_str();

    auto* steady = app.add_subcommand("steady", "Steady-state report");
    steady->add_option("--model", o.model)->required();

    auto* oracle = app.add_subcommand("oracle", "Collision-model convergence table as CSV");
    oracle->add_option("--model", o.model)->required();
    oracle->add_option("--rho0", o.rho0);
    oracle->add_option("--dt-list", o.dt_list)->capture_default_str();
    oracle->add_option("--cutoff", o.cutoff)->capture_default_str();
    oracle->add_option("--t-final", o.t_final)->capture_default_str();

    auto* split = app.add_subcommand("split", "Doubling coefficients (x, y, z) for (n, m)");
    split->add_option("--n", o.n)->required();
    split->add_option("--m-re", o.m_re)->capture_default_str();
    split->add_option("--m-im", o.m_im)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kValidation;
    }

    try {
        Output out(o.out);
        std::ostream& os = out.stream();
        if (*convert) {
            const auto dir = o.direction == "forward" ? cli::Direction::Forward : cli::Direction::Backward;
            os << cli::cmd_convert(load_model(o.model), dir, o.tol).dump(2) << '\n';
        } else if (*generator) {
            os << cli::cmd_generator(load_model(o.model), o.seed, o.tol).dump(2) << '\n';
        } else if (*evolve) {
            const Method method = o.method == "rk4" ? Method::RK4 : Method::Expm;
            cli::cmd_evolve(load_model(o.model), load_density(o.rho0, o.tol), o.t_final, o.points,
                            method, o.tol, os);
        } else if (*steady) {
            os << cli::cmd_steady(load_model(o.model), o.tol).dump(2) << '\n';
        } else if (*oracle) {
            std::optional<DensityMatrix> rho0;
            if (!o.rho0.empty()) rho0 = load_density(o.rho0, o.tol);
            const auto summary = cli::cmd_oracle(load_model(o.model), rho0,
                                                 cli::parse_dt_list(o.dt_list), o.cutoff, o.t_final, os);
            std::cerr << summary.dump(2) << '\n';
        } else if (*split) {
            os << cli::cmd_split(o.n, {o.m_re, o.m_im}, o.tol).dump(2) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "qnoise: " << e.what() << '\n';
        return cli::exit_code_for(e);
    }
    return 0;
}
