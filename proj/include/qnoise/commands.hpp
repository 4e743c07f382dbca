// commands.hpp — implementation of the qnoise CLI subcommands
//
// Each command is a pure function of its inputs writing to the given streams;
// the executable only parses flags and maps exceptions to exit codes.

#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <vector>

#include "qnoise/model_io.hpp"

namespace qnoise::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kNumerical = 3, kIo = 4 };

/// 2 for validation errors, 3 for numerical errors, 4 for I/O errors.
int exit_code_for(const std::exception& e);

enum class Direction { Forward, Backward };

/// Forward reads the E block and writes an L block, backward the reverse. The
/// report is itself a valid model file for the opposite direction.
nlohmann::json cmd_convert(const ModelFile& model, Direction direction, double tol);

/// Liouvillian, GKS form and structural residuals; seed drives the random
/// (ϱ, X) duality spot check.
nlohmann::json cmd_generator(const ModelFile& model, std::uint64_t seed, double tol);

/// CSV: t, Re/Im of column-stacked ϱ, trace, <C†C>.
void cmd_evolve(const ModelFile& model, const DensityMatrix& rho0, double t_final,
                std::size_t points, Method method, double tol, std::ostream& csv);

nlohmann::json cmd_steady(const ModelFile& model, double tol);

/// CSV table (dt, steps, max_trace_distance, boundary_population); the
/// summary (fitted order, flags, warnings) is returned.
nlohmann::json cmd_oracle(const ModelFile& model, const std::optional<DensityMatrix>& rho0,
                          const std::vector<double>& dts, std::size_t cutoff, double t_final,
                          std::ostream& csv);

nlohmann::json cmd_split(double n, cplx m, double tol);

std::vector<double> parse_dt_list(const std::string& text);

} // namespace qnoise::cli
