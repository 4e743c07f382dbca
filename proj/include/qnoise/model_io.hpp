// model_io.hpp — JSON model files; complex numbers are [re, im] pairs
//
// Layout (all keys except dim/gamma optional, see docs/model.schema.json):
//   { "dim": 2, "C": [[[re,im],...],...], "F": ..., "gamma": 1, "sigma": 0,
//     "n": 0, "m_re": 0, "m_im": 0, "alpha_re": 0, "alpha_im": 0,
//     "E": {"c00": M, "c01": M, "c10": M, "c11": M},   // time-ordered block
//     "L": {"c00": M, "c01": M, "c10": M, "c11": M} }  // normal-ordered block

#pragma once

#include <istream>
#include <optional>
#include <string>

#include <json.hpp>

#include "qnoise/lindblad.hpp"

namespace qnoise {

struct ModelFile {
    std::size_t dim = 0;
    NoiseParams noise;
    std::optional<Operator> C;
    std::optional<Operator> F;
    std::optional<ItoCoefficients> E;
    std::optional<ItoCoefficients> L;

    /// C and F present and valid; throws ValidationError naming the field.
    SystemModel system_model(double tol = kDefaultTol) const;
};

/// Throws FormatError (malformed JSON, with line/column) or ValidationError
/// naming the offending field path, e.g. "C[1][0]".
ModelFile parse_model(const nlohmann::json& j);
ModelFile parse_model_text(const std::string& text);
ModelFile load_model(const std::string& path);

DensityMatrix parse_density(const nlohmann::json& j, double tol = kDefaultTol);
DensityMatrix load_density(const std::string& path, double tol = kDefaultTol);

nlohmann::json matrix_to_json(const Operator& m);
Operator matrix_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json complex_to_json(cplx z);
nlohmann::json coefficients_to_json(const ItoCoefficients& c);

std::string read_file(const std::string& path);

} // namespace qnoise
