#include "qnoise/model_io.hpp"

#include <fstream>
#include <sstream>

#include "qnoise/errors.hpp"

namespace qnoise {

using nlohmann::json;

namespace {

cplx complex_from_json(const json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw FormatError(field + ": expected [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

double number_field(const json& j, const char* key, double fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) throw FormatError(std::string(key) + ": required field missing");
        return fallback;
    }
    if (!j.at(key).is_number()) throw FormatError(std::string(key) + ": expected a number");
    return j.at(key).get<double>();
}

ItoCoefficients coefficients_from_json(const json& j, const std::string& field, Ordering kind,
                                       std::size_t dim) {
    if (!j.is_object()) throw FormatError(field + ": expected an object with c00, c01, c10, c11");
    const auto d = static_cast<Eigen::Index>(dim);
    ItoCoefficients c = ItoCoefficients::zero(kind, dim);
    auto load = [&](const char* key, Operator& slot) {
        if (j.contains(key)) slot = matrix_from_json(j.at(key), field + "." + key);
    };
    load("c00", c.c00);
    load("c01", c.c01);
    load("c10", c.c10);
    load("c11", c.c11);
    if (c.c00.rows() != d) throw ShapeError(field + ".c00: expected " + std::to_string(dim) + " rows");
    try {
        c.check_shape();
    } catch (const ShapeError& e) {
        throw ShapeError(field + ": " + e.what());
    }
    return c;
}

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json complex_to_json(cplx z) {
    return json::array({z.real(), z.imag()});
}

json matrix_to_json(const Operator& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Operator matrix_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw FormatError(field + ": expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array() || j[0].empty()) throw FormatError(field + "[0]: expected a non-empty row");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Operator m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        const std::string rf = field + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ShapeError(rf + ": expected " + std::to_string(cols) + " entries");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                        rf + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

json coefficients_to_json(const ItoCoefficients& c) {
    return {{"c00", matrix_to_json(c.c00)},
            {"c01", matrix_to_json(c.c01)},
            {"c10", matrix_to_json(c.c10)},
            {"c11", matrix_to_json(c.c11)}};
}

ModelFile parse_model(const json& j) {
    if (!j.is_object()) throw FormatError("model: top level must be an object");
    ModelFile mf;
    if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<long>() <= 0) {
        throw FormatError("dim: required positive integer");
    }
    mf.dim = j.at("dim").get<std::size_t>();
    const auto d = static_cast<Eigen::Index>(mf.dim);

    mf.noise.gamma = number_field(j, "gamma", 1.0, true);
    mf.noise.sigma = number_field(j, "sigma", 0.0);
    mf.noise.n = number_field(j, "n", 0.0);
    mf.noise.m = {number_field(j, "m_re", 0.0), number_field(j, "m_im", 0.0)};
    mf.noise.alpha = {number_field(j, "alpha_re", 0.0), number_field(j, "alpha_im", 0.0)};

    for (const char* key : {"C", "F"}) {
        if (!j.contains(key)) continue;
        Operator m = matrix_from_json(j.at(key), key);
        if (m.rows() != d || m.cols() != d) {
            throw ShapeError(std::string(key) + ": expected " + std::to_string(mf.dim) + "x" +
                             std::to_string(mf.dim));
        }
        (std::string(key) == "C" ? mf.C : mf.F) = std::move(m);
    }
    if (j.contains("E")) mf.E = coefficients_from_json(j.at("E"), "E", Ordering::TimeOrdered, mf.dim);
    if (j.contains("L")) mf.L = coefficients_from_json(j.at("L"), "L", Ordering::NormalOrdered, mf.dim);

    if (!(mf.noise.gamma > 0.0)) throw DomainError("gamma: must be positive");
    if (!(mf.noise.n >= 0.0)) throw DomainError("n: must be nonnegative");
    if (!mf.noise.is_gaussian()) throw DomainError("m_re/m_im: |m|^2 exceeds n(n+1)");
    return mf;
}

ModelFile parse_model_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("model: ") + e.what());
    }
    return parse_model(j);
}

ModelFile load_model(const std::string& path) {
    return parse_model_text(read_file(path));
}

SystemModel ModelFile::system_model(double tol) const {
    if (!C) throw FormatError("C: required for this command");
    const auto d = static_cast<Eigen::Index>(dim);
    SystemModel model{*C, F ? *F : Operator::Zero(d, d), noise};
    if (!is_hermitian(model.F, tol)) throw DomainError("F: not Hermitian");
    model.validate(tol);
    return model;
}

DensityMatrix parse_density(const json& j, double tol) {
    if (!j.is_object() || !j.contains("rho")) throw FormatError("rho: required field missing");
    return DensityMatrix(matrix_from_json(j.at("rho"), "rho"), tol);
}

DensityMatrix load_density(const std::string& path, double tol) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("rho0: ") + e.what());
    }
    return parse_density(j, tol);
}

} // namespace qnoise
