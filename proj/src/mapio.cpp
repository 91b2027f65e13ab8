#include "posmap/mapio.hpp"

#include "posmap/positivity.hpp"

#include <fstream>
#include <utility>

namespace posmap {

namespace {

Complex parse_entry(const nlohmann::json& e) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("complex entries must be [re, im] number pairs");
    return Complex(e[0].get<double>(), e[1].get<double>());
}

ComplexMatrix parse_matrix(const nlohmann::json& j, std::size_t rows, std::size_t cols,
                           const std::string& what) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError(what + ": expected " + std::to_string(rows) + " rows, got " +
                         std::to_string(j.is_array() ? j.size() : 0));
    ComplexMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(what + ": row " + std::to_string(r) + " must have " +
                             std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = parse_entry(row[c]);
    }
    return out;
}

std::size_t require_count(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer() || j[field].get<std::int64_t>() <= 0)
        throw ParseError(std::string("missing or invalid field \"") + field +
                         "\" (positive integer required)");
    return j[field].get<std::size_t>();
}

SuperMap parse_builtin(const nlohmann::json& j) {
    if (!j.contains("name") || !j["name"].is_string())
        throw ParseError("builtin maps need a string field \"name\"");
    const std::string name = j["name"].get<std::string>();
    const std::size_t n = require_count(j, "dim");
    if (name == "identity") return identity_map(n);
    if (name == "transpose") return transpose_map(n);
    if (name == "reduction") return reduction_map(n);
    if (name == "lambda_mu") {
        if (!j.contains("mu") || !j["mu"].is_number())
            throw ParseError("builtin lambda_mu needs a numeric field \"mu\"");
        return lambda_mu_map(n, j["mu"].get<double>());
    }
    if (name == "sp_k_random") {
        const std::size_t k = require_count(j, "k");
        const std::size_t terms = require_count(j, "terms");
        if (!j.contains("seed") || !j["seed"].is_number_integer())
            throw ParseError("builtin sp_k_random needs an integer field \"seed\"");
        return random_sp_k(k, n, n, terms, j["seed"].get<std::uint64_t>());
    }
    throw ParseError("unknown builtin map name: " + name);
}

} // namespace

SuperMap parse_map(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("map file must be a json object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ParseError("map file needs a string field \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "builtin") return parse_builtin(j);

    const std::size_t in = require_count(j, "in_dim");
    const std::size_t out = require_count(j, "out_dim");
    if (!j.contains("data")) throw ParseError("map file needs a field \"data\"");
    const auto& data = j["data"];

    if (kind == "choi") {
        const std::size_t d = in * out;
        return SuperMap(in, out, parse_matrix(data, d, d, "choi data"));
    }
    if (kind == "kraus") {
        if (!data.is_array() || data.empty())
            throw ParseError("kraus data must be a nonempty array of matrices");
        std::vector<std::pair<double, SuperMap>> parts;
        parts.reserve(data.size());
        for (std::size_t t = 0; t < data.size(); ++t)
            parts.emplace_back(1.0, ad_v(parse_matrix(data[t], out, in,
                                                      "kraus term " + std::to_string(t))));
        return sum_maps(parts);
    }
    throw ParseError("unknown map kind: " + kind);
}

SuperMap load_map(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open map file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return parse_map(j);
    } catch (const DimensionError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

nlohmann::json matrix_to_json(const ComplexMatrix& x) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < x.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < x.cols(); ++c)
            row.push_back({x(r, c).real(), x(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json vector_to_json(const std::vector<Complex>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const Complex& z : v) out.push_back({z.real(), z.imag()});
    return out;
}

nlohmann::json map_to_json(const SuperMap& m) {
    return nlohmann::json{{"kind", "choi"},
                          {"in_dim", m.in_dim()},
                          {"out_dim", m.out_dim()},
                          {"data", matrix_to_json(m.choi())}};
}

} // namespace posmap
