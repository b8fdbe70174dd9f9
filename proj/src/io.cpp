#include "mprat/io.hpp"

#include "mprat/error.hpp"
#include "mprat/parser.hpp"

namespace mprat::io {

namespace {

Scalar scalar_from_json(const Json& j) {
    if (j.is_number_integer()) return Scalar(mpq_class(j.dump()));
    if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
    throw Error("matrix entries must be integers or \"p/q\" strings, got " + j.dump());
}

std::vector<Matrix> matrices_from_json(const Json& j, std::size_t size) {
    if (!j.is_array()) throw Error("expected an array of matrices");
    std::vector<Matrix> out;
    for (const auto& m : j) out.push_back(matrix_from_json(m, size));
    return out;
}

std::vector<std::vector<Matrix>> parts_from_json(const Json& j, const std::vector<std::size_t>& sizes) {
    if (!j.is_array() || j.size() != sizes.size()) throw Error("\"parts\" must list one tuple per part");
    std::vector<std::vector<Matrix>> out;
    for (std::size_t s = 0; s < sizes.size(); ++s) out.push_back(matrices_from_json(j[s], sizes[s]));
    return out;
}

Json parts_to_json(const std::vector<std::vector<Matrix>>& slots) {
    Json parts = Json::array();
    for (const auto& s : slots) {
        Json tuple = Json::array();
        for (const auto& m : s) tuple.push_back(to_json(m));
        parts.push_back(std::move(tuple));
    }
    return parts;
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing \"") + key + "\"");
    return j.at(key);
}

} // namespace

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t size) {
    if (!j.is_array()) throw Error("a matrix must be a JSON array");
    if (!j.empty() && !j.front().is_array()) {
        if (size == 0 || j.size() != size * size) throw Error("flat matrix has the wrong number of entries");
        Matrix m(size, size);
        for (std::size_t k = 0; k < j.size(); ++k) m(k / size, k % size) = scalar_from_json(j[k]);
        return m;
    }
    std::vector<std::vector<Scalar>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw Error("matrix rows must be arrays");
        std::vector<Scalar> row;
        for (const auto& x : r) row.push_back(scalar_from_json(x));
        rows.push_back(std::move(row));
    }
    Matrix m = Matrix::from_rows(rows);
    if (size != 0 && (m.rows() != size || m.cols() != size)) {
        throw ShapeMismatch("expected a " + std::to_string(size) + "x" + std::to_string(size) + " matrix");
    }
    return m;
}

Json to_json(const MpPoint& p) {
    Json j;
    j["dims"] = p.dims;
    j["parts"] = parts_to_json(p.slots);
    return j;
}

MpPoint mp_point_from_json(const Json& j) {
    MpPoint p;
    p.dims = field(j, "dims").get<std::vector<std::size_t>>();
    p.slots = parts_from_json(field(j, "parts"), p.dims);
    return p;
}

Json to_json(const NcPoint& p) {
    Json j;
    j["size"] = p.n;
    j["parts"] = parts_to_json(p.slots);
    return j;
}

NcPoint nc_point_from_json(const Json& j) {
    NcPoint p;
    p.n = field(j, "size").get<std::size_t>();
    const Json& parts = field(j, "parts");
    if (!parts.is_array()) throw Error("\"parts\" must be an array");
    p.slots = parts_from_json(parts, std::vector<std::size_t>(parts.size(), p.n));
    return p;
}

BfPoint bf_point_from_json(const Json& j) {
    BfPoint p;
    p.n = field(j, "n").get<std::size_t>();
    p.g = field(j, "g").get<std::size_t>();
    p.a1 = matrices_from_json(field(j, "a1"), p.n);
    p.a2 = matrices_from_json(field(j, "a2"), p.n);
    p.b1 = matrices_from_json(field(j, "b1"), p.n);
    p.b2 = matrices_from_json(field(j, "b2"), p.n);
    return p;
}

Json to_json(const Realization& r) {
    Json j;
    j["alphabet"] = r.alphabet.to_string();
    j["m"] = r.m;
    j["n"] = r.n;
    j["rho"] = r.rho();
    Json base = Json::array();
    for (const auto& p : r.base) base.push_back(to_json(p));
    j["base"] = std::move(base);
    j["c"] = to_json(r.c);
    j["b"] = to_json(r.b);
    Json terms = Json::array();
    for (const auto& ts : r.terms) {
        Json letter = Json::array();
        for (const auto& t : ts) {
            Json term;
            term["C"] = to_json(t.c);
            term["B"] = to_json(t.b);
            letter.push_back(std::move(term));
        }
        terms.push_back(std::move(letter));
    }
    j["terms"] = std::move(terms);
    return j;
}

ExprMatrix expr_matrix_from_json(const Json& j, const Alphabet& alphabet) {
    const auto d = field(j, "d").get<std::size_t>();
    const Json& rows = field(j, "entries");
    if (!rows.is_array() || rows.size() != d) throw ShapeMismatch("\"entries\" must have d rows");
    ExprMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!rows[i].is_array() || rows[i].size() != d) throw ShapeMismatch("every row needs d entries");
        for (std::size_t k = 0; k < d; ++k) m(i, k) = parse(rows[i][k].get<std::string>(), alphabet);
    }
    return m;
}

Json to_json(const ExprMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.size(); ++k) row.push_back(format(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace mprat::io
