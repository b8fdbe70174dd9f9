#pragma once

#include <json.hpp>

#include "mprat/eval.hpp"
#include "mprat/expr_matrix.hpp"
#include "mprat/realization.hpp"

namespace mprat::io {

using Json = nlohmann::ordered_json;

/// Rows of exact rational strings.
Json to_json(const Matrix& m);
/// Accepts nested rows, or a flat row-major array of size*size entries when
/// `size` is given. Entries are integers or "p/q" strings.
Matrix matrix_from_json(const Json& j, std::size_t size = 0);

/// {"dims": [...], "parts": [[matrix, ...], ...]}
Json to_json(const MpPoint& p);
MpPoint mp_point_from_json(const Json& j);

/// {"size": n, "parts": [[matrix, ...], ...]}
Json to_json(const NcPoint& p);
NcPoint nc_point_from_json(const Json& j);

/// {"n": n, "g": g, "a1": [...], "a2": [...], "b1": [...], "b2": [...]}
BfPoint bf_point_from_json(const Json& j);

Json to_json(const Realization& r);

/// {"d": d, "entries": [["expr", ...], ...]}
ExprMatrix expr_matrix_from_json(const Json& j, const Alphabet& alphabet);
Json to_json(const ExprMatrix& m);

} // namespace mprat::io
