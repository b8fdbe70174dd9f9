#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mprat/expr.hpp"
#include "mprat/matrix.hpp"

namespace mprat {

/// One tuple of matrices per tensor slot of an alphabet; slot s holds
/// slot_size(s) matrices of size dims[s].
struct MpPoint {
    std::vector<std::size_t> dims;
    std::vector<std::vector<Matrix>> slots;

    Field field() const;
    friend bool operator==(const MpPoint&, const MpPoint&) = default;
};

/// All letters evaluated at matrices of one common size n.
struct NcPoint {
    std::size_t n = 0;
    std::vector<std::vector<Matrix>> slots;

    Field field() const;
    friend bool operator==(const NcPoint&, const NcPoint&) = default;
};

/// The inverse node whose argument evaluated to a singular matrix, with the
/// child indices leading to it from the root.
struct Undefined {
    std::vector<std::size_t> path;
    Expr subexpr;
};

using EvalResult = std::variant<Matrix, Undefined>;

inline bool is_defined(const EvalResult& r) { return std::holds_alternative<Matrix>(r); }
inline const Matrix& value(const EvalResult& r) { return std::get<Matrix>(r); }

/// Throws ShapeMismatch unless `p` fits `alphabet`.
void check_point(const MpPoint& p, const Alphabet& alphabet);
void check_point(const NcPoint& p, const Alphabet& alphabet);

/// Replaces each matrix of slot s by its tau_embed image.
NcPoint tau_point(const MpPoint& a);

EvalResult nc_evaluate(const Expr& e, const Alphabet& alphabet, const NcPoint& p);
EvalResult mp_evaluate(const Expr& e, const Alphabet& alphabet, const MpPoint& a);
/// Evaluates several expressions at one point, sharing common subtrees.
std::vector<EvalResult> nc_evaluate_all(std::span<const Expr> es, const Alphabet& alphabet, const NcPoint& p);

/// Point of the bi-free model: a1 = a', a2 = a'', b1 = b', b2 = b''.
struct BfPoint {
    std::size_t g = 0;
    std::size_t n = 0;
    std::vector<Matrix> a1, a2, b1, b2;
};

/// The alphabet {X_1..X_g} ∪ {Y_1..Y_g}, written X1_i and X2_i.
Alphabet bf_alphabet(std::size_t g);
/// Letter images in M_n^{⊗(g+2)}.
NcPoint bf_point(const BfPoint& p);
EvalResult bf_evaluate(const Expr& e, const BfPoint& p);

/// Linear map on M_n^{⊗G} sending c_1⊗...⊗c_G to c_1...c_G.
Matrix ell_collapse(const Matrix& m, std::size_t n, std::size_t parts);

/// Whether letters of different slots commute pairwise.
bool check_multipartite_tuple(const NcPoint& p);

/// Path as "root/1/0" for diagnostics.
std::string path_to_string(const std::vector<std::size_t>& path);

} // namespace mprat
