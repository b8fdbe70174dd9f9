#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mprat/identity.hpp"

namespace mprat {

/// Square matrix of expressions over one alphabet, row-major.
class ExprMatrix {
public:
    ExprMatrix() = default;
    explicit ExprMatrix(std::size_t d) : d_(d), entries_(d * d, Expr::constant(0)) {}

    static ExprMatrix identity(std::size_t d);
    /// α·I_d for an expression α.
    static ExprMatrix scalar(std::size_t d, const Expr& alpha);
    static ExprMatrix constant(const Matrix& m);

    std::size_t size() const { return d_; }
    Expr& operator()(std::size_t i, std::size_t j) { return entries_[i * d_ + j]; }
    const Expr& operator()(std::size_t i, std::size_t j) const { return entries_[i * d_ + j]; }
    const std::vector<Expr>& entries() const { return entries_; }

    /// Total number of distinct expression nodes across all entries.
    std::size_t node_count() const;

    friend ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b);
    friend ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
    friend bool operator==(const ExprMatrix& a, const ExprMatrix& b) = default;

private:
    std::size_t d_ = 0;
    std::vector<Expr> entries_;
};

/// The d·N × d·N block matrix [M_ij(a)], or nullopt if some entry is
/// undefined at `a`.
std::optional<Matrix> evaluate(const ExprMatrix& m, const Alphabet& alphabet, const MpPoint& a);

struct InvertibleWitness {
    MpPoint point;
    std::size_t level = 0;
    std::size_t trial = 0;
};

struct ProbablyNotInvertible {
    std::size_t max_level = 0;
    std::size_t trials = 0;
    std::size_t decided = 0;
};

using InvertibilityVerdict = std::variant<InvertibleWitness, ProbablyNotInvertible>;

InvertibilityVerdict matrix_invertible(const ExprMatrix& m, const Alphabet& alphabet, const TestConfig& cfg = {});

struct PivotRecord {
    std::size_t depth = 0;  // recursion depth, 0 for the full matrix
    std::size_t row = 0;    // position in the matrix of that depth
    std::size_t col = 0;
    Expr entry;
    NonzeroWitness witness;
};

struct MatrixInverse {
    ExprMatrix inverse;
    std::vector<PivotRecord> pivots;
};

/// Inverse by recursive Schur complements. Throws NotInvertible when some
/// stage has no entry that tests nonzero.
MatrixInverse matrix_inverse_expr(const ExprMatrix& m, const Alphabet& alphabet, const TestConfig& cfg = {});

/// Substitutes the d×d matrices `a` for the letters of `part`; the result
/// lives over alphabet.without_part(part). Throws PartialUndefined when an
/// inverse has no inverse as an expression matrix.
ExprMatrix partial_evaluate(const Expr& e, const Alphabet& alphabet, std::uint32_t part, const std::vector<Matrix>& a,
                            const TestConfig& cfg = {});

} // namespace mprat
