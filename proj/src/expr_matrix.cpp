#include "mprat/expr_matrix.hpp"

#include <unordered_map>
#include <unordered_set>

#include "mprat/error.hpp"

namespace mprat {

namespace {

bool is_literal(const Expr& e, long v) { return e.is_const() && e.value() == v; }

Expr add_all(std::vector<Expr> terms) {
    std::erase_if(terms, [](const Expr& t) { return is_literal(t, 0); });
    return Expr::sum(std::move(terms));
}

Expr mul(const Expr& x, const Expr& y) {
    if (is_literal(x, 0) || is_literal(y, 0)) return Expr::constant(0);
    if (is_literal(x, 1)) return y;
    if (is_literal(y, 1)) return x;
    return x * y;
}

Expr neg(const Expr& x) { return is_literal(x, 0) ? x : Expr::negate(x); }

// Rectangular products are needed for the Schur blocks.
using Grid = std::vector<std::vector<Expr>>;

Grid times(const Grid& a, const Grid& b) {
    const std::size_t rows = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = inner == 0 ? 0 : b[0].size();
    Grid r(rows, std::vector<Expr>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            std::vector<Expr> terms;
            for (std::size_t k = 0; k < inner; ++k) terms.push_back(mul(a[i][k], b[k][j]));
            r[i][j] = add_all(std::move(terms));
        }
    }
    return r;
}

Grid scale(const Expr& x, const Grid& g, bool left) {
    Grid r = g;
    for (auto& row : r) {
        for (auto& e : row) e = left ? mul(x, e) : mul(e, x);
    }
    return r;
}

Grid to_grid(const ExprMatrix& m) {
    Grid g(m.size(), std::vector<Expr>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) g[i][j] = m(i, j);
    }
    return g;
}

class SchurInverter {
public:
    SchurInverter(const Alphabet& alphabet, const TestConfig& cfg) : alphabet_(alphabet), cfg_(cfg) {}

    ExprMatrix run(const ExprMatrix& a, std::size_t depth) {
        const std::size_t d = a.size();
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t i = 0; i < d && !pivot; ++i) {
            for (std::size_t j = 0; j < d && !pivot; ++j) {
                if (is_literal(a(i, j), 0)) continue;
                ZeroVerdict v = is_zero(a(i, j), alphabet_, cfg_);
                if (const auto* w = v.witness()) {
                    pivot.emplace(i, j);
                    log.push_back({depth, i, j, a(i, j), *w});
                }
            }
        }
        if (!pivot) throw NotInvertible("no entry of a " + std::to_string(d) + "x" + std::to_string(d) +
                                        " block tests nonzero");
        const auto [pi, pj] = *pivot;
        const Expr ainv = inv(a(pi, pj));
        if (d == 1) {
            ExprMatrix r(1);
            r(0, 0) = ainv;
            return r;
        }

        // Row order with pi first, column order with pj first.
        std::vector<std::size_t> rows{pi}, cols{pj};
        for (std::size_t k = 0; k < d; ++k) {
            if (k != pi) rows.push_back(k);
            if (k != pj) cols.push_back(k);
        }
        Grid b(1, std::vector<Expr>(d - 1)), c(d - 1, std::vector<Expr>(1)), dd(d - 1, std::vector<Expr>(d - 1));
        for (std::size_t k = 1; k < d; ++k) {
            b[0][k - 1] = a(rows[0], cols[k]);
            c[k - 1][0] = a(rows[k], cols[0]);
            for (std::size_t l = 1; l < d; ++l) dd[k - 1][l - 1] = a(rows[k], cols[l]);
        }
        const Grid ainv_b = scale(ainv, b, true);   // a⁻¹B
        const Grid c_ainv = scale(ainv, c, false);  // Ca⁻¹
        const Grid cab = times(c_ainv, b);
        ExprMatrix s(d - 1);
        for (std::size_t k = 0; k + 1 < d; ++k) {
            for (std::size_t l = 0; l + 1 < d; ++l) s(k, l) = add_all({dd[k][l], neg(cab[k][l])});
        }
        const Grid sinv = to_grid(run(s, depth + 1));
        const Grid top_right = times(ainv_b, sinv);     // a⁻¹B S⁻¹
        const Grid bottom_left = times(sinv, c_ainv);   // S⁻¹Ca⁻¹
        const Grid corner = times(top_right, c_ainv);   // a⁻¹B S⁻¹ C a⁻¹

        // inverse of the permuted matrix, mapped back: entry (k, l) of the
        // permuted inverse sits at (cols[k], rows[l]).
        ExprMatrix r(d);
        r(cols[0], rows[0]) = add_all({ainv, corner[0][0]});
        for (std::size_t k = 1; k < d; ++k) {
            r(cols[0], rows[k]) = neg(top_right[0][k - 1]);
            r(cols[k], rows[0]) = neg(bottom_left[k - 1][0]);
            for (std::size_t l = 1; l < d; ++l) r(cols[k], rows[l]) = sinv[k - 1][l - 1];
        }
        return r;
    }

    std::vector<PivotRecord> log;

private:
    const Alphabet& alphabet_;
    const TestConfig& cfg_;
};

} // namespace

ExprMatrix ExprMatrix::identity(std::size_t d) { return scalar(d, Expr::constant(1)); }

ExprMatrix ExprMatrix::scalar(std::size_t d, const Expr& alpha) {
    ExprMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = alpha;
    return m;
}

ExprMatrix ExprMatrix::constant(const Matrix& a) {
    if (!a.is_square()) throw NotSquare();
    ExprMatrix m(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Expr::constant(a(i, j).rational());
    }
    return m;
}

std::size_t ExprMatrix::node_count() const {
    std::unordered_set<const void*> seen;
    std::vector<Expr> stack(entries_.begin(), entries_.end());
    while (!stack.empty()) {
        Expr e = stack.back();
        stack.pop_back();
        if (!seen.insert(e.id()).second) continue;
        for (const auto& c : e.children()) stack.push_back(c);
    }
    return seen.size();
}

ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b) {
    if (a.size() != b.size()) throw ShapeMismatch("expression matrices of different sizes");
    ExprMatrix r(a.size());
    for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = add_all({a.entries_[k], b.entries_[k]});
    return r;
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
    if (a.size() != b.size()) throw ShapeMismatch("expression matrices of different sizes");
    const Grid g = times(to_grid(a), to_grid(b));
    ExprMatrix r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = g[i][j];
    }
    return r;
}

std::optional<Matrix> evaluate(const ExprMatrix& m, const Alphabet& alphabet, const MpPoint& a) {
    check_point(a, alphabet);
    const NcPoint p = tau_point(a);
    const auto values = nc_evaluate_all(m.entries(), alphabet, p);
    const std::size_t d = m.size();
    Matrix out(d * p.n, d * p.n, a.field());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const EvalResult& v = values[i * d + j];
            if (!is_defined(v)) return std::nullopt;
            out.set_block(i * p.n, j * p.n, value(v));
        }
    }
    return out;
}

InvertibilityVerdict matrix_invertible(const ExprMatrix& m, const Alphabet& alphabet, const TestConfig& cfg) {
    cfg.validate();
    std::size_t decided = 0;
    for (std::size_t level = 1; level <= cfg.max_level; ++level) {
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            MpPoint a = sample_point(alphabet, level, cfg, t);
            const auto v = evaluate(m, alphabet, a);
            if (!v) continue;
            ++decided;
            if (!det(*v).is_zero()) return InvertibleWitness{std::move(a), level, t};
        }
    }
    return ProbablyNotInvertible{cfg.max_level, cfg.trials, decided};
}

MatrixInverse matrix_inverse_expr(const ExprMatrix& m, const Alphabet& alphabet, const TestConfig& cfg) {
    cfg.validate();
    if (m.size() == 0) return {};
    SchurInverter inverter(alphabet, cfg);
    MatrixInverse out;
    out.inverse = inverter.run(m, 0);
    out.pivots = std::move(inverter.log);
    return out;
}

ExprMatrix partial_evaluate(const Expr& e, const Alphabet& alphabet, std::uint32_t part, const std::vector<Matrix>& a,
                            const TestConfig& cfg) {
    if (part >= alphabet.parts() || alphabet.parts() < 2) {
        throw ShapeMismatch("partial evaluation needs at least two parts and a valid part index");
    }
    if (a.size() != alphabet.size(part)) throw ShapeMismatch("one matrix per letter of the part is required");
    const std::size_t d = a.front().rows();
    for (const auto& x : a) {
        if (x.rows() != d || x.cols() != d) throw ShapeMismatch("partial evaluation matrices must share one square size");
    }
    check_alphabet(e, alphabet.unprimed());
    const Alphabet rest = alphabet.without_part(part);

    std::unordered_map<const void*, ExprMatrix> memo;
    auto rec = [&](auto& self, const Expr& x) -> ExprMatrix {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        ExprMatrix r;
        switch (x.kind()) {
        case Expr::Kind::Const:
            r = ExprMatrix::scalar(d, x);
            break;
        case Expr::Kind::Var: {
            const Variable& v = x.variable();
            if (v.part == part) {
                r = ExprMatrix::constant(a[v.index]);
            } else {
                const std::uint32_t p = v.part > part ? v.part - 1 : v.part;
                r = ExprMatrix::scalar(d, Expr::var(Variable{p, v.index, false}));
            }
            break;
        }
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            const auto cs = x.children();
            r = self(self, cs[0]);
            for (std::size_t i = 1; i < cs.size(); ++i) {
                r = x.kind() == Expr::Kind::Sum ? r + self(self, cs[i]) : r * self(self, cs[i]);
            }
            break;
        }
        case Expr::Kind::Inverse:
            try {
                r = matrix_inverse_expr(self(self, x.child(0)), rest, cfg).inverse;
            } catch (const NotInvertible& err) {
                throw PartialUndefined(std::string("inverse is not invertible as a matrix: ") + err.what());
            }
            break;
        }
        memo.emplace(x.id(), r);
        return r;
    };
    return rec(rec, e);
}

} // namespace mprat
