#include "mprat/realization.hpp"

#include <algorithm>
#include <unordered_map>

#include "mprat/error.hpp"
#include "mprat/tensor.hpp"

namespace mprat {

namespace {

Matrix zeros(std::size_t r, std::size_t c, Field f) { return Matrix(r, c, f); }

Matrix hcat(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows(), a.cols() + b.cols(), a.field());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() + b.rows(), a.cols(), a.field());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

PencilTerm term_or_zero(const std::vector<PencilTerm>& ts, std::size_t j, std::size_t size, Field f) {
    if (j < ts.size()) return ts[j];
    return {zeros(size, size, f), zeros(size, size, f)};
}

Realization constant_real(const Realization& shell, const mpq_class& alpha) {
    Realization r = shell;
    const Field f = shell.field();
    r.n = 1;
    r.c = Matrix::scalar(r.m, Scalar::from_rational(alpha, f));
    r.b = Matrix::identity(r.m, f);
    return r;
}

Realization letter_real(const Realization& shell, std::size_t k) {
    Realization r = shell;
    const Field f = shell.field();
    const std::size_t m = r.m;
    r.n = 2;
    r.c = hcat(Matrix::identity(m, f), r.base[k]);
    r.b = vcat(zeros(m, m, f), Matrix::identity(m, f));
    r.terms[k].push_back({kron(Matrix::unit(2, 0, 1, f), Matrix::identity(m, f)), Matrix::identity(2 * m, f)});
    return r;
}

Realization sum_real(const Realization& x, const Realization& y) {
    Realization r = x;
    const Field f = x.field();
    const std::size_t nx = x.n * x.m;
    const std::size_t ny = y.n * y.m;
    r.n = x.n + y.n;
    r.c = hcat(x.c, y.c);
    r.b = vcat(x.b, y.b);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        r.terms[i].clear();
        const std::size_t rho = std::max(x.terms[i].size(), y.terms[i].size());
        for (std::size_t j = 0; j < rho; ++j) {
            const PencilTerm a = term_or_zero(x.terms[i], j, nx, f);
            const PencilTerm b = term_or_zero(y.terms[i], j, ny, f);
            r.terms[i].push_back({direct_sum(a.c, b.c), direct_sum(a.b, b.b)});
        }
    }
    return r;
}

// Chains x·y through the constant coupling A0 = [[I, -b_x c_y], [0, I]].
Realization product_real(const Realization& x, const Realization& y) {
    Realization r = x;
    const Field f = x.field();
    const std::size_t nx = x.n * x.m;
    const std::size_t ny = y.n * y.m;
    Matrix a0inv = Matrix::identity(nx + ny, f);
    a0inv.set_block(0, nx, x.b * y.c);
    r.n = x.n + y.n;
    r.c = hcat(x.c, zeros(x.m, ny, f));
    r.b = a0inv * vcat(zeros(nx, x.m, f), y.b);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        r.terms[i].clear();
        const std::size_t rho = std::max(x.terms[i].size(), y.terms[i].size());
        for (std::size_t j = 0; j < rho; ++j) {
            const PencilTerm a = term_or_zero(x.terms[i], j, nx, f);
            const PencilTerm b = term_or_zero(y.terms[i], j, ny, f);
            r.terms[i].push_back({a0inv * direct_sum(a.c, b.c), direct_sum(a.b, b.b)});
        }
    }
    return r;
}

// r^{-1} = [0 I] [[I - L, -b], [c, 0]]^{-1} [0; I], expanded about W = 0.
Realization inverse_real(const Realization& x) {
    Realization r = x;
    const Field f = x.field();
    const std::size_t m = x.m;
    const std::size_t nx = x.n * m;
    auto sinv = inv_det(x.c * x.b);
    if (!sinv) throw BasePointOutsideDomain("inverse of a function that is singular at the base point");
    const Matrix& s = sinv->inverse;
    Matrix m0inv(nx + m, nx + m, f);
    m0inv.set_block(0, 0, Matrix::identity(nx, f) - x.b * s * x.c);
    m0inv.set_block(0, nx, x.b * s);
    m0inv.set_block(nx, 0, -(s * x.c));
    m0inv.set_block(nx, nx, s);
    r.n = x.n + 1;
    r.c = hcat(zeros(m, nx, f), Matrix::identity(m, f));
    r.b = m0inv * vcat(zeros(nx, m, f), Matrix::identity(m, f));
    const Matrix pad = zeros(m, m, f);
    for (auto& ts : r.terms) {
        for (auto& t : ts) {
            t.c = m0inv * direct_sum(t.c, pad);
            t.b = direct_sum(t.b, pad);
        }
    }
    return r;
}

// I_s ⊗ (·) applied to every m×m block.
Matrix amplify(const Matrix& x, std::size_t m, std::size_t s) {
    if (s == 1) return x;
    const std::size_t br = x.rows() / m;
    const std::size_t bc = x.cols() / m;
    Matrix r(br * s * m, bc * s * m, x.field());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const std::size_t k = i / m, xi = i % m;
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const Scalar& v = x(i, j);
            if (v.is_zero()) continue;
            const std::size_t l = j / m, yj = j % m;
            for (std::size_t u = 0; u < s; ++u) r(k * s * m + u * m + xi, l * s * m + u * m + yj) = v;
        }
    }
    return r;
}

Matrix pencil_matrix(const Realization& r, const NcPoint& a, std::size_t s) {
    check_point(a, r.alphabet);
    const Field f = r.field();
    const std::size_t size = r.n * s * r.m;
    Matrix mid = Matrix::identity(size, f);
    std::size_t flat = 0;
    for (const auto& slot : a.slots) {
        for (const auto& ai : slot) {
            const auto& ts = r.terms[flat];
            if (!ts.empty()) {
                const Matrix w = kron(Matrix::identity(r.n, f), ai - kron(Matrix::identity(s, f), r.base[flat]));
                for (const auto& t : ts) mid -= amplify(t.c, r.m, s) * w * amplify(t.b, r.m, s);
            }
            ++flat;
        }
    }
    return mid;
}

std::size_t scale_of(const Realization& r, const NcPoint& a) {
    if (a.n == 0 || a.n % r.m != 0) {
        throw ShapeMismatch("point size " + std::to_string(a.n) + " is not a multiple of the base size " +
                            std::to_string(r.m));
    }
    return a.n / r.m;
}

// Echelon basis of a subspace of k^N.
class Span {
public:
    explicit Span(std::size_t dim) : dim_(dim) {}

    bool add(std::vector<mpq_class> v) {
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            const mpq_class& x = v[pivots_[k]];
            if (sgn(x) == 0) continue;
            const mpq_class factor = x;
            for (std::size_t t = 0; t < dim_; ++t) {
                if (sgn(basis_[k][t]) != 0) v[t] -= factor * basis_[k][t];
            }
        }
        std::size_t p = 0;
        while (p < dim_ && sgn(v[p]) == 0) ++p;
        if (p == dim_) return false;
        const mpq_class lead = v[p];
        for (auto& x : v) x /= lead;
        // keep earlier vectors free of the new pivot
        for (auto& u : basis_) {
            if (sgn(u[p]) == 0) continue;
            const mpq_class factor = u[p];
            for (std::size_t t = 0; t < dim_; ++t) {
                if (sgn(v[t]) != 0) u[t] -= factor * v[t];
            }
        }
        basis_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    std::size_t size() const { return basis_.size(); }
    const std::vector<mpq_class>& vector(std::size_t k) const { return basis_[k]; }
    std::size_t pivot(std::size_t k) const { return pivots_[k]; }

private:
    std::size_t dim_;
    std::vector<std::vector<mpq_class>> basis_;
    std::vector<std::size_t> pivots_;
};

std::vector<mpq_class> column(const Matrix& x, std::size_t j) {
    std::vector<mpq_class> v(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) v[i] = x(i, j).rational();
    return v;
}

std::vector<mpq_class> act(const Matrix& g, const std::vector<mpq_class>& v) {
    std::vector<mpq_class> r(g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t k = 0; k < g.cols(); ++k) {
            const mpq_class& x = g(i, k).rational();
            if (sgn(x) != 0 && sgn(v[k]) != 0) r[i] += x * v[k];
        }
    }
    return r;
}

// Σ_j C_ij (I_n ⊗ E_kl) B_ij for every letter i and matrix unit E_kl.
std::vector<Matrix> generators(const Realization& r) {
    const Field f = r.field();
    std::vector<Matrix> gens;
    for (const auto& ts : r.terms) {
        if (ts.empty()) continue;
        for (std::size_t k = 0; k < r.m; ++k) {
            for (std::size_t l = 0; l < r.m; ++l) {
                const Matrix e = kron(Matrix::identity(r.n, f), Matrix::unit(r.m, k, l, f));
                Matrix g(r.n * r.m, r.n * r.m, f);
                for (const auto& t : ts) g += t.c * e * t.b;
                if (!g.is_zero()) gens.push_back(std::move(g));
            }
        }
    }
    return gens;
}

struct Subspace {
    Matrix basis;                     // N × d, reduced: basis[pivots[k], :] = e_k
    std::vector<std::size_t> pivots;

    // d × N with selector * basis = I.
    Matrix selector() const {
        Matrix s(pivots.size(), basis.rows(), basis.field());
        for (std::size_t k = 0; k < pivots.size(); ++k) s(k, pivots[k]) = Scalar(1);
        return s;
    }
};

// Smallest subspace containing the columns of `start` and invariant under
// every generator.
Subspace krylov(const std::vector<Matrix>& gens, const Matrix& start) {
    Span span(start.rows());
    std::vector<std::vector<mpq_class>> queue;
    for (std::size_t j = 0; j < start.cols(); ++j) {
        auto v = column(start, j);
        if (span.add(v)) queue.push_back(std::move(v));
    }
    while (!queue.empty()) {
        auto v = std::move(queue.back());
        queue.pop_back();
        for (const auto& g : gens) {
            auto w = act(g, v);
            if (span.add(w)) queue.push_back(std::move(w));
        }
    }
    Subspace out{Matrix(start.rows(), span.size()), {}};
    for (std::size_t k = 0; k < span.size(); ++k) {
        for (std::size_t i = 0; i < start.rows(); ++i) out.basis(i, k) = Scalar(span.vector(k)[i]);
        out.pivots.push_back(span.pivot(k));
    }
    return out;
}

// Realization on d coordinates: c' = cR, b' = Lb, terms L C_ij[:, t] and
// B_ij[t, :] R, one per inner block t, padded to whole blocks.
Realization restrict(const Realization& r, const Matrix& left, const Matrix& right) {
    const Field f = r.field();
    const std::size_t m = r.m;
    const std::size_t d = left.rows();
    const std::size_t blocks = std::max<std::size_t>(1, (d + m - 1) / m);
    const std::size_t size = blocks * m;
    Realization out = r;
    out.n = blocks;
    out.c = zeros(m, size, f);
    out.c.set_block(0, 0, r.c * right);
    out.b = zeros(size, m, f);
    out.b.set_block(0, 0, left * r.b);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        out.terms[i].clear();
        for (const auto& t : r.terms[i]) {
            for (std::size_t blk = 0; blk < r.n; ++blk) {
                const Matrix lc = left * t.c.block(0, blk * m, t.c.rows(), m);
                const Matrix br = t.b.block(blk * m, 0, m, t.b.cols()) * right;
                if (lc.is_zero() || br.is_zero()) continue;
                PencilTerm nt{zeros(size, size, f), zeros(size, size, f)};
                nt.c.set_block(0, 0, lc);
                nt.b.set_block(0, 0, br);
                out.terms[i].push_back(std::move(nt));
            }
        }
    }
    return out;
}

} // namespace

std::size_t Realization::rho() const {
    std::size_t r = 0;
    for (const auto& ts : terms) r = std::max(r, ts.size());
    return r;
}

NcPoint base_point(const Realization& r) {
    NcPoint p;
    p.n = r.m;
    std::size_t flat = 0;
    for (std::size_t s = 0; s < r.alphabet.slot_count(); ++s) {
        p.slots.emplace_back();
        for (std::uint32_t k = 0; k < r.alphabet.slot_size(s); ++k) p.slots.back().push_back(r.base[flat++]);
    }
    return p;
}

Realization realize(const Expr& e, const Alphabet& alphabet, const NcPoint& base) {
    check_point(base, alphabet);
    check_alphabet(e, alphabet);
    if (!is_defined(nc_evaluate(e, alphabet, base))) {
        throw BasePointOutsideDomain("expression is undefined at the base point");
    }
    Realization shell;
    shell.alphabet = alphabet;
    shell.m = base.n;
    for (const auto& slot : base.slots) shell.base.insert(shell.base.end(), slot.begin(), slot.end());
    shell.terms.resize(shell.base.size());
    shell.c = Matrix(1, 1, base.field());

    std::unordered_map<const void*, Realization> memo;
    auto rec = [&](auto& self, const Expr& x) -> Realization {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        Realization r;
        switch (x.kind()) {
        case Expr::Kind::Const:
            r = constant_real(shell, x.value());
            break;
        case Expr::Kind::Var:
            r = letter_real(shell, alphabet.flat_index(x.variable()));
            break;
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            const auto cs = x.children();
            r = self(self, cs[0]);
            for (std::size_t i = 1; i < cs.size(); ++i) {
                r = x.kind() == Expr::Kind::Sum ? sum_real(r, self(self, cs[i])) : product_real(r, self(self, cs[i]));
            }
            break;
        }
        case Expr::Kind::Inverse:
            r = inverse_real(self(self, x.child(0)));
            break;
        }
        memo.emplace(x.id(), r);
        return r;
    };
    return rec(rec, e);
}

std::optional<Matrix> real_evaluate(const Realization& r, const NcPoint& a) {
    const std::size_t s = scale_of(r, a);
    const Matrix mid = pencil_matrix(r, a, s);
    auto x = solve(mid, amplify(r.b, r.m, s));
    if (!x) return std::nullopt;
    return amplify(r.c, r.m, s) * *x;
}

bool real_domain_contains(const Realization& r, const NcPoint& a) {
    const std::size_t s = scale_of(r, a);
    return !det(pencil_matrix(r, a, s)).is_zero();
}

Realization real_reduce(const Realization& r) {
    if (!r.field().is_rational()) throw FieldMismatch();
    const Subspace reach = krylov(generators(r), r.b);
    const Realization rr = restrict(r, reach.selector(), reach.basis);

    // observable part, from the transposed system
    std::vector<Matrix> tgens;
    for (const auto& g : generators(rr)) tgens.push_back(g.transpose());
    const Subspace obs = krylov(tgens, rr.c.transpose());
    return restrict(rr, obs.basis.transpose(), obs.selector().transpose());
}

} // namespace mprat
