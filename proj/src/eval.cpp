#include "mprat/eval.hpp"

#include <unordered_map>

#include "mprat/error.hpp"
#include "mprat/tensor.hpp"

namespace mprat {

namespace {

Field first_field(const std::vector<std::vector<Matrix>>& slots) {
    for (const auto& s : slots) {
        for (const auto& m : s) return m.field();
    }
    return Field::rationals();
}

void check_slots(const std::vector<std::vector<Matrix>>& slots, const Alphabet& alphabet,
                 const std::function<std::size_t(std::size_t)>& dim) {
    if (slots.size() != alphabet.slot_count()) {
        throw ShapeMismatch("point has " + std::to_string(slots.size()) + " slots, alphabet " +
                            alphabet.to_string() + " needs " + std::to_string(alphabet.slot_count()));
    }
    const Field f = first_field(slots);
    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].size() != alphabet.slot_size(s)) {
            throw ShapeMismatch("slot " + std::to_string(s + 1) + " needs " + std::to_string(alphabet.slot_size(s)) +
                                " matrices, got " + std::to_string(slots[s].size()));
        }
        for (const auto& m : slots[s]) {
            if (m.rows() != dim(s) || m.cols() != dim(s)) {
                throw ShapeMismatch("slot " + std::to_string(s + 1) + " expects " + std::to_string(dim(s)) + "x" +
                                    std::to_string(dim(s)) + " matrices");
            }
            if (m.field() != f) throw FieldMismatch();
        }
    }
}

struct UndefinedSignal {};

class Evaluator {
public:
    Evaluator(const Alphabet& alphabet, const NcPoint& p) : alphabet_(alphabet), p_(p), field_(p.field()) {}

    EvalResult run(const Expr& e) {
        path_.clear();
        try {
            return eval(e);
        } catch (const UndefinedSignal&) {
            return undefined_;
        }
    }

private:
    const Matrix& eval(const Expr& e) {
        if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
        Matrix r;
        switch (e.kind()) {
        case Expr::Kind::Const:
            r = Matrix::scalar(p_.n, Scalar::from_rational(e.value(), field_));
            break;
        case Expr::Kind::Var: {
            const Variable& v = e.variable();
            r = p_.slots[alphabet_.slot_of(v)][v.index];
            break;
        }
        case Expr::Kind::Sum: {
            const auto cs = e.children();
            for (std::size_t i = 0; i < cs.size(); ++i) {
                path_.push_back(i);
                const Matrix& t = eval(cs[i]);
                path_.pop_back();
                if (i == 0) {
                    r = t;
                } else {
                    r += t;
                }
            }
            break;
        }
        case Expr::Kind::Product: {
            const auto cs = e.children();
            Scalar coeff = Scalar::one(field_);
            bool have = false;
            for (std::size_t i = 0; i < cs.size(); ++i) {
                if (cs[i].is_const()) {
                    coeff *= Scalar::from_rational(cs[i].value(), field_);
                    continue;
                }
                path_.push_back(i);
                const Matrix& f = eval(cs[i]);
                path_.pop_back();
                r = have ? r * f : f;
                have = true;
            }
            if (!have) r = Matrix::identity(p_.n, field_);
            if (!coeff.is_one()) r *= coeff;
            break;
        }
        case Expr::Kind::Inverse: {
            path_.push_back(0);
            const Matrix& a = eval(e.child(0));
            path_.pop_back();
            auto id = inv_det(a);
            if (!id) {
                undefined_ = Undefined{path_, e};
                throw UndefinedSignal{};
            }
            r = std::move(id->inverse);
            break;
        }
        }
        return memo_.emplace(e.id(), std::move(r)).first->second;
    }

    const Alphabet& alphabet_;
    const NcPoint& p_;
    Field field_;
    std::unordered_map<const void*, Matrix> memo_;
    std::vector<std::size_t> path_;
    Undefined undefined_;
};

} // namespace

Field MpPoint::field() const { return first_field(slots); }
Field NcPoint::field() const { return first_field(slots); }

void check_point(const MpPoint& p, const Alphabet& alphabet) {
    if (p.dims.size() != alphabet.slot_count()) throw ShapeMismatch("point dims do not match the alphabet");
    for (auto d : p.dims) {
        if (d == 0) throw ShapeMismatch("point dims must be positive");
    }
    check_slots(p.slots, alphabet, [&](std::size_t s) { return p.dims[s]; });
}

void check_point(const NcPoint& p, const Alphabet& alphabet) {
    if (p.n == 0) throw ShapeMismatch("point size must be positive");
    check_slots(p.slots, alphabet, [&](std::size_t) { return p.n; });
}

NcPoint tau_point(const MpPoint& a) {
    NcPoint p;
    p.n = 1;
    for (auto d : a.dims) p.n *= d;
    p.slots.resize(a.slots.size());
    for (std::size_t s = 0; s < a.slots.size(); ++s) {
        for (const auto& m : a.slots[s]) p.slots[s].push_back(tau_embed(s, m, a.dims));
    }
    return p;
}

EvalResult nc_evaluate(const Expr& e, const Alphabet& alphabet, const NcPoint& p) {
    check_point(p, alphabet);
    check_alphabet(e, alphabet);
    return Evaluator(alphabet, p).run(e);
}

std::vector<EvalResult> nc_evaluate_all(std::span<const Expr> es, const Alphabet& alphabet, const NcPoint& p) {
    check_point(p, alphabet);
    for (const auto& e : es) check_alphabet(e, alphabet);
    Evaluator ev(alphabet, p);
    std::vector<EvalResult> out;
    out.reserve(es.size());
    for (const auto& e : es) out.push_back(ev.run(e));
    return out;
}

EvalResult mp_evaluate(const Expr& e, const Alphabet& alphabet, const MpPoint& a) {
    check_point(a, alphabet);
    return nc_evaluate(e, alphabet, tau_point(a));
}

Alphabet bf_alphabet(std::size_t g) {
    return Alphabet({static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(g)});
}

NcPoint bf_point(const BfPoint& p) {
    for (const auto* v : {&p.a1, &p.a2, &p.b1, &p.b2}) {
        if (v->size() != p.g) throw ShapeMismatch("bf point needs g matrices in each of a', a'', b', b''");
        for (const auto& m : *v) {
            if (m.rows() != p.n || m.cols() != p.n) throw ShapeMismatch("bf point matrices must be n x n");
        }
    }
    const std::vector<std::size_t> dims(p.g + 2, p.n);
    NcPoint q;
    q.n = 1;
    for (auto d : dims) q.n *= d;
    q.slots.resize(2);
    for (std::size_t i = 0; i < p.g; ++i) {
        q.slots[0].push_back(tau_embed(0, p.a1[i], dims) * tau_embed(1 + i, p.a2[i], dims));
        q.slots[1].push_back(tau_embed(1 + i, p.b2[i], dims) * tau_embed(p.g + 1, p.b1[i], dims));
    }
    return q;
}

EvalResult bf_evaluate(const Expr& e, const BfPoint& p) { return nc_evaluate(e, bf_alphabet(p.g), bf_point(p)); }

Matrix ell_collapse(const Matrix& m, std::size_t n, std::size_t parts) {
    if (n == 0 || parts == 0) throw ShapeMismatch("ell_collapse needs n, G >= 1");
    std::size_t total = 1;
    for (std::size_t k = 0; k < parts; ++k) total *= n;
    if (m.rows() != total || m.cols() != total) {
        throw ShapeMismatch("matrix size is not " + std::to_string(n) + "^" + std::to_string(parts));
    }
    const std::size_t tail = total / n;
    Matrix r(n, n, m.field());
    // E_{i1 j1}⊗...⊗E_{iG jG} survives only if j_k = i_{k+1}; the column
    // multi-index is then (i2, ..., iG, jG).
    for (std::size_t row = 0; row < total; ++row) {
        const std::size_t i1 = row / tail;
        for (std::size_t jg = 0; jg < n; ++jg) {
            const std::size_t col = (row % tail) * n + jg;
            if (!m(row, col).is_zero()) r(i1, jg) += m(row, col);
        }
    }
    return r;
}

bool check_multipartite_tuple(const NcPoint& p) {
    for (std::size_t s = 0; s < p.slots.size(); ++s) {
        for (std::size_t t = s + 1; t < p.slots.size(); ++t) {
            for (const auto& a : p.slots[s]) {
                for (const auto& b : p.slots[t]) {
                    if (!(a * b == b * a)) return false;
                }
            }
        }
    }
    return true;
}

std::string path_to_string(const std::vector<std::size_t>& path) {
    std::string s = "root";
    for (auto i : path) s += "/" + std::to_string(i);
    return s;
}

} // namespace mprat
