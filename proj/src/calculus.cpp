#include "mprat/calculus.hpp"

#include <unordered_map>

#include "mprat/error.hpp"
#include "mprat/tensor.hpp"

namespace mprat {

namespace {

bool is_literal(const Expr& e, long v) { return e.is_const() && e.value() == v; }

Expr product_of(std::vector<Expr> factors) {
    std::erase_if(factors, [](const Expr& f) { return is_literal(f, 1); });
    return Expr::product(std::move(factors));
}

Matrix require(const EvalResult& r, const char* what) {
    if (!is_defined(r)) {
        const auto& u = std::get<Undefined>(r);
        throw Error(std::string(what) + " is undefined (inverse at " + path_to_string(u.path) + ")");
    }
    return value(r);
}

} // namespace

Expr delta(std::uint32_t part, std::uint32_t index, const Expr& e, const Alphabet& alphabet) {
    if (part >= alphabet.parts() || index >= alphabet.size(part)) throw UnknownVariable("delta index out of range");
    check_alphabet(e, alphabet.unprimed());
    std::unordered_map<const void*, Expr> memo;
    std::unordered_map<const void*, Expr> primed;
    auto prime = [&](const Expr& x) -> Expr {
        if (auto it = primed.find(x.id()); it != primed.end()) return it->second;
        Expr p = prime_part(x, part);
        primed.emplace(x.id(), p);
        return p;
    };
    auto rec = [&](auto& self, const Expr& x) -> Expr {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        Expr r;
        switch (x.kind()) {
        case Expr::Kind::Const:
            r = Expr::constant(0);
            break;
        case Expr::Kind::Var: {
            const Variable& v = x.variable();
            r = Expr::constant(v.part == part && v.index == index ? 1 : 0);
            break;
        }
        case Expr::Kind::Sum: {
            std::vector<Expr> terms;
            for (const auto& c : x.children()) {
                Expr d = self(self, c);
                if (!is_literal(d, 0)) terms.push_back(std::move(d));
            }
            r = Expr::sum(std::move(terms));
            break;
        }
        case Expr::Kind::Product: {
            // Σ_t r_1'...r_{t-1}' Δ(r_t) r_{t+1}...r_k, last t first.
            const auto cs = x.children();
            std::vector<Expr> terms;
            for (std::size_t t = cs.size(); t-- > 0;) {
                Expr d = self(self, cs[t]);
                if (is_literal(d, 0)) continue;
                std::vector<Expr> factors;
                for (std::size_t k = 0; k < t; ++k) factors.push_back(prime(cs[k]));
                factors.push_back(std::move(d));
                for (std::size_t k = t + 1; k < cs.size(); ++k) factors.push_back(cs[k]);
                terms.push_back(product_of(std::move(factors)));
            }
            r = Expr::sum(std::move(terms));
            break;
        }
        case Expr::Kind::Inverse: {
            Expr d = self(self, x.child(0));
            if (is_literal(d, 0)) {
                r = d;
            } else {
                r = Expr::negate(product_of({inv(prime(x.child(0))), d, x}));
            }
            break;
        }
        }
        memo.emplace(x.id(), r);
        return r;
    };
    return rec(rec, e);
}

Expr directional_delta(std::uint32_t part, const std::vector<mpq_class>& v, const Expr& e, const Alphabet& alphabet) {
    if (part >= alphabet.parts() || v.size() != alphabet.size(part)) {
        throw ShapeMismatch("direction vector length must equal the size of the part");
    }
    std::vector<Expr> terms;
    for (std::uint32_t j = 0; j < v.size(); ++j) {
        if (sgn(v[j]) == 0) continue;
        Expr d = delta(part, j, e, alphabet);
        if (is_literal(d, 0)) continue;
        terms.push_back(v[j] == 1 ? d : product_of({Expr::constant(v[j]), d}));
    }
    return Expr::sum(std::move(terms));
}

MpPoint fund_block_point(const FundInput& in, const Alphabet& alphabet) {
    const std::uint32_t i = in.part;
    if (i >= alphabet.parts()) throw ShapeMismatch("no such part");
    const std::size_t g = alphabet.size(i);
    if (in.a_prime.size() != g || in.a.size() != g || in.v.size() != g) {
        throw ShapeMismatch("a', a and v need one entry per letter of the part");
    }
    check_point(in.rest, alphabet.without_part(i));
    const std::size_t mp = in.a_prime.front().rows();
    const std::size_t m = in.a.front().rows();
    const Field f = in.a.front().field();

    MpPoint out;
    for (std::size_t s = 0, r = 0; s < alphabet.parts(); ++s) {
        if (s == i) {
            out.dims.push_back(2 * mp * m);
            std::vector<Matrix> mats;
            for (std::size_t j = 0; j < g; ++j) {
                if (in.a_prime[j].rows() != mp || in.a[j].rows() != m) throw ShapeMismatch("inconsistent sizes");
                Matrix b(2 * mp * m, 2 * mp * m, f);
                b.set_block(0, 0, kron(in.a_prime[j], Matrix::identity(m, f)));
                b.set_block(0, mp * m, Matrix::scalar(mp * m, Scalar::from_rational(in.v[j], f)));
                b.set_block(mp * m, mp * m, kron(Matrix::identity(mp, f), in.a[j]));
                mats.push_back(std::move(b));
            }
            out.slots.push_back(std::move(mats));
        } else {
            out.dims.push_back(in.rest.dims[r]);
            out.slots.push_back(in.rest.slots[r]);
            ++r;
        }
    }
    return out;
}

FundCheck verify_fund(const Expr& e, const Alphabet& alphabet, const FundInput& in) {
    const std::uint32_t i = in.part;
    const std::size_t parts = alphabet.parts();
    const MpPoint block = fund_block_point(in, alphabet);
    const std::size_t mp = in.a_prime.front().rows();
    const std::size_t m = in.a.front().rows();
    const Field f = in.a.front().field();

    const std::size_t to_front[] = {i};
    const auto pi = front_permutation(parts, to_front);
    auto front = [&](const Matrix& x, const std::vector<std::size_t>& dims, std::span<const std::size_t> perm) {
        const Matrix k = commutation_matrix(perm, dims);
        return k * x * k.transpose();
    };

    FundCheck out;
    out.lhs = front(require(mp_evaluate(e, alphabet, block), "evaluation at the block point"), block.dims, pi);

    auto side = [&](bool primed_side) {
        MpPoint p = block;
        p.dims[i] = mp * m;
        for (std::size_t j = 0; j < in.a.size(); ++j) {
            p.slots[i][j] = primed_side ? kron(in.a_prime[j], Matrix::identity(m, f))
                                        : kron(Matrix::identity(mp, f), in.a[j]);
        }
        return front(require(mp_evaluate(e, alphabet, p), "diagonal evaluation"), p.dims, pi);
    };
    const Matrix d1 = side(true);
    const Matrix d2 = side(false);

    const Alphabet ext = alphabet.with_primed(i);
    MpPoint q;
    for (std::size_t s = 0; s < ext.slot_count(); ++s) {
        const Slot slot = ext.slots()[s];
        if (slot.part == i) {
            q.dims.push_back(slot.primed ? mp : m);
            q.slots.push_back(slot.primed ? in.a_prime : in.a);
        } else {
            q.dims.push_back(block.dims[slot.part]);
            q.slots.push_back(block.slots[slot.part]);
        }
    }
    const std::size_t ext_front[] = {ext.slot_of(Variable{i, 0, true}), ext.slot_of(Variable{i, 0, false})};
    const auto pe = front_permutation(ext.slot_count(), ext_front);
    const Expr d = directional_delta(i, in.v, e, alphabet);
    out.off_block = front(require(mp_evaluate(d, ext, q), "difference-differential evaluation"), q.dims, pe);

    const std::size_t h = d1.rows();
    out.lower_left_zero = out.lhs.block(h, 0, h, h).is_zero();
    out.diagonal = out.lhs.block(0, 0, h, h) == d1 && out.lhs.block(h, h, h, h) == d2;
    out.off_diagonal = out.lhs.block(0, h, h, h) == out.off_block;
    return out;
}

} // namespace mprat
