#include "mprat/poly.hpp"

#include <algorithm>
#include <unordered_map>

#include "mprat/error.hpp"
#include "mprat/scalar.hpp"

namespace mprat {

bool operator<(const Monomial& a, const Monomial& b) {
    const std::size_t n = std::min(a.words.size(), b.words.size());
    for (std::size_t s = 0; s < n; ++s) {
        const auto& u = a.words[s];
        const auto& v = b.words[s];
        if (u.size() != v.size()) return u.size() < v.size();
        if (u != v) return u < v;
    }
    return a.words.size() < b.words.size();
}

std::size_t Monomial::degree() const {
    std::size_t d = 0;
    for (const auto& w : words) d += w.size();
    return d;
}

PolyNormalForm PolyNormalForm::constant(std::size_t slots, const mpq_class& c) {
    PolyNormalForm p(slots);
    p.add_term(Monomial{std::vector<std::vector<std::uint32_t>>(slots)}, c);
    return p;
}

PolyNormalForm PolyNormalForm::letter(std::size_t slots, std::size_t slot, std::uint32_t index) {
    PolyNormalForm p(slots);
    Monomial m{std::vector<std::vector<std::uint32_t>>(slots)};
    m.words.at(slot).push_back(index);
    p.add_term(m, 1);
    return p;
}

std::size_t PolyNormalForm::max_word_length() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) {
        for (const auto& w : m.words) d = std::max(d, w.size());
    }
    return d;
}

void PolyNormalForm::add_term(const Monomial& m, const mpq_class& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

PolyNormalForm& PolyNormalForm::operator+=(const PolyNormalForm& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

PolyNormalForm operator*(const PolyNormalForm& a, const PolyNormalForm& b) {
    PolyNormalForm r(a.slots_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            for (std::size_t s = 0; s < m.words.size(); ++s) {
                m.words[s].insert(m.words[s].end(), mb.words[s].begin(), mb.words[s].end());
            }
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

PolyNormalForm PolyNormalForm::scaled(const mpq_class& c) const {
    PolyNormalForm r(slots_);
    for (const auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
}

std::string PolyNormalForm::to_string(const Alphabet& alphabet) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        out += first ? "" : " + ";
        first = false;
        out += rational_to_string(c);
        for (std::size_t s = 0; s < m.words.size(); ++s) {
            const Slot slot = alphabet.slots()[s];
            for (auto idx : m.words[s]) {
                out += "*X" + std::to_string(slot.part + 1) + "_" + std::to_string(idx + 1) + (slot.primed ? "'" : "");
            }
        }
    }
    return out;
}

PolyNormalForm poly_normal_form(const Expr& e, const Alphabet& alphabet) {
    check_alphabet(e, alphabet);
    const std::size_t slots = alphabet.slot_count();
    std::unordered_map<const void*, PolyNormalForm> memo;
    auto rec = [&](auto& self, const Expr& x) -> PolyNormalForm {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        PolyNormalForm r(slots);
        switch (x.kind()) {
        case Expr::Kind::Const:
            r = PolyNormalForm::constant(slots, x.value());
            break;
        case Expr::Kind::Var:
            r = PolyNormalForm::letter(slots, alphabet.slot_of(x.variable()), x.variable().index);
            break;
        case Expr::Kind::Sum:
            for (const auto& c : x.children()) r += self(self, c);
            break;
        case Expr::Kind::Product:
            r = PolyNormalForm::constant(slots, 1);
            for (const auto& c : x.children()) r = r * self(self, c);
            break;
        case Expr::Kind::Inverse:
            throw ExprHasInverse();
        }
        memo.emplace(x.id(), r);
        return r;
    };
    return rec(rec, e);
}

} // namespace mprat
