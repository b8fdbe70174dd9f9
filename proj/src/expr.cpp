#include "mprat/expr.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "mprat/error.hpp"

namespace mprat {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::uint32_t> sizes) : sizes_(std::move(sizes)), primed_(sizes_.size(), false) {
    for (auto g : sizes_) {
        if (g == 0) throw Error("every alphabet part needs at least one letter");
    }
    rebuild_slots();
}

Alphabet Alphabet::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error("alphabet must look like G:g1,...,gG, got '" + text + "'");
    auto number = [&](const std::string& s) -> std::uint32_t {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            s.size() > 6) {
            throw Error("bad number '" + s + "' in alphabet '" + text + "'");
        }
        return static_cast<std::uint32_t>(std::stoul(s));
    };
    const std::uint32_t g = number(text.substr(0, colon));
    std::vector<std::uint32_t> sizes;
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) sizes.push_back(number(item));
    if (g == 0 || sizes.size() != g) {
        throw Error("alphabet '" + text + "' declares " + std::to_string(g) + " parts but lists " +
                    std::to_string(sizes.size()));
    }
    return Alphabet(std::move(sizes));
}

void Alphabet::rebuild_slots() {
    slots_.clear();
    for (std::uint32_t i = 0; i < sizes_.size(); ++i) {
        if (primed_[i]) slots_.push_back({i, true});
        slots_.push_back({i, false});
    }
}

Alphabet Alphabet::with_primed(std::size_t part) const {
    Alphabet a = *this;
    a.primed_.at(part) = true;
    a.rebuild_slots();
    return a;
}

Alphabet Alphabet::unprimed() const { return Alphabet(sizes_); }

Alphabet Alphabet::without_part(std::size_t part) const {
    if (part >= sizes_.size()) throw Error("no such alphabet part");
    Alphabet a = *this;
    a.sizes_.erase(a.sizes_.begin() + static_cast<std::ptrdiff_t>(part));
    a.primed_.erase(a.primed_.begin() + static_cast<std::ptrdiff_t>(part));
    a.rebuild_slots();
    return a;
}

bool Alphabet::contains(const Variable& v) const {
    return v.part < sizes_.size() && v.index < sizes_[v.part] && (!v.primed || primed_[v.part]);
}

std::size_t Alphabet::slot_of(const Variable& v) const {
    if (!contains(v)) throw UnknownVariable("letter not in alphabet " + to_string());
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        if (slots_[s].part == v.part && slots_[s].primed == v.primed) return s;
    }
    throw UnknownVariable("letter not in alphabet " + to_string());
}

std::size_t Alphabet::letter_count() const {
    std::size_t n = 0;
    for (const auto& s : slots_) n += sizes_[s.part];
    return n;
}

std::size_t Alphabet::flat_index(const Variable& v) const {
    const std::size_t slot = slot_of(v);
    std::size_t n = 0;
    for (std::size_t s = 0; s < slot; ++s) n += sizes_[slots_[s].part];
    return n + v.index;
}

Variable Alphabet::letter(std::size_t flat) const {
    for (const auto& s : slots_) {
        if (flat < sizes_[s.part]) return Variable{s.part, static_cast<std::uint32_t>(flat), s.primed};
        flat -= sizes_[s.part];
    }
    throw UnknownVariable("letter index out of range");
}

std::string Alphabet::to_string() const {
    std::string s = std::to_string(sizes_.size()) + ":";
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        s += (i == 0 ? "" : ",") + std::to_string(sizes_[i]);
    }
    return s;
}

// -------------------------------------------------------------------- Expr

struct Expr::Node {
    Kind kind = Kind::Const;
    mpq_class value;
    Variable variable;
    std::vector<Expr> children;
};

namespace {

const Expr& zero_expr() {
    static const Expr z = Expr::constant(0);
    return z;
}

} // namespace

Expr::Expr() : Expr(zero_expr()) {}

Expr Expr::constant(const mpq_class& value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = value;
    n->value.canonicalize();
    return Expr(std::move(n));
}

Expr Expr::var(Variable v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->variable = v;
    return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    flat.reserve(terms.size());
    for (auto& t : terms) {
        if (t.kind() == Kind::Sum) {
            flat.insert(flat.end(), t.node_->children.begin(), t.node_->children.end());
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (flat.empty()) return constant(0);
    if (flat.size() == 1) return flat.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->children = std::move(flat);
    return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    flat.reserve(factors.size());
    for (auto& f : factors) {
        if (f.kind() == Kind::Product) {
            flat.insert(flat.end(), f.node_->children.begin(), f.node_->children.end());
        } else {
            flat.push_back(std::move(f));
        }
    }
    if (flat.empty()) return constant(1);
    if (flat.size() == 1) return flat.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->children = std::move(flat);
    return Expr(std::move(n));
}

Expr Expr::inverse(Expr child) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Inverse;
    n->children.push_back(std::move(child));
    return Expr(std::move(n));
}

Expr Expr::negate(const Expr& e) {
    switch (e.kind()) {
    case Kind::Const:
        return constant(-e.value());
    case Kind::Product: {
        std::vector<Expr> factors = e.node_->children;
        if (factors.front().is_const()) {
            factors.front() = constant(-factors.front().value());
        } else {
            factors.insert(factors.begin(), constant(-1));
        }
        return product(std::move(factors));
    }
    default:
        return product({constant(-1), e});
    }
}

Expr::Kind Expr::kind() const { return node_->kind; }

const mpq_class& Expr::value() const {
    if (node_->kind != Kind::Const) throw Error("not a constant node");
    return node_->value;
}

const Variable& Expr::variable() const {
    if (node_->kind != Kind::Var) throw Error("not a variable node");
    return node_->variable;
}

std::span<const Expr> Expr::children() const { return node_->children; }

std::size_t Expr::node_count() const {
    std::unordered_map<const void*, bool> seen;
    std::size_t count = 0;
    std::vector<const Expr*> stack{this};
    while (!stack.empty()) {
        const Expr* e = stack.back();
        stack.pop_back();
        if (!seen.emplace(e->id(), true).second) continue;
        ++count;
        for (const auto& c : e->children()) stack.push_back(&c);
    }
    return count;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Expr::Kind::Const:
        return a.value() == b.value();
    case Expr::Kind::Var:
        return a.variable() == b.variable();
    default:
        return std::equal(a.children().begin(), a.children().end(), b.children().begin(), b.children().end());
    }
}

Expr commutator(const Expr& a, const Expr& b) { return a * b - b * a; }

std::size_t inversion_height(const Expr& e) {
    std::unordered_map<const void*, std::size_t> memo;
    auto rec = [&](auto& self, const Expr& x) -> std::size_t {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        std::size_t h = 0;
        for (const auto& c : x.children()) h = std::max(h, self(self, c));
        if (x.kind() == Expr::Kind::Inverse) ++h;
        memo.emplace(x.id(), h);
        return h;
    };
    return rec(rec, e);
}

std::vector<Variable> variables(const Expr& e) {
    std::vector<Variable> out;
    std::unordered_map<const void*, bool> seen;
    std::vector<const Expr*> stack{&e};
    while (!stack.empty()) {
        const Expr* x = stack.back();
        stack.pop_back();
        if (!seen.emplace(x->id(), true).second) continue;
        if (x->kind() == Expr::Kind::Var) out.push_back(x->variable());
        for (const auto& c : x->children()) stack.push_back(&c);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check_alphabet(const Expr& e, const Alphabet& alphabet) {
    for (const auto& v : variables(e)) {
        if (!alphabet.contains(v)) {
            throw UnknownVariable("letter X" + std::to_string(v.part + 1) + "_" + std::to_string(v.index + 1) +
                                  (v.primed ? "'" : "") + " is not in alphabet " + alphabet.to_string());
        }
    }
}

Expr rename_letters(const Expr& e, const std::function<Expr(const Variable&)>& f) {
    std::unordered_map<const void*, Expr> memo;
    auto rec = [&](auto& self, const Expr& x) -> Expr {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        Expr r;
        switch (x.kind()) {
        case Expr::Kind::Const:
            r = x;
            break;
        case Expr::Kind::Var:
            r = f(x.variable());
            break;
        case Expr::Kind::Inverse:
            r = Expr::inverse(self(self, x.child(0)));
            break;
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            std::vector<Expr> cs;
            cs.reserve(x.children().size());
            for (const auto& c : x.children()) cs.push_back(self(self, c));
            r = x.kind() == Expr::Kind::Sum ? Expr::sum(std::move(cs)) : Expr::product(std::move(cs));
            break;
        }
        }
        memo.emplace(x.id(), r);
        return r;
    };
    return rec(rec, e);
}

Expr prime_part(const Expr& e, std::uint32_t part) {
    return rename_letters(e, [part](const Variable& v) {
        if (v.part != part || v.primed) return Expr::var(v);
        return Expr::var(Variable{v.part, v.index, true});
    });
}

} // namespace mprat
