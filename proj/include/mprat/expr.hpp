#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace mprat {

/// Letter X_{index}^{(part)} or its primed copy X'_{index}^{(part)}.
/// Indices are 0-based; the textual form is 1-based ("X2_1", "X1_1'").
struct Variable {
    std::uint32_t part = 0;
    std::uint32_t index = 0;
    bool primed = false;

    friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// One tensor factor of an evaluation point: the letters of one part, or of
/// the primed copy of a part.
struct Slot {
    std::uint32_t part = 0;
    bool primed = false;
};

/// Multipartite alphabet X^(1) ∪ ... ∪ X^(G) with g_i letters in part i.
/// Parts flagged as primed additionally carry the letters X'^(i), which form
/// their own tensor slot placed immediately before part i.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::uint32_t> sizes);

    /// "G:g1,g2,...", e.g. "2:1,1".
    static Alphabet parse(const std::string& text);

    std::size_t parts() const { return sizes_.size(); }
    std::uint32_t size(std::size_t part) const { return sizes_.at(part); }
    std::span<const std::uint32_t> sizes() const { return sizes_; }
    bool primed(std::size_t part) const { return primed_.at(part); }
    Alphabet with_primed(std::size_t part) const;
    /// The same alphabet without primed copies.
    Alphabet unprimed() const;
    /// Drops part `part` and renumbers the remaining ones.
    Alphabet without_part(std::size_t part) const;

    std::span<const Slot> slots() const { return slots_; }
    std::size_t slot_count() const { return slots_.size(); }
    std::size_t slot_of(const Variable& v) const;
    std::uint32_t slot_size(std::size_t slot) const { return sizes_.at(slots_.at(slot).part); }

    /// Total number of letters, counting primed copies.
    std::size_t letter_count() const;
    /// Position of `v` when the letters are listed slot by slot.
    std::size_t flat_index(const Variable& v) const;
    Variable letter(std::size_t flat) const;

    bool contains(const Variable& v) const;
    std::string to_string() const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.sizes_ == b.sizes_ && a.primed_ == b.primed_;
    }

private:
    void rebuild_slots();

    std::vector<std::uint32_t> sizes_;
    std::vector<bool> primed_;
    std::vector<Slot> slots_;
};

/// Immutable formal rational expression. Nodes are shared, so copies are
/// cheap and common subtrees keep their identity (see id()).
class Expr {
public:
    enum class Kind { Const, Var, Sum, Product, Inverse };

    Expr();  // the constant 0

    static Expr constant(const mpq_class& value);
    static Expr constant(long value) { return constant(mpq_class(value)); }
    static Expr var(Variable v);
    static Expr var(std::uint32_t part, std::uint32_t index) { return var(Variable{part, index, false}); }
    /// Flattens nested sums; a single term is returned as is, none gives 0.
    static Expr sum(std::vector<Expr> terms);
    /// Flattens nested products; a single factor is returned as is, none gives 1.
    static Expr product(std::vector<Expr> factors);
    static Expr inverse(Expr child);
    /// -e, folding the sign into a leading literal when there is one.
    static Expr negate(const Expr& e);

    Kind kind() const;
    bool is_const() const { return kind() == Kind::Const; }
    const mpq_class& value() const;
    const Variable& variable() const;
    /// Terms of a Sum, factors of a Product, the argument of an Inverse.
    std::span<const Expr> children() const;
    const Expr& child(std::size_t i) const { return children()[i]; }

    /// Node identity; equal for copies of the same node.
    const void* id() const { return node_.get(); }
    std::size_t node_count() const;

    friend bool operator==(const Expr& a, const Expr& b);

    friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
    friend Expr operator-(const Expr& a, const Expr& b) { return sum({a, negate(b)}); }
    friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
    friend Expr operator-(const Expr& a) { return negate(a); }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

inline Expr inv(const Expr& e) { return Expr::inverse(e); }
/// [a, b] = ab - ba
Expr commutator(const Expr& a, const Expr& b);

/// Maximum number of nested inverses.
std::size_t inversion_height(const Expr& e);
/// Throws UnknownVariable if a letter of `e` is not in `alphabet`.
void check_alphabet(const Expr& e, const Alphabet& alphabet);
/// Every distinct letter occurring in `e`.
std::vector<Variable> variables(const Expr& e);

/// Replaces every letter of `part` by its primed copy.
Expr prime_part(const Expr& e, std::uint32_t part);
/// Rebuilds `e` with every letter v replaced by f(v). Shared subtrees stay
/// shared in the result.
Expr rename_letters(const Expr& e, const std::function<Expr(const Variable&)>& f);

} // namespace mprat
