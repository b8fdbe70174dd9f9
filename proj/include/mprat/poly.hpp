#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mprat/expr.hpp"

namespace mprat {

/// A monomial of the multipartite free algebra: one word per tensor slot.
/// Letters of different slots commute, so only the per-slot words matter.
struct Monomial {
    std::vector<std::vector<std::uint32_t>> words;

    /// Slots ascending, each compared by length first, then lexicographically.
    friend bool operator<(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) = default;
    std::size_t degree() const;
};

/// Canonical expansion of an inverse-free expression. No zero coefficient is
/// ever stored, so the zero polynomial is the empty map.
class PolyNormalForm {
public:
    explicit PolyNormalForm(std::size_t slots = 0) : slots_(slots) {}

    static PolyNormalForm constant(std::size_t slots, const mpq_class& c);
    static PolyNormalForm letter(std::size_t slots, std::size_t slot, std::uint32_t index);

    const std::map<Monomial, mpq_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t slots() const { return slots_; }
    /// Longest word appearing in any slot.
    std::size_t max_word_length() const;

    void add_term(const Monomial& m, const mpq_class& c);
    PolyNormalForm& operator+=(const PolyNormalForm& o);
    friend PolyNormalForm operator+(PolyNormalForm a, const PolyNormalForm& b) { return a += b; }
    friend PolyNormalForm operator*(const PolyNormalForm& a, const PolyNormalForm& b);
    PolyNormalForm scaled(const mpq_class& c) const;
    friend bool operator==(const PolyNormalForm& a, const PolyNormalForm& b) = default;

    std::string to_string(const Alphabet& alphabet) const;

private:
    std::size_t slots_;
    std::map<Monomial, mpq_class> terms_;
};

/// Throws ExprHasInverse when inversion_height(e) > 0.
PolyNormalForm poly_normal_form(const Expr& e, const Alphabet& alphabet);

} // namespace mprat
