#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mprat {

/// The base field: either the rationals or Z/pZ for a prime p < 2^63.
class Field {
public:
    constexpr Field() = default;

    static constexpr Field rationals() { return Field{}; }
    static Field prime(std::uint64_t p);
    /// The Mersenne prime 2^61 - 1.
    static Field default_prime() { return prime((std::uint64_t{1} << 61) - 1); }

    constexpr bool is_rational() const { return modulus_ == 0; }
    constexpr std::uint64_t modulus() const { return modulus_; }

    friend constexpr bool operator==(Field, Field) = default;

    std::string to_string() const;

private:
    constexpr explicit Field(std::uint64_t p) : modulus_(p) {}
    std::uint64_t modulus_ = 0;
};

/// Exact element of a Field. Combining elements of different fields throws
/// FieldMismatch; dividing by zero throws DivisionByZero.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : q_(v) {}                     // NOLINT(google-explicit-constructor)
    Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); } // NOLINT
    Scalar(long num, long den);

    /// Image of a rational in `f`; throws DivisionByZero if the denominator
    /// vanishes modulo p.
    static Scalar from_rational(const mpq_class& q, Field f);
    static Scalar zero(Field f) { return from_rational(0, f); }
    static Scalar one(Field f) { return from_rational(1, f); }
    /// Parses "p", "-p" or "p/q".
    static Scalar parse(std::string_view text, Field f = Field::rationals());

    Field field() const { return field_; }
    bool is_zero() const { return field_.is_rational() ? sgn(q_) == 0 : residue_ == 0; }
    bool is_one() const;

    /// Only valid over the rationals.
    const mpq_class& rational() const;
    /// Only valid over a prime field.
    std::uint64_t residue() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar inverse() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    /// "p/q" or "p" over Q; the canonical residue over Z/pZ.
    std::string to_string() const;

private:
    void check_field(const Scalar& o) const;

    Field field_;
    mpq_class q_;
    std::uint64_t residue_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses an exact rational literal "p", "-p" or "p/q" (q > 0).
mpq_class parse_rational(std::string_view text);
std::string rational_to_string(const mpq_class& q);

} // namespace mprat
