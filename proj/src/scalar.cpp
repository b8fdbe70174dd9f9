#include "mprat/scalar.hpp"

#include <ostream>

#include "mprat/error.hpp"

namespace mprat {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e != 0) {
        if ((e & 1U) != 0) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1U;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(z.get_mpz_t(), p);
}

} // namespace

Field Field::prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 63) || !is_prime(p)) {
        throw Error("prime field modulus must be a prime below 2^63, got " + std::to_string(p));
    }
    return Field(p);
}

std::string Field::to_string() const {
    return is_rational() ? std::string("Q") : "GF(" + std::to_string(modulus_) + ")";
}

Scalar::Scalar(long num, long den) : q_(num, den) {
    if (den == 0) throw DivisionByZero();
    q_.canonicalize();
}

Scalar Scalar::from_rational(const mpq_class& q, Field f) {
    if (f.is_rational()) return Scalar(q);
    const std::uint64_t p = f.modulus();
    const std::uint64_t den = reduce(q.get_den(), p);
    if (den == 0) throw DivisionByZero();
    Scalar s;
    s.field_ = f;
    s.q_ = 0;
    s.residue_ = mulmod(reduce(q.get_num(), p), powmod(den, p - 2, p), p);
    return s;
}

Scalar Scalar::parse(std::string_view text, Field f) {
    return from_rational(parse_rational(text), f);
}

bool Scalar::is_one() const {
    return field_.is_rational() ? q_ == 1 : residue_ == 1;
}

const mpq_class& Scalar::rational() const {
    if (!field_.is_rational()) throw FieldMismatch();
    return q_;
}

std::uint64_t Scalar::residue() const {
    if (field_.is_rational()) throw FieldMismatch();
    return residue_;
}

void Scalar::check_field(const Scalar& o) const {
    if (field_ != o.field_) throw FieldMismatch();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (field_.is_rational()) {
        r.q_ = -q_;
    } else if (residue_ != 0) {
        r.residue_ = field_.modulus() - residue_;
    }
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_field(o);
    if (field_.is_rational()) {
        q_ += o.q_;
    } else {
        const std::uint64_t p = field_.modulus();
        residue_ = residue_ >= p - o.residue_ ? residue_ - (p - o.residue_) : residue_ + o.residue_;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_field(o);
    if (field_.is_rational()) {
        q_ -= o.q_;
    } else {
        const std::uint64_t p = field_.modulus();
        residue_ = residue_ >= o.residue_ ? residue_ - o.residue_ : residue_ + (p - o.residue_);
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_field(o);
    if (field_.is_rational()) {
        q_ *= o.q_;
    } else {
        residue_ = mulmod(residue_, o.residue_, field_.modulus());
    }
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    Scalar r = *this;
    if (field_.is_rational()) {
        r.q_ = 1 / q_;
    } else {
        r.residue_ = powmod(residue_, field_.modulus() - 2, field_.modulus());
    }
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    check_field(o);
    if (o.is_zero()) throw DivisionByZero();
    if (field_.is_rational()) {
        q_ /= o.q_;
        return *this;
    }
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) return false;
    return a.field_.is_rational() ? a.q_ == b.q_ : a.residue_ == b.residue_;
}

std::string Scalar::to_string() const {
    return field_.is_rational() ? rational_to_string(q_) : std::to_string(residue_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

mpq_class parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    std::string_view num = text;
    std::string_view den = "1";
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    const bool negative = !num.empty() && num.front() == '-';
    if (negative) num.remove_prefix(1);
    if (!digits(num) || !digits(den)) {
        throw Error("malformed rational literal '" + std::string(text) + "'");
    }
    mpz_class n{std::string(num)};
    mpz_class d{std::string(den)};
    if (d == 0) throw DivisionByZero();
    if (negative) n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const mpq_class& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

} // namespace mprat
