#include "mprat/parser.hpp"

#include <cctype>

#include "mprat/error.hpp"
#include "mprat/scalar.hpp"

namespace mprat {
namespace {

class Parser {
public:
    Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

    Expr run() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool at_digit() const {
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0;
    }

    std::string_view digits(const char* what) {
        const std::size_t start = pos_;
        while (at_digit()) ++pos_;
        if (start == pos_) fail(std::string("expected ") + what);
        return text_.substr(start, pos_ - start);
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        for (;;) {
            if (accept('+')) {
                terms.push_back(term());
            } else if (accept('-')) {
                terms.push_back(Expr::negate(term()));
            } else {
                break;
            }
        }
        return Expr::sum(std::move(terms));
    }

    Expr term() {
        std::vector<Expr> factors{factor()};
        while (accept('*')) factors.push_back(factor());
        return Expr::product(std::move(factors));
    }

    Expr factor() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            return Expr::negate(factor());
        }
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (at_digit()) return rational();
        if (text_.substr(pos_, 3) == "inv") {
            pos_ += 3;
            expect('(');
            Expr e = expr();
            expect(')');
            return Expr::inverse(std::move(e));
        }
        if (c == 'X') return variable();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expr rational() {
        const std::size_t start = pos_;
        std::string literal(digits("a number"));
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            literal += "/";
            literal += digits("a denominator");
        }
        try {
            return Expr::constant(parse_rational(literal));
        } catch (const DivisionByZero&) {
            throw ParseError("zero denominator", start);
        }
    }

    Expr variable() {
        const std::size_t start = pos_;
        ++pos_;  // 'X'
        const auto part = digits("a part number");
        if (pos_ >= text_.size() || text_[pos_] != '_') fail("expected '_'");
        ++pos_;
        const auto index = digits("a letter index");
        bool primed = false;
        if (pos_ < text_.size() && text_[pos_] == '\'') {
            primed = true;
            ++pos_;
        }
        auto to_index = [&](std::string_view s) -> std::uint32_t {
            if (s.size() > 6) throw UnknownVariable("letter number too large at column " + std::to_string(start));
            const auto v = std::stoul(std::string(s));
            if (v == 0) throw UnknownVariable("letters are numbered from 1 (column " + std::to_string(start) + ")");
            return static_cast<std::uint32_t>(v - 1);
        };
        const Variable v{to_index(part), to_index(index), primed};
        if (!alphabet_.contains(v)) {
            throw UnknownVariable("letter " + std::string(text_.substr(start, pos_ - start)) + " at column " +
                                  std::to_string(start) + " is out of range for alphabet " + alphabet_.to_string());
        }
        return Expr::var(v);
    }

    std::string_view text_;
    const Alphabet& alphabet_;
    std::size_t pos_ = 0;
};

void print(const Expr& e, std::string& out);

std::string letter(const Variable& v) {
    return "X" + std::to_string(v.part + 1) + "_" + std::to_string(v.index + 1) + (v.primed ? "'" : "");
}

// One factor of a product at position `pos`.
void print_factor(const Expr& f, std::size_t pos, std::string& out) {
    const bool parens = f.kind() == Expr::Kind::Sum || (pos > 0 && f.is_const() && sgn(f.value()) < 0);
    if (parens) out += '(';
    print(f, out);
    if (parens) out += ')';
}

void print_factors(std::span<const Expr> factors, std::string& out) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) out += '*';
        print_factor(factors[i], i, out);
    }
}

bool minus_one_shorthand(std::span<const Expr> factors) {
    return factors.size() >= 2 && factors[0].is_const() && factors[0].value() == -1 && !factors[1].is_const();
}

void print(const Expr& e, std::string& out) {
    switch (e.kind()) {
    case Expr::Kind::Const:
        out += rational_to_string(e.value());
        return;
    case Expr::Kind::Var:
        out += letter(e.variable());
        return;
    case Expr::Kind::Inverse:
        out += "inv(";
        print(e.child(0), out);
        out += ')';
        return;
    case Expr::Kind::Product: {
        const auto factors = e.children();
        if (minus_one_shorthand(factors)) {
            out += '-';
            print_factors(factors.subspan(1), out);
        } else {
            print_factors(factors, out);
        }
        return;
    }
    case Expr::Kind::Sum: {
        const auto terms = e.children();
        print(terms[0], out);
        for (std::size_t i = 1; i < terms.size(); ++i) {
            const Expr& t = terms[i];
            if (t.is_const() && sgn(t.value()) < 0) {
                out += " - " + rational_to_string(-t.value());
            } else if (t.kind() == Expr::Kind::Product && t.child(0).is_const() && sgn(t.child(0).value()) < 0) {
                const auto factors = t.children();
                out += " - ";
                if (minus_one_shorthand(factors)) {
                    print_factors(factors.subspan(1), out);
                } else {
                    out += rational_to_string(-factors[0].value());
                    out += '*';
                    // Position 1 onwards: negative literals keep their parens.
                    for (std::size_t k = 1; k < factors.size(); ++k) {
                        if (k > 1) out += '*';
                        print_factor(factors[k], k, out);
                    }
                }
            } else {
                out += " + ";
                print(t, out);
            }
        }
        return;
    }
    }
}

} // namespace

Expr parse(std::string_view text, const Alphabet& alphabet) { return Parser(text, alphabet).run(); }

std::string format(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

} // namespace mprat
