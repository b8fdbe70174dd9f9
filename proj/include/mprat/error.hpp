#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mprat {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("operands live in different fields") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class NotSquare : public Error {
public:
    NotSquare() : Error("operation requires a square matrix") {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t column)
        : Error(what + " at column " + std::to_string(column)), column_(column) {}

    /// 0-based character offset into the parsed text.
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

class UnknownVariable : public Error {
public:
    using Error::Error;
};

class ExprHasInverse : public Error {
public:
    ExprHasInverse() : Error("expression contains an inverse") {}
};

class BasePointOutsideDomain : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class PartialUndefined : public Error {
public:
    using Error::Error;
};

} // namespace mprat
