#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mprat/scalar.hpp"

namespace mprat {

/// Dense row-major matrix of exact scalars. Every entry lives in field().
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Field field = Field::rationals());

    static Matrix identity(std::size_t n, Field field = Field::rationals());
    static Matrix scalar(std::size_t n, const Scalar& s);
    /// Rows of integers or rationals; all rows must have equal length.
    static Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows);
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);
    /// E_{ij} of size n (0-based indices).
    static Matrix unit(std::size_t n, std::size_t i, std::size_t j, Field field = Field::rationals());

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool is_square() const { return rows_ == cols_; }
    Field field() const { return field_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    std::span<const Scalar> entries() const { return entries_; }

    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;
    Matrix block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t row, std::size_t col, const Matrix& b);
    /// Same entries, reinterpreted in field `f` (rationals only as source).
    Matrix in_field(Field f) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& s);
    Matrix operator-() const;

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Field field_;
    std::vector<Scalar> entries_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

struct InverseDet {
    Matrix inverse;
    Scalar det;
};

/// Exact inverse and determinant by fraction-free elimination; nullopt when
/// `a` is singular. Throws NotSquare.
std::optional<InverseDet> inv_det(const Matrix& a);
Scalar det(const Matrix& a);
/// Solves a·x = b; nullopt when `a` is singular.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::size_t rank(const Matrix& a);

} // namespace mprat
