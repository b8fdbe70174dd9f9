#include "mprat/matrix.hpp"

#include <ostream>
#include <sstream>
#include <utility>

#include "mprat/error.hpp"

namespace mprat {

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), entries_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(std::size_t n, Field field) {
    Matrix m(n, n, field);
    const Scalar one = Scalar::one(field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
}

Matrix Matrix::scalar(std::size_t n, const Scalar& s) {
    Matrix m(n, n, s.field());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
    std::vector<std::vector<Scalar>> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty()) return {};
    const Field f = rows.front().empty() ? Field::rationals() : rows.front().front().field();
    Matrix m(rows.size(), rows.front().size(), f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw ShapeMismatch("ragged matrix rows");
        for (std::size_t j = 0; j < m.cols_; ++j) {
            if (rows[i][j].field() != f) throw FieldMismatch();
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j, Field field) {
    Matrix m(n, n, field);
    m(i, j) = Scalar::one(field);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& e : entries_) {
        if (!e.is_zero()) return false;
    }
    return true;
}

bool Matrix::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar& e = (*this)(i, j);
            if (i == j ? !e.is_one() : !e.is_zero()) return false;
        }
    }
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

Matrix Matrix::block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const {
    if (row + nrows > rows_ || col + ncols > cols_) throw ShapeMismatch("block out of range");
    Matrix b(nrows, ncols, field_);
    for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row + i, col + j);
    }
    return b;
}

void Matrix::set_block(std::size_t row, std::size_t col, const Matrix& b) {
    if (row + b.rows_ > rows_ || col + b.cols_ > cols_) throw ShapeMismatch("block out of range");
    if (!b.empty() && b.field_ != field_) throw FieldMismatch();
    for (std::size_t i = 0; i < b.rows_; ++i) {
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(row + i, col + j) = b(i, j);
    }
}

Matrix Matrix::in_field(Field f) const {
    if (f == field_) return *this;
    if (!field_.is_rational()) throw FieldMismatch();
    Matrix m(rows_, cols_, f);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        m.entries_[k] = Scalar::from_rational(entries_[k].rational(), f);
    }
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix sum of different shapes");
    if (empty()) return *this;
    if (field_ != o.field_) throw FieldMismatch();
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix difference of different shapes");
    if (empty()) return *this;
    if (field_ != o.field_) throw FieldMismatch();
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    if (empty()) return *this;
    if (s.field() != field_) throw FieldMismatch();
    for (auto& e : entries_) e *= s;
    return *this;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& e : r.entries_) e = -e;
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product with incompatible shapes");
    if (!a.empty() && !b.empty() && a.field_ != b.field_) throw FieldMismatch();
    const Field f = a.empty() ? b.field_ : a.field_;
    Matrix c(a.rows_, b.cols_, f);
    if (a.cols_ == 0) return c;
    if (f.is_rational()) {
        // Sparse rows of b; Kronecker-structured operands are mostly zero.
        std::vector<std::vector<std::size_t>> nz(b.rows_);
        bool integral = true;
        for (std::size_t k = 0; k < b.rows_; ++k) {
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const mpq_class& v = b(k, j).rational();
                if (sgn(v) == 0) continue;
                nz[k].push_back(j);
                integral = integral && v.get_den() == 1;
            }
        }
        for (const auto& s : a.entries_) integral = integral && s.rational().get_den() == 1;
        if (integral) {
            std::vector<mpz_class> row(b.cols_);
            for (std::size_t i = 0; i < a.rows_; ++i) {
                for (auto& r : row) r = 0;
                for (std::size_t k = 0; k < a.cols_; ++k) {
                    const mpz_class& aik = a(i, k).rational().get_num();
                    if (sgn(aik) == 0) continue;
                    for (auto j : nz[k]) mpz_addmul(row[j].get_mpz_t(), aik.get_mpz_t(), b(k, j).rational().get_num_mpz_t());
                }
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = Scalar(mpq_class(row[j]));
            }
            return c;
        }
        mpq_class acc;
        std::vector<mpq_class> row(b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (auto& r : row) r = 0;
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const mpq_class& aik = a(i, k).rational();
                if (sgn(aik) == 0) continue;
                for (auto j : nz[k]) {
                    acc = aik * b(k, j).rational();
                    row[j] += acc;
                }
            }
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = Scalar(row[j]);
        }
        return c;
    }
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    if (a.empty()) return true;
    return a.field_ == b.field_ && a.entries_ == b.entries_;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : ", [");
        for (std::size_t j = 0; j < cols_; ++j) os << (j == 0 ? "" : ", ") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

namespace {

struct Elimination {
    bool singular = false;
    Scalar det;
    Matrix solution;
};

// Bareiss elimination over Z on [a | b] after clearing denominators row by
// row; back substitution is carried out on det·x so every division is exact.
Elimination eliminate_rational(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows();
    const std::size_t k = b.cols();
    const std::size_t w = n + k;
    std::vector<mpz_class> m(n * w);
    mpq_class scale_product = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).rational().get_den_mpz_t());
        for (std::size_t j = 0; j < k; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b(i, j).rational().get_den_mpz_t());
        scale_product *= l;
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& q = a(i, j).rational();
            m[i * w + j] = l / q.get_den() * q.get_num();
        }
        for (std::size_t j = 0; j < k; ++j) {
            const mpq_class& q = b(i, j).rational();
            m[i * w + n + j] = l / q.get_den() * q.get_num();
        }
    }
    auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return m[i * w + j]; };

    int sign = 1;
    mpz_class prev = 1;
    mpz_class t;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && at(p, c) == 0) ++p;
        if (p == n) return {true, Scalar(0), {}};
        if (p != c) {
            for (std::size_t j = c; j < w; ++j) std::swap(at(p, j), at(c, j));
            sign = -sign;
        }
        const mpz_class& piv = at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            const mpz_class lead = at(i, c);
            for (std::size_t j = c + 1; j < w; ++j) {
                t = piv * at(i, j);
                if (lead != 0) t -= lead * at(c, j);
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, c) = 0;
        }
        prev = piv;
    }
    const mpz_class d = n == 0 ? mpz_class(1) : mpz_class(at(n - 1, n - 1));

    Matrix x(n, k);
    std::vector<mpz_class> z(n);
    for (std::size_t col = 0; col < k; ++col) {
        for (std::size_t ii = n; ii-- > 0;) {
            t = d * at(ii, n + col);
            for (std::size_t j = ii + 1; j < n; ++j) {
                if (at(ii, j) != 0) t -= at(ii, j) * z[j];
            }
            mpz_divexact(z[ii].get_mpz_t(), t.get_mpz_t(), at(ii, ii).get_mpz_t());
        }
        for (std::size_t ii = 0; ii < n; ++ii) x(ii, col) = Scalar(mpq_class(z[ii], d));
    }
    mpq_class determinant(d * sign);
    determinant /= scale_product;
    return {false, Scalar(determinant), std::move(x)};
}

Elimination eliminate_prime(const Matrix& a0, const Matrix& b0) {
    const Field f = a0.field();
    Matrix a = a0;
    Matrix b = b0;
    const std::size_t n = a.rows();
    const std::size_t k = b.cols();
    Scalar d = Scalar::one(f);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) ++p;
        if (p == n) return {true, Scalar::zero(f), {}};
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            for (std::size_t j = 0; j < k; ++j) std::swap(b(p, j), b(c, j));
            d = -d;
        }
        d *= a(c, c);
        const Scalar inv = a(c, c).inverse();
        for (std::size_t j = c; j < n; ++j) a(c, j) *= inv;
        for (std::size_t j = 0; j < k; ++j) b(c, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c).is_zero()) continue;
            const Scalar factor = a(i, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
            for (std::size_t j = 0; j < k; ++j) b(i, j) -= factor * b(c, j);
        }
    }
    return {false, d, std::move(b)};
}

Elimination eliminate(const Matrix& a, const Matrix& b) {
    if (!a.is_square()) throw NotSquare();
    if (b.rows() != a.rows()) throw ShapeMismatch("right-hand side has the wrong number of rows");
    if (!a.empty() && !b.empty() && a.field() != b.field()) throw FieldMismatch();
    if (a.field().is_rational()) return eliminate_rational(a, b);
    return eliminate_prime(a, b);
}

} // namespace

std::optional<InverseDet> inv_det(const Matrix& a) {
    auto e = eliminate(a, Matrix::identity(a.rows(), a.field()));
    if (e.singular) return std::nullopt;
    return InverseDet{std::move(e.solution), std::move(e.det)};
}

Scalar det(const Matrix& a) {
    auto e = eliminate(a, Matrix(a.rows(), 0, a.field()));
    return e.singular ? Scalar::zero(a.field()) : e.det;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    auto e = eliminate(a, b);
    if (e.singular) return std::nullopt;
    return std::move(e.solution);
}

std::size_t rank(const Matrix& a0) {
    Matrix a = a0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        const Scalar inv = a(r, c).inverse();
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c).is_zero()) continue;
            const Scalar factor = a(i, c) * inv;
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
        }
        ++r;
    }
    return r;
}

} // namespace mprat
