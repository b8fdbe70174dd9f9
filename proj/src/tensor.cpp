#include "mprat/tensor.hpp"

#include <algorithm>

#include "mprat/error.hpp"

namespace mprat {

Matrix kron(const Matrix& a, const Matrix& b) {
    if (!a.empty() && !b.empty() && a.field() != b.field()) throw FieldMismatch();
    const Field f = a.empty() ? b.field() : a.field();
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols(), f);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& aij = a(i, j);
            if (aij.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    if (!b(k, l).is_zero()) r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return r;
}

Matrix kron_all(std::span<const Matrix> factors) {
    if (factors.empty()) return Matrix::identity(1);
    Matrix r = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) r = kron(r, factors[i]);
    return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    if (!a.empty() && !b.empty() && a.field() != b.field()) throw FieldMismatch();
    const Field f = a.empty() ? b.field() : a.field();
    Matrix r(a.rows() + b.rows(), a.cols() + b.cols(), f);
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

Matrix tau_embed(std::size_t slot, const Matrix& a, std::span<const std::size_t> dims) {
    if (slot >= dims.size()) throw ShapeMismatch("tensor slot out of range");
    if (!a.is_square() || a.rows() != dims[slot]) {
        throw ShapeMismatch("embedded matrix does not match its slot dimension");
    }
    std::size_t left = 1;
    std::size_t right = 1;
    for (std::size_t i = 0; i < slot; ++i) left *= dims[i];
    for (std::size_t i = slot + 1; i < dims.size(); ++i) right *= dims[i];
    const std::size_t n = a.rows();
    const std::size_t size = left * n * right;
    Matrix r(size, size, a.field());
    for (std::size_t l = 0; l < left; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (a(i, j).is_zero()) continue;
                for (std::size_t k = 0; k < right; ++k) {
                    r((l * n + i) * right + k, (l * n + j) * right + k) = a(i, j);
                }
            }
        }
    }
    return r;
}

bool is_permutation(std::span<const std::size_t> pi) {
    std::vector<bool> seen(pi.size(), false);
    for (std::size_t v : pi) {
        if (v >= pi.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Matrix commutation_matrix(std::span<const std::size_t> pi, std::span<const std::size_t> dims) {
    if (pi.size() != dims.size() || !is_permutation(pi)) {
        throw ShapeMismatch("commutation matrix needs a permutation of the tensor slots");
    }
    const std::size_t g = dims.size();
    std::size_t size = 1;
    for (std::size_t d : dims) size *= d;
    Matrix k(size, size);
    const Scalar one(1);
    std::vector<std::size_t> digits(g, 0);
    for (std::size_t col = 0; col < size; ++col) {
        // digits holds the mixed-radix expansion of col (slot 0 most significant).
        std::size_t row = 0;
        for (std::size_t i = 0; i < g; ++i) row = row * dims[pi[i]] + digits[pi[i]];
        k(row, col) = one;
        for (std::size_t i = g; i-- > 0;) {
            if (++digits[i] < dims[i]) break;
            digits[i] = 0;
        }
    }
    return k;
}

std::vector<std::size_t> front_permutation(std::size_t slots, std::span<const std::size_t> to_front) {
    std::vector<std::size_t> pi(to_front.begin(), to_front.end());
    for (std::size_t i = 0; i < slots; ++i) {
        if (std::find(to_front.begin(), to_front.end(), i) == to_front.end()) pi.push_back(i);
    }
    if (!is_permutation(pi)) throw ShapeMismatch("invalid slot selection");
    return pi;
}

} // namespace mprat
