#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mprat/matrix.hpp"

namespace mprat {

/// Kronecker product: block (i,j) of the result is a(i,j)·b.
Matrix kron(const Matrix& a, const Matrix& b);
/// a[0] ⊗ a[1] ⊗ ... ; the empty product is the 1×1 identity.
Matrix kron_all(std::span<const Matrix> factors);
/// Block diagonal diag(a, b).
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Embeds `a` into tensor slot `slot` (0-based) of M_{n_0}⊗...⊗M_{n_{G-1}}:
/// I ⊗ ... ⊗ a ⊗ ... ⊗ I.
Matrix tau_embed(std::size_t slot, const Matrix& a, std::span<const std::size_t> dims);

/// Permutation matrix K with ⊗_i a_{pi[i]} = K (⊗_i a_i) Kᵗ for all a_i of
/// size dims[i]. `pi` is a 0-based permutation of {0..G-1}.
Matrix commutation_matrix(std::span<const std::size_t> pi, std::span<const std::size_t> dims);

/// The permutation listing `to_front` first, then the remaining slots in
/// increasing order; feed it to commutation_matrix.
std::vector<std::size_t> front_permutation(std::size_t slots, std::span<const std::size_t> to_front);

/// Whether `pi` is a permutation of {0..pi.size()-1}.
bool is_permutation(std::span<const std::size_t> pi);

} // namespace mprat
