#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mprat/eval.hpp"

namespace mprat {

struct PencilTerm {
    Matrix c;  // C_ij, nm × nm
    Matrix b;  // B_ij, nm × nm
};

/// r(Z) = c (I - Σ_i Σ_j C_ij (I_n ⊗ (Z_i - p_i)) B_ij)^{-1} b, with every
/// block of size m. Letters Z_i are the letters of `alphabet` listed slot by
/// slot; terms[i] holds the pencil terms of letter i.
struct Realization {
    Alphabet alphabet;
    std::size_t m = 0;
    std::vector<Matrix> base;
    std::size_t n = 0;
    Matrix c;
    Matrix b;
    std::vector<std::vector<PencilTerm>> terms;

    std::size_t rho() const;
    Field field() const { return c.field(); }
};

/// Throws BasePointOutsideDomain when `e` is undefined at the base point.
Realization realize(const Expr& e, const Alphabet& alphabet, const NcPoint& base);

/// nullopt when the amplified pencil is singular at `a`. The size of `a`
/// must be a multiple of m.
std::optional<Matrix> real_evaluate(const Realization& r, const NcPoint& a);
bool real_domain_contains(const Realization& r, const NcPoint& a);

/// Restricts to the reachable, then the observable subspace.
Realization real_reduce(const Realization& r);

/// The base point as an NcPoint of size m.
NcPoint base_point(const Realization& r);

} // namespace mprat
