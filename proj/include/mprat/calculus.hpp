#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "mprat/eval.hpp"

namespace mprat {

/// Δ^{(part)}_{index}(e), an expression over alphabet.with_primed(part).
/// Terms that are literally 0 and factors that are literally 1 are dropped.
Expr delta(std::uint32_t part, std::uint32_t index, const Expr& e, const Alphabet& alphabet);
/// v·Δ^{(part)}(e) = Σ_j v_j Δ^{(part)}_j(e).
Expr directional_delta(std::uint32_t part, const std::vector<mpq_class>& v, const Expr& e, const Alphabet& alphabet);

/// Inputs of the block-triangular formula for part `part`: a' at size m',
/// a at size m, direction v, and the remaining parts as a point over
/// alphabet.without_part(part).
struct FundInput {
    std::uint32_t part = 0;
    std::vector<Matrix> a_prime;
    std::vector<Matrix> a;
    std::vector<mpq_class> v;
    MpPoint rest;
};

/// Part `part` gets [[a'_j⊗I_m, v_j I],[0, I_{m'}⊗a_j]]; other parts are
/// copied from `rest`.
MpPoint fund_block_point(const FundInput& in, const Alphabet& alphabet);

struct FundCheck {
    bool lower_left_zero = false;
    bool diagonal = false;
    bool off_diagonal = false;
    Matrix lhs;         // evaluation at the block point, part slot moved to the front
    Matrix off_block;   // (v·Δ(e))(a', a, rest), same ordering

    bool holds() const { return lower_left_zero && diagonal && off_diagonal; }
};

/// Throws Error if an evaluation it needs is undefined.
FundCheck verify_fund(const Expr& e, const Alphabet& alphabet, const FundInput& in);

} // namespace mprat
