#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "mprat/eval.hpp"

namespace mprat {

struct TestConfig {
    std::size_t max_level = 4;
    std::size_t trials = 8;
    std::uint64_t bound = 10;
    std::uint64_t seed = 0;
    Field field = Field::rationals();

    /// Throws Error when a field is out of range.
    void validate() const;
};

/// Deterministic in (seed, alphabet sizes, dims, trial); entries are uniform
/// integers in [-bound, bound].
MpPoint sample_point(const Alphabet& alphabet, const std::vector<std::size_t>& dims, const TestConfig& cfg,
                     std::size_t trial);
/// The square level (n, ..., n).
MpPoint sample_point(const Alphabet& alphabet, std::size_t level, const TestConfig& cfg, std::size_t trial);

struct LevelStats {
    std::size_t level = 0;
    std::size_t trials = 0;
    std::size_t defined = 0;
    std::size_t zero = 0;
    /// Defined trials whose value had vanishing determinant.
    std::size_t singular = 0;
};

struct ExactZero {};

struct NonzeroWitness {
    MpPoint point;
    Matrix value;
    std::size_t level = 0;
    std::size_t trial = 0;
};

struct ProbablyZero {
    std::size_t max_level = 0;
    std::size_t trials = 0;
    /// Trials at which the expression was defined.
    std::size_t decided = 0;
};

struct NowhereDefined {
    Undefined undefined;
};

struct ZeroVerdict {
    std::variant<ExactZero, NonzeroWitness, ProbablyZero, NowhereDefined> result;
    std::vector<LevelStats> levels;
    /// False if some level had every defined value singular but not every
    /// value zero.
    bool determinant_consistent = true;

    bool exact_zero() const { return std::holds_alternative<ExactZero>(result); }
    bool probably_zero() const { return std::holds_alternative<ProbablyZero>(result); }
    bool nowhere_defined() const { return std::holds_alternative<NowhereDefined>(result); }
    bool is_zero() const { return exact_zero() || probably_zero(); }
    const NonzeroWitness* witness() const { return std::get_if<NonzeroWitness>(&result); }
};

ZeroVerdict is_zero(const Expr& e, const Alphabet& alphabet, const TestConfig& cfg = {});
/// Zero test of e1 - e2, which is defined exactly where both sides are.
ZeroVerdict equivalent(const Expr& e1, const Expr& e2, const Alphabet& alphabet, const TestConfig& cfg = {});

struct LevelScan {
    LevelStats stats;
    std::optional<NonzeroWitness> witness;
    std::optional<MpPoint> first_defined;
    std::optional<Undefined> undefined;
};

enum class StopAt { Never, Nonzero, Defined };

/// Runs cfg.trials sampled trials at one square level.
LevelScan scan_level(const Expr& e, const Alphabet& alphabet, std::size_t level, const TestConfig& cfg,
                     StopAt stop = StopAt::Never);

struct DomainScan {
    std::optional<std::size_t> first_level;
    std::optional<MpPoint> witness;
    /// Undefined report from the last failed trial.
    std::optional<Undefined> undefined;
};

/// Smallest square level with a sampled point in the domain of `e`.
DomainScan domain_scan(const Expr& e, const Alphabet& alphabet, const TestConfig& cfg = {});

} // namespace mprat
