#include "mprat/identity.hpp"

#include <random>

#include "mprat/error.hpp"
#include "mprat/poly.hpp"

namespace mprat {

namespace {

constexpr std::size_t kMaxExtraRounds = 32;

ZeroVerdict finish(ZeroVerdict v) {
    for (const auto& s : v.levels) {
        if (s.defined > 0 && s.singular == s.defined && s.zero < s.defined) v.determinant_consistent = false;
    }
    return v;
}

} // namespace

void TestConfig::validate() const {
    if (max_level < 1) throw Error("max_level must be at least 1");
    if (trials < 1) throw Error("trials must be at least 1");
    if (bound < 1) throw Error("bound must be at least 1");
    if (bound > (std::uint64_t{1} << 62)) throw Error("bound is too large");
}

MpPoint sample_point(const Alphabet& alphabet, const std::vector<std::size_t>& dims, const TestConfig& cfg,
                     std::size_t trial) {
    if (dims.size() != alphabet.slot_count()) throw ShapeMismatch("dims do not match the alphabet");
    std::vector<std::uint32_t> key{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                                   static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    for (std::size_t s = 0; s < dims.size(); ++s) {
        key.push_back(static_cast<std::uint32_t>(dims[s]));
        key.push_back(alphabet.slot_size(s));
    }
    std::seed_seq seq(key.begin(), key.end());
    std::mt19937_64 rng(seq);
    const auto b = static_cast<long>(cfg.bound);
    std::uniform_int_distribution<long> dist(-b, b);

    MpPoint p;
    p.dims = dims;
    p.slots.resize(dims.size());
    for (std::size_t s = 0; s < dims.size(); ++s) {
        for (std::uint32_t k = 0; k < alphabet.slot_size(s); ++k) {
            Matrix m(dims[s], dims[s], cfg.field);
            for (std::size_t i = 0; i < dims[s]; ++i) {
                for (std::size_t j = 0; j < dims[s]; ++j) m(i, j) = Scalar::from_rational(dist(rng), cfg.field);
            }
            p.slots[s].push_back(std::move(m));
        }
    }
    return p;
}

MpPoint sample_point(const Alphabet& alphabet, std::size_t level, const TestConfig& cfg, std::size_t trial) {
    return sample_point(alphabet, std::vector<std::size_t>(alphabet.slot_count(), level), cfg, trial);
}

LevelScan scan_level(const Expr& e, const Alphabet& alphabet, std::size_t level, const TestConfig& cfg,
                     StopAt stop) {
    LevelScan out;
    out.stats.level = level;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        MpPoint a = sample_point(alphabet, level, cfg, t);
        EvalResult r = mp_evaluate(e, alphabet, a);
        ++out.stats.trials;
        if (!is_defined(r)) {
            out.undefined = std::get<Undefined>(std::move(r));
            continue;
        }
        ++out.stats.defined;
        Matrix& v = std::get<Matrix>(r);
        if (!out.first_defined) out.first_defined = a;
        if (v.is_zero()) {
            ++out.stats.zero;
            ++out.stats.singular;
        } else {
            if (det(v).is_zero()) ++out.stats.singular;
            if (!out.witness) out.witness = NonzeroWitness{std::move(a), std::move(v), level, t};
        }
        if (stop == StopAt::Defined) break;
        if (stop == StopAt::Nonzero && out.witness) break;
    }
    return out;
}

ZeroVerdict is_zero(const Expr& e, const Alphabet& alphabet, const TestConfig& cfg) {
    cfg.validate();
    check_alphabet(e, alphabet);
    ZeroVerdict v;

    if (inversion_height(e) == 0) {
        const PolyNormalForm nf = poly_normal_form(e, alphabet);
        if (nf.is_zero()) {
            v.result = ExactZero{};
            return v;
        }
        // A nonzero polynomial whose words have length at most d is not an
        // identity of M_n once 2n > d.
        const std::size_t guaranteed = nf.max_word_length() / 2 + 1;
        const std::size_t top = std::max(cfg.max_level, guaranteed);
        for (std::size_t level = 1; level <= top; ++level) {
            LevelScan s = scan_level(e, alphabet, level, cfg);
            v.levels.push_back(s.stats);
            if (s.witness) {
                v.result = std::move(*s.witness);
                return finish(std::move(v));
            }
        }
        TestConfig wider = cfg;
        for (std::size_t round = 1; round <= kMaxExtraRounds; ++round) {
            wider.bound *= 2;
            wider.seed = cfg.seed + round;
            LevelScan s = scan_level(e, alphabet, guaranteed, wider);
            v.levels.push_back(s.stats);
            if (s.witness) {
                v.result = std::move(*s.witness);
                return finish(std::move(v));
            }
        }
        throw Error("no nonzero evaluation found for a nonzero polynomial");
    }

    std::size_t decided = 0;
    std::optional<Undefined> undefined;
    for (std::size_t level = 1; level <= cfg.max_level; ++level) {
        LevelScan s = scan_level(e, alphabet, level, cfg);
        v.levels.push_back(s.stats);
        decided += s.stats.defined;
        if (s.witness) {
            v.result = std::move(*s.witness);
            return finish(std::move(v));
        }
        if (s.undefined) undefined = std::move(s.undefined);
    }
    if (decided == 0) {
        v.result = NowhereDefined{std::move(*undefined)};
    } else {
        v.result = ProbablyZero{cfg.max_level, cfg.trials, decided};
    }
    return finish(std::move(v));
}

ZeroVerdict equivalent(const Expr& e1, const Expr& e2, const Alphabet& alphabet, const TestConfig& cfg) {
    return is_zero(e1 - e2, alphabet, cfg);
}

DomainScan domain_scan(const Expr& e, const Alphabet& alphabet, const TestConfig& cfg) {
    cfg.validate();
    check_alphabet(e, alphabet);
    DomainScan out;
    for (std::size_t level = 1; level <= cfg.max_level; ++level) {
        LevelScan s = scan_level(e, alphabet, level, cfg, StopAt::Defined);
        if (s.first_defined) {
            out.first_level = level;
            out.witness = std::move(s.first_defined);
            return out;
        }
        out.undefined = std::move(s.undefined);
    }
    return out;
}

} // namespace mprat
