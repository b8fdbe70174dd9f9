// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "corpus.hpp"
#include "mprat/calculus.hpp"
#include "mprat/error.hpp"
#include "mprat/expr_matrix.hpp"
#include "mprat/identity.hpp"
#include "mprat/realization.hpp"
#include "mprat/tensor.hpp"
#include "oracle.hpp"

using namespace mprat;

namespace {

// Collects failures; `detail` is printed after the verdict.
struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) detail << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

const Alphabet& A22() { return corpus::alphabet(); }

Matrix inverse_of(const Matrix& m) { return inv_det(m)->inverse; }

Matrix swap_matrix(std::size_t n1, std::size_t n2) {
    const std::vector<std::size_t> pi{1, 0}, dims{n1, n2};
    return commutation_matrix(pi, dims);
}

// ---------------------------------------------------------------- 1
void tensor_commutation(Outcome& o) {
    std::mt19937_64 rng(101);
    const Alphabet a2 = Alphabet::parse("2:2,2"), a3 = Alphabet::parse("3:2,2,2");
    std::size_t checks = 0;
    for (int t = 0; t < 100; ++t) {
        const int kind = t % 3;
        const Alphabet& a = kind == 2 ? a3 : a2;
        const std::vector<std::size_t> dims = kind == 0 ? std::vector<std::size_t>{2, 2}
                                              : kind == 1 ? std::vector<std::size_t>{3, 3}
                                                          : std::vector<std::size_t>{2, 3, 2};
        const MpPoint p = corpus::random_mp_point(rng, a, dims);
        for (std::uint32_t i1 = 0; i1 < a.parts(); ++i1) {
            for (std::uint32_t i2 = i1 + 1; i2 < a.parts(); ++i2) {
                for (std::uint32_t j1 = 0; j1 < a.size(i1); ++j1) {
                    for (std::uint32_t j2 = 0; j2 < a.size(i2); ++j2) {
                        const EvalResult r = mp_evaluate(commutator(Expr::var(i1, j1), Expr::var(i2, j2)), a, p);
                        o.expect(is_defined(r) && value(r).is_zero(), "nonzero commutator");
                        ++checks;
                    }
                }
            }
        }
    }
    o.detail << checks << " commutators at 100 points";
}

// ---------------------------------------------------------------- 2
void commutation_law(Outcome& o) {
    std::mt19937_64 rng(102);
    std::size_t checks = 0;
    for (std::size_t g = 2; g <= 3; ++g) {
        std::vector<std::size_t> dims(g, 1);
        for (;;) {
            std::vector<std::size_t> pi(g);
            std::iota(pi.begin(), pi.end(), 0);
            do {
                const Matrix k = commutation_matrix(pi, dims);
                for (int t = 0; t < 20; ++t) {
                    std::vector<Matrix> a, permuted;
                    for (auto n : dims) a.push_back(corpus::random_matrix(rng, n));
                    for (auto i : pi) permuted.push_back(a[i]);
                    o.expect(kron_all(permuted) == k * kron_all(a) * k.transpose(), "commutation law");
                    ++checks;
                }
            } while (std::next_permutation(pi.begin(), pi.end()));
            std::size_t s = 0;
            while (s < g && dims[s] == 3) dims[s++] = 1;
            if (s == g) break;
            ++dims[s];
        }
    }
    o.detail << checks << " factor tuples";
}

// ---------------------------------------------------------------- 3
void direct_sum_similarity(Outcome& o) {
    std::mt19937_64 rng(103);
    const auto exprs = corpus::load(A22());
    std::uniform_int_distribution<std::size_t> size(1, 2);
    std::size_t sums = 0, sims = 0;
    for (std::size_t k = 0; k < exprs.size(); ++k) {
        const Expr& e = exprs[k];
        int pairs = 0;
        for (int attempt = 0; pairs < 10 && attempt < 200; ++attempt) {
            const std::size_t part = pairs % 2;
            const std::size_t other = 1 - part;
            const std::size_t n1 = size(rng), n2 = size(rng), m = size(rng);
            std::vector<std::size_t> dx(2), dy(2);
            dx[part] = n1;
            dy[part] = n2;
            dx[other] = dy[other] = m;
            MpPoint x = corpus::random_mp_point(rng, A22(), dx);
            MpPoint y = corpus::random_mp_point(rng, A22(), dy);
            y.slots[other] = x.slots[other];
            const EvalResult rx = mp_evaluate(e, A22(), x), ry = mp_evaluate(e, A22(), y);
            if (!is_defined(rx) || !is_defined(ry)) continue;
            ++pairs;

            MpPoint s = x;
            s.dims[part] = n1 + n2;
            for (std::size_t j = 0; j < 2; ++j) s.slots[part][j] = direct_sum(x.slots[part][j], y.slots[part][j]);
            const EvalResult rs = mp_evaluate(e, A22(), s);
            o.expect(is_defined(rs), "direct sum undefined: " + corpus::texts()[k]);
            if (!is_defined(rs)) continue;
            if (part == 0) {
                o.expect(value(rs) == direct_sum(value(rx), value(ry)), "direct sum: " + corpus::texts()[k]);
            } else {
                // Move the summed part to the front on both sides.
                const Matrix ks = swap_matrix(m, n1 + n2), kx = swap_matrix(m, n1), ky = swap_matrix(m, n2);
                o.expect(ks * value(rs) * ks.transpose() ==
                             direct_sum(kx * value(rx) * kx.transpose(), ky * value(ry) * ky.transpose()),
                         "shuffled direct sum: " + corpus::texts()[k]);
            }
            ++sums;

            const Matrix p1 = corpus::random_invertible(rng, x.dims[0]), p2 = corpus::random_invertible(rng, x.dims[1]);
            MpPoint c = x;
            for (auto& mat : c.slots[0]) mat = p1 * mat * inverse_of(p1);
            for (auto& mat : c.slots[1]) mat = p2 * mat * inverse_of(p2);
            const EvalResult rc = mp_evaluate(e, A22(), c);
            const Matrix p = kron(p1, p2);
            o.expect(is_defined(rc) && value(rc) == p * value(rx) * inverse_of(p), "similarity: " + corpus::texts()[k]);
            ++sims;
        }
        o.expect(pairs == 10, "too few defined pairs: " + corpus::texts()[k]);
    }
    o.detail << sums << " direct sums, " << sims << " similarities";
}

// ---------------------------------------------------------------- 4
bool witness_reverifies(const Expr& e, const Alphabet& a, const NonzeroWitness& w) {
    const auto q = oracle::mp_evaluate(e, a, w.point);
    return q && !oracle::is_zero(*q) && oracle::from(w.value) == *q;
}

void level_separation(Outcome& o) {
    const Alphabet a3 = Alphabet::parse("1:3");
    const Expr c = commutator(Expr::var(0, 0), Expr::var(0, 1));
    const Expr hall = commutator(c * c, Expr::var(0, 2));
    const ZeroVerdict v = is_zero(hall, a3);
    const NonzeroWitness* w = v.witness();
    o.expect(w && w->level == 3, "Hall witness not at level 3");
    o.expect(v.levels.size() >= 2 && v.levels[1].level == 2 && v.levels[1].trials >= 8 &&
                 v.levels[1].defined == v.levels[1].trials && v.levels[1].zero == v.levels[1].trials,
             "Hall not zero on all level-2 trials");
    if (w) o.expect(witness_reverifies(hall, a3, *w), "Hall witness re-verification");

    const Alphabet a2 = Alphabet::parse("1:2");
    const ZeroVerdict u = is_zero(c, a2);
    const NonzeroWitness* wc = u.witness();
    o.expect(wc && wc->level == 2, "commutator witness not at level 2");
    o.expect(!u.levels.empty() && u.levels[0].level == 1 && u.levels[0].zero == u.levels[0].trials,
             "commutator not zero at level 1");
    if (wc) o.expect(witness_reverifies(c, a2, *wc), "commutator witness re-verification");
    if (v.levels.size() >= 2) o.detail << "Hall zero on " << v.levels[1].zero << " level-2 trials";
    if (w) o.detail << ", witness at level " << w->level << " trial " << w->trial;
}

// ---------------------------------------------------------------- 5
void classical_identities(Outcome& o) {
    const Alphabet a11 = Alphabet::parse("2:1,1"), a2 = Alphabet::parse("1:2");
    struct Case {
        const char* name;
        Expr lhs, rhs;
        const Alphabet* alphabet;
    };
    const Expr r = parse("X1_1 + 2", a11);
    const std::vector<Case> cases{
        {"double inverse", inv(inv(r)), r, &a11},
        {"product reversal", parse("inv(X1_1*X2_1)", a11), parse("inv(X2_1)*inv(X1_1)", a11), &a11},
        {"Hua", parse("inv(inv(X1_1) + inv(inv(X1_2) - X1_1))", a2), parse("X1_1 - X1_1*X1_2*X1_1", a2), &a2},
    };
    for (const auto& c : cases) {
        const ZeroVerdict v = equivalent(c.lhs, c.rhs, *c.alphabet);
        const auto* p = std::get_if<ProbablyZero>(&v.result);
        o.expect(p && p->decided >= 16, c.name);
        if (p) o.detail << (c.name == cases.front().name ? "" : ", ") << c.name << ": " << p->decided << " decided";
    }
}

// ---------------------------------------------------------------- 6
void fundamental_formula(Outcome& o) {
    std::mt19937_64 rng(106);
    const auto exprs = corpus::load(A22());
    std::uniform_int_distribution<std::size_t> size(1, 2);
    std::uniform_int_distribution<long> coeff(-3, 3);
    std::size_t checks = 0;
    for (std::size_t k = 0; k < exprs.size(); ++k) {
        int done = 0;
        for (int attempt = 0; done < 5 && attempt < 100; ++attempt) {
            FundInput in;
            in.part = 0;
            const std::size_t mp = size(rng), m = size(rng);
            for (int j = 0; j < 2; ++j) {
                in.a_prime.push_back(corpus::random_matrix(rng, mp));
                in.a.push_back(corpus::random_matrix(rng, m));
                in.v.push_back(coeff(rng));
            }
            in.rest = corpus::random_mp_point(rng, A22().without_part(0), {size(rng)});
            FundCheck c;
            try {
                c = verify_fund(exprs[k], A22(), in);
            } catch (const Error&) {
                continue;
            }
            o.expect(c.lower_left_zero, "lower-left block: " + corpus::texts()[k]);
            o.expect(c.diagonal, "diagonal blocks: " + corpus::texts()[k]);
            o.expect(c.off_diagonal, "off-diagonal block: " + corpus::texts()[k]);
            ++done;
            ++checks;
        }
        o.expect(done == 5, "too few defined tuples: " + corpus::texts()[k]);
    }
    o.detail << checks << " block evaluations";
}

// ---------------------------------------------------------------- 7
void derivation_law(Outcome& o) {
    const auto exprs = corpus::load(A22());
    TestConfig cfg;
    cfg.max_level = 3;
    std::size_t tests = 0;
    std::size_t min_decided = SIZE_MAX;
    for (std::uint32_t part = 0; part < 2; ++part) {
        const Alphabet primed = A22().with_primed(part);
        for (std::uint32_t j = 0; j < 2; ++j) {
            auto d = [&](const Expr& e) { return delta(part, j, e, A22()); };
            for (std::size_t k = 0; k < exprs.size(); ++k) {
                const Expr& e1 = exprs[k];
                const Expr& e2 = exprs[(k + 1 + part + j) % exprs.size()];
                const std::string tag = corpus::texts()[k] + " | " + corpus::texts()[(k + 1 + part + j) % exprs.size()];
                const Expr leibniz = prime_part(e1, part) * d(e2) + d(e1) * e2;
                const ZeroVerdict v = equivalent(d(e1 * e2), leibniz, primed, cfg);
                o.expect(v.is_zero(), "Leibniz: " + tag);
                if (const auto* p = std::get_if<ProbablyZero>(&v.result)) min_decided = std::min(min_decided, p->decided);
                o.expect(equivalent(d(e1 + e2), d(e1) + d(e2), primed, cfg).is_zero(), "additivity: " + tag);
                const Expr three = Expr::constant(mpq_class(-3, 2));
                o.expect(equivalent(d(three * e1), three * d(e1), primed, cfg).is_zero(), "homogeneity: " + tag);
                tests += 3;
            }
        }
    }
    o.detail << tests << " equivalence tests (levels 1-" << cfg.max_level << ", " << cfg.trials
             << " trials, >= " << min_decided << " decided per Leibniz test)";
}

// ---------------------------------------------------------------- 8
void realization_agreement(Outcome& o) {
    std::mt19937_64 rng(108);
    const auto exprs = corpus::load(A22());
    std::size_t agree = 0, reduced_agree = 0;
    for (std::size_t k = 0; k < exprs.size(); ++k) {
        const Expr& e = exprs[k];
        const std::string& name = corpus::texts()[k];
        for (std::size_t m = 1; m <= 2; ++m) {
            NcPoint base = corpus::random_nc_point(rng, A22(), m);
            while (!is_defined(nc_evaluate(e, A22(), base))) base = corpus::random_nc_point(rng, A22(), m);
            const Realization r = realize(e, A22(), base);
            o.expect(real_domain_contains(r, base), "base point outside pencil domain: " + name);
            const Realization red = real_reduce(r);
            o.expect(red.n <= r.n, "reduction increased dimension: " + name);
            o.expect(real_reduce(red).n == red.n, "reduction not idempotent: " + name);
            o.expect(real_domain_contains(red, base), "base point outside reduced domain: " + name);
            for (std::size_t s = 1; s <= 2; ++s) {
                for (int t = 0; t < 50; ++t) {
                    const NcPoint p = corpus::random_nc_point(rng, A22(), s * m);
                    const EvalResult want = nc_evaluate(e, A22(), p);
                    if (!is_defined(want)) continue;
                    if (const auto got = real_evaluate(r, p)) {
                        o.expect(*got == value(want), "realization disagrees: " + name);
                        ++agree;
                    }
                    if (t % 5 != 0) continue;
                    if (const auto got = real_evaluate(red, p)) {
                        o.expect(*got == value(want), "reduced realization disagrees: " + name);
                        ++reduced_agree;
                    }
                }
            }
        }
    }
    o.expect(agree > 1000, "too few comparable points");
    o.detail << agree << " agreeing points, " << reduced_agree << " for reduced realizations";
}

// ---------------------------------------------------------------- 9
void matrix_inversion(Outcome& o) {
    std::mt19937_64 rng(109);
    const auto exprs = corpus::load(A22());
    std::vector<Expr> pool = exprs;
    pool.push_back(Expr::constant(0));
    pool.push_back(Expr::constant(1));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::size_t products = 0;
    for (std::size_t d = 2; d <= 3; ++d) {
        int built = 0;
        for (int attempt = 0; built < 10 && attempt < 100; ++attempt) {
            ExprMatrix m(d);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) m(i, j) = pool[pick(rng)];
            }
            if (!std::holds_alternative<InvertibleWitness>(matrix_invertible(m, A22()))) continue;
            ++built;
            MatrixInverse n;
            try {
                n = matrix_inverse_expr(m, A22());
            } catch (const NotInvertible&) {
                o.expect(false, "Schur inversion failed on an invertible matrix");
                continue;
            }
            TestConfig fresh;
            fresh.seed = 9000 + 100 * d + built;
            int points = 0;
            for (std::size_t t = 0; points < 20 && t < 400; ++t) {
                const MpPoint p = sample_point(A22(), 1 + t % 2, fresh, t);
                const auto x = evaluate(m, A22(), p);
                const auto y = evaluate(n.inverse, A22(), p);
                if (!x || !y) continue;
                o.expect((*x * *y).is_identity() && (*y * *x).is_identity(), "M*N != I");
                ++points;
                ++products;
            }
            o.expect(points == 20, "too few fresh defined points");
        }
        o.expect(built == 10, "too few invertible matrices of size " + std::to_string(d));
    }
    o.detail << products << " checked points";
}

// ---------------------------------------------------------------- 10
void partial_evaluation(Outcome& o) {
    std::mt19937_64 rng(110);
    const auto exprs = corpus::load(A22());
    std::size_t checks = 0;
    for (std::size_t k = 0; k < exprs.size(); ++k) {
        const std::string& name = corpus::texts()[k];
        for (std::uint32_t part = 0; part < 2; ++part) {
            const Alphabet rest = A22().without_part(part);
            for (std::size_t d = 2; d <= 3; ++d) {
                std::vector<Matrix> a;
                ExprMatrix s;
                bool ok = false;
                for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
                    a = {corpus::random_matrix(rng, d), corpus::random_matrix(rng, d)};
                    try {
                        s = partial_evaluate(exprs[k], A22(), part, a);
                        ok = true;
                    } catch (const PartialUndefined&) {
                    }
                }
                o.expect(ok, "no partial evaluation found: " + name);
                if (!ok) continue;
                int points = 0;
                for (int t = 0; points < 20 && t < 200; ++t) {
                    const std::size_t n = 1 + t % 2;
                    const MpPoint c = corpus::random_mp_point(rng, rest, {n});
                    MpPoint full{{0, 0}, {{}, {}}};
                    full.dims[part] = d;
                    full.slots[part] = a;
                    full.dims[1 - part] = n;
                    full.slots[1 - part] = c.slots[0];
                    const EvalResult lhs = mp_evaluate(exprs[k], A22(), full);
                    const auto blocks = evaluate(s, rest, c);
                    if (!is_defined(lhs) || !blocks) continue;
                    Matrix v = value(lhs);
                    if (part == 1) {
                        const Matrix kk = swap_matrix(n, d);
                        v = kk * v * kk.transpose();
                    }
                    o.expect(v == *blocks, "block disagreement: " + name);
                    ++points;
                    ++checks;
                }
                o.expect(points == 20, "too few defined points: " + name);
            }
        }
    }
    o.detail << checks << " block comparisons";
}

// ---------------------------------------------------------------- 11
Matrix random_polynomial_in(std::mt19937_64& rng, const Matrix& t) {
    std::uniform_int_distribution<long> c(-3, 3);
    const std::size_t n = t.rows();
    return Matrix::scalar(n, c(rng)) + Scalar(c(rng)) * t + Scalar(c(rng)) * (t * t);
}

void ell_homomorphism(Outcome& o) {
    std::mt19937_64 rng(111);
    std::vector<Expr> qs;
    for (int t = 0; t < 20; ++t) qs.push_back(corpus::random_expr(rng, A22(), 4, 0));
    // Identities of the multipartite free algebra that are not trivially 0.
    const std::vector<Expr> zeros{
        parse("X1_1*X2_1*X1_2 - X1_1*X1_2*X2_1", A22()),
        parse("(X1_1 + X2_2)*(X1_2*X2_1) - X1_1*X1_2*X2_1 - X1_2*X2_2*X2_1", A22()),
    };
    std::size_t checks = 0;
    for (std::size_t n = 2; n <= 3; ++n) {
        for (int t = 0; t < 20; ++t) {
            const Matrix base = corpus::random_matrix(rng, n);
            NcPoint b{n, {{}, {}}};
            for (std::size_t s = 0; s < 2; ++s) {
                for (int j = 0; j < 2; ++j) b.slots[s].push_back(random_polynomial_in(rng, base));
            }
            o.expect(check_multipartite_tuple(b), "tuple not in the multipartite variety");
            const MpPoint lifted{{n, n}, b.slots};
            for (const auto& q : qs) {
                const Matrix lhs = ell_collapse(value(mp_evaluate(q, A22(), lifted)), n, 2);
                o.expect(lhs == value(nc_evaluate(q, A22(), b)), "ell map: " + format(q));
                ++checks;
            }
            for (const auto& z : zeros) {
                o.expect(value(nc_evaluate(z, A22(), b)).is_zero(), "identity nonzero on the variety");
            }
        }
    }
    for (const auto& z : zeros) o.expect(is_zero(z, A22()).exact_zero(), "identity not recognised");
    o.detail << checks << " collapses, " << zeros.size() << " identities vanish on the variety";
}

// ---------------------------------------------------------------- 12
void bifree(Outcome& o) {
    std::mt19937_64 rng(112);
    const Alphabet a = bf_alphabet(2);
    std::size_t zeros = 0;
    bool witness = false;
    for (std::size_t n = 1; n <= 2; ++n) {
        for (int t = 0; t < 20; ++t) {
            BfPoint p{2, n, {}, {}, {}, {}};
            for (int i = 0; i < 2; ++i) {
                p.a1.push_back(corpus::random_matrix(rng, n));
                p.a2.push_back(corpus::random_matrix(rng, n));
                p.b1.push_back(corpus::random_matrix(rng, n));
                p.b2.push_back(corpus::random_matrix(rng, n));
            }
            for (std::uint32_t i = 0; i < 2; ++i) {
                for (std::uint32_t j = 0; j < 2; ++j) {
                    const EvalResult r = bf_evaluate(commutator(Expr::var(0, i), Expr::var(1, j)), p);
                    if (i == j) {
                        if (n == 2 && !value(r).is_zero()) witness = true;
                        continue;
                    }
                    o.expect(value(r).is_zero(), "[X_i, Y_j] nonzero for i != j");
                    ++zeros;
                }
            }
        }
    }
    o.expect(witness, "[X_1, Y_1] vanished at every n = 2 point");
    o.detail << zeros << " vanishing commutators, nonzero witness " << (witness ? "found" : "missing");
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"tensor-commutation exactness", tensor_commutation},
        {"commutation-matrix law", commutation_law},
        {"direct-sum and similarity laws", direct_sum_similarity},
        {"level separation of identities", level_separation},
        {"classical rational identities", classical_identities},
        {"block-triangular derivative formula", fundamental_formula},
        {"derivation law", derivation_law},
        {"realization agreement", realization_agreement},
        {"matrix inversion", matrix_inversion},
        {"partial evaluation", partial_evaluation},
        {"ell-map homomorphism", ell_homomorphism},
        {"bi-free model", bifree},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.ok ? "PASS " : "FAIL ") << (i + 1) << ". " << criteria[i].first << " (" << o.detail.str()
                  << "; " << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
        if (!o.ok) ++failed;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
