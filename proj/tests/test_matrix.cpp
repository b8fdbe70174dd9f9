#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "corpus.hpp"
#include "mprat/error.hpp"
#include "mprat/matrix.hpp"
#include "mprat/tensor.hpp"
#include "oracle.hpp"

using namespace mprat;

namespace {

Matrix M(std::initializer_list<std::initializer_list<Scalar>> rows) { return Matrix::from_rows(rows); }

} // namespace

TEST_CASE("scalar arithmetic over the rationals") {
    const Scalar a(1, 2), b(1, 3);
    CHECK((a + b) == Scalar(5, 6));
    CHECK((a * b) == Scalar(1, 6));
    CHECK((a / b) == Scalar(3, 2));
    CHECK(Scalar(2, 4) == a);
    CHECK(Scalar::parse("-6/4").to_string() == "-3/2");
    CHECK(Scalar::parse("7").to_string() == "7");
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero);
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse("x"));
}

TEST_CASE("scalar arithmetic over the prime field") {
    const Field f = Field::default_prime();
    const Scalar half = Scalar::from_rational(mpq_class(1, 2), f);
    CHECK((half + half).is_one());
    CHECK((half * Scalar::from_rational(2, f)).is_one());
    CHECK(Scalar::from_rational(-1, f).residue() == f.modulus() - 1);
    CHECK_THROWS_AS(half + Scalar(1), FieldMismatch);
}

TEST_CASE("kron examples") {
    CHECK(kron(Matrix::identity(2), M({{1, 2}, {3, 4}})) ==
          M({{1, 2, 0, 0}, {3, 4, 0, 0}, {0, 0, 1, 2}, {0, 0, 3, 4}}));
    CHECK(kron(M({{0, 1}, {0, 0}}), M({{2}})) == M({{0, 2}, {0, 0}}));
    const Matrix r = kron(M({{1, 2, 3}}), M({{1}, {-1}}));
    CHECK(r.rows() == 2);
    CHECK(r.cols() == 3);
}

TEST_CASE("kron mixed product and oracle agreement") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        const Matrix a = corpus::random_matrix(rng, 2), b = corpus::random_matrix(rng, 2);
        const Matrix c = corpus::random_matrix(rng, 2), d = corpus::random_matrix(rng, 2);
        CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
        CHECK(oracle::from(kron(a, b)) == oracle::kron(oracle::from(a), oracle::from(b)));
        CHECK(oracle::from(a * c) == oracle::mul(oracle::from(a), oracle::from(c)));
    }
}

TEST_CASE("kron across fields is rejected") {
    CHECK_THROWS_AS(kron(Matrix::identity(2), Matrix::identity(2, Field::default_prime())), FieldMismatch);
}

TEST_CASE("direct_sum examples") {
    CHECK(direct_sum(M({{1}}), M({{2}})) == M({{1, 0}, {0, 2}}));
    CHECK(direct_sum(Matrix::identity(2), Matrix::identity(3)) == Matrix::identity(5));
    const Matrix a = M({{1, 2}, {3, 4}});
    CHECK(direct_sum(a, Matrix(0, 0)) == a);
}

TEST_CASE("tau_embed examples and ring homomorphism") {
    const Matrix a = M({{1, 2}, {3, 4}});
    const Matrix b = M({{0, 1, 0}, {0, 0, 1}, {5, 0, 0}});
    const std::vector<std::size_t> d23{2, 3}, d222{2, 2, 2};
    CHECK(tau_embed(0, a, d23) == kron(a, Matrix::identity(3)));
    CHECK(tau_embed(1, b, d23) == kron(Matrix::identity(2), b));
    const Matrix mid = tau_embed(1, a, d222);
    CHECK(mid.rows() == 8);
    CHECK(mid == kron(Matrix::identity(2), kron(a, Matrix::identity(2))));
    CHECK_THROWS_AS(tau_embed(0, b, d23), ShapeMismatch);

    std::mt19937_64 rng(3);
    for (std::size_t slot = 0; slot < 3; ++slot) {
        const Matrix x = corpus::random_matrix(rng, 2), y = corpus::random_matrix(rng, 2);
        CHECK(tau_embed(slot, x * y, d222) == tau_embed(slot, x, d222) * tau_embed(slot, y, d222));
        CHECK(tau_embed(slot, Matrix::identity(2), d222).is_identity());
        for (std::size_t other = 0; other < 3; ++other) {
            if (other == slot) continue;
            const Matrix p = tau_embed(slot, x, d222), q = tau_embed(other, y, d222);
            CHECK(p * q == q * p);
        }
    }
}

TEST_CASE("commutation_matrix examples") {
    const std::vector<std::size_t> id{0, 1, 2}, d{2, 3, 2};
    CHECK(commutation_matrix(id, d).is_identity());
    const std::vector<std::size_t> swap{1, 0}, d1n{1, 3};
    CHECK(commutation_matrix(swap, d1n).is_identity());

    const std::vector<std::size_t> d22{2, 2};
    Matrix expected(4, 4);
    expected(0, 0) = 1;
    expected(1, 2) = 1;
    expected(2, 1) = 1;
    expected(3, 3) = 1;
    const Matrix k = commutation_matrix(swap, d22);
    CHECK(k == expected);
    std::mt19937_64 rng(5);
    const Matrix a = corpus::random_matrix(rng, 2), b = corpus::random_matrix(rng, 2);
    CHECK(kron(b, a) == k * kron(a, b) * k.transpose());
}

TEST_CASE("commutation_matrix law for every permutation of three slots") {
    std::mt19937_64 rng(17);
    std::vector<std::size_t> pi{0, 1, 2};
    const std::vector<std::size_t> dims{1, 2, 3};
    do {
        std::vector<Matrix> a, permuted;
        for (auto n : dims) a.push_back(corpus::random_matrix(rng, n));
        std::vector<std::size_t> pd;
        for (auto i : pi) {
            permuted.push_back(a[i]);
            pd.push_back(dims[i]);
        }
        const Matrix k = commutation_matrix(pi, dims);
        CHECK(kron_all(permuted) == k * kron_all(a) * k.transpose());
        CHECK((k * k.transpose()).is_identity());
    } while (std::next_permutation(pi.begin(), pi.end()));
}

TEST_CASE("front_permutation lists the chosen slots first") {
    const std::vector<std::size_t> front{2, 0};
    CHECK(front_permutation(4, front) == std::vector<std::size_t>{2, 0, 1, 3});
    CHECK(is_permutation(front_permutation(4, front)));
    const std::vector<std::size_t> bad{0, 0, 1};
    CHECK_FALSE(is_permutation(bad));
}

TEST_CASE("inv_det examples") {
    const auto i3 = inv_det(Matrix::identity(3));
    REQUIRE(i3);
    CHECK(i3->inverse.is_identity());
    CHECK(i3->det == Scalar(1));
    CHECK_FALSE(inv_det(M({{0, 1}, {0, 0}})));
    const auto r = inv_det(M({{1, 2}, {3, 4}}));
    REQUIRE(r);
    CHECK(r->inverse == M({{-2, 1}, {Scalar(3, 2), Scalar(-1, 2)}}));
    CHECK(r->det == Scalar(-2));
    CHECK_THROWS_AS(inv_det(Matrix(2, 3)), NotSquare);
}

TEST_CASE("inverse and determinant agree with the oracle") {
    std::mt19937_64 rng(23);
    for (std::size_t n = 1; n <= 5; ++n) {
        for (int t = 0; t < 6; ++t) {
            const Matrix a = corpus::random_matrix(rng, n, 3);
            const auto r = inv_det(a);
            const auto o = oracle::inverse(oracle::from(a));
            REQUIRE(r.has_value() == o.has_value());
            CHECK(r.has_value() == !det(a).is_zero());
            if (!r) continue;
            CHECK(oracle::from(r->inverse) == *o);
            CHECK((r->inverse * a).is_identity());
            CHECK(rank(a) == n);
        }
    }
}

TEST_CASE("solve and rank") {
    const Matrix a = M({{2, 1}, {1, 1}});
    const auto x = solve(a, M({{3}, {2}}));
    REQUIRE(x);
    CHECK(*x == M({{1}, {1}}));
    CHECK_FALSE(solve(M({{1, 1}, {1, 1}}), M({{1}, {0}})));
    CHECK(rank(M({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}})) == 2);
    CHECK(rank(Matrix(3, 3)) == 0);
}

TEST_CASE("prime field elimination matches the rational result mod p") {
    std::mt19937_64 rng(29);
    const Field f = Field::default_prime();
    for (int t = 0; t < 5; ++t) {
        const Matrix a = corpus::random_invertible(rng, 4);
        const auto q = inv_det(a);
        const auto p = inv_det(a.in_field(f));
        REQUIRE(q);
        REQUIRE(p);
        CHECK(q->inverse.in_field(f) == p->inverse);
        CHECK(Scalar::from_rational(q->det.rational(), f) == p->det);
    }
}
