#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

using namespace csd;

namespace {

bool is_smith_diagonal(const IntMatrix &D) {
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j)
            if (i != j && D(i, j) != 0)
                return false;
    const std::size_t k = std::min(D.rows(), D.cols());
    for (std::size_t i = 0; i < k; ++i) {
        if (D(i, i) < 0)
            return false;
        if (i + 1 < k) {
            if (D(i, i) == 0 && D(i + 1, i + 1) != 0)
                return false;
            if (D(i, i) != 0 && D(i + 1, i + 1) % D(i, i) != 0)
                return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
    const Rational a(Integer(6), Integer(-4));
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK((a + Rational(Integer(1), Integer(2))) == Rational(-1));
    CHECK(Rational::parse("-10/4") == Rational(Integer(-5), Integer(2)));
    CHECK(Rational::parse("+7") == Rational(7));
    CHECK(Rational(Integer(-3), Integer(2)).to_string() == "-3/2");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), std::invalid_argument);
}

TEST_CASE("smith normal form: fixed examples") {
    SUBCASE("empty") {
        const SmithDecomposition s = smith_normal_form(IntMatrix(0, 0));
        CHECK(s.diagonal().empty());
    }
    SUBCASE("unimodular 2x2") {
        const SmithDecomposition s = smith_normal_form(IntMatrix{{-5, -2}, {-2, -1}});
        CHECK(s.D == IntMatrix{{1, 0}, {0, 1}});
    }
    SUBCASE("zero") {
        const SmithDecomposition s = smith_normal_form(IntMatrix{{0}});
        CHECK(s.D == IntMatrix{{0}});
    }
    SUBCASE("lens space order") {
        const SmithDecomposition s = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
        CHECK(s.diagonal() == std::vector<Integer>{2, 4});
    }
}

TEST_CASE("smith normal form: random matrices against determinantal divisors") {
    oracle::Rng rng(20240611);
    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t r = oracle::uniform(rng, 1, 5);
        const std::size_t c = oracle::uniform(rng, 1, 5);
        IntMatrix M = oracle::random_matrix(rng, r, c, 6);
        if (trial % 7 == 0 && r > 1) // force rank deficiency now and then
            for (std::size_t j = 0; j < c; ++j)
                M(r - 1, j) = 2 * M(0, j);
        const SmithDecomposition s = smith_normal_form(M);
        CAPTURE(M);
        CHECK(s.U * M * s.V == s.D);
        CHECK(abs(oracle::leibniz_det(s.U)) == 1);
        CHECK(abs(oracle::leibniz_det(s.V)) == 1);
        CHECK(is_smith_diagonal(s.D));

        // d_1 d_2 ... d_k equals the gcd of the k x k minors
        const oracle::Grid g = oracle::grid(M);
        Integer product = 1;
        const std::vector<Integer> diag = s.diagonal();
        for (std::size_t k = 1; k <= diag.size(); ++k) {
            product *= diag[k - 1];
            CHECK(product == oracle::minor_gcd(g, k));
        }
    }
}

TEST_CASE("smith normal form: up to 8x8") {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = oracle::uniform(rng, 6, 8);
        const IntMatrix M = oracle::random_matrix(rng, n, n, 9);
        const SmithDecomposition s = smith_normal_form(M);
        CHECK(s.U * M * s.V == s.D);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        CHECK(is_smith_diagonal(s.D));
        Integer product = 1;
        for (const Integer &d : s.diagonal())
            product *= d;
        CHECK(product == abs(determinant(M)));
    }
}

TEST_CASE("signature: fixed examples") {
    CHECK(signature(IntMatrix{{-1}}) == -1);
    CHECK(signature(IntMatrix{{-5, -2}, {-2, -1}}) == -2);
    CHECK(signature(IntMatrix{{-1, -2}, {-2, -3}}) == 0);
    CHECK(signature(IntMatrix(0, 0)) == 0);
    CHECK(signature(IntMatrix{{0, 1}, {1, 0}}) == 0);
    CHECK(signature(IntMatrix{{0, 0}, {0, 0}}) == 0);
    CHECK_THROWS_AS(signature(IntMatrix{{0, 1}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("signature agrees with the characteristic polynomial oracle") {
    oracle::Rng rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = oracle::uniform(rng, 1, 6);
        IntMatrix M = oracle::random_symmetric(rng, n, trial % 3 == 0 ? 1 : 5);
        CAPTURE(M);
        CHECK(signature(M) == oracle::charpoly_signature(M));
    }
}

TEST_CASE("determinant against the Leibniz formula") {
    CHECK(determinant(IntMatrix{{-5, -2}, {-2, -1}}) == 1);
    CHECK(determinant(IntMatrix(0, 0)) == 1);
    CHECK(determinant(IntMatrix{{-1, -2}, {-2, -3}}) == -1);
    oracle::Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = oracle::uniform(rng, 1, 6);
        const IntMatrix M = oracle::random_matrix(rng, n, n, 7);
        CHECK(determinant(M) == oracle::leibniz_det(M));
    }
}

TEST_CASE("solve_rational") {
    SUBCASE("fixed") {
        const auto x = solve_rational(IntMatrix{{-5, -2}, {-2, -1}}, {1, -1});
        REQUIRE(x);
        CHECK(*x == std::vector<Rational>{-3, 7});
        CHECK(*solve_rational(IntMatrix{{1}}, {0}) == std::vector<Rational>{0});
        CHECK_FALSE(solve_rational(IntMatrix{{0}}, {1}));
    }
    SUBCASE("random residual is exactly zero") {
        oracle::Rng rng(11);
        int solved = 0;
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = oracle::uniform(rng, 1, 6);
            const IntMatrix M = oracle::random_symmetric(rng, n, trial % 4 == 0 ? 1 : 6);
            std::vector<Integer> b(n);
            for (auto &v : b)
                v = oracle::uniform(rng, -5, 5);
            const auto x = solve_rational(M, b);
            if (!x) {
                // inconsistent only when M is singular
                CHECK(determinant(M) == 0);
                continue;
            }
            ++solved;
            for (std::size_t i = 0; i < n; ++i) {
                Rational row = 0;
                for (std::size_t j = 0; j < n; ++j)
                    row += Rational(M(i, j)) * (*x)[j];
                CHECK(row == Rational(b[i]));
            }
        }
        CHECK(solved > 200);
    }
}

TEST_CASE("matrix helpers") {
    const IntMatrix m{{1, 2, 3}, {4, 5, 6}};
    CHECK(m.transpose() == IntMatrix{{1, 4}, {2, 5}, {3, 6}});
    CHECK(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}.without(1) == IntMatrix{{1, 3}, {7, 9}});
    CHECK(IntMatrix::identity(2) * m == m);
    CHECK(m * std::vector<Integer>{1, 1, 1} == std::vector<Integer>{6, 15});
    CHECK_THROWS(m * m);
}
