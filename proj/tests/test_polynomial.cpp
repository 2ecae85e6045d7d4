#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "frevival/bigint.hpp"
#include "frevival/errors.hpp"
#include "frevival/polynomial.hpp"
#include "test_support.hpp"

using namespace frevival;

namespace {

std::vector<std::int64_t> to_int64(const IntPoly& p) {
    std::vector<std::int64_t> out;
    for (const auto& c : p.coeffs) out.push_back(c.to_int64());
    return out;
}

}  // namespace

TEST_CASE("bigint arithmetic round trips against int64") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> small(-1000000, 1000000);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::int64_t a = small(rng), b = small(rng);
        CHECK((BigInt(a) + BigInt(b)).to_int64() == a + b);
        CHECK((BigInt(a) - BigInt(b)).to_int64() == a - b);
        CHECK((BigInt(a) * BigInt(b)).to_int64() == a * b);
        if (b != 0) {
            BigInt q, r;
            BigInt::divmod(BigInt(a), BigInt(b), q, r);
            CHECK(q.to_int64() == a / b);
            CHECK(r.to_int64() == a % b);
        }
        CHECK(BigInt::gcd(BigInt(a), BigInt(b)).to_int64() == std::gcd(a, b));
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
    }
}

TEST_CASE("bigint handles large products and decimal printing") {
    const BigInt big = BigInt(1000000007LL) * BigInt(998244353LL) * BigInt(777777777LL);
    CHECK(big.to_string() == "776412279214029197454002967");
    const BigInt root = isqrt(big);
    CHECK(root * root <= big);
    CHECK((root + BigInt(1)) * (root + BigInt(1)) > big);
    CHECK(isqrt(BigInt(144)).to_int64() == 12);
    CHECK(isqrt(BigInt(143)).to_int64() == 11);
}

TEST_CASE("characteristic polynomial of K_2 and P_3") {
    Eigen::MatrixXd k2(2, 2);
    k2 << 0, 1, 1, 0;
    CHECK(to_int64(char_poly_exact(validate_graph(k2))) == std::vector<std::int64_t>{-1, 0, 1});
    CHECK(to_int64(char_poly_exact_deleted(validate_graph(k2), {0})) ==
          std::vector<std::int64_t>{0, 1});

    Eigen::MatrixXd p3 = Eigen::MatrixXd::Zero(3, 3);
    p3(0, 1) = p3(1, 0) = p3(1, 2) = p3(2, 1) = 1;
    CHECK(to_int64(char_poly_exact(validate_graph(p3))) ==
          std::vector<std::int64_t>{0, -2, 0, 1});
}

TEST_CASE("fork graph characteristic polynomial is y^5 - 4y^3 + 2y") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(5, 5);
    a(0, 1) = a(1, 0) = 1;
    a(1, 2) = a(2, 1) = 1;
    a(2, 3) = a(3, 2) = 1;
    a(2, 4) = a(4, 2) = 1;
    CHECK(to_int64(char_poly_exact(validate_graph(a))) ==
          std::vector<std::int64_t>{0, 2, 0, -4, 0, 1});
}

TEST_CASE("exact and numeric characteristic polynomials agree on a random corpus") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = testsupport::random_integer_graph(6, rng, true);
        const auto exact = poly_to_double(char_poly_exact(g));
        const auto numeric = char_poly_numeric(g.weights);
        REQUIRE(exact.size() == numeric.size());
        double scale = 1.0;
        for (double c : exact) scale = std::max(scale, std::abs(c));
        for (std::size_t i = 0; i < exact.size(); ++i)
            CHECK(std::abs(exact[i] - numeric[i]) < 1e-8 * scale);
    }
}

TEST_CASE("polynomial gcd, primitive parts and squarefree detection") {
    // (y^2 - 1)(y - 2) and (y^2 - 1)(y + 3) share exactly y^2 - 1.
    const IntPoly a = poly_mul(poly_from_int64({-1, 0, 1}), poly_from_int64({-2, 1}));
    const IntPoly b = poly_mul(poly_from_int64({-1, 0, 1}), poly_from_int64({3, 1}));
    const IntPoly g = poly_gcd(a, b);
    CHECK(to_int64(g) == std::vector<std::int64_t>{-1, 0, 1});

    CHECK(poly_squarefree(poly_from_int64({-1, 0, 1})));
    CHECK_FALSE(poly_squarefree(poly_mul(poly_from_int64({-1, 1}), poly_from_int64({-1, 1}))));

    const IntPoly quotient = poly_quotient_primitive(a, g);
    CHECK(to_int64(quotient) == std::vector<std::int64_t>{-2, 1});
}

TEST_CASE("polynomial square root recovers random squares and rejects non-squares") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> deg(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        IntPoly s;
        const int d = deg(rng);
        for (int i = 0; i <= d; ++i) s.coeffs.emplace_back(coeff(rng));
        s.trim();
        if (s.is_zero()) continue;
        const IntPoly square = poly_mul(s, s);
        const auto root = poly_sqrt(square);
        REQUIRE(root.has_value());
        const IntPoly diff = poly_sub(poly_mul(*root, *root), square);
        CHECK(diff.is_zero());

        IntPoly bumped = square;
        bumped.coeffs[0] += BigInt(1);
        bumped.trim();
        const auto bad = poly_sqrt(bumped);
        if (bad) {  // only possible when the bump produced another square
            CHECK(poly_sub(poly_mul(*bad, *bad), bumped).is_zero());
        }
    }
}

TEST_CASE("vertex-deleted polynomials obey the adjugate square identity") {
    // phi(X\a) phi(X\b) - phi(X) phi(X\{a,b}) must be a polynomial square for
    // every symmetric integer matrix.
    std::mt19937 rng(31);
    for (int trial = 0; trial < 80; ++trial) {
        const auto g = testsupport::random_integer_graph(6, rng, true);
        const IntPoly phi = char_poly_exact(g);
        const IntPoly pa = char_poly_exact_deleted(g, {0});
        const IntPoly pb = char_poly_exact_deleted(g, {1});
        const IntPoly pab = char_poly_exact_deleted(g, {0, 1});
        const IntPoly radicand = poly_sub(poly_mul(pa, pb), poly_mul(phi, pab));
        if (radicand.is_zero()) continue;
        CHECK(poly_sqrt(radicand).has_value());
    }
}

TEST_CASE("char_poly_exact refuses non-integer weights") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 0.5, 0.5, 0;
    CHECK_THROWS_AS(char_poly_exact(validate_graph(a)), Error);
}
