#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "raviolo/rational.hpp"
#include "raviolo/scalar.hpp"

using rav::BigRat;
using rav::Rat;
using rav::Scalar;

TEST_CASE("rational arithmetic is exact and normalized") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
    CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
    CHECK(Rat(2, 3) / Rat(4, 3) == Rat(1, 2));
    CHECK(Rat(7).is_integer());
    CHECK(Rat(0).is_zero());
    CHECK(Rat(-1, 7) < Rat(1, 8));
    CHECK(Rat(5, 3) > Rat(3, 2));
    CHECK_THROWS_AS(Rat(1, 0), rav::math_error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), rav::math_error);
}

TEST_CASE("overflow is detected, never wrapped") {
    Rat big(std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * big, rav::overflow_error);
    CHECK_THROWS_AS(big + big, rav::overflow_error);
    // gcd pre-reduction keeps representable results representable
    Rat a(std::int64_t{1} << 40, 3);
    Rat b(3, std::int64_t{1} << 40);
    CHECK(a * b == Rat(1));
}

TEST_CASE("BigRat round trip") {
    Rat a(-355, 113);
    CHECK(Rat::from_big(a.to_big()) == a);
    BigRat huge = BigRat(std::int64_t{1} << 62) * 8;
    CHECK_THROWS_AS(Rat::from_big(huge), rav::overflow_error);
}

TEST_CASE("parse and print round trip") {
    CHECK(Rat::parse("3/4") == Rat(3, 4));
    CHECK(Rat::parse("-7") == Rat(-7));
    CHECK(Rat::parse("-6/8") == Rat(-3, 4));
    CHECK(Rat(22, 7).str() == "22/7");
    CHECK(Rat(-5).str() == "-5");
    CHECK_THROWS_AS(Rat::parse("1/0"), rav::math_error);
    CHECK_THROWS_AS(Rat::parse("x"), rav::math_error);
    CHECK_THROWS_AS(Rat::parse(""), rav::math_error);
}

TEST_CASE("binomial and falling factorial") {
    // Pascal triangle oracle, independent of the multiplicative implementation
    long long pascal[20][20] = {};
    for (int n = 0; n < 20; ++n) {
        pascal[n][0] = 1;
        for (int k = 1; k <= n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + (k <= n - 1 ? pascal[n - 1][k] : 0);
    }
    for (int n = 0; n < 20; ++n)
        for (int k = 0; k <= n; ++k) CHECK(rav::binomial(n, k) == pascal[n][k]);
    CHECK(rav::binomial(5, -1) == 0);
    CHECK(rav::binomial(5, 6) == 0);
    CHECK(rav::falling(7, 3) == 7 * 6 * 5);
    CHECK(rav::falling(7, 0) == 1);
    CHECK(rav::falling(2, 3) == 0);
}

TEST_CASE("scalar ring with nilpotent central parameter") {
    Scalar a(Rat(2), Rat(3));  // 2 + 3 xi
    Scalar b(Rat(-1), Rat(5)); // -1 + 5 xi
    CHECK(a + b == Scalar(Rat(1), Rat(8)));
    CHECK(a * b == Scalar(Rat(-2), Rat(2 * 5 - 3)));
    CHECK(Scalar::xi_times(Rat(1)) * Scalar::xi_times(Rat(1)) == Scalar());
    CHECK((Rat(1, 2) * a) == Scalar(Rat(1), Rat(3, 2)));
    CHECK(a.str() == "2+3*xi");
    CHECK(Scalar(Rat(0), Rat(-1, 2)).str() == "-1/2*xi");
}
