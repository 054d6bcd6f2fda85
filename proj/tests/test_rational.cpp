#include "sinkless/rational.hpp"

#include <doctest.h>

using namespace sinkless;

TEST_CASE("nth_root_roundup dominates the true root and is tight") {
    Rational p = rat(1, 8);
    Rational k = nth_root_roundup(p, 3);
    CHECK(rat_pow(k, 3) >= p);
    CHECK(k == rat(1, 2)); // exact cube
    Rational l = nth_root_roundup(rat(1, 16), 4);
    CHECK(l == rat(1, 2));

    Rational q = rat(1, 10);
    Rational r = nth_root_roundup(q, 3);
    CHECK(rat_pow(r, 3) >= q);
    // one ulp below already fails
    Rational r_minus = r - rat_pow2(32);
    CHECK(rat_pow(r_minus, 3) < q);
}

TEST_CASE("nth_root_roundup handles 0 and 1") {
    CHECK(nth_root_roundup(Rational(0), 4) == Rational(0));
    CHECK(nth_root_roundup(Rational(1), 4) == Rational(1));
}

TEST_CASE("leq_root_bound compares exactly") {
    // value <= 6 * p^(1/3): coef_pow = 216
    Rational p = rat(1, 64);
    Rational bound_attained = rat(6, 4); // 6 * 1/4
    CHECK(leq_root_bound(bound_attained, Rational(0), rat(216), p, 3));
    CHECK_FALSE(leq_root_bound(bound_attained + rat_pow2(40), Rational(0), rat(216), p, 3));
    CHECK(leq_root_bound(bound_attained + rat_pow2(40), rat_pow2(40), rat(216), p, 3));
    // value below slack is always fine
    CHECK(leq_root_bound(rat(1, 100), rat(1, 10), rat(216), Rational(0), 3));
}

TEST_CASE("int_nth_root_ceil") {
    CHECK(int_nth_root_ceil(BigInt(27), 3) == 3);
    CHECK(int_nth_root_ceil(BigInt(28), 3) == 4);
    CHECK(int_nth_root_ceil(BigInt(0), 5) == 0);
    CHECK(int_nth_root_ceil(BigInt(1), 7) == 1);
}
