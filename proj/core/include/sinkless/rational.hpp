#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace sinkless {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic. Every probability and threshold in the library
// is a Rational; floating point appears only in Monte Carlo summaries.
using Rational = boost::rational<BigInt>;

inline Rational rat(int64_t num, int64_t den = 1) { return Rational(BigInt(num), BigInt(den)); }

inline Rational rat_pow2(int log2_den, int64_t num = 1) {
    BigInt den = BigInt(1) << log2_den;
    return Rational(BigInt(num), den);
}

inline Rational rat_pow(const Rational& x, unsigned e) {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i) r *= x;
    return r;
}

inline double to_double(const Rational& x) {
    using boost::multiprecision::cpp_rational;
    return static_cast<double>(cpp_rational(x.numerator(), x.denominator()));
}

inline std::string to_string(const Rational& x) {
    return x.numerator().str() + "/" + x.denominator().str();
}

// Smallest k with k^n >= x (x >= 0), by bracketed binary search.
inline BigInt int_nth_root_ceil(const BigInt& x, unsigned n) {
    if (x <= 0) return 0;
    BigInt lo = 0, hi = 1;
    while (boost::multiprecision::pow(hi, n) < x) hi <<= 1;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, n) >= x) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

// Smallest dyadic k/2^bits with (k/2^bits)^n >= x. Used to materialise the
// irrational thresholds p^{1/3} and l^{1/4} as exact rationals that still
// satisfy the defining inequality (round up, never down).
inline Rational nth_root_roundup(const Rational& x, unsigned n, unsigned bits = 32) {
    if (x <= 0) return Rational(0);
    // k^n * den >= num * 2^(n*bits)
    BigInt target_num = x.numerator() << (static_cast<unsigned>(n) * bits);
    BigInt den = x.denominator();
    // ceil over the division first, then the root; both round up so the
    // inequality is preserved.
    BigInt q = target_num / den + (target_num % den == 0 ? 0 : 1);
    BigInt k = int_nth_root_ceil(q, n);
    return Rational(k, BigInt(1) << bits);
}

// Exact test of  value <= coef_pow * base^(1/b) + slack,  where coef_pow is
// the b-th power of the bound's coefficient (e.g. 6^3 for 6*p^{1/3}).
// Equivalent to (value - slack)^b <= coef_pow * base when value > slack.
inline bool leq_root_bound(const Rational& value, const Rational& slack,
                           const Rational& coef_pow, const Rational& base, unsigned b) {
    Rational lhs = value - slack;
    if (lhs <= 0) return true;
    return rat_pow(lhs, b) <= coef_pow * base;
}

} // namespace sinkless
