#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpproj/error.hpp"

namespace fpproj {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp != 0) {
        if (exp & 1u) result *= b;
        exp >>= 1;
        if (exp != 0) b *= b;
    }
    return result;
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Parses "7", "-3/2" or "1.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw ParseError("not a rational number: '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    auto parse_int = [&](std::string_view s, bool allow_sign) {
        if (s.empty()) fail();
        std::size_t i = 0;
        bool neg = false;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) fail();
        BigInt v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') fail();
            v = v * 10 + (s[i] - '0');
        }
        return neg ? BigInt(-v) : v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_int(text.substr(0, slash), true);
        BigInt den = parse_int(text.substr(slash + 1), false);
        if (den == 0) fail();
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
        BigInt w = whole.empty() ? BigInt(0) : parse_int(whole, false);
        BigInt f = parse_int(frac, false);
        Rational r = Rational(w) + Rational(f, big_pow(10, frac.size()));
        return neg ? Rational(-r) : r;
    }
    return Rational(parse_int(text, true));
}

/// "num/den" in lowest terms; integers keep the "/1".
inline std::string to_fraction_string(const Rational& r) {
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Display-only decimal with 12 significant digits.
inline std::string to_decimal_string(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", to_double(r));
    return buf;
}

/// Sign of a - b * p^gamma for a, b >= 0 and rational gamma, computed exactly.
inline int compare_with_power(const Rational& a, const Rational& b, std::uint64_t p,
                              const Rational& gamma) {
    if (a < 0 || b < 0) throw DomainError("compare_with_power: negative operand");
    BigInt q = denominator_of(gamma);
    BigInt r = numerator_of(gamma);
    auto qe = q.convert_to<std::uint64_t>();
    BigInt left = big_pow(numerator_of(a), qe) * big_pow(denominator_of(b), qe);
    BigInt right = big_pow(numerator_of(b), qe) * big_pow(denominator_of(a), qe);
    if (r >= 0)
        right *= big_pow(p, r.convert_to<std::uint64_t>());
    else
        left *= big_pow(p, BigInt(-r).convert_to<std::uint64_t>());
    return left < right ? -1 : (left > right ? 1 : 0);
}

/// a <= b * p^gamma, exactly.
inline bool le_times_power(const Rational& a, const Rational& b, std::uint64_t p,
                           const Rational& gamma) {
    return compare_with_power(a, b, p, gamma) <= 0;
}

/// Largest integer N with N <= scale * p^gamma (scale, gamma >= 0 rationals).
inline BigInt floor_scaled_power(const Rational& scale, std::uint64_t p, const Rational& gamma) {
    // The answer lies below scale * p^ceil(gamma) + 1.
    BigInt ceil_gamma = (numerator_of(gamma) + denominator_of(gamma) - 1) / denominator_of(gamma);
    if (ceil_gamma < 0) ceil_gamma = 0;
    Rational upper_r = scale * Rational(big_pow(p, ceil_gamma.convert_to<std::uint64_t>()));
    BigInt lo = 0;
    BigInt hi = numerator_of(upper_r) / denominator_of(upper_r) + 1;  // hi exceeds the answer
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (le_times_power(Rational(mid), scale, p, gamma))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace fpproj
