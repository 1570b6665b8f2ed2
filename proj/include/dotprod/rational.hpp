#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dotprod {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// cpp_rational keeps gcd(|num|, den) = 1 and den >= 1 after every operation,
// which is exactly the invariant the engine relies on.

inline Integer int_gcd(Integer a, Integer b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer int_lcm(const Integer& a, const Integer& b) {
    return boost::multiprecision::lcm(a, b);
}

/// floor(x^(1/p)) for x >= 0, p >= 1, by Newton iteration from above.
inline Integer iroot(const Integer& x, unsigned p) {
    if (p == 0) throw std::invalid_argument("iroot: p must be >= 1");
    if (x < 0) throw std::invalid_argument("iroot: negative radicand");
    if (x == 0) return 0;
    if (p == 1) return x;
    using boost::multiprecision::msb;
    using boost::multiprecision::pow;
    const unsigned long bits = msb(x) + 1;
    Integer y = Integer(1) << (bits / p + 1);
    while (true) {
        Integer t = ((p - 1) * y + x / pow(y, p - 1)) / p;
        if (t >= y) break;
        y = t;
    }
    while (pow(y, p) > x) --y;
    while (pow(y + 1, p) <= x) ++y;
    return y;
}

/// Nearest double to an exact rational, ties to even. The quotient is
/// extracted with 54 significant bits plus a sticky flag, so a single
/// rounding happens at the 53-bit boundary.
inline double to_double(const Rational& r) {
    using boost::multiprecision::abs;
    using boost::multiprecision::divide_qr;
    using boost::multiprecision::msb;
    if (r == 0) return 0.0;
    const bool neg = r < 0;
    Integer a = abs(numerator(r));
    Integer b = denominator(r);
    const long ea = static_cast<long>(msb(a));
    const long eb = static_cast<long>(msb(b));
    long shift = 54 - (ea - eb);
    if (shift > 2000 || shift < -2000) {
        // far outside the double range the engine uses; defer to boost
        double d = a.convert_to<double>() / b.convert_to<double>();
        return neg ? -d : d;
    }
    Integer na = a, nb = b;
    if (shift > 0) na <<= static_cast<unsigned>(shift);
    else if (shift < 0) nb <<= static_cast<unsigned>(-shift);
    Integer q, rem;
    divide_qr(na, nb, q, rem);
    bool sticky = rem != 0;
    long qbits = static_cast<long>(msb(q)) + 1;  // 54 or 55
    if (qbits == 55) {
        if ((q & 1) != 0) sticky = true;
        q >>= 1;
        shift -= 1;
    }
    auto q64 = q.convert_to<std::uint64_t>();  // 54 bits
    const bool round_bit = (q64 & 1) != 0;
    q64 >>= 1;
    shift -= 1;
    if (round_bit && (sticky || (q64 & 1) != 0)) ++q64;
    const double d = std::ldexp(static_cast<double>(q64), static_cast<int>(-shift));
    return neg ? -d : d;
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace detail

/// Parses "7", "-3/4" or "0.125" into an exact rational. Decimal literals
/// become fractions over a power of ten, never doubles.
inline Rational parse_rational(std::string_view text) {
    const std::string_view orig = text;
    text = detail::trim(text);
    const auto fail = [&]() -> Rational {
        throw std::invalid_argument("malformed rational: '" + std::string(orig) + "'");
    };
    bool neg = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        neg = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) return fail();

    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) return fail();
        Integer d{std::string(den)};
        if (d == 0) throw std::invalid_argument("zero denominator in rational: '" + std::string(orig) + "'");
        value = Rational(Integer(std::string(num)), d);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) return fail();
        if (!whole.empty() && !detail::all_digits(whole)) return fail();
        if (!frac.empty() && !detail::all_digits(frac)) return fail();
        Integer scaled = whole.empty() ? Integer(0) : Integer(std::string(whole));
        Integer den = 1;
        for (char c : frac) {
            scaled = scaled * 10 + (c - '0');
            den *= 10;
        }
        value = Rational(scaled, den);
    } else {
        if (!detail::all_digits(text)) return fail();
        value = Rational(Integer(std::string(text)));
    }
    return neg ? -value : value;
}

/// "num/den" with the denominator omitted for integers; inverse of parse_rational.
inline std::string to_fraction_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

}  // namespace dotprod
