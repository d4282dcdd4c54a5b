#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ewl/errors.hpp"

namespace ewl {

using Rational = boost::multiprecision::cpp_rational;

/// Absolute tolerance used when comparing floating-point payoffs.
inline constexpr double kPayoffTolerance = 1e-9;

template <class T>
inline constexpr bool is_exact_scalar_v = false;
template <>
inline constexpr bool is_exact_scalar_v<Rational> = true;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return static_cast<double>(x); }

inline bool is_zero(double x, double tol = kPayoffTolerance) { return std::abs(x) <= tol; }
inline bool is_zero(const Rational& x, double = 0.0) { return x == 0; }

inline bool nearly_equal(double a, double b, double tol = kPayoffTolerance) {
    return std::abs(a - b) <= tol;
}
inline bool nearly_equal(const Rational& a, const Rational& b, double = 0.0) { return a == b; }

/// `a <= b` up to tolerance (exact for rationals).
inline bool at_most(double a, double b, double tol = kPayoffTolerance) { return a <= b + tol; }
inline bool at_most(const Rational& a, const Rational& b, double = 0.0) { return a <= b; }

inline std::string format_scalar(const Rational& x) { return x.str(); }

template <class Scalar>
Scalar from_rational(const Rational& r) {
    if constexpr (is_exact_scalar_v<Scalar>) {
        return r;
    } else {
        return static_cast<double>(r);
    }
}

inline std::string format_scalar(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Parses "3", "-17/8" or a decimal such as "0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) throw ParseError("empty number");

    auto parse_integer = [](std::string_view s) -> boost::multiprecision::cpp_int {
        if (s.empty()) throw ParseError("empty integer");
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw ParseError("malformed integer '" + std::string(s) + "'");
        boost::multiprecision::cpp_int v = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw ParseError("malformed integer '" + std::string(s) + "'");
            v = v * 10 + (s[i] - '0');
        }
        return neg ? -v : v;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_integer(trim(text.substr(0, slash)));
        auto den = parse_integer(trim(text.substr(slash + 1)));
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string digits(text.substr(0, dot));
        std::string frac(text.substr(dot + 1));
        if (frac.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        if (digits.empty() || digits == "-" || digits == "+") digits += "0";
        boost::multiprecision::cpp_int scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
        auto whole = parse_integer(digits + frac);
        return Rational(whole, scale);
    }
    return Rational(parse_integer(text));
}

}  // namespace ewl
