#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "ewl/errors.hpp"

namespace ewl {

/// A rational multiple of pi, e.g. 3/4 for 3pi/4.
using PiFraction = boost::rational<std::int64_t>;

/// An angle held either exactly, as a rational multiple of pi, or as a
/// floating-point number of radians. Arithmetic between two exact angles
/// stays exact; mixing in a floating angle yields a floating angle.
class Angle {
  public:
    Angle() = default;

    static Angle pi_multiple(std::int64_t num, std::int64_t den = 1) {
        return Angle(PiFraction(num, den));
    }
    static Angle from_fraction(PiFraction f) { return Angle(f); }
    static Angle from_radians(double r) {
        Angle a;
        a.exact_.reset();
        a.radians_ = r;
        return a;
    }
    static Angle zero() { return Angle(PiFraction(0)); }
    static Angle pi() { return Angle(PiFraction(1)); }

    bool is_exact() const { return exact_.has_value(); }

    /// The multiple of pi; throws InexactValue for floating angles.
    const PiFraction& fraction() const {
        if (!exact_) throw InexactValue("angle " + to_string() + " is not a rational multiple of pi");
        return *exact_;
    }
    const std::optional<PiFraction>& maybe_fraction() const { return exact_; }

    double radians() const { return radians_; }

    Angle operator-() const { return exact_ ? Angle(-*exact_) : from_radians(-radians_); }
    friend Angle operator+(const Angle& a, const Angle& b) {
        if (a.exact_ && b.exact_) return Angle(*a.exact_ + *b.exact_);
        return from_radians(a.radians_ + b.radians_);
    }
    friend Angle operator-(const Angle& a, const Angle& b) { return a + (-b); }
    friend Angle operator*(std::int64_t k, const Angle& a) {
        return a.exact_ ? Angle(*a.exact_ * k) : from_radians(static_cast<double>(k) * a.radians_);
    }
    Angle half() const { return exact_ ? Angle(*exact_ / 2) : from_radians(radians_ / 2); }

    /// Representative in [0, 2pi).
    Angle mod_two_pi() const {
        if (exact_) {
            const auto& f = *exact_;
            std::int64_t n = f.numerator(), d = f.denominator();
            std::int64_t period = 2 * d;
            std::int64_t r = ((n % period) + period) % period;
            return Angle(PiFraction(r, d));
        }
        constexpr double two_pi = 2 * std::numbers::pi;
        double r = std::fmod(radians_, two_pi);
        if (r < 0) r += two_pi;
        if (r >= two_pi) r = 0;
        return from_radians(r);
    }

    /// Exact equality for exact angles, bitwise radians equality otherwise.
    friend bool operator==(const Angle& a, const Angle& b) {
        if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
        if (a.exact_ || b.exact_) return false;
        return a.radians_ == b.radians_;
    }

    /// "0", "k pi" or "k/m pi" for exact angles, a decimal for floating ones.
    std::string to_string() const {
        if (!exact_) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", radians_);
            return buf;
        }
        const auto& f = *exact_;
        if (f.numerator() == 0) return "0";
        if (f.denominator() == 1) return std::to_string(f.numerator()) + " pi";
        return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator()) + " pi";
    }

    /// Accepts "0", "pi", "-pi", "k pi", "k/m pi" (exact) or a decimal
    /// number of radians such as "1.0471975511965976" (floating).
    static Angle parse(std::string_view text);

  private:
    explicit Angle(PiFraction f) : exact_(f), radians_(boost::rational_cast<double>(f) * std::numbers::pi) {}

    std::optional<PiFraction> exact_ = PiFraction(0);
    double radians_ = 0.0;
};

/// True when (x - target) is an integer multiple of `modulus`. Exact when all
/// three angles are exact; otherwise decided within `tol` (in units of the
/// modulus).
inline bool congruent(const Angle& x, const Angle& target, const Angle& modulus, double tol = 1e-9) {
    Angle diff = x - target;
    if (diff.is_exact() && modulus.is_exact()) {
        PiFraction q = diff.fraction() / modulus.fraction();
        return q.denominator() == 1;
    }
    double q = diff.radians() / modulus.radians();
    return std::abs(q - std::round(q)) <= tol;
}

inline bool nearly_equal(const Angle& a, const Angle& b, double tol = 1e-12) {
    if (a.is_exact() && b.is_exact()) return a == b;
    return std::abs(a.radians() - b.radians()) <= tol;
}

inline Angle Angle::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    std::string_view s = trim(text);
    if (s.empty()) throw ParseError("empty angle");

    auto parse_int = [&](std::string_view v) -> std::int64_t {
        v = trim(v);
        if (v.empty() || v == "+") return 1;
        if (v == "-") return -1;
        std::size_t pos = 0;
        std::string str(v);
        long long out = 0;
        try {
            out = std::stoll(str, &pos);
        } catch (const std::exception&) {
            throw ParseError("malformed angle '" + std::string(text) + "'");
        }
        if (pos != str.size()) throw ParseError("malformed angle '" + std::string(text) + "'");
        return out;
    };

    if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
        std::string_view coeff = trim(s.substr(0, s.size() - 2));
        if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
        std::int64_t num = 1, den = 1;
        if (auto slash = coeff.find('/'); slash != std::string_view::npos) {
            num = parse_int(coeff.substr(0, slash));
            den = parse_int(coeff.substr(slash + 1));
        } else {
            num = parse_int(coeff);
        }
        if (den == 0) throw ParseError("zero denominator in angle '" + std::string(text) + "'");
        return pi_multiple(num, den);
    }
    if (s == "0" || s == "-0" || s == "+0") return zero();
    std::string str(s);
    std::size_t pos = 0;
    double r = 0;
    try {
        r = std::stod(str, &pos);
    } catch (const std::exception&) {
        throw ParseError("malformed angle '" + std::string(text) + "'");
    }
    if (pos != str.size()) throw ParseError("malformed angle '" + std::string(text) + "'");
    return from_radians(r);
}

}  // namespace ewl
