#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ewl/angle.hpp"
#include "ewl/scalar.hpp"

namespace ewl {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

inline const std::vector<std::int64_t>& cyclotomic_polynomial(int n);

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
inline std::vector<std::int64_t> compute_cyclotomic_polynomial(int n) {
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    std::vector<std::int64_t> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const std::vector<std::int64_t>& q = cyclotomic_polynomial(d);
        int deg_p = static_cast<int>(p.size()) - 1;
        int deg_q = static_cast<int>(q.size()) - 1;
        std::vector<std::int64_t> quotient(deg_p - deg_q + 1, 0);
        for (int k = deg_p; k >= deg_q; --k) {
            std::int64_t c = p[k];  // q is monic
            quotient[k - deg_q] = c;
            if (c == 0) continue;
            for (int j = 0; j <= deg_q; ++j) p[k - deg_q + j] -= c * q[j];
        }
        p = std::move(quotient);
    }
    return p;
}

inline const std::vector<std::int64_t>& cyclotomic_polynomial(int n) {
    // std::map nodes are stable, so references handed out stay valid.
    static std::recursive_mutex mutex;
    static std::map<int, std::vector<std::int64_t>> cache;
    std::lock_guard<std::recursive_mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto poly = compute_cyclotomic_polynomial(n);
        it = cache.emplace(n, std::move(poly)).first;
    }
    return it->second;
}

}  // namespace detail

/// Exact element of the cyclotomic field Q(zeta_N), stored as
/// (sum_k c_k zeta_N^k) / 2^shift with integer c_k, k = 0..N-1.
///
/// Every cos/sin of a rational multiple of pi is such an element with
/// shift 1, so the EWL amplitudes of strategies whose angles are rational
/// multiples of pi are computed without rounding. Two elements are equal iff
/// their canonical forms (reduced modulo the N-th cyclotomic polynomial)
/// coincide.
class Cyclotomic {
  public:
    Cyclotomic() : Cyclotomic(4) {}
    explicit Cyclotomic(int order) : order_(order), coeffs_(static_cast<std::size_t>(order), 0) {
        if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
    }

    static Cyclotomic integer(int order, std::int64_t v) {
        Cyclotomic z(order);
        z.coeffs_[0] = v;
        return z;
    }
    /// zeta_N^k.
    static Cyclotomic root(int order, std::int64_t k) {
        Cyclotomic z(order);
        z.coeffs_[static_cast<std::size_t>(((k % order) + order) % order)] = 1;
        return z;
    }

    /// Exponent k with e^{i x pi} = zeta_N^k; throws if N is too coarse.
    static std::int64_t exponent_of(const PiFraction& x, int order) {
        // x pi = 2 pi k / N  =>  k = x N / 2
        PiFraction k = x * PiFraction(order, 2);
        if (k.denominator() != 1)
            throw std::invalid_argument("cyclotomic order " + std::to_string(order) + " cannot represent angle " +
                                        Angle::from_fraction(x).to_string());
        return k.numerator();
    }

    /// cos(x pi) = (zeta^k + zeta^-k) / 2.
    static Cyclotomic cos_pi(const PiFraction& x, int order) {
        std::int64_t k = exponent_of(x, order);
        Cyclotomic z(order);
        z.add_at(k, 1);
        z.add_at(-k, 1);
        z.shift_ = 1;
        return z;
    }
    /// sin(x pi) = -i (zeta^k - zeta^-k) / 2 = (zeta^{N/4 - k} - zeta^{N/4 + k}) / 2.
    static Cyclotomic sin_pi(const PiFraction& x, int order) {
        if (order % 4 != 0) throw std::invalid_argument("sin needs a cyclotomic order divisible by 4");
        std::int64_t k = exponent_of(x, order);
        std::int64_t quarter = order / 4;
        Cyclotomic z(order);
        z.add_at(quarter - k, 1);
        z.add_at(quarter + k, -1);
        z.shift_ = 1;
        return z;
    }

    int order() const { return order_; }
    int shift() const { return shift_; }
    const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

    Cyclotomic conj() const {
        Cyclotomic z(order_);
        for (int k = 0; k < order_; ++k) z.coeffs_[static_cast<std::size_t>((order_ - k) % order_)] = coeffs_[k];
        z.shift_ = shift_;
        return z;
    }

    /// Same value expressed in Q(zeta_M), M a multiple of the current order.
    Cyclotomic lifted(int new_order) const {
        if (new_order % order_ != 0) throw std::invalid_argument("lift order must be a multiple");
        int step = new_order / order_;
        Cyclotomic z(new_order);
        for (int k = 0; k < order_; ++k) z.coeffs_[static_cast<std::size_t>(k * step)] = coeffs_[k];
        z.shift_ = shift_;
        return z;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) { return combine(a, b, 1); }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return combine(a, b, -1); }
    Cyclotomic operator-() const {
        Cyclotomic z = *this;
        for (auto& c : z.coeffs_) c = -c;
        return z;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ != b.order_) {
            int m = std::lcm(a.order_, b.order_);
            return a.lifted(m) * b.lifted(m);
        }
        const int n = a.order_;
        Cyclotomic z(n);
        for (int i = 0; i < n; ++i) {
            std::int64_t ai = a.coeffs_[i];
            if (ai == 0) continue;
            for (int j = 0; j < n; ++j) {
                std::int64_t bj = b.coeffs_[j];
                if (bj == 0) continue;
                auto& slot = z.coeffs_[static_cast<std::size_t>((i + j) % n)];
                slot = detail::checked_add(slot, detail::checked_mul(ai, bj));
            }
        }
        z.shift_ = a.shift_ + b.shift_;
        return z;
    }

    /// Canonical representative: reduced modulo Phi_N (degree < phi(N)) and
    /// with common factors of two cancelled against the denominator.
    Cyclotomic canonical() const {
        const auto& phi = detail::cyclotomic_polynomial(order_);
        const int deg = static_cast<int>(phi.size()) - 1;
        Cyclotomic z = *this;
        for (int k = order_ - 1; k >= deg; --k) {
            std::int64_t c = z.coeffs_[k];
            if (c == 0) continue;
            for (int j = 0; j <= deg; ++j) {
                auto& slot = z.coeffs_[static_cast<std::size_t>(k - deg + j)];
                slot = detail::checked_add(slot, -detail::checked_mul(c, phi[j]));
            }
        }
        bool all_zero = true;
        for (auto c : z.coeffs_) all_zero = all_zero && c == 0;
        if (all_zero) {
            z.shift_ = 0;
            return z;
        }
        while (z.shift_ > 0) {
            bool even = true;
            for (auto c : z.coeffs_) even = even && (c % 2 == 0);
            if (!even) break;
            for (auto& c : z.coeffs_) c /= 2;
            --z.shift_;
        }
        return z;
    }

    bool is_zero() const {
        Cyclotomic z = canonical();
        for (auto c : z.coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// The value as a rational number, or nullopt when it is irrational.
    std::optional<Rational> as_rational() const {
        Cyclotomic z = canonical();
        for (std::size_t k = 1; k < z.coeffs_.size(); ++k)
            if (z.coeffs_[k] != 0) return std::nullopt;
        Rational r(z.coeffs_[0]);
        for (int s = 0; s < z.shift_; ++s) r /= 2;
        return r;
    }

    std::complex<double> value() const {
        std::complex<double> acc = 0;
        for (int k = 0; k < order_; ++k) {
            if (coeffs_[k] == 0) continue;
            double ang = 2 * std::numbers::pi * k / order_;
            acc += static_cast<double>(coeffs_[k]) * std::polar(1.0, ang);
        }
        return std::ldexp(1.0, -shift_) * acc;
    }

    /// Structural equality of already-canonical values (cheap); use
    /// operator== for general values.
    bool same_canonical(const Cyclotomic& other) const {
        return order_ == other.order_ && shift_ == other.shift_ && coeffs_ == other.coeffs_;
    }

    /// Equality of canonical values that may live in different fields.
    bool equal_canonical(const Cyclotomic& other) const {
        if (order_ == other.order_) return same_canonical(other);
        int m = std::lcm(order_, other.order_);
        return lifted(m).canonical().same_canonical(other.lifted(m).canonical());
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }

  private:
    void add_at(std::int64_t k, std::int64_t v) {
        auto idx = static_cast<std::size_t>(((k % order_) + order_) % order_);
        coeffs_[idx] += v;
    }

    static Cyclotomic combine(const Cyclotomic& a, const Cyclotomic& b, std::int64_t sign) {
        if (a.order_ != b.order_) {
            int m = std::lcm(a.order_, b.order_);
            return combine(a.lifted(m), b.lifted(m), sign);
        }
        int shift = std::max(a.shift_, b.shift_);
        std::int64_t sa = std::int64_t{1} << (shift - a.shift_);
        std::int64_t sb = std::int64_t{1} << (shift - b.shift_);
        Cyclotomic z(a.order_);
        for (int k = 0; k < a.order_; ++k) {
            z.coeffs_[k] = detail::checked_add(detail::checked_mul(a.coeffs_[k], sa),
                                               detail::checked_mul(sign * b.coeffs_[k], sb));
        }
        z.shift_ = shift;
        return z;
    }

    int order_;
    std::vector<std::int64_t> coeffs_;
    int shift_ = 0;
};

/// Smallest cyclotomic order in which e^{i x pi} is representable for every
/// listed fraction x (always a multiple of 4 so that i is available).
inline int required_order(std::initializer_list<PiFraction> fractions) {
    std::int64_t order = 4;
    for (const auto& f : fractions) order = std::lcm(order, 2 * f.denominator());
    if (order > 1 << 16) throw std::invalid_argument("angle denominators too large for exact evaluation");
    return static_cast<int>(order);
}

}  // namespace ewl
