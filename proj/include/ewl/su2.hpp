#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ewl/angle.hpp"
#include "ewl/errors.hpp"

namespace ewl {

/// Parameters (theta, alpha, beta) of the SU(2) strategy
///
///     U = [[ e^{i alpha} cos(theta/2),   i e^{i beta} sin(theta/2) ],
///          [ i e^{-i beta} sin(theta/2), e^{-i alpha} cos(theta/2) ]]
///
/// with theta in [0, pi] and alpha, beta in [0, 2pi) once canonicalized.
struct StrategyParams {
    Angle theta;
    Angle alpha;
    Angle beta;

    bool is_exact() const { return theta.is_exact() && alpha.is_exact() && beta.is_exact(); }

    friend bool operator==(const StrategyParams&, const StrategyParams&) = default;

    std::string to_string() const {
        return "U(" + theta.to_string() + ", " + alpha.to_string() + ", " + beta.to_string() + ")";
    }
};

using Complex = std::complex<double>;

/// A 2x2 complex matrix, row-major.
struct Unitary2 {
    std::array<std::array<Complex, 2>, 2> m{};

    const Complex& operator()(int r, int c) const { return m[r][c]; }
    Complex& operator()(int r, int c) { return m[r][c]; }

    Complex det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    /// max |(U U^dagger - I)_{rc}|
    double unitarity_defect() const {
        double worst = 0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                Complex s = m[r][0] * std::conj(m[c][0]) + m[r][1] * std::conj(m[c][1]);
                worst = std::max(worst, std::abs(s - (r == c ? 1.0 : 0.0)));
            }
        return worst;
    }
    bool is_unitary(double tol = 1e-12) const { return unitarity_defect() <= tol; }
    bool is_special_unitary(double tol = 1e-12) const { return is_unitary(tol) && std::abs(det() - 1.0) <= tol; }
};

inline constexpr double kUnitarityTolerance = 1e-12;

/// Reduces alpha and beta into [0, 2pi). theta must already lie in [0, pi].
inline StrategyParams canonicalize(const Angle& theta, const Angle& alpha, const Angle& beta) {
    bool in_range = theta.is_exact()
                        ? (theta.fraction() >= PiFraction(0) && theta.fraction() <= PiFraction(1))
                        : (theta.radians() >= -1e-12 && theta.radians() <= std::numbers::pi + 1e-12);
    if (!in_range) throw DomainError("theta = " + theta.to_string() + " lies outside [0, pi]");
    Angle t = theta;
    if (!t.is_exact()) t = Angle::from_radians(std::clamp(t.radians(), 0.0, std::numbers::pi));
    return StrategyParams{t, alpha.mod_two_pi(), beta.mod_two_pi()};
}

inline StrategyParams canonicalize(const StrategyParams& p) { return canonicalize(p.theta, p.alpha, p.beta); }

inline Unitary2 build_unitary(const StrategyParams& p) {
    const double c = std::cos(p.theta.radians() / 2);
    const double s = std::sin(p.theta.radians() / 2);
    const Complex i(0, 1);
    Unitary2 u;
    u(0, 0) = std::polar(c, p.alpha.radians());
    u(0, 1) = i * std::polar(s, p.beta.radians());
    u(1, 0) = i * std::polar(s, -p.beta.radians());
    u(1, 1) = std::polar(c, -p.alpha.radians());
    return u;
}

/// The bijection relating EWL games of isomorphic classical games:
/// U(theta, alpha, beta) -> U(pi - theta, 2pi - beta, pi - alpha), canonicalized.
inline StrategyParams phi(const StrategyParams& p) {
    const Angle pi = Angle::pi();
    return canonicalize(pi - p.theta, 2 * pi - p.beta, pi - p.alpha);
}

namespace strategies {

/// I = U(0, 0, 0).
inline StrategyParams identity() { return {Angle::zero(), Angle::zero(), Angle::zero()}; }
/// iX = U(pi, 0, 0).
inline StrategyParams flip() { return {Angle::pi(), Angle::zero(), Angle::zero()}; }

inline StrategyParams exact(std::int64_t theta_num, std::int64_t theta_den, std::int64_t alpha_num,
                            std::int64_t alpha_den, std::int64_t beta_num, std::int64_t beta_den) {
    return canonicalize(Angle::pi_multiple(theta_num, theta_den), Angle::pi_multiple(alpha_num, alpha_den),
                        Angle::pi_multiple(beta_num, beta_den));
}

}  // namespace strategies

}  // namespace ewl
