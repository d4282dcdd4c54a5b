#pragma once

// Independent reference computations and random generators for the tests.
// Nothing here calls the library's payoff code.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <random>

#include "ewl/ewl.hpp"

namespace ewl::testing {

using C = std::complex<double>;
using Mat2 = std::array<std::array<C, 2>, 2>;
using Mat4 = std::array<std::array<C, 4>, 4>;

/// U(theta, alpha, beta) straight from the matrix definition.
inline Mat2 reference_unitary(double theta, double alpha, double beta) {
    const C i(0, 1);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {{{std::exp(i * alpha) * c, i * std::exp(i * beta) * s},
             {i * std::exp(-i * beta) * s, std::exp(-i * alpha) * c}}};
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out{};
    for (int r1 = 0; r1 < 2; ++r1)
        for (int c1 = 0; c1 < 2; ++c1)
            for (int r2 = 0; r2 < 2; ++r2)
                for (int c2 = 0; c2 < 2; ++c2) out[2 * r1 + r2][2 * c1 + c2] = a[r1][c1] * b[r2][c2];
    return out;
}

inline Mat4 mul(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            for (int k = 0; k < 4; ++k) out[r][c] += a[r][k] * b[k][c];
    return out;
}

inline Mat4 dagger(const Mat4& a) {
    Mat4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = std::conj(a[c][r]);
    return out;
}

/// J = (I (x) I + i X (x) X) / sqrt 2 as an explicit 4x4 matrix.
inline Mat4 entangler() {
    const Mat2 id = {{{1, 0}, {0, 1}}};
    const Mat2 x = {{{0, 1}, {1, 0}}};
    Mat4 a = kron(id, id), b = kron(x, x), out{};
    const C i(0, 1);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = (a[r][c] + i * b[r][c]) / std::sqrt(2.0);
    return out;
}

/// |<ij|J^dagger (U1 (x) U2) J|00>|^2 for ij = 00, 01, 10, 11.
inline std::array<double, 4> reference_weights(const StrategyParams& p1, const StrategyParams& p2) {
    const Mat4 j = entangler();
    const Mat4 u = kron(reference_unitary(p1.theta.radians(), p1.alpha.radians(), p1.beta.radians()),
                        reference_unitary(p2.theta.radians(), p2.alpha.radians(), p2.beta.radians()));
    const Mat4 total = mul(dagger(j), mul(u, j));
    return {std::norm(total[0][0]), std::norm(total[1][0]), std::norm(total[2][0]), std::norm(total[3][0])};
}

inline PayoffPair<double> reference_payoff(const Bimatrix2<double>& g, const StrategyParams& p1,
                                           const StrategyParams& p2) {
    auto w = reference_weights(p1, p2);
    PayoffPair<double> out{0, 0};
    for (int k = 0; k < 4; ++k) {
        out.u1 += w[k] * g.flat(k).u1;
        out.u2 += w[k] * g.flat(k).u2;
    }
    return out;
}

}  // namespace ewl::testing

namespace ewl {

// readable gtest failure messages
inline void PrintTo(const Angle& a, std::ostream* os) { *os << a.to_string(); }
inline void PrintTo(const StrategyParams& p, std::ostream* os) { *os << p.to_string(); }

}  // namespace ewl

namespace ewl::testing {

inline double to_rad(const PiFraction& f) { return boost::rational_cast<double>(f) * std::numbers::pi; }

// ---- generators ----

using Rng = std::mt19937_64;

inline Angle random_lattice_angle(Rng& rng, std::int64_t den, std::int64_t periods = 2) {
    std::uniform_int_distribution<std::int64_t> d(0, periods * den - 1);
    return Angle::pi_multiple(d(rng), den);
}

/// theta on the pi/den lattice within [0, pi], phases on the pi/den lattice.
inline StrategyParams random_lattice_strategy(Rng& rng, std::int64_t den = 4) {
    std::uniform_int_distribution<std::int64_t> t(0, den);
    return canonicalize(Angle::pi_multiple(t(rng), den), random_lattice_angle(rng, den), random_lattice_angle(rng, den));
}

inline StrategyParams random_float_strategy(Rng& rng) {
    std::uniform_real_distribution<double> t(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> ph(0.0, 2 * std::numbers::pi);
    return canonicalize(Angle::from_radians(t(rng)), Angle::from_radians(ph(rng)), Angle::from_radians(ph(rng)));
}

inline Bimatrix2<Rational> random_rational_game(Rng& rng, int range = 20, int den = 4) {
    std::uniform_int_distribution<int> num(-range * den, range * den);
    auto r = [&] { return Rational(num(rng), den); };
    return make_bimatrix<Rational>(r(), r(), r(), r(), r(), r(), r(), r());
}

/// Integer payoffs spread widely enough that coincidences are rare.
inline Bimatrix2<Rational> random_integer_game(Rng& rng, int range = 50) {
    std::uniform_int_distribution<int> num(-range, range);
    auto r = [&] { return Rational(num(rng)); };
    return make_bimatrix<Rational>(r(), r(), r(), r(), r(), r(), r(), r());
}

inline Bimatrix2<double> random_double_game(Rng& rng, double lo = -10, double hi = 10) {
    std::uniform_real_distribution<double> d(lo, hi);
    return make_bimatrix<double>(d(rng), d(rng), d(rng), d(rng), d(rng), d(rng), d(rng), d(rng));
}

inline PayoffPair<Rational> R(std::int64_t a_num, std::int64_t a_den, std::int64_t b_num, std::int64_t b_den) {
    return {Rational(a_num) / a_den, Rational(b_num) / b_den};
}

}  // namespace ewl::testing
