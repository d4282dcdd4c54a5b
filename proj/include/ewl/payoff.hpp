#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>

#include "ewl/cyclotomic.hpp"
#include "ewl/scalar.hpp"
#include "ewl/su2.hpp"

namespace ewl {

template <class Scalar>
struct PayoffPair {
    Scalar u1{};
    Scalar u2{};

    friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

template <class Scalar>
PayoffPair<Scalar> operator+(const PayoffPair<Scalar>& a, const PayoffPair<Scalar>& b) {
    return {a.u1 + b.u1, a.u2 + b.u2};
}
template <class Scalar>
PayoffPair<Scalar> operator*(const Scalar& w, const PayoffPair<Scalar>& p) {
    return {w * p.u1, w * p.u2};
}

template <class Scalar>
bool nearly_equal(const PayoffPair<Scalar>& a, const PayoffPair<Scalar>& b, double tol = kPayoffTolerance) {
    return nearly_equal(a.u1, b.u1, tol) && nearly_equal(a.u2, b.u2, tol);
}

/// The classical 2x2 game: delta[i][j] = (a_ij, b_ij).
template <class Scalar>
struct Bimatrix2 {
    std::array<std::array<PayoffPair<Scalar>, 2>, 2> delta{};

    const PayoffPair<Scalar>& operator()(int i, int j) const { return delta[i][j]; }
    PayoffPair<Scalar>& operator()(int i, int j) { return delta[i][j]; }

    /// Entry with flat index k = 2i + j (the order 00, 01, 10, 11).
    const PayoffPair<Scalar>& flat(int k) const { return delta[k / 2][k % 2]; }

    friend bool operator==(const Bimatrix2&, const Bimatrix2&) = default;
};

template <class Scalar>
Bimatrix2<Scalar> make_bimatrix(Scalar a00, Scalar b00, Scalar a01, Scalar b01, Scalar a10, Scalar b10, Scalar a11,
                                Scalar b11) {
    Bimatrix2<Scalar> g;
    g.delta = {{{{{a00, b00}, {a01, b01}}}, {{{a10, b10}, {a11, b11}}}}};
    return g;
}

/// Prisoner's Dilemma [[(3,3),(0,5)],[(5,0),(1,1)]].
template <class Scalar>
Bimatrix2<Scalar> prisoners_dilemma() {
    return make_bimatrix<Scalar>(3, 3, 0, 5, 5, 0, 1, 1);
}

template <class Scalar>
Bimatrix2<double> to_double(const Bimatrix2<Scalar>& g) {
    Bimatrix2<double> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = {to_double(g(i, j).u1), to_double(g(i, j).u2)};
    return out;
}

/// Weights on (Delta_00, Delta_01, Delta_10, Delta_11); nonnegative, sum 1.
template <class Scalar>
struct CoefficientVector {
    std::array<Scalar, 4> c{};

    Scalar operator[](int k) const { return c[k]; }
    friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;
};

/// Exact coefficients as canonical cyclotomic numbers (possibly irrational).
using ExactCoefficients = std::array<Cyclotomic, 4>;

namespace detail {

template <class T>
struct AmplitudeInputs {
    T cos_sum_alpha, sin_sum_alpha;        // alpha1 + alpha2
    T cos_sum_beta, sin_sum_beta;          // beta1 + beta2
    T cos_a1_minus_b2, sin_a1_minus_b2;    // alpha1 - beta2
    T cos_a2_minus_b1, sin_a2_minus_b1;    // alpha2 - beta1
    T c1, s1, c2, s2;                      // cos/sin of theta_i / 2
};

/// The four real amplitudes whose squares weight Delta_00..Delta_11.
template <class T>
std::array<T, 4> closed_form_amplitudes(const AmplitudeInputs<T>& in) {
    T cc = in.c1 * in.c2;
    T ss = in.s1 * in.s2;
    T cs = in.c1 * in.s2;
    T sc = in.s1 * in.c2;
    return {
        in.cos_sum_alpha * cc + in.sin_sum_beta * ss,
        in.cos_a1_minus_b2 * cs + in.sin_a2_minus_b1 * sc,
        in.sin_a1_minus_b2 * cs + in.cos_a2_minus_b1 * sc,
        in.sin_sum_alpha * cc - in.cos_sum_beta * ss,
    };
}

}  // namespace detail

/// Floating-point coefficients from the closed-form payoff expression.
inline CoefficientVector<double> coefficients(const StrategyParams& p1, const StrategyParams& p2) {
    const double a1 = p1.alpha.radians(), b1 = p1.beta.radians();
    const double a2 = p2.alpha.radians(), b2 = p2.beta.radians();
    detail::AmplitudeInputs<double> in{
        std::cos(a1 + a2), std::sin(a1 + a2), std::cos(b1 + b2), std::sin(b1 + b2),
        std::cos(a1 - b2), std::sin(a1 - b2), std::cos(a2 - b1), std::sin(a2 - b1),
        std::cos(p1.theta.radians() / 2), std::sin(p1.theta.radians() / 2),
        std::cos(p2.theta.radians() / 2), std::sin(p2.theta.radians() / 2),
    };
    auto amp = detail::closed_form_amplitudes(in);
    return {{amp[0] * amp[0], amp[1] * amp[1], amp[2] * amp[2], amp[3] * amp[3]}};
}

/// Exact coefficients; every angle of both strategies must be a rational
/// multiple of pi.
inline ExactCoefficients exact_coefficients(const StrategyParams& p1, const StrategyParams& p2) {
    const PiFraction& a1 = p1.alpha.fraction();
    const PiFraction& b1 = p1.beta.fraction();
    const PiFraction& a2 = p2.alpha.fraction();
    const PiFraction& b2 = p2.beta.fraction();
    const PiFraction h1 = p1.theta.fraction() / 2;
    const PiFraction h2 = p2.theta.fraction() / 2;
    const int n = required_order({a1, b1, a2, b2, h1, h2});
    using Z = Cyclotomic;
    detail::AmplitudeInputs<Z> in{
        Z::cos_pi(a1 + a2, n), Z::sin_pi(a1 + a2, n), Z::cos_pi(b1 + b2, n), Z::sin_pi(b1 + b2, n),
        Z::cos_pi(a1 - b2, n), Z::sin_pi(a1 - b2, n), Z::cos_pi(a2 - b1, n), Z::sin_pi(a2 - b1, n),
        Z::cos_pi(h1, n),      Z::sin_pi(h1, n),      Z::cos_pi(h2, n),      Z::sin_pi(h2, n),
    };
    auto amp = detail::closed_form_amplitudes(in);
    return {(amp[0] * amp[0]).canonical(), (amp[1] * amp[1]).canonical(), (amp[2] * amp[2]).canonical(),
            (amp[3] * amp[3]).canonical()};
}

/// Memo of exact_coefficients keyed on the six angle fractions.
class ExactCoefficientCache {
  public:
    const ExactCoefficients& get(const StrategyParams& p1, const StrategyParams& p2) {
        Key key;
        std::size_t k = 0;
        for (const Angle* a : {&p1.theta, &p1.alpha, &p1.beta, &p2.theta, &p2.alpha, &p2.beta}) {
            key[k++] = a->fraction().numerator();
            key[k++] = a->fraction().denominator();
        }
        auto it = memo_.find(key);
        if (it == memo_.end()) it = memo_.emplace(key, exact_coefficients(p1, p2)).first;
        return it->second;
    }
    std::size_t size() const { return memo_.size(); }

  private:
    using Key = std::array<std::int64_t, 12>;
    std::map<Key, ExactCoefficients> memo_;
};

/// Coefficients in the requested scalar type. For Rational the strategies
/// must be exact and every coefficient rational, otherwise InexactValue.
template <class Scalar>
CoefficientVector<Scalar> coefficients_as(const StrategyParams& p1, const StrategyParams& p2) {
    if constexpr (is_exact_scalar_v<Scalar>) {
        if (!p1.is_exact() || !p2.is_exact())
            throw InexactValue("exact payoffs need angles that are rational multiples of pi: " + p1.to_string() +
                               ", " + p2.to_string());
        auto ex = exact_coefficients(p1, p2);
        CoefficientVector<Scalar> out;
        for (int k = 0; k < 4; ++k) {
            auto r = ex[k].as_rational();
            if (!r)
                throw InexactValue("payoff coefficient of profile (" + p1.to_string() + ", " + p2.to_string() +
                                   ") is irrational; use floating-point mode");
            out.c[k] = *r;
        }
        return out;
    } else {
        return coefficients(p1, p2);
    }
}

/// Payoff pair from the closed-form expression: sum_k c_k Delta_k.
template <class Scalar>
PayoffPair<Scalar> payoff_closed_form(const Bimatrix2<Scalar>& game, const StrategyParams& p1,
                                      const StrategyParams& p2) {
    auto c = coefficients_as<Scalar>(p1, p2);
    PayoffPair<Scalar> out{Scalar(0), Scalar(0)};
    for (int k = 0; k < 4; ++k) {
        out.u1 += c.c[k] * game.flat(k).u1;
        out.u2 += c.c[k] * game.flat(k).u2;
    }
    return out;
}

/// Final state J^dagger (U1 (x) U2) J |00>, basis order |00>, |01>, |10>, |11>
/// with player 1 on the first qubit.
inline std::array<Complex, 4> final_state(const StrategyParams& p1, const StrategyParams& p2) {
    using State = std::array<Complex, 4>;
    const Complex i(0, 1);
    const double r = 1 / std::sqrt(2.0);
    // J = (I(x)I + i X(x)X)/sqrt2; X(x)X maps basis index k to 3 - k.
    auto apply_j = [&](const State& v, bool dagger) {
        Complex phase = dagger ? -i : i;
        State out;
        for (int k = 0; k < 4; ++k) out[k] = r * (v[k] + phase * v[3 - k]);
        return out;
    };
    Unitary2 u1 = build_unitary(p1);
    Unitary2 u2 = build_unitary(p2);
    State psi = apply_j(State{1, 0, 0, 0}, false);
    State local{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int a0 = 0; a0 < 2; ++a0)
                for (int b0 = 0; b0 < 2; ++b0) local[2 * a + b] += u1(a, a0) * u2(b, b0) * psi[2 * a0 + b0];
    return apply_j(local, true);
}

/// Payoffs <Psi|M_i|Psi> evaluated on the simulated final state.
inline PayoffPair<double> payoff_oracle(const Bimatrix2<double>& game, const StrategyParams& p1,
                                        const StrategyParams& p2) {
    auto psi = final_state(p1, p2);
    PayoffPair<double> out{0, 0};
    for (int k = 0; k < 4; ++k) {
        double w = std::norm(psi[k]);
        out.u1 += w * game.flat(k).u1;
        out.u2 += w * game.flat(k).u2;
    }
    return out;
}

}  // namespace ewl
