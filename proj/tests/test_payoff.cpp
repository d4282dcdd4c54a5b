#include <gtest/gtest.h>

#include "support.hpp"

using namespace ewl;
using namespace ewl::testing;

namespace {

Angle q(std::int64_t n, std::int64_t d) { return Angle::pi_multiple(n, d); }

const StrategyParams I = strategies::identity();
const StrategyParams iX = strategies::flip();

std::array<Rational, 4> exact(const StrategyParams& a, const StrategyParams& b) {
    return coefficients_as<Rational>(a, b).c;
}

}  // namespace

TEST(Coefficients, ClassicalProfiles) {
    using A = std::array<Rational, 4>;
    EXPECT_EQ(exact(I, I), (A{1, 0, 0, 0}));
    EXPECT_EQ(exact(I, iX), (A{0, 1, 0, 0}));
    EXPECT_EQ(exact(iX, I), (A{0, 0, 1, 0}));
    EXPECT_EQ(exact(iX, iX), (A{0, 0, 0, 1}));
}

TEST(Coefficients, UniformForBClassPair) {
    const Rational quarter(1, 4);
    auto c = exact(strategies::exact(1, 2, 1, 4, 3, 4), strategies::exact(1, 2, 3, 4, 1, 4));
    for (const auto& x : c) EXPECT_EQ(x, quarter);
}

TEST(Coefficients, ClosedFormMatchesExplicitCircuit) {
    Rng rng(21);
    for (int k = 0; k < 1000; ++k) {
        auto p1 = random_float_strategy(rng), p2 = random_float_strategy(rng);
        auto c = coefficients(p1, p2);
        auto ref = reference_weights(p1, p2);
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(c[i], ref[i], 1e-12);
    }
}

TEST(Coefficients, ExactMatchesFloatingPoint) {
    Rng rng(22);
    for (int den : {3, 4, 6, 8}) {
        for (int k = 0; k < 150; ++k) {
            auto p1 = random_lattice_strategy(rng, den), p2 = random_lattice_strategy(rng, den);
            auto ex = exact_coefficients(p1, p2);
            auto ref = reference_weights(p1, p2);
            for (int i = 0; i < 4; ++i) {
                EXPECT_NEAR(ex[i].value().real(), ref[i], 1e-12);
                EXPECT_NEAR(ex[i].value().imag(), 0.0, 1e-12);
            }
        }
    }
}

TEST(Coefficients, RationalOnHalfPiLattice) {
    Rng rng(23);
    for (int k = 0; k < 500; ++k) {
        auto p1 = random_lattice_strategy(rng, 2), p2 = random_lattice_strategy(rng, 2);
        auto c = exact(p1, p2);
        Rational sum = 0;
        for (const auto& x : c) {
            EXPECT_GE(x, 0);
            EXPECT_LE(x, 1);
            EXPECT_EQ(4 % boost::multiprecision::denominator(x), 0) << x;
            sum += x;
        }
        EXPECT_EQ(sum, 1);
    }
}

TEST(Coefficients, QuarterPhasesCanBeIrrational) {
    auto p1 = strategies::exact(1, 2, 3, 4, 3, 2), p2 = strategies::exact(1, 2, 3, 2, 3, 2);
    EXPECT_THROW(coefficients_as<Rational>(p1, p2), InexactValue);
    auto ex = exact_coefficients(p1, p2);
    auto ref = reference_weights(p1, p2);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ex[i].value().real(), ref[i], 1e-12);
}

TEST(Coefficients, IrrationalCoefficientRejectedInExactMode) {
    auto p1 = strategies::exact(1, 4, 0, 1, 0, 1);  // cos^2(pi/8) is irrational
    EXPECT_THROW(coefficients_as<Rational>(p1, I), InexactValue);
    auto f = canonicalize(Angle::from_radians(0.3), Angle::zero(), Angle::zero());
    EXPECT_THROW(coefficients_as<Rational>(f, I), InexactValue);
}

TEST(Coefficients, NormalizedAndNonnegative) {
    Rng rng(24);
    for (int k = 0; k < 1000; ++k) {
        auto c = coefficients(random_float_strategy(rng), random_float_strategy(rng));
        double sum = 0;
        for (double x : c.c) {
            EXPECT_GE(x, -1e-15);
            sum += x;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(PayoffClosedForm, ClassicalProfileReproducesEntry) {
    auto pd = prisoners_dilemma<Rational>();
    EXPECT_EQ(payoff_closed_form(pd, I, I), (PayoffPair<Rational>{3, 3}));
    EXPECT_EQ(payoff_closed_form(pd, iX, iX), (PayoffPair<Rational>{1, 1}));
    EXPECT_EQ(payoff_closed_form(pd, I, iX), (PayoffPair<Rational>{0, 5}));
    EXPECT_EQ(payoff_closed_form(pd, iX, I), (PayoffPair<Rational>{5, 0}));
}

TEST(PayoffClosedForm, HalfTurnAgainstIdentity) {
    auto pd = prisoners_dilemma<Rational>();
    auto u = payoff_closed_form(pd, strategies::exact(1, 2, 1, 2, 1, 2), I);
    EXPECT_EQ(u.u1, Rational(1, 2));
}

TEST(PayoffClosedForm, CClassCornerAtThirdPi) {
    auto pd = prisoners_dilemma<Rational>();
    auto u1 = canonicalize(q(1, 3), q(1, 4), q(1, 4));
    auto u2 = canonicalize(q(2, 3), q(3, 4), q(3, 4));
    EXPECT_EQ(payoff_closed_form(pd, u1, u2), R(57, 16, 17, 16));
    EXPECT_EQ(payoff_closed_form(pd, u2, u1), R(17, 16, 57, 16));
    EXPECT_EQ(payoff_closed_form(pd, u1, u1), R(27, 16, 27, 16));
    EXPECT_EQ(payoff_closed_form(pd, u2, u2), R(43, 16, 43, 16));
}

TEST(PayoffClosedForm, LinearInGame) {
    Rng rng(25);
    for (int k = 0; k < 50; ++k) {
        auto g = random_rational_game(rng), h = random_rational_game(rng);
        Bimatrix2<Rational> sum;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sum(i, j) = g(i, j) + Rational(3) * h(i, j);
        auto p1 = random_lattice_strategy(rng, 2), p2 = random_lattice_strategy(rng, 2);
        auto lhs = payoff_closed_form(sum, p1, p2);
        auto rhs = payoff_closed_form(g, p1, p2) + Rational(3) * payoff_closed_form(h, p1, p2);
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(PayoffOracle, ClassicalProfiles) {
    Rng rng(26);
    auto g = random_double_game(rng);
    auto u = payoff_oracle(g, I, I);
    EXPECT_NEAR(u.u1, g(0, 0).u1, 1e-12);
    EXPECT_NEAR(u.u2, g(0, 0).u2, 1e-12);
    auto pd = prisoners_dilemma<double>();
    auto v = payoff_oracle(pd, iX, iX);
    EXPECT_NEAR(v.u1, 1.0, 1e-12);
    EXPECT_NEAR(v.u2, 1.0, 1e-12);
}

TEST(PayoffOracle, AgreesWithClosedForm) {
    Rng rng(27);
    for (int k = 0; k < 1000; ++k) {
        auto g = random_double_game(rng);
        auto p1 = random_float_strategy(rng), p2 = random_float_strategy(rng);
        auto a = payoff_oracle(g, p1, p2);
        auto b = payoff_closed_form(g, p1, p2);
        auto ref = reference_payoff(g, p1, p2);
        EXPECT_NEAR(a.u1, b.u1, 1e-10);
        EXPECT_NEAR(a.u2, b.u2, 1e-10);
        EXPECT_NEAR(a.u1, ref.u1, 1e-10);
        EXPECT_NEAR(a.u2, ref.u2, 1e-10);
    }
}

TEST(PayoffOracle, FinalStateNormalized) {
    Rng rng(28);
    for (int k = 0; k < 200; ++k) {
        auto psi = final_state(random_float_strategy(rng), random_float_strategy(rng));
        double n = 0;
        for (auto& a : psi) n += std::norm(a);
        EXPECT_NEAR(n, 1.0, 1e-12);
    }
}

namespace {

using Shift = std::array<int, 4>;  // multiples of pi/2 added to alpha1, beta1, alpha2, beta2

StrategyParams shifted(const StrategyParams& p, int da, int db) {
    return canonicalize(p.theta, p.alpha + Angle::pi_multiple(da, 2), p.beta + Angle::pi_multiple(db, 2));
}

std::vector<Shift> symmetry_shifts() {
    std::vector<Shift> out;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            Shift s{0, 0, 0, 0};
            s[a] = 2;
            s[b] = 2;
            out.push_back(s);
        }
    out.push_back({1, 1, 1, 1});
    return out;
}

}  // namespace

TEST(Symmetry, PhaseShiftsKeepCoefficientsExactly) {
    Rng rng(29);
    for (int k = 0; k < 200; ++k) {
        auto p1 = random_lattice_strategy(rng, 4), p2 = random_lattice_strategy(rng, 4);
        auto base = exact_coefficients(p1, p2);
        for (const auto& s : symmetry_shifts()) {
            auto moved = exact_coefficients(shifted(p1, s[0], s[1]), shifted(p2, s[2], s[3]));
            for (int i = 0; i < 4; ++i) EXPECT_TRUE(base[i].equal_canonical(moved[i]));
        }
    }
}

TEST(Symmetry, PhaseShiftsKeepCoefficientsInFloatingPoint) {
    Rng rng(30);
    for (int k = 0; k < 500; ++k) {
        auto p1 = random_float_strategy(rng), p2 = random_float_strategy(rng);
        auto base = coefficients(p1, p2);
        for (const auto& s : symmetry_shifts()) {
            auto moved = coefficients(shifted(p1, s[0], s[1]), shifted(p2, s[2], s[3]));
            for (int i = 0; i < 4; ++i) EXPECT_NEAR(base[i], moved[i], 1e-12);
        }
    }
}

TEST(Symmetry, PlayerTwoCoefficientsSwapMiddleWeights) {
    Rng rng(31);
    for (int k = 0; k < 200; ++k) {
        auto p1 = random_float_strategy(rng), p2 = random_float_strategy(rng);
        auto a = coefficients(p1, p2), b = coefficients(p2, p1);
        EXPECT_NEAR(a[0], b[0], 1e-12);
        EXPECT_NEAR(a[1], b[2], 1e-12);
        EXPECT_NEAR(a[2], b[1], 1e-12);
        EXPECT_NEAR(a[3], b[3], 1e-12);
    }
}
