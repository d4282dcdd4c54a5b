#include <gtest/gtest.h>

#include "support.hpp"

using namespace ewl;
using namespace ewl::testing;

namespace {

using Q = Rational;

ExtendedGame<Q> pd_c_extension() { return extension_matrix(default_params(ClassId::C), prisoners_dilemma<Q>()); }

MixedProfile<Q> pure_profile(std::size_t n, std::size_t r, std::size_t c) {
    MixedProfile<Q> s{std::vector<Q>(n, Q(0)), std::vector<Q>(n, Q(0))};
    s.p1[r] = 1;
    s.p2[c] = 1;
    return s;
}

/// Deviation check written out independently of the library.
bool no_profitable_deviation(const ExtendedGame<Q>& g, const MixedProfile<Q>& s) {
    const std::size_t n = g.size();
    Q v1 = 0, v2 = 0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            v1 += s.p1[r] * s.p2[c] * g.payoffs[r][c].u1;
            v2 += s.p1[r] * s.p2[c] * g.payoffs[r][c].u2;
        }
    for (std::size_t d = 0; d < n; ++d) {
        Q dev1 = 0, dev2 = 0;
        for (std::size_t k = 0; k < n; ++k) {
            dev1 += s.p2[k] * g.payoffs[d][k].u1;
            dev2 += s.p1[k] * g.payoffs[k][d].u2;
        }
        if (dev1 > v1 || dev2 > v2) return false;
    }
    return true;
}

ExtendedGame<Q> random_square(Rng& rng, std::size_t n, int range = 20) {
    std::uniform_int_distribution<int> d(-range, range);
    ExtendedGame<Q> g;
    for (std::size_t k = 0; k < n; ++k) g.labels.push_back("s" + std::to_string(k));
    g.payoffs.assign(n, std::vector<PayoffPair<Q>>(n));
    for (auto& row : g.payoffs)
        for (auto& cell : row) cell = {Q(d(rng)), Q(d(rng))};
    return g;
}

bool contains(const EquilibriumReport<Q>& rep, const MixedProfile<Q>& s) {
    for (const auto& e : rep.equilibria)
        if (e.profile == s) return true;
    return false;
}

}  // namespace

TEST(PureEquilibria, ClassicalPrisonersDilemma) {
    auto g = from_bimatrix(prisoners_dilemma<Q>());
    EXPECT_EQ(pure_equilibria(g), (std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}}));
}

TEST(PureEquilibria, CExtensionOfPrisonersDilemma) {
    auto g = pd_c_extension();
    auto pure = pure_equilibria(g);
    EXPECT_EQ(pure, (std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 1}}));
    EXPECT_EQ(g(1, 2), R(19, 8, 19, 8));
    EXPECT_EQ(g(2, 1), R(19, 8, 19, 8));
}

TEST(PureEquilibria, ConstantGameEveryCell) {
    auto g = from_bimatrix(make_bimatrix<Q>(2, 2, 2, 2, 2, 2, 2, 2));
    EXPECT_EQ(pure_equilibria(g).size(), 4u);
    ExtendedGame<Q> big;
    big.labels = {"a", "b", "c", "d"};
    big.payoffs.assign(4, std::vector<PayoffPair<Q>>(4, PayoffPair<Q>{Q(7), Q(-1)}));
    EXPECT_EQ(pure_equilibria(big).size(), 16u);
}

TEST(MixedEquilibria, ClassicalPrisonersDilemmaIsUnique) {
    auto rep = mixed_equilibria(from_bimatrix(prisoners_dilemma<Q>()));
    ASSERT_EQ(rep.equilibria.size(), 1u);
    EXPECT_EQ(rep.equilibria[0].profile, pure_profile(2, 1, 1));
    EXPECT_EQ(rep.equilibria[0].payoff, R(1, 1, 1, 1));
    EXPECT_EQ(rep.equilibria[0].kind, EquilibriumKind::pure);
    EXPECT_FALSE(rep.degenerate);
}

TEST(MixedEquilibria, CExtensionContainsKnownEquilibria) {
    auto rep = mixed_equilibria(pd_c_extension());
    EXPECT_TRUE(contains(rep, pure_profile(4, 1, 2)));
    EXPECT_TRUE(contains(rep, pure_profile(4, 2, 1)));
    std::vector<Q> mix = {0, Q(1, 3), Q(2, 3), 0};
    bool found = false;
    for (const auto& e : rep.equilibria) {
        if (e.profile.p1 == mix && e.profile.p2 == mix) {
            found = true;
            EXPECT_EQ(e.payoff, R(23, 12, 23, 12));
            EXPECT_EQ(e.kind, EquilibriumKind::mixed);
            EXPECT_EQ(e.support1, (std::vector<std::size_t>{1, 2}));
        }
        if (e.kind == EquilibriumKind::pure) {
            EXPECT_EQ(e.payoff, R(19, 8, 19, 8));
        }
    }
    EXPECT_TRUE(found);
    for (const auto& e : rep.equilibria) EXPECT_TRUE(no_profitable_deviation(pd_c_extension(), e.profile));
}

TEST(MixedEquilibria, MatchingPennies) {
    auto g = from_bimatrix(make_bimatrix<Q>(1, -1, -1, 1, -1, 1, 1, -1));
    auto rep = mixed_equilibria(g);
    ASSERT_EQ(rep.equilibria.size(), 1u);
    EXPECT_EQ(rep.equilibria[0].profile.p1, (std::vector<Q>{Q(1, 2), Q(1, 2)}));
    EXPECT_EQ(rep.equilibria[0].profile.p2, (std::vector<Q>{Q(1, 2), Q(1, 2)}));
    EXPECT_EQ(rep.equilibria[0].payoff, R(0, 1, 0, 1));
    EXPECT_TRUE(pure_equilibria(g).empty());
}

TEST(MixedEquilibria, DegenerateGameIsFlagged) {
    auto g = from_bimatrix(make_bimatrix<Q>(2, 2, 2, 2, 2, 2, 2, 2));
    auto rep = mixed_equilibria(g);
    EXPECT_TRUE(rep.degenerate);
    EXPECT_GT(rep.singular_systems, 0u);
    for (const auto& e : rep.equilibria) EXPECT_TRUE(no_profitable_deviation(g, e.profile));
}

TEST(MixedEquilibria, GenericTwoByTwoMatchesClosedForm) {
    // a generic 2x2 game has its pure equilibria plus, when the indifference
    // probabilities lie strictly inside (0, 1), one fully mixed equilibrium
    Rng rng(91);
    for (int k = 0; k < 300; ++k) {
        auto g = random_square(rng, 2);
        auto a = [&](int r, int c) { return g.payoffs[r][c].u1; };
        auto b = [&](int r, int c) { return g.payoffs[r][c].u2; };
        const Q den_q = a(0, 0) - a(0, 1) - a(1, 0) + a(1, 1);
        const Q den_p = b(0, 0) - b(0, 1) - b(1, 0) + b(1, 1);
        if (den_q == 0 || den_p == 0 || a(0, 0) == a(1, 0) || a(0, 1) == a(1, 1) || b(0, 0) == b(0, 1) ||
            b(1, 0) == b(1, 1))
            continue;
        std::size_t expected = 0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                if (a(r, c) > a(1 - r, c) && b(r, c) > b(r, 1 - c)) ++expected;
        const Q qy = (a(1, 1) - a(0, 1)) / den_q;  // column 0 weight
        const Q px = (b(1, 1) - b(1, 0)) / den_p;  // row 0 weight
        const bool interior = qy > 0 && qy < 1 && px > 0 && px < 1;
        if (interior) ++expected;
        auto rep = mixed_equilibria(g);
        EXPECT_EQ(rep.equilibria.size(), expected);
        EXPECT_FALSE(rep.degenerate);
        if (interior) {
            MixedProfile<Q> s{{px, 1 - px}, {qy, 1 - qy}};
            EXPECT_TRUE(contains(rep, s));
        }
    }
}

TEST(MixedEquilibria, EveryReportedProfilePassesDeviationCheck) {
    Rng rng(92);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int k = 0; k < 20; ++k) {
            auto g = random_square(rng, n);
            auto rep = mixed_equilibria(g);
            EXPECT_FALSE(rep.equilibria.empty());  // a finite game always has one
            for (const auto& e : rep.equilibria) {
                EXPECT_TRUE(no_profitable_deviation(g, e.profile));
                Q s1 = 0, s2 = 0;
                for (const auto& x : e.profile.p1) s1 += x;
                for (const auto& x : e.profile.p2) s2 += x;
                EXPECT_EQ(s1, 1);
                EXPECT_EQ(s2, 1);
            }
        }
    }
}

TEST(MixedEquilibria, FloatingPointAgreesWithExact) {
    auto exact = mixed_equilibria(pd_c_extension());
    auto approx = mixed_equilibria(to_double(pd_c_extension()));
    ASSERT_EQ(exact.equilibria.size(), approx.equilibria.size());
    for (std::size_t k = 0; k < exact.equilibria.size(); ++k)
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_NEAR(to_double(exact.equilibria[k].profile.p1[i]), approx.equilibria[k].profile.p1[i], 1e-9);
            EXPECT_NEAR(to_double(exact.equilibria[k].profile.p2[i]), approx.equilibria[k].profile.p2[i], 1e-9);
        }
}

TEST(MixedEquilibria, OrderingIsDeterministic) {
    auto rep = mixed_equilibria(pd_c_extension());
    for (std::size_t k = 1; k < rep.equilibria.size(); ++k) {
        const auto& a = rep.equilibria[k - 1];
        const auto& b = rep.equilibria[k];
        EXPECT_LE(a.support1.size() + a.support2.size(), b.support1.size() + b.support2.size());
    }
    EXPECT_EQ(rep.equilibria.front().kind, EquilibriumKind::pure);
}

TEST(MixedEquilibria, RejectsLargeGames) {
    Rng rng(93);
    EXPECT_THROW(mixed_equilibria(random_square(rng, 7)), std::invalid_argument);
}

TEST(MixedEquilibria, InvariantUnderStrongIsomorphism) {
    // equilibria of an isomorphic variant's extension are the relabelled
    // equilibria of the original's
    Rng rng(94);
    int checked = 0;
    for (auto id : {ClassId::C, ClassId::D1, ClassId::E2}) {
        for (int k = 0; k < 6; ++k) {
            auto game = random_integer_game(rng, 9);
            auto set = strategy_set(default_params(id));
            auto base = build_extended_game(game, std::span<const LabeledStrategy>(set));
            auto rep = mixed_equilibria(base);
            if (rep.degenerate) continue;
            for (auto v : {IsoVariant::rows_swapped, IsoVariant::columns_swapped, IsoVariant::both_swapped}) {
                auto other = build_extended_game(iso_variant(game, v), std::span<const LabeledStrategy>(set));
                auto w = strongly_isomorphic(base, other);
                ASSERT_TRUE(w);
                auto rep2 = mixed_equilibria(other);
                ASSERT_EQ(rep2.equilibria.size(), rep.equilibria.size());
                for (const auto& e : rep.equilibria) EXPECT_TRUE(contains(rep2, permute_profile(e.profile, *w)));
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 10);
}

TEST(BestResponse, IndifferenceAtKnownMix) {
    auto g = pd_c_extension();
    std::vector<Q> mix = {0, Q(1, 3), Q(2, 3), 0};
    auto v = best_response_values(g, mix, Side::row);
    EXPECT_EQ(v[1], Q(23, 12));
    EXPECT_EQ(v[2], Q(23, 12));
    EXPECT_LE(v[0], Q(23, 12));
    EXPECT_LE(v[3], Q(23, 12));
    auto w = best_response_values(g, mix, Side::column);
    EXPECT_EQ(w[1], Q(23, 12));
    EXPECT_EQ(w[2], Q(23, 12));
}

TEST(BestResponse, PureOpponentGivesColumn) {
    Rng rng(95);
    auto g = random_square(rng, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        std::vector<Q> e(4, Q(0));
        e[j] = 1;
        auto v = best_response_values(g, e, Side::row);
        auto w = best_response_values(g, e, Side::column);
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_EQ(v[i], g(i, j).u1);
            EXPECT_EQ(w[i], g(j, i).u2);
        }
    }
}

TEST(BestResponse, UniformOnConstantGame) {
    ExtendedGame<Q> g;
    g.labels = {"a", "b", "c"};
    g.payoffs.assign(3, std::vector<PayoffPair<Q>>(3, PayoffPair<Q>{Q(5), Q(5)}));
    auto v = best_response_values(g, std::vector<Q>(3, Q(1, 3)), Side::row);
    for (const auto& x : v) EXPECT_EQ(x, Q(5));
    EXPECT_THROW(best_response_values(g, std::vector<Q>(2, Q(1, 2)), Side::row), DimensionMismatch);
}

TEST(IsEquilibrium, RejectsInvalidProfiles) {
    auto g = from_bimatrix(prisoners_dilemma<Q>());
    EXPECT_TRUE(is_equilibrium(g, pure_profile(2, 1, 1)));
    EXPECT_FALSE(is_equilibrium(g, pure_profile(2, 0, 0)));
    MixedProfile<Q> bad{{Q(1, 2), Q(1, 3)}, {0, 1}};
    EXPECT_FALSE(is_equilibrium(g, bad));
    MixedProfile<Q> neg{{Q(-1), Q(2)}, {0, 1}};
    EXPECT_FALSE(is_equilibrium(g, neg));
}

TEST(SolveLinear, UniqueNoneFamily) {
    auto u = solve_linear<Q>({{2, 1}, {1, 3}}, {3, 5});
    EXPECT_EQ(u.status, SolveStatus::unique);
    EXPECT_EQ(u.x, (std::vector<Q>{Q(4, 5), Q(7, 5)}));
    auto n = solve_linear<Q>({{1, 1}, {2, 2}}, {1, 3});
    EXPECT_EQ(n.status, SolveStatus::none);
    auto f = solve_linear<Q>({{1, 1}, {2, 2}}, {1, 2});
    EXPECT_EQ(f.status, SolveStatus::family);
    auto d = solve_linear<double>({{1e-3, 1}, {1, 1}}, {1, 2});
    EXPECT_EQ(d.status, SolveStatus::unique);
    EXPECT_NEAR(d.x[0], 1.0 / 0.999, 1e-12);
}

TEST(SolveLinear, RandomSystemsSatisfied) {
    Rng rng(96);
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 1 + k % 5;
        std::vector<std::vector<Q>> a(n, std::vector<Q>(n));
        std::vector<Q> b(n);
        for (auto& row : a)
            for (auto& x : row) x = dist(rng);
        for (auto& x : b) x = dist(rng);
        auto s = solve_linear(a, b);
        if (s.status == SolveStatus::none) continue;
        for (std::size_t i = 0; i < n; ++i) {
            Q lhs = 0;
            for (std::size_t j = 0; j < n; ++j) lhs += a[i][j] * s.x[j];
            EXPECT_EQ(lhs, b[i]);
        }
    }
}
