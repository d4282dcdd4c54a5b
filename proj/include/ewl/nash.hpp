#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ewl/invariance.hpp"

namespace ewl {

template <class Scalar>
struct MixedProfile {
    std::vector<Scalar> p1;
    std::vector<Scalar> p2;

    friend bool operator==(const MixedProfile&, const MixedProfile&) = default;
};

enum class EquilibriumKind { pure, mixed };

template <class Scalar>
struct Equilibrium {
    MixedProfile<Scalar> profile;
    PayoffPair<Scalar> payoff;
    EquilibriumKind kind = EquilibriumKind::pure;
    std::vector<std::size_t> support1;
    std::vector<std::size_t> support2;
    /// Lies in a solution family of a singular support system.
    bool sampled_from_family = false;
};

template <class Scalar>
struct EquilibriumReport {
    std::vector<Equilibrium<Scalar>> equilibria;
    /// A singular support system produced an equilibrium: the game has a
    /// continuum of equilibria and only samples of it are listed.
    bool degenerate = false;
    std::size_t singular_systems = 0;
};

inline constexpr std::size_t kMaxNashStrategies = 6;

/// Expected payoff of each own pure strategy against `opponent_mix`.
template <class Scalar>
std::vector<Scalar> best_response_values(const ExtendedGame<Scalar>& g, const std::vector<Scalar>& opponent_mix,
                                         Side side) {
    const std::size_t n = g.size();
    if (opponent_mix.size() != n) throw DimensionMismatch("mixed strategy length does not match game size");
    std::vector<Scalar> out(n, Scalar(0));
    for (std::size_t own = 0; own < n; ++own)
        for (std::size_t other = 0; other < n; ++other) {
            if (side == Side::row)
                out[own] += g(own, other).u1 * opponent_mix[other];
            else
                out[own] += g(other, own).u2 * opponent_mix[other];
        }
    return out;
}

template <class Scalar>
PayoffPair<Scalar> expected_payoff(const ExtendedGame<Scalar>& g, const MixedProfile<Scalar>& s) {
    PayoffPair<Scalar> out{Scalar(0), Scalar(0)};
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c) {
            Scalar w = s.p1[r] * s.p2[c];
            out.u1 += w * g(r, c).u1;
            out.u2 += w * g(r, c).u2;
        }
    return out;
}

/// No pure deviation improves either player's payoff by more than `tol`.
template <class Scalar>
bool is_equilibrium(const ExtendedGame<Scalar>& g, const MixedProfile<Scalar>& s, double tol = kPayoffTolerance) {
    const std::size_t n = g.size();
    if (s.p1.size() != n || s.p2.size() != n) throw DimensionMismatch("profile length does not match game size");
    for (const auto* mix : {&s.p1, &s.p2}) {
        Scalar total(0);
        for (const auto& x : *mix) {
            if (!at_most(Scalar(0), x, tol)) return false;
            total += x;
        }
        if (!nearly_equal(total, Scalar(1), tol)) return false;
    }
    const auto value = expected_payoff(g, s);
    for (const auto& v : best_response_values(g, s.p2, Side::row))
        if (!at_most(v, value.u1, tol)) return false;
    for (const auto& v : best_response_values(g, s.p1, Side::column))
        if (!at_most(v, value.u2, tol)) return false;
    return true;
}

/// Cells (r, c) where r is a best reply to c and c to r; ties included.
template <class Scalar>
std::vector<std::pair<std::size_t, std::size_t>> pure_equilibria(const ExtendedGame<Scalar>& g,
                                                                 double tol = kPayoffTolerance) {
    const std::size_t n = g.size();
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            bool ok = true;
            for (std::size_t r2 = 0; r2 < n && ok; ++r2) ok = at_most(g(r2, c).u1, g(r, c).u1, tol);
            for (std::size_t c2 = 0; c2 < n && ok; ++c2) ok = at_most(g(r, c2).u2, g(r, c).u2, tol);
            if (ok) out.emplace_back(r, c);
        }
    return out;
}

enum class SolveStatus { unique, none, family };

template <class Scalar>
struct LinearSolution {
    SolveStatus status = SolveStatus::none;
    std::vector<Scalar> x;  ///< particular solution, free variables set to 0
};

/// Gaussian elimination on the augmented system [a | b]; exact for
/// Rational, partial pivoting with a 1e-12 zero threshold for double.
template <class Scalar>
LinearSolution<Scalar> solve_linear(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    auto is_tiny = [](const Scalar& v) {
        if constexpr (is_exact_scalar_v<Scalar>)
            return v == 0;
        else
            return std::abs(v) <= 1e-12;
    };
    auto magnitude = [](const Scalar& v) {
        if constexpr (is_exact_scalar_v<Scalar>)
            return v == 0 ? 0.0 : 1.0;
        else
            return std::abs(v);
    };

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < rows; ++i)
            if (magnitude(a[i][c]) > magnitude(a[best][c])) best = i;
        if (is_tiny(a[best][c])) continue;
        std::swap(a[r], a[best]);
        std::swap(b[r], b[best]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_tiny(a[i][c])) continue;
            Scalar f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!is_tiny(b[i])) return {SolveStatus::none, {}};

    LinearSolution<Scalar> out;
    out.x.assign(cols, Scalar(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) out.x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    out.status = pivot_col.size() == cols ? SolveStatus::unique : SolveStatus::family;
    return out;
}

namespace detail {

inline std::vector<std::size_t> members(unsigned mask, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) out.push_back(i);
    return out;
}

/// Mix over `own` making every strategy in `other` indifferent, for the
/// player whose payoff is u(own_index, other_index).
template <class Scalar, class Payoff>
LinearSolution<Scalar> indifference_mix(const std::vector<std::size_t>& own, const std::vector<std::size_t>& other,
                                        Payoff payoff) {
    const std::size_t unknowns = own.size() + 1;  // weights, then the common value
    std::vector<std::vector<Scalar>> a;
    std::vector<Scalar> b;
    for (auto o : other) {
        std::vector<Scalar> row(unknowns, Scalar(0));
        for (std::size_t k = 0; k < own.size(); ++k) row[k] = payoff(own[k], o);
        row.back() = Scalar(-1);
        a.push_back(std::move(row));
        b.push_back(Scalar(0));
    }
    std::vector<Scalar> total(unknowns, Scalar(1));
    total.back() = Scalar(0);
    a.push_back(std::move(total));
    b.push_back(Scalar(1));
    return solve_linear(std::move(a), std::move(b));
}

template <class Scalar>
bool same_mix(const std::vector<Scalar>& a, const std::vector<Scalar>& b, double tol) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!nearly_equal(a[i], b[i], tol)) return false;
    return true;
}

template <class Scalar>
bool lex_less(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

/// All equilibria found by support enumeration over every pair of nonempty
/// supports. Pure equilibria appear as singleton supports. Singular support
/// systems contribute one sampled member of their solution family.
template <class Scalar>
EquilibriumReport<Scalar> mixed_equilibria(const ExtendedGame<Scalar>& g, double tol = kPayoffTolerance) {
    g.validate();
    const std::size_t n = g.size();
    if (n > kMaxNashStrategies) throw std::invalid_argument("support enumeration supports at most 6 strategies");

    EquilibriumReport<Scalar> report;
    const unsigned full = (1u << n) - 1;
    for (unsigned rows = 1; rows <= full; ++rows)
        for (unsigned cols = 1; cols <= full; ++cols) {
            const auto rs = detail::members(rows, n);
            const auto cs = detail::members(cols, n);
            // Player 2 mixes over cs so that player 1 is indifferent on rs.
            auto y = detail::indifference_mix<Scalar>(cs, rs, [&](std::size_t c, std::size_t r) { return g(r, c).u1; });
            if (y.status == SolveStatus::none) continue;
            auto x = detail::indifference_mix<Scalar>(rs, cs, [&](std::size_t r, std::size_t c) { return g(r, c).u2; });
            if (x.status == SolveStatus::none) continue;
            const bool family = y.status == SolveStatus::family || x.status == SolveStatus::family;
            if (family) ++report.singular_systems;

            MixedProfile<Scalar> s{std::vector<Scalar>(n, Scalar(0)), std::vector<Scalar>(n, Scalar(0))};
            for (std::size_t k = 0; k < rs.size(); ++k) s.p1[rs[k]] = x.x[k];
            for (std::size_t k = 0; k < cs.size(); ++k) s.p2[cs[k]] = y.x[k];
            if constexpr (!is_exact_scalar_v<Scalar>) {
                for (auto* mix : {&s.p1, &s.p2})
                    for (auto& v : *mix)
                        if (std::abs(v) <= tol) v = 0;
            }
            if (!is_equilibrium(g, s, tol)) continue;
            report.degenerate = report.degenerate || family;

            bool duplicate = false;
            for (auto& e : report.equilibria)
                if (detail::same_mix(e.profile.p1, s.p1, tol) && detail::same_mix(e.profile.p2, s.p2, tol)) {
                    e.sampled_from_family = e.sampled_from_family || family;
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;

            Equilibrium<Scalar> e;
            e.profile = s;
            e.payoff = expected_payoff(g, s);
            for (std::size_t i = 0; i < n; ++i) {
                if (!is_zero(s.p1[i], tol)) e.support1.push_back(i);
                if (!is_zero(s.p2[i], tol)) e.support2.push_back(i);
            }
            e.kind = e.support1.size() == 1 && e.support2.size() == 1 ? EquilibriumKind::pure : EquilibriumKind::mixed;
            e.sampled_from_family = family;
            report.equilibria.push_back(std::move(e));
        }

    std::sort(report.equilibria.begin(), report.equilibria.end(), [](const auto& a, const auto& b) {
        if (a.support1.size() + a.support2.size() != b.support1.size() + b.support2.size())
            return a.support1.size() + a.support2.size() < b.support1.size() + b.support2.size();
        if (a.support1 != b.support1) return a.support1 < b.support1;
        if (a.support2 != b.support2) return a.support2 < b.support2;
        if (a.profile.p1 != b.profile.p1) return detail::lex_less(a.profile.p1, b.profile.p1);
        return detail::lex_less(a.profile.p2, b.profile.p2);
    });
    return report;
}

/// Relabels a profile of g1 into g2 along an isomorphism witness.
template <class Scalar>
MixedProfile<Scalar> permute_profile(const MixedProfile<Scalar>& s, const IsomorphismWitness& w) {
    MixedProfile<Scalar> out{std::vector<Scalar>(s.p1.size()), std::vector<Scalar>(s.p2.size())};
    for (std::size_t i = 0; i < s.p1.size(); ++i) out.p1[w.row_perm[i]] = s.p1[i];
    for (std::size_t i = 0; i < s.p2.size(); ++i) out.p2[w.col_perm[i]] = s.p2[i];
    return out;
}

}  // namespace ewl
