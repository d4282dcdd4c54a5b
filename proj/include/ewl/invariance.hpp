#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ewl/equivalence.hpp"
#include "ewl/payoff.hpp"

namespace ewl {

/// The classical game and its three isomorphic counterparts. The numeric
/// value is a bitmask (bit 0: rows swapped, bit 1: columns swapped), so
/// composition is XOR and the four variants form the Klein four-group.
enum class IsoVariant : unsigned { identity = 0, rows_swapped = 1, columns_swapped = 2, both_swapped = 3 };

inline constexpr std::array<IsoVariant, 4> kAllVariants = {IsoVariant::identity, IsoVariant::rows_swapped,
                                                           IsoVariant::columns_swapped, IsoVariant::both_swapped};

inline IsoVariant compose(IsoVariant a, IsoVariant b) {
    return static_cast<IsoVariant>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}

inline std::string_view variant_name(IsoVariant v) {
    switch (v) {
        case IsoVariant::identity: return "Gamma0";
        case IsoVariant::rows_swapped: return "Gamma1";
        case IsoVariant::columns_swapped: return "Gamma2";
        case IsoVariant::both_swapped: return "Gamma3";
    }
    return "?";
}

template <class Scalar>
Bimatrix2<Scalar> iso_variant(const Bimatrix2<Scalar>& game, IsoVariant v) {
    const int row_bit = static_cast<unsigned>(v) & 1u;
    const int col_bit = (static_cast<unsigned>(v) >> 1) & 1u;
    Bimatrix2<Scalar> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = game(i ^ row_bit, j ^ col_bit);
    return out;
}

/// A square n x n bimatrix game with named strategies (shared by both
/// players).
template <class Scalar>
struct ExtendedGame {
    std::vector<std::string> labels;
    std::vector<std::vector<PayoffPair<Scalar>>> payoffs;

    std::size_t size() const { return payoffs.size(); }
    const PayoffPair<Scalar>& operator()(std::size_t r, std::size_t c) const { return payoffs[r][c]; }
    PayoffPair<Scalar>& operator()(std::size_t r, std::size_t c) { return payoffs[r][c]; }

    void validate() const {
        const std::size_t n = payoffs.size();
        if (n == 0) throw DimensionMismatch("empty game");
        for (const auto& row : payoffs)
            if (row.size() != n) throw DimensionMismatch("game is not square");
        if (labels.size() != n) throw DimensionMismatch("label count does not match game size");
        std::unordered_set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != n) throw std::invalid_argument("strategy labels must be distinct");
    }

    friend bool operator==(const ExtendedGame&, const ExtendedGame&) = default;
};

template <class Scalar>
ExtendedGame<Scalar> from_bimatrix(const Bimatrix2<Scalar>& g, std::vector<std::string> labels = {"I", "iX"}) {
    ExtendedGame<Scalar> out;
    out.labels = std::move(labels);
    out.payoffs.assign(2, std::vector<PayoffPair<Scalar>>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.payoffs[i][j] = g(i, j);
    return out;
}

template <class Scalar>
ExtendedGame<double> to_double(const ExtendedGame<Scalar>& g) {
    ExtendedGame<double> out;
    out.labels = g.labels;
    out.payoffs.assign(g.size(), std::vector<PayoffPair<double>>(g.size()));
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c) out.payoffs[r][c] = {to_double(g(r, c).u1), to_double(g(r, c).u2)};
    return out;
}

struct LabeledStrategy {
    std::string label;
    StrategyParams params;
};

/// The EWL game over a finite strategy set S (same set for both players):
/// payoffs[i][j] = payoff_closed_form(game, S[i], S[j]).
template <class Scalar>
ExtendedGame<Scalar> build_extended_game(const Bimatrix2<Scalar>& game, std::span<const LabeledStrategy> strategies) {
    if (strategies.empty()) throw std::invalid_argument("strategy set must be nonempty");
    const std::size_t n = strategies.size();
    ExtendedGame<Scalar> out;
    for (const auto& s : strategies) out.labels.push_back(s.label);
    out.payoffs.assign(n, std::vector<PayoffPair<Scalar>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.payoffs[i][j] = payoff_closed_form(game, strategies[i].params, strategies[j].params);
    return out;
}

/// Bijections witnessing g1 ~ g2: g1(i, j) = g2(row_perm[i], col_perm[j]).
struct IsomorphismWitness {
    std::vector<std::size_t> row_perm;
    std::vector<std::size_t> col_perm;

    friend bool operator==(const IsomorphismWitness&, const IsomorphismWitness&) = default;
};

namespace detail {

/// Kuhn's augmenting-path matching. compatible[l][r]; returns match of each
/// left vertex or nullopt when no perfect matching exists.
inline std::optional<std::vector<std::size_t>> perfect_matching(const std::vector<std::vector<bool>>& compatible,
                                                                std::size_t right_count) {
    const std::size_t left_count = compatible.size();
    if (left_count != right_count) return std::nullopt;
    std::vector<std::optional<std::size_t>> owner(right_count);
    std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t l, std::vector<bool>& seen) {
        for (std::size_t r = 0; r < right_count; ++r) {
            if (!compatible[l][r] || seen[r]) continue;
            seen[r] = true;
            if (!owner[r] || augment(*owner[r], seen)) {
                owner[r] = l;
                return true;
            }
        }
        return false;
    };
    for (std::size_t l = 0; l < left_count; ++l) {
        std::vector<bool> seen(right_count, false);
        if (!augment(l, seen)) return std::nullopt;
    }
    std::vector<std::size_t> match(left_count);
    for (std::size_t r = 0; r < right_count; ++r) match[*owner[r]] = r;
    return match;
}

}  // namespace detail

/// Searches every row permutation; for each, the column bijection is a
/// perfect matching between columns whose permuted entries agree for both
/// players. Complete (finds a witness whenever one exists). Player exchange
/// is not considered.
template <class Scalar>
std::optional<IsomorphismWitness> strongly_isomorphic(const ExtendedGame<Scalar>& g1, const ExtendedGame<Scalar>& g2,
                                                      double tol = kPayoffTolerance) {
    const std::size_t n = g1.size();
    if (g2.size() != n) throw DimensionMismatch("games have different sizes");
    for (std::size_t r = 0; r < n; ++r)
        if (g1.payoffs[r].size() != n || g2.payoffs[r].size() != n) throw DimensionMismatch("game is not square");

    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::vector<std::vector<bool>> compatible(n, std::vector<bool>(n));
    do {
        for (std::size_t c1 = 0; c1 < n; ++c1)
            for (std::size_t c2 = 0; c2 < n; ++c2) {
                bool ok = true;
                for (std::size_t r = 0; r < n && ok; ++r) ok = nearly_equal(g1(r, c1), g2(rows[r], c2), tol);
                compatible[c1][c2] = ok;
            }
        if (auto cols = detail::perfect_matching(compatible, n)) return IsomorphismWitness{rows, *cols};
    } while (std::next_permutation(rows.begin(), rows.end()));
    return std::nullopt;
}

/// True when `w` maps g1 onto g2 entry by entry.
template <class Scalar>
bool is_witness(const ExtendedGame<Scalar>& g1, const ExtendedGame<Scalar>& g2, const IsomorphismWitness& w,
                double tol = kPayoffTolerance) {
    const std::size_t n = g1.size();
    if (g2.size() != n || w.row_perm.size() != n || w.col_perm.size() != n) return false;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (!nearly_equal(g1(r, c), g2(w.row_perm[r], w.col_perm[c]), tol)) return false;
    return true;
}

/// Outcome of the quotient criterion {[U_j]} = {[phi(U_j)]} for one player.
struct SideCriterion {
    Side side = Side::row;
    EquivClassPartition classes;        ///< classes of S
    EquivClassPartition image_classes;  ///< classes of phi(S), indices into S
    /// For each class of phi(S), the class of S it is matched with.
    std::optional<std::vector<std::size_t>> matching;
    bool holds = false;
};

struct CriterionReport {
    std::vector<StrategyParams> images;  ///< phi(U_j)
    SideCriterion row;
    SideCriterion column;
    bool holds = false;
};

namespace detail {

inline SideCriterion side_criterion(std::span<const StrategyParams> strategies, const std::vector<StrategyParams>& images,
                                    Side side, const EquivalenceOptions& options) {
    EquivalenceRelation rel(strategies, side, options);
    std::vector<EquivalenceRelation::Signature> own, img;
    for (const auto& s : strategies) own.push_back(rel.signature(s));
    for (const auto& s : images) img.push_back(rel.signature(s));

    SideCriterion out;
    out.side = side;
    out.classes = partition_from_signatures(rel, own);
    out.image_classes = partition_from_signatures(rel, img);

    std::vector<std::vector<bool>> compatible(out.image_classes.size(), std::vector<bool>(out.classes.size(), false));
    for (std::size_t x = 0; x < out.image_classes.size(); ++x)
        for (std::size_t y = 0; y < out.classes.size(); ++y)
            for (auto i : out.image_classes.classes[x]) {
                for (auto j : out.classes.classes[y])
                    if (rel.equivalent(img[i], own[j])) {
                        compatible[x][y] = true;
                        break;
                    }
                if (compatible[x][y]) break;
            }
    out.matching = perfect_matching(compatible, out.classes.size());
    out.holds = out.matching.has_value();
    return out;
}

}  // namespace detail

/// Checks {[U_j] : U_j in S} = {[phi(U_j)] : U_j in S} with payoff
/// equivalence taken against the opponents S, for both players. Holds iff
/// the classes of phi(S) match the classes of S one-to-one.
inline CriterionReport criterion_holds(std::span<const StrategyParams> strategies, EquivalenceOptions options = {}) {
    if (strategies.empty()) throw std::invalid_argument("strategy set must be nonempty");
    CriterionReport report;
    for (const auto& s : strategies) report.images.push_back(phi(s));
    report.row = detail::side_criterion(strategies, report.images, Side::row, options);
    report.column = detail::side_criterion(strategies, report.images, Side::column, options);
    report.holds = report.row.holds && report.column.holds;
    return report;
}

inline std::vector<StrategyParams> params_of(std::span<const LabeledStrategy> strategies) {
    std::vector<StrategyParams> out;
    for (const auto& s : strategies) out.push_back(s.params);
    return out;
}

struct VariantCheck {
    IsoVariant variant = IsoVariant::identity;
    std::optional<IsomorphismWitness> witness;
    bool isomorphic() const { return witness.has_value(); }
};

struct InvarianceReport {
    std::vector<VariantCheck> checks;  ///< Gamma1, Gamma2, Gamma3 against Gamma0
    bool all_isomorphic = false;
};

/// Builds the EWL extension of each isomorphic variant of `game` over S and
/// searches for a strong isomorphism to the extension of `game` itself.
template <class Scalar>
InvarianceReport verify_invariance_end_to_end(const Bimatrix2<Scalar>& game, std::span<const LabeledStrategy> strategies,
                                              double tol = kPayoffTolerance) {
    InvarianceReport report;
    auto base = build_extended_game(game, strategies);
    report.all_isomorphic = true;
    for (IsoVariant v : {IsoVariant::rows_swapped, IsoVariant::columns_swapped, IsoVariant::both_swapped}) {
        auto other = build_extended_game(iso_variant(game, v), strategies);
        VariantCheck check{v, strongly_isomorphic(base, other, tol)};
        report.all_isomorphic = report.all_isomorphic && check.isomorphic();
        report.checks.push_back(std::move(check));
    }
    return report;
}

/// Coefficients of a 4x4 game built from 2x2 blocks, each block a linear
/// combination sum_i w_i Gamma^i of the four variants:
///     [[ e, f ],
///      [ g, h ]]
template <class Scalar>
struct BlockCoefficients {
    std::array<Scalar, 4> e{}, f{}, g{}, h{};
};

/// sum_i w_i Gamma^i.
template <class Scalar>
Bimatrix2<Scalar> combine_variants(const std::array<Scalar, 4>& w, const Bimatrix2<Scalar>& game) {
    Bimatrix2<Scalar> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = {Scalar(0), Scalar(0)};
    for (unsigned v = 0; v < 4; ++v) {
        auto gv = iso_variant(game, static_cast<IsoVariant>(v));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out(i, j) = out(i, j) + w[v] * gv(i, j);
    }
    return out;
}

template <class Scalar>
ExtendedGame<Scalar> assemble_blocks(const BlockCoefficients<Scalar>& b, const Bimatrix2<Scalar>& game,
                                     std::vector<std::string> labels = {"I", "iX", "U1", "U2"}) {
    ExtendedGame<Scalar> out;
    out.labels = std::move(labels);
    out.payoffs.assign(4, std::vector<PayoffPair<Scalar>>(4));
    const std::array<const std::array<Scalar, 4>*, 4> quads = {&b.e, &b.f, &b.g, &b.h};
    for (int q = 0; q < 4; ++q) {
        auto block = combine_variants(*quads[q], game);
        const int r0 = (q / 2) * 2, c0 = (q % 2) * 2;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out.payoffs[r0 + i][c0 + j] = block(i, j);
    }
    return out;
}

/// Confirms that a block-combination game stays strongly isomorphic under
/// every isomorphic transformation of its input game, and that the block
/// permutation (rows 1<->2, 3<->4 for a row swap; columns likewise) is a
/// witness. Evaluated on a game with eight distinct payoff values.
template <class Scalar>
bool block_combination_invariant(const BlockCoefficients<Scalar>& coeffs) {
    const auto generic = make_bimatrix<Scalar>(Scalar(2), Scalar(-3), Scalar(7), Scalar(11), Scalar(-5), Scalar(13),
                                               Scalar(17), Scalar(-19));
    auto base = assemble_blocks(coeffs, generic);
    for (IsoVariant v : {IsoVariant::rows_swapped, IsoVariant::columns_swapped, IsoVariant::both_swapped}) {
        auto moved = assemble_blocks(coeffs, iso_variant(generic, v));
        const std::size_t row_bit = static_cast<unsigned>(v) & 1u;
        const std::size_t col_bit = (static_cast<unsigned>(v) >> 1) & 1u;
        IsomorphismWitness block{{0 ^ row_bit, 1 ^ row_bit, 2 ^ row_bit, 3 ^ row_bit},
                                 {0 ^ col_bit, 1 ^ col_bit, 2 ^ col_bit, 3 ^ col_bit}};
        if (!is_witness(base, moved, block)) return false;
        if (!strongly_isomorphic(base, moved)) return false;
    }
    return true;
}

}  // namespace ewl
