#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ewl/payoff.hpp"

namespace ewl {

/// Which player's strategy is being compared: the row player (player 1)
/// or the column player (player 2).
enum class Side { row, column };

enum class Arithmetic { automatic, exact, floating };

struct EquivalenceOptions {
    Arithmetic arithmetic = Arithmetic::automatic;
    double tolerance = 1e-10;
    /// Random SU(2) opponents added to the finite opponent set. Nonzero
    /// values force floating-point comparison.
    std::size_t sampled_opponents = 0;
    std::uint64_t seed = 20240917;
    /// Optional memo for exact coefficients; not thread-safe.
    ExactCoefficientCache* cache = nullptr;
};

/// Haar-distributed SU(2) strategy (floating angles).
template <class Rng>
StrategyParams random_strategy(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    // cos^2(theta/2) uniform in [0,1] gives the Haar marginal.
    double theta = 2 * std::acos(std::sqrt(unit(rng)));
    return canonicalize(Angle::from_radians(theta), Angle::from_radians(phase(rng)), Angle::from_radians(phase(rng)));
}

/// Payoff equivalence of one player's strategies against a fixed, finite
/// set of opponent strategies, decided on coefficient vectors (so it holds
/// for every game at once).
class EquivalenceRelation {
  public:
    struct Signature {
        std::vector<std::array<double, 4>> approx;
        std::optional<std::vector<ExactCoefficients>> exact;
    };

    EquivalenceRelation(std::span<const StrategyParams> opponents, Side side, EquivalenceOptions options = {})
        : opponents_(opponents.begin(), opponents.end()), side_(side), options_(options) {
        if (opponents_.empty()) throw std::invalid_argument("equivalence needs a nonempty opponent set");
        if (options_.sampled_opponents > 0) {
            if (options_.arithmetic == Arithmetic::exact)
                throw std::invalid_argument("sampled SU(2) opponents cannot be compared exactly");
            std::mt19937_64 rng(options_.seed);
            for (std::size_t k = 0; k < options_.sampled_opponents; ++k) opponents_.push_back(random_strategy(rng));
        }
        bool all_exact = true;
        for (const auto& o : opponents_) all_exact = all_exact && o.is_exact();
        if (options_.arithmetic == Arithmetic::exact && !all_exact)
            throw InexactValue("exact equivalence needs opponents with rational-of-pi angles");
        exact_capable_ = all_exact && options_.arithmetic != Arithmetic::floating;
    }

    Side side() const { return side_; }
    const std::vector<StrategyParams>& opponents() const { return opponents_; }

    Signature signature(const StrategyParams& p) const {
        Signature sig;
        sig.approx.reserve(opponents_.size());
        for (const auto& o : opponents_) {
            auto c = side_ == Side::row ? coefficients(p, o) : coefficients(o, p);
            sig.approx.push_back(c.c);
        }
        if (exact_capable_ && p.is_exact()) {
            std::vector<ExactCoefficients> ex;
            ex.reserve(opponents_.size());
            for (const auto& o : opponents_) ex.push_back(exact_for(side_ == Side::row ? p : o, side_ == Side::row ? o : p));
            sig.exact = std::move(ex);
        } else if (options_.arithmetic == Arithmetic::exact) {
            throw InexactValue("exact equivalence needs rational-of-pi angles: " + p.to_string());
        }
        return sig;
    }

    bool equivalent(const Signature& a, const Signature& b) const {
        if (a.exact && b.exact) {
            for (std::size_t o = 0; o < a.exact->size(); ++o)
                for (int k = 0; k < 4; ++k)
                    if (!(*a.exact)[o][k].equal_canonical((*b.exact)[o][k])) return false;
            return true;
        }
        for (std::size_t o = 0; o < a.approx.size(); ++o)
            for (int k = 0; k < 4; ++k)
                if (std::abs(a.approx[o][k] - b.approx[o][k]) > options_.tolerance) return false;
        return true;
    }

    bool equivalent(const StrategyParams& p, const StrategyParams& q) const {
        return equivalent(signature(p), signature(q));
    }

  private:
    ExactCoefficients exact_for(const StrategyParams& p1, const StrategyParams& p2) const {
        return options_.cache ? options_.cache->get(p1, p2) : exact_coefficients(p1, p2);
    }

    std::vector<StrategyParams> opponents_;
    Side side_;
    EquivalenceOptions options_;
    bool exact_capable_ = false;
};

/// True iff p and q give identical coefficient vectors against every
/// opponent (player 1: coefficients(p, o); player 2: coefficients(o, p)).
inline bool are_equivalent(const StrategyParams& p, const StrategyParams& q, std::span<const StrategyParams> opponents,
                           Side side = Side::row, EquivalenceOptions options = {}) {
    return EquivalenceRelation(opponents, side, options).equivalent(p, q);
}

/// Partition of indices 0..n-1 into payoff-equivalence classes. Classes are
/// ordered by their smallest member; members ascend within a class.
struct EquivClassPartition {
    std::vector<std::vector<std::size_t>> classes;

    std::size_t class_of(std::size_t index) const {
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (auto m : classes[c])
                if (m == index) return c;
        throw std::out_of_range("index not in partition");
    }
    std::size_t size() const { return classes.size(); }
};

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

inline EquivClassPartition partition_from_signatures(const EquivalenceRelation& rel,
                                                     const std::vector<EquivalenceRelation::Signature>& sigs) {
    const std::size_t n = sigs.size();
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (uf.find(i) != uf.find(j) && rel.equivalent(sigs[i], sigs[j])) uf.unite(i, j);
    EquivClassPartition out;
    std::vector<std::optional<std::size_t>> slot(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t root = uf.find(i);
        if (!slot[root]) {
            slot[root] = out.classes.size();
            out.classes.emplace_back();
        }
        out.classes[*slot[root]].push_back(i);
    }
    return out;
}

}  // namespace detail

/// Partition of a finite strategy set, using the set itself as opponents.
inline EquivClassPartition partition(std::span<const StrategyParams> strategies, Side side = Side::row,
                                     EquivalenceOptions options = {}) {
    if (strategies.empty()) throw std::invalid_argument("cannot partition an empty strategy set");
    EquivalenceRelation rel(strategies, side, options);
    std::vector<EquivalenceRelation::Signature> sigs;
    sigs.reserve(strategies.size());
    for (const auto& s : strategies) sigs.push_back(rel.signature(s));
    return detail::partition_from_signatures(rel, sigs);
}

}  // namespace ewl
