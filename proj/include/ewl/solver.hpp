#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ewl/classes.hpp"

namespace ewl {

struct LatticeSpec {
    std::vector<Angle> theta_values;
    /// Phase spacing as a multiple of pi: 1/4 (default) or 1/8.
    PiFraction phase_step{1, 4};
    /// When set, theta2 ranges over these values independently of theta1;
    /// otherwise theta2 = pi - theta1.
    std::optional<std::vector<Angle>> theta2_values;
};

/// 0, step, 2 step, ... below 2pi.
inline std::vector<Angle> phase_lattice(const PiFraction& step) {
    if (step <= PiFraction(0) || step.numerator() != 1 || step.denominator() > 64)
        throw std::invalid_argument("phase step must be pi/m with 1 <= m <= 64");
    std::vector<Angle> out;
    for (std::int64_t k = 0; k < 2 * step.denominator(); ++k) out.push_back(Angle::from_fraction(step * k));
    return out;
}

struct LatticePoint {
    Angle theta1;
    Angle theta2;
    PhaseTuple phases;  ///< (alpha1, beta1, alpha2, beta2)

    StrategyParams u1() const { return canonicalize(theta1, phases[0], phases[1]); }
    StrategyParams u2() const { return canonicalize(theta2, phases[2], phases[3]); }
    std::vector<StrategyParams> strategy_params() const {
        return {strategies::identity(), strategies::flip(), u1(), u2()};
    }
};

struct SolutionHit {
    LatticePoint point;
    std::optional<ClassId> class_id;  ///< nullopt: unclassified
    /// U2 coincides with phi(U1) up to the joint pi shift of both phases.
    bool phi_pair = false;
};

struct SearchResult {
    std::vector<SolutionHit> hits;
    std::size_t points_examined = 0;

    /// Hits per family letter ("A".."E") and "UNCLASSIFIED".
    std::map<std::string, std::size_t> counts() const {
        std::map<std::string, std::size_t> out;
        for (auto f : {"A", "B", "C", "D", "E", "UNCLASSIFIED"}) out[f] = 0;
        for (const auto& h : hits)
            ++out[h.class_id ? std::string(family_name(family_of(*h.class_id))) : "UNCLASSIFIED"];
        return out;
    }
    std::size_t unclassified() const { return counts().at("UNCLASSIFIED"); }
};

/// The class whose defining conditions the point satisfies, if any.
inline std::optional<ClassId> attribute(const LatticePoint& pt) {
    if (!(pt.theta2 == Angle::pi() - pt.theta1) && !nearly_equal(pt.theta2, Angle::pi() - pt.theta1, 1e-12))
        return std::nullopt;
    for (ClassId id : kAllClasses) {
        ClassParams p{id, pt.theta1, pt.phases[0], pt.phases[1], pt.phases[2], pt.phases[3]};
        try {
            validate(p);
            return id;
        } catch (const InvalidClassParams&) {
        }
    }
    return std::nullopt;
}

inline bool is_phi_pair(const LatticePoint& pt) {
    const StrategyParams image = phi(pt.u1());
    const StrategyParams u2 = pt.u2();
    if (!nearly_equal(image.theta, u2.theta, 1e-12)) return false;
    for (int shift = 0; shift < 2; ++shift) {
        const Angle d = Angle::pi_multiple(shift, 1);
        if (nearly_equal((image.alpha + d).mod_two_pi(), u2.alpha, 1e-12) &&
            nearly_equal((image.beta + d).mod_two_pi(), u2.beta, 1e-12))
            return true;
    }
    return false;
}

/// Runs criterion_holds on {I, iX, U1, U2} for every lattice point (exact
/// arithmetic), attributes each hit to a class and returns hits in
/// lexicographic lattice order.
inline SearchResult search_solutions(const LatticeSpec& spec) {
    if (spec.theta_values.empty()) throw std::invalid_argument("lattice needs at least one theta value");
    for (const auto& t : spec.theta_values) {
        if (!t.is_exact()) throw InexactValue("lattice theta values must be rational multiples of pi");
        if (t.fraction() < PiFraction(0) || t.fraction() > PiFraction(1))
            throw DomainError("lattice theta " + t.to_string() + " lies outside [0, pi]");
    }
    const auto phases = phase_lattice(spec.phase_step);
    ExactCoefficientCache cache;
    EquivalenceOptions options;
    options.arithmetic = Arithmetic::exact;
    options.cache = &cache;

    SearchResult result;
    for (const auto& theta1 : spec.theta_values) {
        std::vector<Angle> seconds = spec.theta2_values.value_or(std::vector<Angle>{Angle::pi() - theta1});
        for (const auto& theta2 : seconds)
            for (const auto& a1 : phases)
                for (const auto& b1 : phases)
                    for (const auto& a2 : phases)
                        for (const auto& b2 : phases) {
                            LatticePoint pt{theta1, theta2, {a1, b1, a2, b2}};
                            ++result.points_examined;
                            auto set = pt.strategy_params();
                            if (!criterion_holds(set, options).holds) continue;
                            result.hits.push_back({pt, attribute(pt), is_phi_pair(pt)});
                        }
    }
    return result;
}

struct NamedRelation {
    std::string name;
    bool satisfied = false;
};

namespace detail {

/// sin^2 or cos^2 of an angle compared exactly when possible.
struct TrigEval {
    static bool equal(const Angle& x, bool x_sin, const Angle& y, bool y_sin) {
        if (x.is_exact() && y.is_exact()) {
            const int n = required_order({x.fraction(), y.fraction()});
            auto sq = [n](const Angle& a, bool use_sin) {
                auto v = use_sin ? Cyclotomic::sin_pi(a.fraction(), n) : Cyclotomic::cos_pi(a.fraction(), n);
                return v * v;
            };
            return sq(x, x_sin) == sq(y, y_sin);
        }
        auto sq = [](const Angle& a, bool use_sin) {
            double v = use_sin ? std::sin(a.radians()) : std::cos(a.radians());
            return v * v;
        };
        return std::abs(sq(x, x_sin) - sq(y, y_sin)) <= 1e-12;
    }
    static bool sin_zero(const Angle& x) { return congruent(x, Angle::zero(), Angle::pi()); }
    static bool cos_zero(const Angle& x) { return congruent(x, Angle::pi_multiple(1, 2), Angle::pi()); }
};

}  // namespace detail

/// Evaluates the relations between the parameters that every solution with
/// 0 < theta1 < pi obeys. For theta1 in {0, pi} only the reduced relations
/// sin^2(2 beta2) = sin^2(2 alpha1) = sin^2(alpha1 - beta2) (theta1 = 0) or
/// their mirror image in (alpha2, beta1) (theta1 = pi) are reported.
inline std::vector<NamedRelation> check_relations(const Angle& theta1, const Angle& theta2, const PhaseTuple& phases) {
    using detail::TrigEval;
    const auto& [a1, b1, a2, b2] = phases;
    const bool at_zero = nearly_equal(theta1, Angle::zero(), 1e-12);
    const bool at_pi = nearly_equal(theta1, Angle::pi(), 1e-12);
    if (at_zero)
        return {{"sin^2(2 beta2) = sin^2(2 alpha1)", TrigEval::equal(2 * b2, true, 2 * a1, true)},
                {"sin^2(2 alpha1) = sin^2(alpha1 - beta2)", TrigEval::equal(2 * a1, true, a1 - b2, true)}};
    if (at_pi)
        return {{"sin^2(2 beta1) = sin^2(2 alpha2)", TrigEval::equal(2 * b1, true, 2 * a2, true)},
                {"sin^2(2 alpha2) = sin^2(alpha2 - beta1)", TrigEval::equal(2 * a2, true, a2 - b1, true)}};
    return {
        {"sin^2(theta2/2) = cos^2(theta1/2)", TrigEval::equal(theta2.half(), true, theta1.half(), false)},
        {"sin^2(alpha2) = sin^2(beta1)", TrigEval::equal(a2, true, b1, true)},
        {"sin^2(beta2) = sin^2(alpha1)", TrigEval::equal(b2, true, a1, true)},
        {"sin(2 beta1) cos(2 alpha1) = 0", TrigEval::sin_zero(2 * b1) || TrigEval::cos_zero(2 * a1)},
        {"sin 2(alpha1 - beta1) = 0", TrigEval::sin_zero(2 * (a1 - b1))},
    };
}

inline std::vector<NamedRelation> check_relations(const LatticePoint& pt) {
    return check_relations(pt.theta1, pt.theta2, pt.phases);
}

/// Which of the four difference scenarios a tuple falls in: 1 when
/// alpha2 - beta1 and alpha1 - beta2 are both multiples of pi, 2 when only
/// the first is (the second being pi/2 off), 3 for the converse, 4 when both
/// are pi/2 off; nullopt otherwise.
inline std::optional<int> difference_case(const PhaseTuple& phases) {
    const auto& [a1, b1, a2, b2] = phases;
    const Angle pi = Angle::pi(), half = Angle::pi_multiple(1, 2), zero = Angle::zero();
    auto kind = [&](const Angle& d) -> int {
        if (congruent(d, zero, pi)) return 0;
        if (congruent(d, half, pi)) return 1;
        return -1;
    };
    const int first = kind(a2 - b1), second = kind(a1 - b2);
    if (first < 0 || second < 0) return std::nullopt;
    return 1 + second + 2 * first;
}

}  // namespace ewl
