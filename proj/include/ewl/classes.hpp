#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ewl/invariance.hpp"

namespace ewl {

/// The eight extension matrices of the five permissible families A-E.
enum class ClassId { A1, A2, B, C, D1, D2, E1, E2 };

inline constexpr std::array<ClassId, 8> kAllClasses = {ClassId::A1, ClassId::A2, ClassId::B,  ClassId::C,
                                                       ClassId::D1, ClassId::D2, ClassId::E1, ClassId::E2};

enum class Family { A, B, C, D, E };

inline Family family_of(ClassId id) {
    switch (id) {
        case ClassId::A1:
        case ClassId::A2: return Family::A;
        case ClassId::B: return Family::B;
        case ClassId::C: return Family::C;
        case ClassId::D1:
        case ClassId::D2: return Family::D;
        case ClassId::E1:
        case ClassId::E2: return Family::E;
    }
    return Family::A;
}

inline std::string_view class_name(ClassId id) {
    static constexpr std::array<std::string_view, 8> names = {"A1", "A2", "B", "C", "D1", "D2", "E1", "E2"};
    return names[static_cast<std::size_t>(id)];
}

inline std::string_view family_name(Family f) {
    static constexpr std::array<std::string_view, 5> names = {"A", "B", "C", "D", "E"};
    return names[static_cast<std::size_t>(f)];
}

inline std::optional<ClassId> parse_class_id(std::string_view text) {
    for (ClassId id : kAllClasses)
        if (class_name(id) == text) return id;
    return std::nullopt;
}

inline std::optional<Family> parse_family(std::string_view text) {
    for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::E})
        if (family_name(f) == text) return f;
    return std::nullopt;
}

/// (alpha1, beta1, alpha2, beta2).
using PhaseTuple = std::array<Angle, 4>;

/// Parameters of U1 = U(theta1, alpha1, beta1) and U2 = U(pi - theta1, alpha2, beta2).
struct ClassParams {
    ClassId class_id = ClassId::B;
    Angle theta1;
    Angle alpha1, beta1, alpha2, beta2;

    Angle theta2() const { return Angle::pi() - theta1; }
    PhaseTuple phases() const { return {alpha1, beta1, alpha2, beta2}; }

    friend bool operator==(const ClassParams&, const ClassParams&) = default;
};

namespace detail {

inline const Angle& pi_over(std::int64_t den) {
    static const std::array<Angle, 5> table = {Angle::pi(), Angle::pi(), Angle::pi_multiple(1, 2), Angle::pi(),
                                               Angle::pi_multiple(1, 4)};
    return table[static_cast<std::size_t>(den)];
}

struct Congruence {
    const char* name;
    Angle value;
    Angle target;
    Angle modulus;
};

inline void require(ClassId id, const Congruence& c) {
    if (!congruent(c.value, c.target, c.modulus))
        throw InvalidClassParams("class " + std::string(class_name(id)) + " requires " + c.name + " (got " +
                                 c.value.to_string() + ")");
}

inline bool open_interval(const Angle& theta) {
    if (theta.is_exact()) return theta.fraction() > PiFraction(0) && theta.fraction() < PiFraction(1);
    return theta.radians() > 0 && theta.radians() < std::numbers::pi;
}

}  // namespace detail

/// Throws InvalidClassParams naming the first violated condition.
inline void validate(const ClassParams& p) {
    using detail::Congruence;
    using detail::pi_over;
    using detail::require;
    const ClassId id = p.class_id;
    const Angle zero = Angle::zero();
    const Angle pi = Angle::pi();
    const Angle quarter = pi_over(4), half = pi_over(2);

    auto theta_is = [&](const Angle& target, const char* name) {
        if (!nearly_equal(p.theta1, target, 1e-12))
            throw InvalidClassParams("class " + std::string(class_name(id)) + " requires " + name + " (got theta1 = " +
                                     p.theta1.to_string() + ")");
    };
    auto theta_open = [&] {
        if (!detail::open_interval(p.theta1))
            throw InvalidClassParams("class " + std::string(class_name(id)) +
                                     " requires theta1 in the open interval (0, pi) (got " + p.theta1.to_string() + ")");
    };

    switch (id) {
        case ClassId::A1:
            theta_is(zero, "theta1 = 0");
            require(id, {"alpha1 + beta2 = 0 (mod pi)", p.alpha1 + p.beta2, zero, pi});
            break;
        case ClassId::A2:
            theta_is(pi, "theta1 = pi");
            require(id, {"alpha2 + beta1 = 0 (mod pi)", p.alpha2 + p.beta1, zero, pi});
            break;
        case ClassId::B:
            theta_is(half, "theta1 = pi/2");
            require(id, {"alpha1 = pi/4 (mod pi/2)", p.alpha1, quarter, half});
            require(id, {"beta1 = pi/4 (mod pi/2)", p.beta1, quarter, half});
            require(id, {"alpha2 - beta1 = 0 (mod pi)", p.alpha2 - p.beta1, zero, pi});
            require(id, {"beta2 - alpha1 = 0 (mod pi)", p.beta2 - p.alpha1, zero, pi});
            break;
        case ClassId::C:
            theta_open();
            require(id, {"alpha1 = pi/4 (mod pi/2)", p.alpha1, quarter, half});
            require(id, {"beta1 = pi/4 (mod pi/2)", p.beta1, quarter, half});
            require(id, {"alpha2 - beta1 = pi/2 (mod pi)", p.alpha2 - p.beta1, half, pi});
            require(id, {"beta2 - alpha1 = pi/2 (mod pi)", p.beta2 - p.alpha1, half, pi});
            break;
        case ClassId::D1:
        case ClassId::D2: {
            theta_open();
            const bool first = id == ClassId::D1;
            const Angle target = first ? zero : half;
            const char* names[4] = {first ? "alpha1 = 0 (mod pi)" : "alpha1 = pi/2 (mod pi)",
                                    first ? "beta1 = 0 (mod pi)" : "beta1 = pi/2 (mod pi)",
                                    first ? "alpha2 = 0 (mod pi)" : "alpha2 = pi/2 (mod pi)",
                                    first ? "beta2 = 0 (mod pi)" : "beta2 = pi/2 (mod pi)"};
            const PhaseTuple ph = p.phases();
            for (int k = 0; k < 4; ++k) require(id, {names[k], ph[k], target, pi});
            break;
        }
        case ClassId::E1:
        case ClassId::E2: {
            theta_open();
            const bool first = id == ClassId::E1;
            const Angle outer = first ? zero : half;  // alpha1, beta2
            const Angle inner = first ? half : zero;  // beta1, alpha2
            require(id, {first ? "alpha1 = 0 (mod pi)" : "alpha1 = pi/2 (mod pi)", p.alpha1, outer, pi});
            require(id, {first ? "beta1 = pi/2 (mod pi)" : "beta1 = 0 (mod pi)", p.beta1, inner, pi});
            require(id, {first ? "alpha2 = pi/2 (mod pi)" : "alpha2 = 0 (mod pi)", p.alpha2, inner, pi});
            require(id, {first ? "beta2 = 0 (mod pi)" : "beta2 = pi/2 (mod pi)", p.beta2, outer, pi});
            break;
        }
    }
}

/// Representative parameters. `theta1` applies to C/D/E (default pi/3);
/// `alpha` is alpha1 for A1 and alpha2 for A2 (default 0), the dependent
/// phase being chosen on the constraint line and the free phases set to 0.
inline ClassParams default_params(ClassId id, std::optional<Angle> theta1 = std::nullopt,
                                  std::optional<Angle> alpha = std::nullopt) {
    auto q = [](std::int64_t num, std::int64_t den) { return Angle::pi_multiple(num, den); };
    const Angle t = theta1.value_or(q(1, 3));
    const Angle a = alpha.value_or(Angle::zero()).mod_two_pi();
    const Angle z = Angle::zero();
    ClassParams p;
    p.class_id = id;
    switch (id) {
        case ClassId::A1: p = {id, z, a, z, z, (Angle::pi() - a).mod_two_pi()}; break;
        case ClassId::A2: p = {id, Angle::pi(), z, (Angle::pi() - a).mod_two_pi(), a, z}; break;
        case ClassId::B: p = {id, q(1, 2), q(1, 4), q(3, 4), q(3, 4), q(1, 4)}; break;
        case ClassId::C: p = {id, t, q(1, 4), q(1, 4), q(3, 4), q(3, 4)}; break;
        case ClassId::D1: p = {id, t, z, z, z, z}; break;
        case ClassId::D2: p = {id, t, q(1, 2), q(1, 2), q(1, 2), q(1, 2)}; break;
        case ClassId::E1: p = {id, t, z, q(1, 2), q(1, 2), z}; break;
        case ClassId::E2: p = {id, t, q(1, 2), z, z, q(1, 2)}; break;
    }
    return p;
}

/// Explicitly given parameters; the rest come from default_params. For A1
/// (A2) a given alpha1 (alpha2) also fixes the dependent phase beta2 (beta1)
/// unless that is given too.
struct ClassOverrides {
    std::optional<Angle> theta1, alpha1, beta1, alpha2, beta2;
};

inline ClassParams make_class_params(ClassId id, const ClassOverrides& o) {
    std::optional<Angle> a = id == ClassId::A1 ? o.alpha1 : id == ClassId::A2 ? o.alpha2 : std::nullopt;
    ClassParams p = default_params(id, o.theta1, a);
    if (o.theta1) p.theta1 = *o.theta1;
    if (o.alpha1) p.alpha1 = *o.alpha1;
    if (o.beta1) p.beta1 = *o.beta1;
    if (o.alpha2) p.alpha2 = *o.alpha2;
    if (o.beta2) p.beta2 = *o.beta2;
    return p;
}

/// The explicit Cartesian-product unions of discrete phase solutions.
/// Counts: B 64, C 64, D 32, E 32. Family A is a continuum: NotDiscrete.
inline std::vector<PhaseTuple> enumerate_discrete_solutions(Family family) {
    using Set = std::vector<Angle>;
    auto q = [](std::int64_t num, std::int64_t den) { return Angle::pi_multiple(num, den); };
    const Set odd_a = {q(1, 4), q(5, 4)};  // pi/4 + k pi
    const Set odd_b = {q(3, 4), q(7, 4)};  // 3pi/4 + k pi
    const Set even_0 = {Angle::zero(), Angle::pi()};
    const Set even_h = {q(1, 2), q(3, 2)};

    std::vector<PhaseTuple> out;
    auto product = [&](const Set& s1, const Set& s2, const Set& s3, const Set& s4) {
        for (const auto& a : s1)
            for (const auto& b : s2)
                for (const auto& c : s3)
                    for (const auto& d : s4) out.push_back({a, b, c, d});
    };
    switch (family) {
        case Family::A:
            throw NotDiscrete(
                "family A is continuous: theta1 = 0 with alpha1 + beta2 = 0 (mod pi), or theta1 = pi with "
                "alpha2 + beta1 = 0 (mod pi)");
        case Family::B:
            product(odd_a, odd_a, odd_a, odd_a);
            product(odd_a, odd_b, odd_b, odd_a);
            product(odd_b, odd_a, odd_a, odd_b);
            product(odd_b, odd_b, odd_b, odd_b);
            break;
        case Family::C:
            product(odd_a, odd_a, odd_b, odd_b);
            product(odd_b, odd_b, odd_a, odd_a);
            product(odd_a, odd_b, odd_a, odd_b);
            product(odd_b, odd_a, odd_b, odd_a);
            break;
        case Family::D:
            product(even_0, even_0, even_0, even_0);
            product(even_h, even_h, even_h, even_h);
            break;
        case Family::E:
            product(even_0, even_h, even_h, even_0);
            product(even_h, even_0, even_0, even_h);
            break;
    }
    return out;
}

inline std::vector<StrategyParams> strategy_params(const ClassParams& p) {
    validate(p);
    return {strategies::identity(), strategies::flip(), canonicalize(p.theta1, p.alpha1, p.beta1),
            canonicalize(p.theta2(), p.alpha2, p.beta2)};
}

/// [I, iX, U1, U2] with labels "I", "iX", "U1", "U2".
inline std::vector<LabeledStrategy> strategy_set(const ClassParams& p) {
    auto params = strategy_params(p);
    return {{"I", params[0]}, {"iX", params[1]}, {"U1", params[2]}, {"U2", params[3]}};
}

/// cos^2(x) in the requested scalar type; exact (InexactValue if irrational)
/// for Rational.
template <class Scalar>
Scalar cos_squared(const Angle& x) {
    if constexpr (is_exact_scalar_v<Scalar>) {
        const PiFraction& f = x.fraction();
        const int n = required_order({f});
        auto c = Cyclotomic::cos_pi(f, n);
        auto r = (c * c).as_rational();
        if (!r) throw InexactValue("cos^2(" + x.to_string() + ") is irrational; use floating-point mode");
        return *r;
    } else {
        const double c = std::cos(x.radians());
        return c * c;
    }
}

/// Weights on Gamma^0..Gamma^3 of the four blocks of the class matrix.
template <class Scalar>
BlockCoefficients<Scalar> block_coefficients(const ClassParams& p) {
    validate(p);
    const Scalar zero(0), one(1);
    BlockCoefficients<Scalar> b;
    b.e = {one, zero, zero, zero};
    switch (p.class_id) {
        case ClassId::A1: {
            const Scalar a = cos_squared<Scalar>(p.alpha1);
            const Scalar bb = cos_squared<Scalar>(2 * p.alpha1);
            b.f = {a, zero, zero, one - a};
            b.g = b.f;
            b.h = {bb, zero, zero, one - bb};
            return b;
        }
        case ClassId::A2: {
            const Scalar a = cos_squared<Scalar>(p.alpha2);
            const Scalar bb = cos_squared<Scalar>(2 * p.alpha2);
            b.f = {zero, one - a, a, zero};
            b.g = {zero, a, one - a, zero};
            b.h = {one - bb, zero, zero, bb};
            return b;
        }
        case ClassId::B: {
            const Scalar quarter = one / Scalar(4);
            b.f = {quarter, quarter, quarter, quarter};
            b.g = b.f;
            b.h = b.f;
            return b;
        }
        default: break;
    }
    const Scalar t = cos_squared<Scalar>(p.theta1.half());
    const Scalar s = one - t;
    const Scalar two(2);
    const std::array<Scalar, 4> mixed_h = {t * t, t * s, t * s, s * s};
    switch (p.class_id) {
        case ClassId::C:
            b.f = {t / two, s / two, s / two, t / two};
            b.g = b.f;
            b.h = {s * s, t * s, t * s, t * t};
            break;
        case ClassId::D1:
            b.f = {t, zero, s, zero};
            b.g = {t, s, zero, zero};
            b.h = mixed_h;
            break;
        case ClassId::D2:
            b.f = {zero, s, zero, t};
            b.g = {zero, zero, s, t};
            b.h = mixed_h;
            break;
        case ClassId::E1:
            b.f = {t, s, zero, zero};
            b.g = {t, zero, s, zero};
            b.h = mixed_h;
            break;
        case ClassId::E2:
            b.f = {zero, zero, s, t};
            b.g = {zero, s, zero, t};
            b.h = mixed_h;
            break;
        default: break;
    }
    return b;
}

/// The class matrix from its block formula (independent of the closed-form
/// payoff; equal to build_extended_game over strategy_set(p)).
template <class Scalar>
ExtendedGame<Scalar> extension_matrix(const ClassParams& p, const Bimatrix2<Scalar>& game) {
    return assemble_blocks(block_coefficients<Scalar>(p), game);
}

enum class LimitDirection { to_zero, to_pi };

struct LimitSample {
    double theta1 = 0;       ///< evaluation point
    double distance = 0;     ///< distance of theta1 from the limit
    double max_deviation = 0;
    double bound = 0;
    bool within = false;
};

struct LimitReport {
    ClassId source = ClassId::D1;
    LimitDirection direction = LimitDirection::to_zero;
    ClassParams target;
    std::vector<LimitSample> samples;
    bool converged = false;
};

/// The A-class matrix a D or E matrix tends to as theta1 -> 0 or pi.
inline ClassParams limit_target(ClassId source, LimitDirection direction) {
    const Angle half = Angle::pi_multiple(1, 2);
    const bool to_zero = direction == LimitDirection::to_zero;
    switch (source) {
        case ClassId::D1: return to_zero ? default_params(ClassId::A1) : default_params(ClassId::A2);
        case ClassId::D2:
            return to_zero ? default_params(ClassId::A1, std::nullopt, half) : default_params(ClassId::A2, std::nullopt, half);
        case ClassId::E1: return to_zero ? default_params(ClassId::A1) : default_params(ClassId::A2, std::nullopt, half);
        case ClassId::E2: return to_zero ? default_params(ClassId::A1, std::nullopt, half) : default_params(ClassId::A2);
        default: throw std::invalid_argument("limits are defined for D1, D2, E1 and E2 only");
    }
}

/// Evaluates the source matrix at theta1 = eps (or pi - eps) for each eps
/// and compares it entrywise with the A-class target. The admissible
/// deviation is 10 * w * max(1, max|payoff|), w = sin^2(eps/2) being the
/// weight that vanishes in the limit.
inline LimitReport limit_check(ClassId source, LimitDirection direction, const Bimatrix2<double>& game,
                               const std::vector<double>& distances = {1e-3, 1e-6}) {
    LimitReport report;
    report.source = source;
    report.direction = direction;
    report.target = limit_target(source, direction);
    const auto target = extension_matrix(report.target, game);

    double scale = 1.0;
    for (int k = 0; k < 4; ++k) scale = std::max({scale, std::abs(game.flat(k).u1), std::abs(game.flat(k).u2)});

    report.converged = true;
    for (double eps : distances) {
        ClassParams p = default_params(source);
        const double theta = direction == LimitDirection::to_zero ? eps : std::numbers::pi - eps;
        p.theta1 = Angle::from_radians(theta);
        const auto m = extension_matrix(p, game);
        LimitSample s;
        s.theta1 = theta;
        s.distance = eps;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                s.max_deviation = std::max({s.max_deviation, std::abs(m(r, c).u1 - target(r, c).u1),
                                            std::abs(m(r, c).u2 - target(r, c).u2)});
        const double w = std::pow(std::sin(eps / 2), 2);
        s.bound = 10 * w * scale;
        s.within = s.max_deviation <= s.bound;
        report.converged = report.converged && s.within;
        report.samples.push_back(s);
    }
    return report;
}

}  // namespace ewl
