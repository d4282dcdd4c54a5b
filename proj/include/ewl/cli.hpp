#pragma once

#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ewl/io.hpp"

namespace ewl::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kInputError = 2 };

enum class Format { json, csv, pretty };

struct RunConfig {
    std::string command;
    std::optional<std::string> game;  ///< file path or inline JSON; PD when absent
    std::optional<std::string> class_name;
    ClassOverrides overrides;
    std::optional<std::string> strategies;  ///< file path or inline JSON array
    bool exact = true;
    Format format = Format::json;
    bool oracle_check = false;
    bool extend_first = false;
    std::vector<std::string> thetas;
    std::optional<std::string> theta2s;
    std::string step = "1/4 pi";
    std::string p1, p2;
    std::string direction = "both";
};

/// Reported as exit code 1.
class VerificationFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::optional<Angle> parse_optional_angle(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return Angle::parse(text);
}

template <class Scalar>
Bimatrix2<Scalar> load_game(const RunConfig& cfg) {
    if (!cfg.game) return prisoners_dilemma<Scalar>();
    return io::bimatrix_from_json<Scalar>(io::load_json(*cfg.game));
}

inline void require_exact(const std::vector<LabeledStrategy>& set, bool exact) {
    if (!exact) return;
    for (const auto& s : set)
        if (!s.params.is_exact())
            throw InexactValue("exact mode needs angles given as rational multiples of pi (strategy " + s.label +
                               "); use --mode float");
}

inline std::optional<ClassParams> class_params(const RunConfig& cfg) {
    if (!cfg.class_name) return std::nullopt;
    auto id = parse_class_id(*cfg.class_name);
    if (!id) throw ParseError("unknown class '" + *cfg.class_name + "' (expected A1, A2, B, C, D1, D2, E1, E2)");
    return make_class_params(*id, cfg.overrides);
}

inline std::vector<LabeledStrategy> strategy_set(const RunConfig& cfg) {
    std::vector<LabeledStrategy> set;
    if (auto p = class_params(cfg))
        set = ewl::strategy_set(*p);
    else if (cfg.strategies)
        set = io::strategies_from_json(io::load_json(*cfg.strategies));
    else
        throw ParseError("a strategy set is required: --class or --strategies");
    require_exact(set, cfg.exact);
    return set;
}

template <class Scalar>
ExtendedGame<Scalar> extended(const RunConfig& cfg, const Bimatrix2<Scalar>& game) {
    if (auto p = class_params(cfg)) {
        require_exact(ewl::strategy_set(*p), cfg.exact);
        return extension_matrix(*p, game);
    }
    return build_extended_game(game, std::span<const LabeledStrategy>(strategy_set(cfg)));
}

/// Recomputes every entry with the statevector simulation.
template <class Scalar>
void oracle_check(const ExtendedGame<Scalar>& g, const Bimatrix2<Scalar>& game,
                  const std::vector<LabeledStrategy>& set, std::ostream& err) {
    const auto classical = to_double(game);
    double worst = 0;
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c) {
            auto o = payoff_oracle(classical, set[r].params, set[c].params);
            worst = std::max({worst, std::abs(o.u1 - to_double(g(r, c).u1)), std::abs(o.u2 - to_double(g(r, c).u2))});
        }
    if (worst > 1e-10) {
        std::ostringstream msg;
        msg << "oracle check failed: max deviation " << worst << " from the statevector simulation";
        throw VerificationFailure(msg.str());
    }
    err << "oracle check passed (max deviation " << worst << ")\n";
}

template <class Scalar>
void emit_game(const ExtendedGame<Scalar>& g, Format format, std::ostream& out) {
    switch (format) {
        case Format::json: out << io::to_json(g).dump(2) << '\n'; break;
        case Format::csv: io::write_csv(out, g); break;
        case Format::pretty: io::write_pretty(out, g); break;
    }
}

template <class Scalar>
int run_extend(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto game = load_game<Scalar>(cfg);
    const auto g = extended(cfg, game);
    if (cfg.oracle_check) {
        auto set = class_params(cfg) ? ewl::strategy_set(*class_params(cfg)) : strategy_set(cfg);
        oracle_check(g, game, set, err);
    }
    emit_game(g, cfg.format, out);
    return kSuccess;
}

template <class Scalar>
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto game = load_game<Scalar>(cfg);
    const auto set = strategy_set(cfg);
    const auto report = verify_invariance_end_to_end(game, std::span<const LabeledStrategy>(set));
    const auto params = params_of(set);
    EquivalenceOptions opts;
    opts.arithmetic = cfg.exact ? Arithmetic::exact : Arithmetic::floating;
    const auto criterion = criterion_holds(params, opts);
    if (cfg.format == Format::json) {
        io::json j = {{"variants", io::to_json(report)},
                      {"all_isomorphic", report.all_isomorphic},
                      {"criterion_holds", criterion.holds}};
        out << j.dump(2) << '\n';
    } else {
        for (const auto& c : report.checks) {
            out << variant_name(c.variant) << ": " << (c.isomorphic() ? "isomorphic" : "NOT isomorphic");
            if (c.witness) {
                out << " rows";
                for (auto r : c.witness->row_perm) out << ' ' << r;
                out << " cols";
                for (auto r : c.witness->col_perm) out << ' ' << r;
            }
            out << '\n';
        }
        out << "class criterion: " << (criterion.holds ? "holds" : "fails") << '\n';
    }
    if (!report.all_isomorphic) {
        err << "invariance fails for at least one isomorphic variant\n";
        return kVerificationFailed;
    }
    return kSuccess;
}

inline int run_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    LatticeSpec spec;
    for (const auto& t : cfg.thetas.empty() ? std::vector<std::string>{"1/2 pi"} : cfg.thetas)
        spec.theta_values.push_back(Angle::parse(t));
    if (cfg.theta2s) {
        std::vector<Angle> seconds;
        std::stringstream ss(*cfg.theta2s);
        for (std::string item; std::getline(ss, item, ',');) seconds.push_back(Angle::parse(item));
        spec.theta2_values = seconds;
    }
    const Angle step = Angle::parse(cfg.step);
    if (!step.is_exact()) throw ParseError("--step must be a rational multiple of pi such as \"1/4 pi\"");
    spec.phase_step = step.fraction();
    const auto result = search_solutions(spec);

    if (cfg.format == Format::json) {
        io::json hits = io::json::array();
        for (const auto& h : result.hits) hits.push_back(io::to_json(h));
        out << io::json{{"hits", hits}, {"counts", result.counts()}, {"points", result.points_examined}}.dump(2)
            << '\n';
    } else {
        io::write_csv_header(out);
        for (const auto& h : result.hits) io::write_csv_row(out, h);
    }

    const auto counts = result.counts();
    std::size_t phi_pairs = 0;
    for (const auto& h : result.hits) phi_pairs += (!h.class_id && h.phi_pair) ? 1 : 0;
    err << "points " << result.points_examined << ", hits " << result.hits.size() << ":";
    for (const auto& [name, n] : counts) err << ' ' << name << '=' << n;
    err << " (unclassified phi-pairs " << phi_pairs << ")\n";
    for (const auto& theta : spec.theta_values) {
        const bool zero = theta == Angle::zero(), pi = theta == Angle::pi();
        if (!zero && !pi) continue;
        std::size_t total = 0, satisfied = 0;
        for (const auto& h : result.hits) {
            if (!(h.point.theta1 == theta)) continue;
            ++total;
            const auto& ph = h.point.phases;
            const Angle sum = zero ? ph[0] + ph[3] : ph[2] + ph[1];
            satisfied += congruent(sum, Angle::zero(), Angle::pi()) ? 1 : 0;
        }
        err << "theta1 = " << theta.to_string() << ": " << satisfied << " of " << total << " hits satisfy "
            << (zero ? "alpha1 + beta2 = 0 (mod pi)" : "alpha2 + beta1 = 0 (mod pi)") << '\n';
    }
    return kSuccess;
}

template <class Scalar>
int run_equilibria(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ExtendedGame<Scalar> g;
    const io::json source = cfg.game ? io::load_json(*cfg.game) : io::to_json(prisoners_dilemma<Scalar>());
    if (cfg.extend_first) {
        const auto game = io::bimatrix_from_json<Scalar>(source);
        g = extended(cfg, game);
        if (cfg.oracle_check) {
            auto set = class_params(cfg) ? ewl::strategy_set(*class_params(cfg)) : strategy_set(cfg);
            oracle_check(g, game, set, err);
        }
    } else {
        g = io::extended_game_from_json<Scalar>(source);
    }
    const auto report = mixed_equilibria(g);
    if (report.degenerate)
        err << "degenerate game: some equilibria belong to a continuum; one member of each is listed\n";
    if (cfg.format == Format::json) {
        out << io::to_json(report).dump(2) << '\n';
    } else {
        for (const auto& e : report.equilibria) {
            out << (e.kind == EquilibriumKind::pure ? "pure " : "mixed");
            auto mix = [&](const std::vector<Scalar>& p) {
                std::string s = "(";
                for (std::size_t k = 0; k < p.size(); ++k) {
                    if (k) s += ", ";
                    s += format_scalar(p[k]);
                }
                return s + ")";
            };
            if (e.kind == EquilibriumKind::pure)
                out << " (" << g.labels[e.support1[0]] << ", " << g.labels[e.support2[0]] << ")";
            else
                out << " p1=" << mix(e.profile.p1) << " p2=" << mix(e.profile.p2);
            out << " payoff " << io::format_pair(e.payoff) << '\n';
        }
    }
    return kSuccess;
}

inline StrategyParams parse_triple(const std::string& text) {
    if (!text.empty() && (text.front() == '{' || text.front() == '[')) return io::strategy_from_json(io::load_json(text));
    std::vector<Angle> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(Angle::parse(item));
    if (parts.size() != 3) throw ParseError("strategy '" + text + "' must be \"theta, alpha, beta\"");
    return canonicalize(parts[0], parts[1], parts[2]);
}

template <class Scalar>
int run_payoff(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto game = load_game<Scalar>(cfg);
    const std::vector<LabeledStrategy> set = {{"p1", parse_triple(cfg.p1)}, {"p2", parse_triple(cfg.p2)}};
    require_exact(set, cfg.exact);
    const auto payoff = payoff_closed_form(game, set[0].params, set[1].params);
    const auto c = coefficients_as<Scalar>(set[0].params, set[1].params);
    if (cfg.oracle_check) {
        auto o = payoff_oracle(to_double(game), set[0].params, set[1].params);
        double dev = std::max(std::abs(o.u1 - to_double(payoff.u1)), std::abs(o.u2 - to_double(payoff.u2)));
        if (dev > 1e-10) throw VerificationFailure("oracle check failed: deviation " + std::to_string(dev));
        err << "oracle check passed (max deviation " << dev << ")\n";
    }
    if (cfg.format == Format::json) {
        io::json coeffs = io::json::array();
        for (const auto& x : c.c) coeffs.push_back(io::scalar_to_json(x));
        out << io::json{{"payoff", io::pair_to_json(payoff)}, {"coefficients", coeffs}}.dump(2) << '\n';
    } else if (cfg.format == Format::csv) {
        out << "u1,u2,c00,c01,c10,c11\n"
            << format_scalar(payoff.u1) << ',' << format_scalar(payoff.u2);
        for (const auto& x : c.c) out << ',' << format_scalar(x);
        out << '\n';
    } else {
        out << "payoff " << io::format_pair(payoff) << "\ncoefficients";
        for (const auto& x : c.c) out << ' ' << format_scalar(x);
        out << '\n';
    }
    return kSuccess;
}

/// Convergence table of the D/E matrices towards their A-class limits.
inline int run_limits(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const auto game = load_game<double>(cfg);
    std::vector<ClassId> sources = {ClassId::D1, ClassId::D2, ClassId::E1, ClassId::E2};
    if (cfg.class_name) {
        auto id = parse_class_id(*cfg.class_name);
        if (!id || family_of(*id) == Family::A || family_of(*id) == Family::B || family_of(*id) == Family::C)
            throw ParseError("limits are defined for D1, D2, E1 and E2");
        sources = {*id};
    }
    std::vector<LimitDirection> dirs;
    if (cfg.direction == "zero" || cfg.direction == "both") dirs.push_back(LimitDirection::to_zero);
    if (cfg.direction == "pi" || cfg.direction == "both") dirs.push_back(LimitDirection::to_pi);
    if (dirs.empty()) throw ParseError("--direction must be zero, pi or both");

    const std::vector<double> distances = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    bool all = true;
    io::json rows = io::json::array();
    if (cfg.format != Format::json) out << "source,direction,target,theta1,distance,max_deviation,bound,within\n";
    for (ClassId id : sources)
        for (LimitDirection d : dirs) {
            const auto report = limit_check(id, d, game, distances);
            all = all && report.converged;
            const std::string dir = d == LimitDirection::to_zero ? "zero" : "pi";
            const std::string target = std::string(class_name(report.target.class_id)) + "|" +
                                       (report.target.class_id == ClassId::A1 ? "alpha1=" : "alpha2=") +
                                       (report.target.class_id == ClassId::A1 ? report.target.alpha1
                                                                              : report.target.alpha2)
                                           .to_string();
            for (const auto& s : report.samples) {
                if (cfg.format == Format::json) {
                    rows.push_back({{"source", class_name(id)},
                                    {"direction", dir},
                                    {"target", target},
                                    {"theta1", s.theta1},
                                    {"distance", s.distance},
                                    {"max_deviation", s.max_deviation},
                                    {"bound", s.bound},
                                    {"within", s.within}});
                } else {
                    out << class_name(id) << ',' << dir << ',' << target << ',' << format_scalar(s.theta1) << ','
                        << format_scalar(s.distance) << ',' << format_scalar(s.max_deviation) << ','
                        << format_scalar(s.bound) << ',' << (s.within ? "true" : "false") << '\n';
                }
            }
        }
    if (cfg.format == Format::json) out << rows.dump(2) << '\n';
    return all ? kSuccess : kVerificationFailed;
}

template <class Scalar>
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.command == "extend") return run_extend<Scalar>(cfg, out, err);
    if (cfg.command == "verify") return run_verify<Scalar>(cfg, out, err);
    if (cfg.command == "enumerate") return run_enumerate(cfg, out, err);
    if (cfg.command == "equilibria") return run_equilibria<Scalar>(cfg, out, err);
    if (cfg.command == "payoff") return run_payoff<Scalar>(cfg, out, err);
    if (cfg.command == "limits") return run_limits(cfg, out, err);
    throw ParseError("unknown command " + cfg.command);
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Finite-strategy EWL extensions of 2x2 games: construction, invariance checks, lattice search and "
                 "Nash equilibria.",
                 "ewlq"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string mode = "exact", format;
    std::string theta1, alpha1, beta1, alpha2, beta2;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--mode", mode, "exact (rational payoffs, angles k/m pi) or float")
            ->check(CLI::IsMember({"exact", "float"}));
        sub->add_option("--format", format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
        sub->add_option("--game", cfg.game, "classical 2x2 game: JSON file or inline JSON (default: Prisoner's Dilemma)");
    };
    auto strategy_options = [&](CLI::App* sub) {
        sub->add_option("--class", cfg.class_name, "extension class A1 A2 B C D1 D2 E1 E2");
        sub->add_option("--theta1", theta1, "theta1 as \"k/m pi\" or radians");
        sub->add_option("--alpha1", alpha1, "alpha1");
        sub->add_option("--beta1", beta1, "beta1");
        sub->add_option("--alpha2", alpha2, "alpha2");
        sub->add_option("--beta2", beta2, "beta2");
        sub->add_option("--strategies", cfg.strategies, "explicit strategy set: JSON file or inline JSON array");
    };

    auto* extend = app.add_subcommand("extend", "print the extended game over a class or explicit strategy set");
    common(extend);
    strategy_options(extend);
    extend->add_flag("--oracle-check", cfg.oracle_check, "recompute every entry by statevector simulation");

    auto* verify = app.add_subcommand("verify", "check strong isomorphism of the extensions of all game variants");
    common(verify);
    strategy_options(verify);

    auto* enumerate = app.add_subcommand("enumerate", "search the phase lattice for invariant strategy pairs");
    enumerate->add_option("--theta", cfg.thetas, "theta1 lattice values (repeatable, default 1/2 pi)");
    enumerate->add_option("--theta2", cfg.theta2s, "comma-separated theta2 values searched independently");
    enumerate->add_option("--step", cfg.step, "phase step, 1/4 pi (default) or 1/8 pi");
    enumerate->add_option("--format", format, "csv (default) or json")->check(CLI::IsMember({"json", "csv"}));

    auto* equilibria = app.add_subcommand("equilibria", "pure and mixed Nash equilibria by support enumeration");
    common(equilibria);
    strategy_options(equilibria);
    equilibria->add_flag("--extend-first", cfg.extend_first, "extend the classical --game before solving");
    equilibria->add_flag("--oracle-check", cfg.oracle_check, "with --extend-first, verify payoffs by simulation");

    auto* payoff = app.add_subcommand("payoff", "payoff pair of a single strategy profile");
    common(payoff);
    payoff->add_option("--p1", cfg.p1, "player 1 strategy \"theta, alpha, beta\" or JSON")->required();
    payoff->add_option("--p2", cfg.p2, "player 2 strategy \"theta, alpha, beta\" or JSON")->required();
    payoff->add_flag("--oracle-check", cfg.oracle_check, "recompute by statevector simulation");

    auto* limits = app.add_subcommand("limits", "convergence of D/E matrices to their A-class limits (CSV)");
    limits->add_option("--game", cfg.game, "classical 2x2 game (default: Prisoner's Dilemma)");
    limits->add_option("--class", cfg.class_name, "D1, D2, E1 or E2 (default: all)");
    limits->add_option("--direction", cfg.direction, "zero, pi or both")->check(CLI::IsMember({"zero", "pi", "both"}));
    limits->add_option("--format", format, "csv (default) or json")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.exact = mode == "exact";
        if (format.empty()) format = (cfg.command == "enumerate" || cfg.command == "limits") ? "csv" : "json";
        cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::pretty;
        cfg.overrides = {detail::parse_optional_angle(theta1), detail::parse_optional_angle(alpha1),
                         detail::parse_optional_angle(beta1), detail::parse_optional_angle(alpha2),
                         detail::parse_optional_angle(beta2)};
        if (!cfg.class_name && (cfg.overrides.theta1 || cfg.overrides.alpha1 || cfg.overrides.beta1 ||
                                cfg.overrides.alpha2 || cfg.overrides.beta2))
            throw ParseError("--theta1/--alpha1/--beta1/--alpha2/--beta2 need --class");
        if (cfg.strategies && cfg.class_name) throw ParseError("give either --class or --strategies, not both");
        return cfg.exact ? detail::dispatch<Rational>(cfg, out, err) : detail::dispatch<double>(cfg, out, err);
    } catch (const VerificationFailure& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace ewl::cli
