#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ewl/classes.hpp"
#include "ewl/nash.hpp"
#include "ewl/solver.hpp"

namespace ewl::io {

using json = nlohmann::json;

// ---- scalars and angles ----

inline json to_json(const Angle& a) {
    if (a.is_exact()) return a.to_string();
    return a.radians();
}

inline Angle angle_from_json(const json& j) {
    if (j.is_string()) return Angle::parse(j.get<std::string>());
    if (j.is_number()) return Angle::from_radians(j.get<double>());
    throw ParseError("angle must be a string such as \"1/4 pi\" or a number of radians");
}

inline json scalar_to_json(const Rational& x) { return format_scalar(x); }
inline json scalar_to_json(double x) { return x; }

template <class Scalar>
Scalar scalar_from_json(const json& j) {
    if constexpr (is_exact_scalar_v<Scalar>) {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
        if (j.is_number_float())
            throw ParseError("exact mode needs rational payoffs; write " + j.dump() +
                             " as a string such as \"17/8\" or use float mode");
        throw ParseError("payoff must be a number or a rational string");
    } else {
        if (j.is_string()) return static_cast<double>(parse_rational(j.get<std::string>()));
        if (j.is_number()) return j.get<double>();
        throw ParseError("payoff must be a number or a rational string");
    }
}

// ---- strategies ----

inline json to_json(const StrategyParams& p) {
    return {{"theta", to_json(p.theta)}, {"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}};
}

inline StrategyParams strategy_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("strategy must be an object with theta, alpha, beta");
    for (const char* key : {"theta", "alpha", "beta"})
        if (!j.contains(key)) throw ParseError(std::string("strategy is missing \"") + key + "\"");
    return canonicalize(angle_from_json(j.at("theta")), angle_from_json(j.at("alpha")), angle_from_json(j.at("beta")));
}

/// [{"label": "U1", "theta": ..., "alpha": ..., "beta": ...}, ...]; labels
/// default to S0, S1, ...
inline std::vector<LabeledStrategy> strategies_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("strategy set must be a nonempty array");
    std::vector<LabeledStrategy> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        std::string label = j[k].contains("label") ? j[k].at("label").get<std::string>() : "S" + std::to_string(k);
        out.push_back({label, strategy_from_json(j[k])});
    }
    return out;
}

inline json to_json(const std::vector<LabeledStrategy>& s) {
    json out = json::array();
    for (const auto& x : s) {
        json e = to_json(x.params);
        e["label"] = x.label;
        out.push_back(e);
    }
    return out;
}

// ---- games ----

template <class Scalar>
json pair_to_json(const PayoffPair<Scalar>& p) {
    return json::array({scalar_to_json(p.u1), scalar_to_json(p.u2)});
}

template <class Scalar>
PayoffPair<Scalar> pair_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("payoff entry must be a pair [u1, u2]");
    return {scalar_from_json<Scalar>(j[0]), scalar_from_json<Scalar>(j[1])};
}

template <class Scalar>
json to_json(const Bimatrix2<Scalar>& g) {
    json rows = json::array();
    for (int i = 0; i < 2; ++i) rows.push_back(json::array({pair_to_json(g(i, 0)), pair_to_json(g(i, 1))}));
    return {{"payoffs", rows}};
}

template <class Scalar>
Bimatrix2<Scalar> bimatrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("payoffs")) throw ParseError("game must be an object with \"payoffs\"");
    const json& p = j.at("payoffs");
    if (!p.is_array() || p.size() != 2 || !p[0].is_array() || p[0].size() != 2 || !p[1].is_array() ||
        p[1].size() != 2)
        throw ParseError("classical game payoffs must be a 2x2 array of pairs");
    Bimatrix2<Scalar> g;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) g(i, k) = pair_from_json<Scalar>(p[i][k]);
    return g;
}

template <class Scalar>
json to_json(const ExtendedGame<Scalar>& g) {
    json rows = json::array();
    for (const auto& row : g.payoffs) {
        json r = json::array();
        for (const auto& e : row) r.push_back(pair_to_json(e));
        rows.push_back(r);
    }
    return {{"labels", g.labels}, {"payoffs", rows}};
}

/// Square game {"labels": [...], "payoffs": n x n pairs}. Labels are
/// optional; a 2x2 game without labels is labelled I, iX.
template <class Scalar>
ExtendedGame<Scalar> extended_game_from_json(const json& j) {
    if (!j.is_object() || !j.contains("payoffs")) throw ParseError("game must be an object with \"payoffs\"");
    const json& p = j.at("payoffs");
    if (!p.is_array() || p.empty()) throw ParseError("payoffs must be a nonempty array");
    ExtendedGame<Scalar> g;
    for (const auto& row : p) {
        if (!row.is_array() || row.size() != p.size()) throw ParseError("payoffs must form a square array");
        std::vector<PayoffPair<Scalar>> r;
        for (const auto& e : row) r.push_back(pair_from_json<Scalar>(e));
        g.payoffs.push_back(std::move(r));
    }
    if (j.contains("labels")) {
        g.labels = j.at("labels").get<std::vector<std::string>>();
    } else if (g.size() == 2) {
        g.labels = {"I", "iX"};
    } else {
        for (std::size_t k = 0; k < g.size(); ++k) g.labels.push_back("S" + std::to_string(k));
    }
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return g;
}

// ---- class parameters ----

inline json to_json(const ClassParams& p) {
    return {{"class", std::string(class_name(p.class_id))},
            {"theta1", to_json(p.theta1)},
            {"alpha1", to_json(p.alpha1)},
            {"beta1", to_json(p.beta1)},
            {"alpha2", to_json(p.alpha2)},
            {"beta2", to_json(p.beta2)}};
}

inline ClassParams class_params_from_json(const json& j) {
    if (!j.is_object() || !j.contains("class")) throw ParseError("class parameters need a \"class\" field");
    auto id = parse_class_id(j.at("class").get<std::string>());
    if (!id) throw ParseError("unknown class " + j.at("class").dump());
    ClassOverrides o;
    auto take = [&](const char* key, std::optional<Angle>& slot) {
        if (j.contains(key)) slot = angle_from_json(j.at(key));
    };
    take("theta1", o.theta1);
    take("alpha1", o.alpha1);
    take("beta1", o.beta1);
    take("alpha2", o.alpha2);
    take("beta2", o.beta2);
    ClassParams p = make_class_params(*id, o);
    return p;
}

// ---- reports ----

inline json to_json(const InvarianceReport& r) {
    json out = json::array();
    for (const auto& c : r.checks) {
        json e = {{"variant", std::string(variant_name(c.variant))}, {"isomorphic", c.isomorphic()}};
        e["row_perm"] = c.witness ? json(c.witness->row_perm) : json(nullptr);
        e["col_perm"] = c.witness ? json(c.witness->col_perm) : json(nullptr);
        out.push_back(e);
    }
    return out;
}

template <class Scalar>
json to_json(const EquilibriumReport<Scalar>& r) {
    json out = json::array();
    for (const auto& e : r.equilibria) {
        json p1 = json::array(), p2 = json::array();
        for (const auto& x : e.profile.p1) p1.push_back(scalar_to_json(x));
        for (const auto& x : e.profile.p2) p2.push_back(scalar_to_json(x));
        json item = {{"p1", p1},
                     {"p2", p2},
                     {"payoff", pair_to_json(e.payoff)},
                     {"kind", e.kind == EquilibriumKind::pure ? "pure" : "mixed"}};
        if (e.sampled_from_family) item["degenerate"] = true;
        out.push_back(item);
    }
    return out;
}

template <class Scalar>
EquilibriumReport<Scalar> equilibrium_report_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("equilibrium report must be an array");
    EquilibriumReport<Scalar> r;
    for (const auto& item : j) {
        Equilibrium<Scalar> e;
        for (const auto& x : item.at("p1")) e.profile.p1.push_back(scalar_from_json<Scalar>(x));
        for (const auto& x : item.at("p2")) e.profile.p2.push_back(scalar_from_json<Scalar>(x));
        e.payoff = pair_from_json<Scalar>(item.at("payoff"));
        e.kind = item.at("kind").get<std::string>() == "pure" ? EquilibriumKind::pure : EquilibriumKind::mixed;
        e.sampled_from_family = item.value("degenerate", false);
        for (std::size_t k = 0; k < e.profile.p1.size(); ++k)
            if (!is_zero(e.profile.p1[k])) e.support1.push_back(k);
        for (std::size_t k = 0; k < e.profile.p2.size(); ++k)
            if (!is_zero(e.profile.p2[k])) e.support2.push_back(k);
        r.degenerate = r.degenerate || e.sampled_from_family;
        r.equilibria.push_back(std::move(e));
    }
    return r;
}

inline std::string hit_class_name(const SolutionHit& h) {
    return h.class_id ? std::string(class_name(*h.class_id)) : "UNCLASSIFIED";
}

inline json to_json(const SolutionHit& h) {
    json relations = json::object();
    for (const auto& r : check_relations(h.point)) relations[r.name] = r.satisfied;
    return {{"theta1", to_json(h.point.theta1)},
            {"theta2", to_json(h.point.theta2)},
            {"alpha1", to_json(h.point.phases[0])},
            {"beta1", to_json(h.point.phases[1])},
            {"alpha2", to_json(h.point.phases[2])},
            {"beta2", to_json(h.point.phases[3])},
            {"class", hit_class_name(h)},
            {"phi_pair", h.phi_pair},
            {"relations", relations}};
}

inline void write_csv_header(std::ostream& os) { os << "theta1,alpha1,beta1,alpha2,beta2,class\n"; }

inline void write_csv_row(std::ostream& os, const SolutionHit& h) {
    os << h.point.theta1.to_string() << ',' << h.point.phases[0].to_string() << ',' << h.point.phases[1].to_string()
       << ',' << h.point.phases[2].to_string() << ',' << h.point.phases[3].to_string() << ',' << hit_class_name(h)
       << '\n';
}

// ---- plain-text rendering ----

template <class Scalar>
std::string format_pair(const PayoffPair<Scalar>& p) {
    return "(" + format_scalar(p.u1) + ", " + format_scalar(p.u2) + ")";
}

template <class Scalar>
void write_pretty(std::ostream& os, const ExtendedGame<Scalar>& g) {
    std::vector<std::vector<std::string>> cells(g.size());
    std::size_t width = 0, label_width = 0;
    for (const auto& l : g.labels) label_width = std::max(label_width, l.size());
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c) {
            cells[r].push_back(format_pair(g(r, c)));
            width = std::max(width, cells[r].back().size());
        }
    for (const auto& l : g.labels) width = std::max(width, l.size());
    os << std::string(label_width, ' ');
    for (const auto& l : g.labels) os << "  " << std::setw(static_cast<int>(width)) << l;
    os << '\n';
    for (std::size_t r = 0; r < g.size(); ++r) {
        os << std::setw(static_cast<int>(label_width)) << g.labels[r];
        for (const auto& cell : cells[r]) os << "  " << std::setw(static_cast<int>(width)) << cell;
        os << '\n';
    }
}

template <class Scalar>
void write_csv(std::ostream& os, const ExtendedGame<Scalar>& g) {
    os << "row,col,u1,u2\n";
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t c = 0; c < g.size(); ++c)
            os << g.labels[r] << ',' << g.labels[c] << ',' << format_scalar(g(r, c).u1) << ','
               << format_scalar(g(r, c).u2) << '\n';
}

/// Reads `source` as a file when such a file exists, otherwise parses it as
/// inline JSON.
inline json load_json(const std::string& source) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(source, ec)) {
        std::ifstream in(source);
        if (!in) throw ParseError("cannot read " + source);
        try {
            return json::parse(in);
        } catch (const json::parse_error& e) {
            throw ParseError(source + ": " + e.what());
        }
    }
    try {
        return json::parse(source);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + source + "' is neither a readable file nor valid JSON: " + e.what());
    }
}

}  // namespace ewl::io
