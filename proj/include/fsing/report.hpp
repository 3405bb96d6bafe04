#ifndef FSING_REPORT_HPP
#define FSING_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "cache.hpp"
#include "fmodule.hpp"
#include "script.hpp"

namespace fsing {

constexpr const char* kToolVersion = "fsing 0.1.0";

using json = nlohmann::ordered_json;

inline std::string verdict_str(Simplicity v) {
    switch (v) {
        case Simplicity::Simple: return "Simple";
        case Simplicity::NotSimple: return "NotSimple";
        default: return "Inconclusive";
    }
}

inline std::string route_str(SimplicityRoute r) {
    switch (r) {
        case SimplicityRoute::FRational: return "FRational";
        case SimplicityRoute::JStarEqualsJF: return "JStarEqualsJF";
        case SimplicityRoute::WitnessPair: return "WitnessPair";
        default: return "None";
    }
}

inline json ideal_json(const RingContext& ctx, const Ideal& I) {
    json a = json::array();
    for (const auto& g : I.gens) a.push_back(poly_to_string(ctx, g));
    return a;
}

inline json caps_json(const ClosureCaps& caps) {
    return json{{"e_max", caps.e_max}, {"t_max", caps.t_max}, {"window", caps.window}};
}

/// Skeleton with the stable field order; verdict/route/witnesses filled per
/// command. Determinism: identical inputs give identical JSON except for the
/// timings object.
inline json report_skeleton(const std::string& command, const std::string& script_source,
                            const ClosureCaps& caps) {
    json r;
    r["version"] = kToolVersion;
    r["input_hash"] = fnv64_hex(script_source + "\n@" + command);
    r["command"] = command;
    r["verdict"] = nullptr;
    r["route"] = nullptr;
    r["witnesses"] = json::array();
    r["transcript"] = json::array();
    r["caps"] = caps_json(caps);
    r["timings"] = json::object();
    return r;
}

// ---- witness records ----

inline json witness_frobenius_in(const RingContext& ctx, const Poly& z, const Ideal& J,
                                 const Ideal& I, unsigned e) {
    return json{{"type", "frobenius_membership"},
                {"certified", true},
                {"z", poly_to_string(ctx, z)},
                {"J", ideal_json(ctx, J)},
                {"I", ideal_json(ctx, I)},
                {"e", e}};
}

inline json witness_frobenius_refutation(const RingContext& ctx, const Poly& z, const Ideal& J,
                                         const Ideal& I, const FrobeniusMembership& fm) {
    json levels = json::array();
    for (unsigned e : fm.refuted_at) levels.push_back(e);
    return json{{"type", "frobenius_refutation"},
                {"certified", true},
                {"z", poly_to_string(ctx, z)},
                {"J", ideal_json(ctx, J)},
                {"I", ideal_json(ctx, I)},
                {"refuted_levels", levels},
                {"e_max", fm.e_max}};
}

inline json witness_integral_dependence(const RingContext& ctx, const DependenceEquation& eq,
                                        const Ideal& J, const Ideal& I) {
    json coeffs = json::array();
    for (const auto& b : eq.coeffs) coeffs.push_back(poly_to_string(ctx, b));
    return json{{"type", "integral_dependence"},
                {"certified", true},
                {"z", poly_to_string(ctx, eq.z)},
                {"k", eq.k},
                {"coeffs", coeffs},
                {"J", ideal_json(ctx, J)},
                {"I", ideal_json(ctx, I)}};
}

inline json witness_membership(const RingContext& ctx, const Poly& z, const Ideal& K,
                               const std::string& label) {
    return json{{"type", "ideal_membership"},
                {"certified", true},
                {"label", label},
                {"z", poly_to_string(ctx, z)},
                {"ideal", ideal_json(ctx, K)}};
}

// ---- replay ----

namespace detail {

inline Ideal parse_ideal(const RingContext& ctx, const json& arr) {
    std::vector<Poly> gens;
    for (const auto& s : arr) gens.push_back(parse_poly(ctx, s.get<std::string>()));
    return Ideal{std::move(gens)};
}

} // namespace detail

/// Re-verify one certified witness record from its own data. Throws on any
/// mismatch so replay failures are loud.
inline void replay_witness(const RingContext& ctx, const json& w) {
    std::string type = w.at("type").get<std::string>();
    if (w.contains("certified") && !w.at("certified").get<bool>()) return;
    if (type == "frobenius_membership") {
        Poly z = parse_poly(ctx, w.at("z").get<std::string>());
        Ideal J = detail::parse_ideal(ctx, w.at("J"));
        Ideal I = detail::parse_ideal(ctx, w.at("I"));
        unsigned e = w.at("e").get<unsigned>();
        FrobeniusExponent fe(ctx, e);
        Poly zq = poly_frobenius(ctx, z, fe.q);
        if (!quotient_membership(ctx, zq, frobenius_power(ctx, J, fe), I))
            throw std::runtime_error("replay: frobenius membership failed");
    } else if (type == "frobenius_refutation") {
        Poly z = parse_poly(ctx, w.at("z").get<std::string>());
        Ideal J = detail::parse_ideal(ctx, w.at("J"));
        Ideal I = detail::parse_ideal(ctx, w.at("I"));
        for (const auto& ej : w.at("refuted_levels")) {
            unsigned e = ej.get<unsigned>();
            FrobeniusExponent fe(ctx, e);
            Poly zq = poly_frobenius(ctx, z, fe.q);
            if (quotient_membership(ctx, zq, frobenius_power(ctx, J, fe), I))
                throw std::runtime_error("replay: refuted level admits membership");
        }
    } else if (type == "integral_dependence") {
        Poly z = parse_poly(ctx, w.at("z").get<std::string>());
        Ideal J = detail::parse_ideal(ctx, w.at("J"));
        Ideal I = detail::parse_ideal(ctx, w.at("I"));
        unsigned k = w.at("k").get<unsigned>();
        auto coeffs = w.at("coeffs");
        if (coeffs.size() != k) throw std::runtime_error("replay: bad dependence arity");
        Poly resid = poly_pow(ctx, z, k);
        for (unsigned i = 1; i <= k; ++i) {
            Poly b = parse_poly(ctx, coeffs[i - 1].get<std::string>());
            // b_i must lie in J^i
            Ideal Ji{detail::ideal_power_products(ctx, J, i)};
            if (!ideal_membership(ctx, b, Ji))
                throw std::runtime_error("replay: dependence coefficient outside J^i");
            resid = poly_sub(ctx, resid, poly_mul(ctx, b, poly_pow(ctx, z, k - i)));
        }
        if (!ideal_membership(ctx, resid, I))
            throw std::runtime_error("replay: dependence equation does not vanish");
    } else if (type == "ideal_membership") {
        Poly z = parse_poly(ctx, w.at("z").get<std::string>());
        Ideal K = detail::parse_ideal(ctx, w.at("ideal"));
        if (!ideal_membership(ctx, z, K))
            throw std::runtime_error("replay: ideal membership failed");
    }
    // unknown witness types are uncertified commentary; skipped
}

inline std::size_t replay_report(const RingContext& ctx, const json& report) {
    std::size_t checked = 0;
    for (const auto& w : report.at("witnesses")) {
        replay_witness(ctx, w);
        ++checked;
    }
    return checked;
}

} // namespace fsing

#endif
