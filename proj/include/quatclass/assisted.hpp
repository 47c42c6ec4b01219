#pragma once

// Assisted mode: a declarative configuration describing an arbitrary totally
// real field, an order genus, and a list of fully resolved CM orders, routed
// through the mass and class-formula machinery. This is the general-field
// entry point that the Q(sqrt p) pipeline specializes; supplying correct
// invariants is the caller's burden and is only checked structurally.
//
// The document is JSON with a hard exactness rule: no float token is
// accepted anywhere. Big integers may be written as decimal digit strings;
// rationals as "num/den" strings or {"num": "...", "den": "..."} objects.

#include "quatclass/class_formulas.hpp"
#include "quatclass/exact.hpp"
#include "quatclass/mass.hpp"
#include "quatclass/pipeline.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace quatclass {

using nlohmann::json;

enum class AssistedWhich { h1_only, h_sc_only, both };

struct AssistedResult {
    Rational mass1_value, mass_total_value, mass_sc_value;
    Int scl;
    std::optional<Int> h1_value;
    std::optional<Int> h_sc_value;
    std::string target_genus_label;
};

namespace detail {

inline void reject_floats(const json& j, const std::string& path,
                          std::vector<std::string>& errors) {
    if (j.is_number_float()) {
        errors.push_back(path + ": float values are not accepted; use digit strings");
        return;
    }
    if (j.is_object())
        for (auto it = j.begin(); it != j.end(); ++it)
            reject_floats(it.value(), path + "/" + it.key(), errors);
    if (j.is_array())
        for (std::size_t i = 0; i < j.size(); ++i)
            reject_floats(j[i], path + "/" + std::to_string(i), errors);
}

inline bool digits_only(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = s[0] == '-' ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

inline Int parse_int(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (!digits_only(s))
            throw input_error(path + ": '" + s + "' is not a decimal integer");
        return Int(s);
    }
    throw input_error(path + ": expected an integer or digit string");
}

inline Rational parse_rational(const json& j, const std::string& path) {
    if (j.is_number_integer() || j.is_number_unsigned() ||
        (j.is_string() && digits_only(j.get<std::string>())))
        return Rational(parse_int(j, path));
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos || !digits_only(s.substr(0, slash)) ||
            !digits_only(s.substr(slash + 1)))
            throw input_error(path + ": '" + s + "' is not an integer or num/den rational");
        return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }
    if (j.is_object()) {
        if (!j.contains("num") || !j.contains("den"))
            throw input_error(path + ": rational object needs num and den");
        return Rational(parse_int(j.at("num"), path + "/num"),
                        parse_int(j.at("den"), path + "/den"));
    }
    throw input_error(path + ": expected a rational");
}

} // namespace detail

struct AssistedConfig {
    FieldInvariants field;
    std::vector<OrderLocalProfile> locals;
    Int norm_unit_index = 1;
    Int u_value = 1;
    std::vector<ResolvedCMOrder> cm_orders;
    AssistedWhich which = AssistedWhich::both;
    std::string target_genus_label;

    // Parses and validates; every problem is reported with its field path.
    static AssistedConfig from_json(const json& doc) {
        std::vector<std::string> errors;
        detail::reject_floats(doc, "", errors);
        if (!errors.empty()) throw input_error("assisted config: " + errors[0]);

        auto require = [&doc](const std::string& key) -> const json& {
            if (!doc.contains(key))
                throw input_error("assisted config: missing section '/" + key + "'");
            return doc.at(key);
        };

        AssistedConfig cfg;
        {
            const json& f = require("field");
            for (const char* k : {"degree", "zeta_minus_one", "h", "h_plus"})
                if (!f.contains(k))
                    throw input_error("assisted config: missing field '/field/" +
                                      std::string(k) + "'");
            Int degree = detail::parse_int(f.at("degree"), "/field/degree");
            if (degree < 1 || degree > 64)
                throw input_error("/field/degree: out of supported range");
            cfg.field = FieldInvariants(
                static_cast<int>(degree.get_si()),
                detail::parse_rational(f.at("zeta_minus_one"), "/field/zeta_minus_one"),
                detail::parse_int(f.at("h"), "/field/h"),
                detail::parse_int(f.at("h_plus"), "/field/h_plus"));
        }
        {
            const json& o = require("order");
            if (o.contains("locals")) {
                const json& ls = o.at("locals");
                if (!ls.is_array()) throw input_error("/order/locals: expected an array");
                for (std::size_t i = 0; i < ls.size(); ++i) {
                    const std::string path = "/order/locals/" + std::to_string(i);
                    const json& l = ls[i];
                    OrderLocalProfile lp;
                    if (!l.contains("prime_id") || !l.at("prime_id").is_string())
                        throw input_error(path + "/prime_id: required string");
                    lp.prime_id = l.at("prime_id").get<std::string>();
                    lp.residue_norm = detail::parse_int(l.at("residue_norm"),
                                                        path + "/residue_norm");
                    Int e = detail::parse_int(l.at("eichler_invariant"),
                                              path + "/eichler_invariant");
                    Int v = detail::parse_int(l.at("discriminant_valuation"),
                                              path + "/discriminant_valuation");
                    if (e == 0)
                        throw unsupported_case_error(
                            path + "/eichler_invariant: e_p = 0 is outside the supported "
                            "theory (the formulas require nonzero Eichler invariants)");
                    if (e < -1 || e > 2 || v < 0 || v > 1000000)
                        throw input_error(path + ": invalid local profile");
                    lp.eichler_invariant = static_cast<int>(e.get_si());
                    lp.discriminant_valuation = static_cast<int>(v.get_si());
                    lp.validate();
                    cfg.locals.push_back(std::move(lp));
                }
            }
            if (!o.contains("norm_unit_index"))
                throw input_error("assisted config: missing '/order/norm_unit_index'");
            if (!o.contains("u"))
                throw input_error("assisted config: missing '/order/u'");
            cfg.norm_unit_index = detail::parse_int(o.at("norm_unit_index"),
                                                    "/order/norm_unit_index");
            cfg.u_value = detail::parse_int(o.at("u"), "/order/u");
        }
        {
            const json& w = require("which");
            if (!w.is_string()) throw input_error("/which: expected a string");
            std::string which = w.get<std::string>();
            if (which == "h1") cfg.which = AssistedWhich::h1_only;
            else if (which == "h_sc") cfg.which = AssistedWhich::h_sc_only;
            else if (which == "both") cfg.which = AssistedWhich::both;
            else throw input_error("/which: expected h1, h_sc or both");
        }
        if (doc.contains("target_genus_label")) {
            if (!doc.at("target_genus_label").is_string())
                throw input_error("/target_genus_label: expected a string");
            cfg.target_genus_label = doc.at("target_genus_label").get<std::string>();
        } else {
            cfg.target_genus_label = "principal";
        }
        {
            const json& orders = require("cm_orders");
            if (!orders.is_array()) throw input_error("/cm_orders: expected an array");
            const bool need_mu = cfg.which != AssistedWhich::h_sc_only;
            const bool need_w = cfg.which != AssistedWhich::h1_only;
            for (std::size_t i = 0; i < orders.size(); ++i) {
                const std::string path = "/cm_orders/" + std::to_string(i);
                const json& b = orders[i];
                ResolvedCMOrder r;
                r.label = b.contains("label") ? b.at("label").get<std::string>()
                                              : "B" + std::to_string(i);
                if (b.contains("mu"))
                    r.mu = static_cast<int>(detail::parse_int(b.at("mu"), path + "/mu").get_si());
                else if (need_mu)
                    throw input_error(path + "/mu: required when h1 is requested");
                if (b.contains("w"))
                    r.w = static_cast<int>(detail::parse_int(b.at("w"), path + "/w").get_si());
                else if (need_w)
                    throw input_error(path + "/w: required when h_sc is requested");
                if (!b.contains("h"))
                    throw input_error(path + "/h: explicit h(B) is required");
                r.h_B = detail::parse_int(b.at("h"), path + "/h");
                if (b.contains("m_product") && b.contains("m_values"))
                    throw input_error(path + ": give m_product or m_values, not both");
                if (b.contains("m_product")) {
                    r.m_product = detail::parse_int(b.at("m_product"), path + "/m_product");
                } else if (b.contains("m_values")) {
                    const json& mv = b.at("m_values");
                    if (!mv.is_object()) throw input_error(path + "/m_values: expected an object");
                    Int prod = 1;
                    for (auto it = mv.begin(); it != mv.end(); ++it) {
                        Int m = detail::parse_int(it.value(), path + "/m_values/" + it.key());
                        if (m < 0) throw input_error(path + "/m_values/" + it.key() +
                                                     ": must be >= 0");
                        prod *= m;
                    }
                    r.m_product = prod;
                } else {
                    throw input_error(path + ": explicit m_product or m_values required");
                }
                if (!b.contains("s"))
                    throw input_error(path + "/s: selectivity flag required");
                r.s = static_cast<int>(detail::parse_int(b.at("s"), path + "/s").get_si());
                if (!b.contains("delta"))
                    throw input_error(path + "/delta: Delta for the target genus required");
                r.delta =
                    static_cast<int>(detail::parse_int(b.at("delta"), path + "/delta").get_si());
                try {
                    r.validate();
                } catch (const input_error& e) {
                    throw input_error(path + ": " + e.what());
                }
                cfg.cm_orders.push_back(std::move(r));
            }
        }
        return cfg;
    }

    static AssistedConfig from_text(const std::string& text) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw input_error(std::string("assisted config: not valid JSON: ") + e.what());
        }
        try {
            return from_json(doc);
        } catch (const json::exception& e) {
            throw input_error(std::string("assisted config: malformed document: ") + e.what());
        }
    }
};

// Masses always; h1/h_sc as requested. Integrality is asserted and
// non-integral results raise with the full diagnostic dump.
inline AssistedResult evaluate(const AssistedConfig& config) {
    OrderProfile order(config.field, config.locals, config.norm_unit_index, config.u_value);
    AssistedResult result;
    result.target_genus_label = config.target_genus_label;
    result.mass1_value = mass1(order);
    result.mass_total_value = mass_total(order);
    result.mass_sc_value = mass_sc(order);
    result.scl = scl_size(order);

    FormulaInput input;
    input.order = order;
    input.h_F = config.field.h;
    input.h_plus = config.field.h_plus;
    if (config.which != AssistedWhich::h_sc_only) {
        input.b1_list = config.cm_orders;
        input.b_list = {};
        result.h1_value = h1(input);
    }
    if (config.which != AssistedWhich::h1_only) {
        input.b1_list = {};
        input.b_list = config.cm_orders;
        result.h_sc_value = h_sc(input);
    }
    return result;
}

// Auto-export: the assisted document that reproduces the automatic pipeline
// for one spinor genus of the Q(sqrt p) family (round-trip surface).
inline json export_assisted_config(const ClassNumberReport& rep, SpinorGenusTag genus) {
    json doc;
    doc["field"] = {
        {"degree", 2},
        {"zeta_minus_one", rep.field.zeta_minus_one.to_string()},
        {"h", rep.field.h.get_str()},
        {"h_plus", rep.field.h_plus.get_str()},
    };
    doc["order"] = {
        {"locals", json::array()},
        {"norm_unit_index", "1"},
        {"u", Int(rep.scl / rep.field.h).get_str()},
    };
    const bool full = rep.regime == QSqrtPRegime::p3mod4_ge7;
    doc["which"] = full ? "both" : "h1";
    doc["target_genus_label"] = to_string(genus);
    const auto& rows = full ? rep.tables.b_full : rep.tables.b1;
    auto resolved = detail::resolve_rows(rows, genus, rep.field.h, rep.h_minus_p,
                                         rep.h_minus_2p, rep.h_minus_3p, rep.kron2p);
    json arr = json::array();
    for (const auto& r : resolved) {
        arr.push_back({
            {"label", r.label},
            {"mu", r.mu},
            {"w", r.w},
            {"h", r.h_B.get_str()},
            {"m_product", r.m_product.get_str()},
            {"s", r.s},
            {"delta", r.delta},
        });
    }
    doc["cm_orders"] = std::move(arr);
    return doc;
}

} // namespace quatclass
