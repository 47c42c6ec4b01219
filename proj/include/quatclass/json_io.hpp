#pragma once

// Stable serialization of reports, batch summaries and assisted results:
// the versioned JSON envelope (schema "1", rationals as exact decimal digit
// strings, keys emitted in sorted order) and the human-readable tables that
// mirror the printed table layout.

#include "quatclass/assisted.hpp"
#include "quatclass/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace quatclass {

inline const char* kSchemaVersion = "1";

// ── JSON pieces ─────────────────────────────────────────────────────────────

inline json rational_to_json(const Rational& r) {
    return json{{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

inline json field_to_json(const FieldInvariants& f) {
    return json{
        {"degree", f.degree},
        {"zeta_minus_one", rational_to_json(f.zeta_minus_one)},
        {"h", f.h.get_str()},
        {"h_plus", f.h_plus.get_str()},
    };
}

inline json table_to_json(const QSqrtPBTable& t) {
    auto rows_to_json = [](const std::vector<CMOrderSpec>& rows) {
        json arr = json::array();
        for (const auto& row : rows)
            arr.push_back(json{
                {"label", row.label},
                {"mu", row.mu_order},
                {"w", row.w},
                {"h_ratio", row.class_datum.printed()},
                {"s", row.s()},
                {"delta_principal", row.delta_principal},
                {"delta_nonprincipal", row.delta_nonprincipal},
            });
        return arr;
    };
    json j;
    j["regime"] = to_string(t.regime);
    j["b1"] = rows_to_json(t.b1);
    if (!t.b_full.empty()) j["b"] = rows_to_json(t.b_full);
    return j;
}

inline json checks_to_json(const std::vector<IdentityResult>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back(json{{"name", c.name},
                           {"status", c.pass ? "pass" : "fail"},
                           {"detail", c.detail}});
    return arr;
}

inline json report_to_json(const ClassNumberReport& rep) {
    json per_genus;
    for (const auto& g : rep.per_genus)
        per_genus[to_string(g.tag)] = json{
            {"h1", g.h1.get_str()},
            {"h_sc", g.h_sc.get_str()},
            {"type_count", g.type_count.get_str()},
        };
    json j{
        {"p", rep.p.get_str()},
        {"regime", to_string(rep.regime)},
        {"field", field_to_json(rep.field)},
        {"fundamental_unit",
         json{{"x", rep.unit.x.get_str()},
              {"y", rep.unit.y.get_str()},
              {"half_integer", rep.unit.half},
              {"norm", rep.unit.norm_sign}}},
        {"auxiliary_class_numbers",
         json{{"h(-p)", rep.h_minus_p.get_str()},
              {"h(-2p)", rep.h_minus_2p.get_str()},
              {"h(-3p)", rep.h_minus_3p.get_str()}}},
        {"masses",
         json{{"mass1", rational_to_json(rep.mass1_value)},
              {"mass_total", rational_to_json(rep.mass_total_value)},
              {"mass_sc", rational_to_json(rep.mass_sc_value)}}},
        {"scl_size", rep.scl.get_str()},
        {"spinor_genus_count", rep.spinor_genus_count},
        {"per_genus", per_genus},
        {"type_number_total", rep.type_total.get_str()},
        {"b_tables", table_to_json(rep.tables)},
    };
    if (rep.p % 4 == 3) j["kron2p"] = rep.kron2p;
    return j;
}

inline json envelope(const std::string& command, json inputs, json result,
                     const std::vector<IdentityResult>& checks) {
    return json{
        {"schema_version", kSchemaVersion},
        {"command", command},
        {"inputs", std::move(inputs)},
        {"result", std::move(result)},
        {"checks", checks_to_json(checks)},
    };
}

inline json batch_to_json(const BatchSummary& summary) {
    json rows = json::array();
    for (const auto& row : summary.rows) {
        json genera;
        for (const auto& g : row.per_genus)
            genera[to_string(g.tag)] = json{{"h1", g.h1.get_str()},
                                            {"h_sc", g.h_sc.get_str()},
                                            {"type_count", g.type_count.get_str()}};
        rows.push_back(json{{"p", row.p.get_str()},
                            {"regime", to_string(row.regime)},
                            {"per_genus", genera},
                            {"type_number_total", row.type_total.get_str()},
                            {"checks", row.checks_pass ? "pass" : "fail"}});
    }
    json j{{"rows", rows}, {"ok", summary.ok}};
    if (!summary.ok) {
        j["first_failure_p"] = summary.first_failure_p.get_str();
        j["failure_detail"] = summary.failure_detail;
    }
    return j;
}

inline json assisted_to_json(const AssistedResult& r) {
    json j{
        {"target_genus_label", r.target_genus_label},
        {"masses",
         json{{"mass1", rational_to_json(r.mass1_value)},
              {"mass_total", rational_to_json(r.mass_total_value)},
              {"mass_sc", rational_to_json(r.mass_sc_value)}}},
        {"scl_size", r.scl.get_str()},
    };
    if (r.h1_value) j["h1"] = r.h1_value->get_str();
    if (r.h_sc_value) j["h_sc"] = r.h_sc_value->get_str();
    return j;
}

// ── text rendering ──────────────────────────────────────────────────────────

namespace detail {

inline std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline void render_rows(std::ostringstream& os, const std::vector<CMOrderSpec>& rows) {
    static const char* headers[] = {"B", "|μ(B)|", "w(B)", "h(B)/h(F)", "s",
                                    "Δ(O)", "Δ(O')"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows)
        cells.push_back({r.label, std::to_string(r.mu_order), std::to_string(r.w),
                         r.class_datum.printed(), std::to_string(r.s()),
                         std::to_string(r.delta_principal),
                         std::to_string(r.delta_nonprincipal)});
    std::size_t widths[7];
    for (int c = 0; c < 7; ++c) {
        widths[c] = std::string(headers[c]).size();
        for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
    }
    for (int c = 0; c < 7; ++c) os << pad(headers[c], widths[c] + 2);
    os << "\n";
    for (const auto& row : cells) {
        for (int c = 0; c < 7; ++c) os << pad(row[c], widths[c] + 2);
        os << "\n";
    }
}

} // namespace detail

inline std::string report_to_text(const ClassNumberReport& rep) {
    std::ostringstream os;
    os << "F = Q(√" << rep.p.get_str() << "), D = D_{∞1,∞2}, maximal orders  ["
       << to_string(rep.regime) << "]\n";
    os << "  ζ_F(-1) = " << rep.field.zeta_minus_one.to_string()
       << ", h(F) = " << rep.field.h.get_str()
       << ", h+(F) = " << rep.field.h_plus.get_str() << "\n";
    os << "  fundamental unit = " << rep.unit.to_string(rep.p) << "\n";
    os << "  h(-p) = " << rep.h_minus_p.get_str() << ", h(-2p) = " << rep.h_minus_2p.get_str()
       << ", h(-3p) = " << rep.h_minus_3p.get_str();
    if (rep.p % 4 == 3) os << ", (2|p) = " << rep.kron2p;
    os << "\n";
    os << "  Mass1 = " << rep.mass1_value.to_string()
       << ", Mass = " << rep.mass_total_value.to_string()
       << ", Mass_sc = " << rep.mass_sc_value.to_string()
       << ", |SCl| = " << rep.scl.get_str() << "\n";
    os << "  spinor genera: " << rep.spinor_genus_count << "\n\n";
    os << "CM orders B with |μ(B)| > 2 (the set ℬ¹):\n";
    detail::render_rows(os, rep.tables.b1);
    if (!rep.tables.b_full.empty()) {
        os << "\nCM orders B with w(B) > 1 (the set ℬ):\n";
        detail::render_rows(os, rep.tables.b_full);
    }
    os << "\n";
    for (const auto& g : rep.per_genus)
        os << "  " << to_string(g.tag) << ": h¹ = " << g.h1.get_str()
           << ", h_sc = " << g.h_sc.get_str()
           << ", types = " << g.type_count.get_str() << "\n";
    os << "  type number total = " << rep.type_total.get_str() << "\n\n";
    int failed = 0;
    for (const auto& c : rep.identities)
        if (!c.pass) ++failed;
    os << "identity checks: " << (rep.identities.size() - failed) << "/"
       << rep.identities.size() << " pass\n";
    for (const auto& c : rep.identities)
        if (!c.pass) os << "  FAIL " << c.name << ": " << c.detail << "\n";
    return os.str();
}

inline std::string batch_to_text(const BatchSummary& summary) {
    std::ostringstream os;
    os << detail::pad("p", 8) << detail::pad("regime", 22) << detail::pad("h1", 16)
       << detail::pad("h_sc", 16) << detail::pad("|Tp|", 8) << "checks\n";
    for (const auto& row : summary.rows) {
        std::string h1s, hscs;
        for (const auto& g : row.per_genus) {
            if (!h1s.empty()) { h1s += "/"; hscs += "/"; }
            h1s += g.h1.get_str();
            hscs += g.h_sc.get_str();
        }
        os << detail::pad(row.p.get_str(), 8) << detail::pad(to_string(row.regime), 22)
           << detail::pad(h1s, 16) << detail::pad(hscs, 16)
           << detail::pad(row.type_total.get_str(), 8)
           << (row.checks_pass ? "pass" : "FAIL") << "\n";
    }
    if (!summary.ok)
        os << "\nFIRST FAILURE at p = " << summary.first_failure_p.get_str() << "\n"
           << summary.failure_detail;
    return os.str();
}

inline std::string assisted_to_text(const AssistedResult& r) {
    std::ostringstream os;
    os << "assisted evaluation (target genus: " << r.target_genus_label << ")\n";
    os << "  Mass1 = " << r.mass1_value.to_string()
       << ", Mass = " << r.mass_total_value.to_string()
       << ", Mass_sc = " << r.mass_sc_value.to_string()
       << ", |SCl| = " << r.scl.get_str() << "\n";
    if (r.h1_value) os << "  h¹ = " << r.h1_value->get_str() << "\n";
    if (r.h_sc_value) os << "  h_sc = " << r.h_sc_value->get_str() << "\n";
    return os.str();
}

} // namespace quatclass
