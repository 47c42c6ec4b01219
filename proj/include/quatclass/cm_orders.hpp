#pragma once

// CM O_F-orders B and their embedding invariants: Eichler symbols, local
// optimal embedding counts m_p(B), the weight M(B) = h(B)/w(B) * prod m_p(B),
// and the hardcoded tables of CM orders with extra units for F = Q(sqrt p).
//
// Prime ids are opaque keys; for Q(sqrt p) the convention is "q" for the
// dyadic prime, "sqrt_p" for the ramified prime, and "<l>_<i>" otherwise.

#include "quatclass/exact.hpp"
#include "quatclass/mass.hpp"
#include "quatclass/selectivity.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quatclass {

// ── class number datum ──────────────────────────────────────────────────────

enum class AuxClassNumber { none, h_minus_p, h_minus_2p, h_minus_3p };

// h(B) given either explicitly or as the printed ratio
// h(B)/h(F) = (a + b*(2|p))/c * h(aux); the symbolic form keeps the table
// faithful to the printed column and is resolved by the Q(sqrt p) pipeline.
struct ClassDatum {
    bool is_explicit = false;
    Int explicit_h;
    long a = 1, b = 0, c = 1;
    AuxClassNumber aux = AuxClassNumber::none;

    static ClassDatum explicit_value(Int h) {
        if (h < 1) throw input_error("ClassDatum: h(B) must be positive");
        ClassDatum d;
        d.is_explicit = true;
        d.explicit_h = std::move(h);
        return d;
    }
    static ClassDatum ratio(long a, long b, long c, AuxClassNumber aux) {
        if (c <= 0) throw input_error("ClassDatum: ratio denominator must be positive");
        ClassDatum d;
        d.a = a; d.b = b; d.c = c; d.aux = aux;
        return d;
    }

    std::string printed() const {
        if (is_explicit) return explicit_h.get_str();
        std::string coef;
        if (b == 0) coef = (a == 1 && aux != AuxClassNumber::none) ? "" : std::to_string(a);
        else coef = "(" + std::to_string(a) + (b > 0 ? "+" : "-") +
                    (std::abs(b) == 1 ? "" : std::to_string(std::abs(b)) + "*") + "(2|p))";
        std::string base;
        switch (aux) {
            case AuxClassNumber::none: base = ""; break;
            case AuxClassNumber::h_minus_p: base = "h(-p)"; break;
            case AuxClassNumber::h_minus_2p: base = "h(-2p)"; break;
            case AuxClassNumber::h_minus_3p: base = "h(-3p)"; break;
        }
        std::string s = coef.empty() ? base : (base.empty() ? coef : coef + "*" + base);
        if (c != 1) s += "/" + std::to_string(c);
        return s;
    }

    // h(B) itself (the printed column times h(F)); exact or it throws.
    Int resolve(const Int& h_F, const Int& h_p, const Int& h_2p, const Int& h_3p,
                int kron2p) const {
        if (is_explicit) return explicit_h;
        Int base;
        switch (aux) {
            case AuxClassNumber::none: base = 1; break;
            case AuxClassNumber::h_minus_p: base = h_p; break;
            case AuxClassNumber::h_minus_2p: base = h_2p; break;
            case AuxClassNumber::h_minus_3p: base = h_3p; break;
        }
        Rational v = Rational(Int(a) + Int(b) * kron2p, Int(c)) * Rational(base) * Rational(h_F);
        Int h = v.to_integer("h(B) from ratio " + printed());
        if (h < 1) throw integrality_error("class datum resolved to nonpositive h(B)");
        return h;
    }
};

// ── CMOrderSpec ─────────────────────────────────────────────────────────────

// One CM order B with its unit data, class number datum, local embedding
// data, and selectivity flags. If B is not in the spinor genus field case
// (s = 0) both deltas are 1; if it is (s = 1), exactly one genus is selected.
struct CMOrderSpec {
    std::string label;
    int mu_order = 2;
    int w = 1;
    ClassDatum class_datum;
    std::map<std::string, int> conductor_valuations;
    std::map<std::string, int> artin_symbols;
    bool in_spinor_genus_field = false;
    int delta_principal = 1;
    int delta_nonprincipal = 1;

    void validate() const {
        if (mu_order < 2 || mu_order % 2 != 0)
            throw input_error("CMOrderSpec[" + label + "]: |mu(B)| must be even and >= 2");
        if (w < 1) throw input_error("CMOrderSpec[" + label + "]: w(B) must be >= 1");
        if ((delta_principal != 0 && delta_principal != 1) ||
            (delta_nonprincipal != 0 && delta_nonprincipal != 1))
            throw input_error("CMOrderSpec[" + label + "]: deltas must be 0/1");
        if (!in_spinor_genus_field) {
            if (delta_principal != 1 || delta_nonprincipal != 1)
                throw input_error("CMOrderSpec[" + label +
                                  "]: non-selective orders embed into every spinor genus");
        } else if (delta_principal + delta_nonprincipal != 1) {
            throw input_error("CMOrderSpec[" + label +
                              "]: a selective order selects exactly one of the two genera");
        }
        for (const auto& [id, v] : conductor_valuations)
            if (v < 0) throw input_error("CMOrderSpec[" + label +
                                         "]: negative conductor valuation at " + id);
        for (const auto& [id, s] : artin_symbols)
            if (s < -1 || s > 1)
                throw input_error("CMOrderSpec[" + label + "]: Artin symbol out of range at " + id);
    }

    int delta(SpinorGenusTag g) const {
        return g == SpinorGenusTag::principal ? delta_principal : delta_nonprincipal;
    }
    int s() const { return in_spinor_genus_field ? 1 : 0; }
};

// ── operations ──────────────────────────────────────────────────────────────

// Eichler symbol (B/p): 1 whenever p divides the conductor of B, otherwise
// the Artin symbol of K at p.
inline int eichler_symbol(const CMOrderSpec& B, const std::string& prime_id) {
    auto c = B.conductor_valuations.find(prime_id);
    if (c != B.conductor_valuations.end() && c->second > 0) return 1;
    auto a = B.artin_symbols.find(prime_id);
    if (a == B.artin_symbols.end())
        throw input_error("eichler_symbol: order " + B.label +
                          " carries no data at prime " + prime_id);
    return a->second;
}

// Local optimal embedding count for squarefree-level Eichler shapes:
// 1 - (B/p) at discriminant primes, 1 + (B/p) at level primes, 1 elsewhere.
// Any other local shape requires an explicit override; the displayed
// three-case formula is not extrapolated.
inline Int m_p(const CMOrderSpec& B, const OrderLocalProfile& local,
               std::optional<Int> override_value = std::nullopt) {
    local.validate();
    if (override_value) {
        if (*override_value < 0)
            throw input_error("m_p: override must be nonnegative");
        return *override_value;
    }
    const int e = local.eichler_invariant;
    const int v = local.discriminant_valuation;
    if (e == 2 && v == 0) return 1;
    if (e == -1 && v == 1) return Int(1 - eichler_symbol(B, local.prime_id));
    if (e == 1 && v == 1) return Int(1 + eichler_symbol(B, local.prime_id));
    throw input_error("m_p: local shape at " + local.prime_id +
                      " (e = " + std::to_string(e) + ", v = " + std::to_string(v) +
                      ") is not a squarefree-level Eichler shape; supply an explicit override");
}

// M(B) = h(B)/w(B) * prod_p m_p(B). The class datum must already be
// resolved (or be a constant ratio of h(F)).
inline Rational big_M(const CMOrderSpec& B, const Int& h_F, const Rational& m_product) {
    B.validate();
    if (h_F < 1) throw input_error("big_M: h(F) must be positive");
    if (m_product.sign() < 0) throw input_error("big_M: m-product must be nonnegative");
    Int h_B;
    if (B.class_datum.is_explicit) {
        h_B = B.class_datum.explicit_h;
    } else if (B.class_datum.aux == AuxClassNumber::none && B.class_datum.b == 0) {
        h_B = B.class_datum.resolve(h_F, 0, 0, 0, 1);
    } else {
        throw input_error("big_M: unresolved symbolic class datum '" +
                          B.class_datum.printed() + "' for order " + B.label);
    }
    return Rational(h_B, Int(B.w)) * m_product;
}

// ── the Q(sqrt p) tables ────────────────────────────────────────────────────

enum class QSqrtPRegime { p2, p3, p5, p1mod4_ge13, p3mod4_ge7 };

inline const char* to_string(QSqrtPRegime r) {
    switch (r) {
        case QSqrtPRegime::p2: return "p=2";
        case QSqrtPRegime::p3: return "p=3";
        case QSqrtPRegime::p5: return "p=5";
        case QSqrtPRegime::p1mod4_ge13: return "p=1 mod 4, p>=13";
        case QSqrtPRegime::p3mod4_ge7: return "p=3 mod 4, p>=7";
    }
    return "?";
}

inline QSqrtPRegime qsqrtp_regime(const Int& p) {
    if (!is_prime(p)) throw input_error("qsqrtp_regime: p must be prime");
    if (p == 2) return QSqrtPRegime::p2;
    if (p == 3) return QSqrtPRegime::p3;
    if (p == 5) return QSqrtPRegime::p5;
    return (p % 4 == 1) ? QSqrtPRegime::p1mod4_ge13 : QSqrtPRegime::p3mod4_ge7;
}

// The sets B^1 (|mu(B)| > 2, drives h^1) and B (w(B) > 1, drives h_sc) of CM
// orders for the genus of maximal orders over Q(sqrt p). b_full is populated
// only for the p = 3 mod 4, p >= 7 regime; elsewhere h_sc rides on
// h_sc = h^1 or on the per-genus type count.
struct QSqrtPBTable {
    QSqrtPRegime regime = QSqrtPRegime::p2;
    std::vector<CMOrderSpec> b1;
    std::vector<CMOrderSpec> b_full;
};

namespace detail {

inline CMOrderSpec table_row(const Int& p, std::string label, int mu, int w, ClassDatum datum,
                             bool selective,
                             std::map<std::string, int> conductor = {},
                             std::map<std::string, int> artin = {}) {
    CMOrderSpec row;
    row.label = std::move(label);
    row.mu_order = mu;
    row.w = w;
    row.class_datum = std::move(datum);
    row.conductor_valuations = std::move(conductor);
    row.artin_symbols = std::move(artin);
    row.in_spinor_genus_field = selective;
    row.delta_principal = delta_qsqrtp(p, row.label, SpinorGenusTag::principal);
    row.delta_nonprincipal = delta_qsqrtp(p, row.label, SpinorGenusTag::nonprincipal);
    row.validate();
    return row;
}

} // namespace detail

// The complete regime-correct table with every column of the printed tables.
inline QSqrtPBTable qsqrtp_b_tables(const Int& p) {
    using D = ClassDatum;
    using A = AuxClassNumber;
    QSqrtPBTable t;
    t.regime = qsqrtp_regime(p);
    switch (t.regime) {
        case QSqrtPRegime::p2:
            t.b1 = {
                detail::table_row(p, "O_K1", 8, 4, D::ratio(1, 0, 1, A::none), false),
                detail::table_row(p, "Z[sqrt(2),sqrt(-1)]", 4, 2, D::ratio(1, 0, 1, A::none), false),
                detail::table_row(p, "O_K3", 6, 3, D::ratio(1, 0, 1, A::none), false),
            };
            break;
        case QSqrtPRegime::p5:
            t.b1 = {
                detail::table_row(p, "O_K1", 4, 2, D::ratio(1, 0, 1, A::none), false),
                detail::table_row(p, "O_K3", 6, 3, D::ratio(1, 0, 1, A::none), false),
                detail::table_row(p, "Z[zeta_10]", 10, 5, D::ratio(1, 0, 1, A::none), false),
            };
            break;
        case QSqrtPRegime::p3:
            t.b1 = {
                detail::table_row(p, "O_F[sqrt(-1)]", 4, 2, D::ratio(1, 0, 1, A::none), true),
                detail::table_row(p, "B_{1,2}", 4, 4, D::ratio(1, 0, 1, A::none), true,
                                  {{"q", 1}}),
                detail::table_row(p, "B_{1,3}", 6, 3, D::ratio(1, 0, 1, A::none), true,
                                  {{"sqrt_p", 1}}),
                detail::table_row(p, "O_K1", 12, 12, D::ratio(1, 0, 1, A::none), true),
            };
            break;
        case QSqrtPRegime::p1mod4_ge13:
            t.b1 = {
                detail::table_row(p, "O_K1", 4, 2, D::ratio(1, 0, 2, A::h_minus_p), false),
                detail::table_row(p, "O_K3", 6, 3, D::ratio(1, 0, 2, A::h_minus_3p), false),
            };
            break;
        case QSqrtPRegime::p3mod4_ge7:
            t.b1 = {
                detail::table_row(p, "O_F[sqrt(-1)]", 4, 2, D::ratio(2, -1, 1, A::h_minus_p), true),
                detail::table_row(p, "B_{1,2}", 4, 4, D::ratio(2, -1, 1, A::h_minus_p), true,
                                  {{"q", 1}}),
                detail::table_row(p, "O_K1", 4, 4, D::ratio(1, 0, 1, A::h_minus_p), true),
                detail::table_row(p, "O_K3", 6, 3, D::ratio(1, 0, 2, A::h_minus_3p), false),
            };
            t.b_full = t.b1;
            t.b_full.push_back(
                detail::table_row(p, "O_K2", 2, 2, D::ratio(1, 0, 1, A::h_minus_2p), false));
            break;
    }
    return t;
}

} // namespace quatclass
