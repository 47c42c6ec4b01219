#pragma once

// Optimal spinor selectivity decisions: size of the group of spinor genera,
// spinor genus field membership for Eichler genera, the genus character of
// Q(sqrt p), and the Delta(B, O) propagation/lookup rules for the worked
// family. Orders with a zero Eichler invariant at some prime are refused
// everywhere: that case is open territory, not implemented territory.

#include "quatclass/exact.hpp"

#include <map>
#include <set>
#include <string>

namespace quatclass {

// principal = the spinor genus containing the base-changed maximal orders
// M(o); only meaningful when the spinor genus group has order 2.
enum class SpinorGenusTag { principal, nonprincipal };

inline const char* to_string(SpinorGenusTag t) {
    return t == SpinorGenusTag::principal ? "principal" : "nonprincipal";
}

// ── genus data ──────────────────────────────────────────────────────────────

// A genus of orders described by its ramification and local shape:
// Ram_f(D), level valuations nu_p(n), and Eichler invariants e_p.
// level_valuations and ramified_finite must have disjoint supports.
struct GenusDescriptor {
    int ramified_infinite_count = 0;
    std::set<std::string> ramified_finite;
    std::map<std::string, int> level_valuations;
    std::map<std::string, int> eichler_invariants;

    void validate() const {
        if (ramified_infinite_count < 0)
            throw input_error("GenusDescriptor: negative infinite ramification count");
        for (const auto& [id, v] : level_valuations) {
            if (v < 0) throw input_error("GenusDescriptor: negative level valuation at " + id);
            if (v > 0 && ramified_finite.count(id))
                throw input_error("GenusDescriptor: level and discriminant share prime " + id);
        }
        for (const auto& [id, e] : eichler_invariants)
            if (e < -1 || e > 2)
                throw input_error("GenusDescriptor: Eichler invariant out of range at " + id);
    }
};

// Relative quadratic extension K/F with the per-place data the membership
// test consumes: finite ramified primes, how many real places ramify, and
// Artin symbols where known (split 1, ramified 0, inert -1).
struct RelativeQuadExt {
    std::string label;
    int ramified_infinite_count = 0;
    std::set<std::string> ramified_finite;
    std::map<std::string, int> artin_at;
};

// ── operations ──────────────────────────────────────────────────────────────

// Order of the group of spinor genera of maximal orders in D_{inf1,inf2}
// over Q(sqrt p): 2^(t-1) for t finite primes ramified in F/Q.
inline int spinor_genus_group_order_qsqrtp(const Int& p) {
    if (!is_prime(p)) throw input_error("spinor_genus_group_order_qsqrtp: p must be prime");
    return (p % 4 == 3) ? 2 : 1;
}

// K subset of Sigma_G for an Eichler genus: (a) K/F and D unramified at every
// finite prime and ramified at exactly the same set of infinite places, and
// (b) every prime with odd level valuation splits in K.
inline bool k_in_sigma_eichler(const GenusDescriptor& genus, const RelativeQuadExt& K) {
    genus.validate();
    for (const auto& [id, e] : genus.eichler_invariants)
        if (e == 0)
            throw unsupported_case_error(
                "k_in_sigma_eichler: Eichler invariant 0 at prime " + id +
                "; spinor genus field membership is only decided for Eichler genera "
                "(the e_p = 0 case is open)");
    if ((genus.ramified_infinite_count + static_cast<int>(genus.ramified_finite.size())) % 2 != 0)
        throw input_error("k_in_sigma_eichler: Ram(D) must have even total cardinality");

    if (!genus.ramified_finite.empty()) return false;
    if (!K.ramified_finite.empty()) return false;
    if (K.ramified_infinite_count != genus.ramified_infinite_count) return false;
    for (const auto& [id, v] : genus.level_valuations) {
        if (v % 2 == 0) continue;
        auto it = K.artin_at.find(id);
        if (it == K.artin_at.end())
            throw input_error("k_in_sigma_eichler: missing Artin symbol of K at odd-level prime " + id);
        if (it->second != 1) return false;
    }
    return true;
}

// Genus character of Q(sqrt p), p = 3 mod 4, on a narrow ideal class
// represented by an integral ideal coprime to p: chi([a]+) = (-p | Nm(a)).
inline int genus_character_qsqrtp(const Int& p, const Int& ideal_norm) {
    if (!is_prime(p) || p % 4 != 3)
        throw input_error("genus_character_qsqrtp: p must be a prime = 3 mod 4");
    if (ideal_norm <= 0)
        throw input_error("genus_character_qsqrtp: ideal norm must be positive");
    if (gcd(ideal_norm, p) != 1)
        throw input_error("genus_character_qsqrtp: ideal norm " + ideal_norm.get_str() +
                          " shares a factor with p = " + p.get_str());
    return kronecker(Int(-p), ideal_norm);
}

// Delta transport along a shift ideal: Delta flips exactly when the
// attached Artin/genus character value is nontrivial.
inline int delta_shift(int delta_base, int character_value) {
    if (delta_base != 0 && delta_base != 1)
        throw input_error("delta_shift: delta must be 0 or 1");
    if (character_value != 1 && character_value != -1)
        throw input_error("delta_shift: character value must be +-1");
    return character_value == 1 ? delta_base : 1 - delta_base;
}

// Delta(B, O) for the Q(sqrt p) family, per spinor genus. Values follow the
// worked tables: everything is 1 when p != 3 mod 4; for p = 3 mod 4 the
// selective rows select exactly one genus, with the B_{1,2} pair driven by
// chi of the dyadic prime.
inline int delta_qsqrtp(const Int& p, const std::string& label, SpinorGenusTag genus) {
    if (!is_prime(p)) throw input_error("delta_qsqrtp: p must be prime");
    const bool principal = genus == SpinorGenusTag::principal;
    if (p % 4 != 3) return 1;

    if (p == 3) {
        if (label == "O_F[sqrt(-1)]" || label == "O_K1") return principal ? 1 : 0;
        if (label == "B_{1,2}" || label == "B_{1,3}") return principal ? 0 : 1;
        throw input_error("delta_qsqrtp: unknown CM order label '" + label + "' for p = 3");
    }
    // p = 3 mod 4, p >= 7
    if (label == "O_F[sqrt(-1)]" || label == "O_K1") return principal ? 1 : 0;
    if (label == "B_{1,2}") {
        int sigma = kronecker(Int(2), p);
        return principal ? (1 + sigma) / 2 : (1 - sigma) / 2;
    }
    if (label == "O_K3" || label == "O_K2") return 1;
    throw input_error("delta_qsqrtp: unknown CM order label '" + label +
                      "' for p = " + p.get_str());
}

} // namespace quatclass
