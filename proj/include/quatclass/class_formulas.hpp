#pragma once

// Assembly of the headline class number formulas:
//   h^1(O)  = 2 Mass^1(O) + (1/4h(F))  sum_{B in B^1} 2^s Delta (|mu|-2) M(B)
//   h_sc(O) = Mass_sc(O) + (1/2h+(F)) sum_{B in B}   2^s Delta (w-1)   M(B)
// together with the per-spinor-class trace value and the classical trace
// right-hand side used as a consistency check. Results must come out as
// positive integers; anything else raises with a full diagnostic dump.

#include "quatclass/cm_orders.hpp"
#include "quatclass/exact.hpp"
#include "quatclass/mass.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace quatclass {

// A table row with every symbol resolved to a number: h(B) explicit, the
// m-product multiplied out, s and the Delta for the target spinor genus.
struct ResolvedCMOrder {
    std::string label;
    int mu = 2;
    int w = 1;
    Int h_B;
    Int m_product = Int(1);
    int s = 0;
    int delta = 1;

    void validate() const {
        if (mu < 2 || mu % 2 != 0)
            throw input_error("ResolvedCMOrder[" + label + "]: |mu(B)| must be even, >= 2");
        if (w < 1) throw input_error("ResolvedCMOrder[" + label + "]: w(B) must be >= 1");
        if (h_B < 1) throw input_error("ResolvedCMOrder[" + label + "]: h(B) must be positive");
        if (m_product < 0)
            throw input_error("ResolvedCMOrder[" + label + "]: m-product must be >= 0");
        if (s != 0 && s != 1)
            throw input_error("ResolvedCMOrder[" + label + "]: s flag must be 0/1");
        if (delta != 0 && delta != 1)
            throw input_error("ResolvedCMOrder[" + label + "]: Delta must be 0/1");
    }

    Rational weight() const { return Rational(h_B, Int(w)) * Rational(m_product); } // M(B)
};

// Everything the two formulas consume. b1_list is the set B^1; b_list the
// set B (only required when h_sc is evaluated, and must contain b1_list's
// labels whenever it is populated).
struct FormulaInput {
    OrderProfile order;
    std::vector<ResolvedCMOrder> b1_list;
    std::vector<ResolvedCMOrder> b_list;
    Int h_F;
    Int h_plus;

    void validate() const {
        for (const auto& b : b1_list) b.validate();
        for (const auto& b : b_list) b.validate();
        if (h_F != order.field.h || h_plus != order.field.h_plus)
            throw input_error("FormulaInput: class numbers disagree with the field invariants");
        if (!b_list.empty()) {
            for (const auto& b1 : b1_list) {
                bool found = false;
                for (const auto& b : b_list) found = found || b.label == b1.label;
                if (!found)
                    throw input_error("FormulaInput: B^1 member '" + b1.label +
                                      "' missing from the B list");
            }
        }
    }
};

// ── trace values ────────────────────────────────────────────────────────────

// Per-spinor-class optimal embedding count: 2^s Delta h(B) / |SCl(O)| * prod m_p.
inline Rational spinor_trace_sum(const ResolvedCMOrder& B, const Int& scl_size_value,
                                 int delta, int s) {
    B.validate();
    if (scl_size_value < 1) throw input_error("spinor_trace_sum: |SCl(O)| must be positive");
    if ((delta != 0 && delta != 1) || (s != 0 && s != 1))
        throw input_error("spinor_trace_sum: delta and s must be 0/1");
    Int numer = (Int(1) << s) * delta * B.h_B * B.m_product;
    return Rational(numer, scl_size_value);
}

// Classical trace formula right-hand side: h(B) * prod m_p(B).
inline Rational classical_trace_rhs(const ResolvedCMOrder& B) {
    B.validate();
    return Rational(B.h_B * B.m_product);
}

// ── helpers ─────────────────────────────────────────────────────────────────

namespace detail {

inline std::string dump_formula_state(const char* which, const FormulaInput& input,
                                      const Rational& mass_term, const Rational& sum,
                                      const Rational& total) {
    std::ostringstream os;
    os << which << " diagnostic dump:\n  mass term = " << mass_term.to_string()
       << "\n  selective sum = " << sum.to_string()
       << "\n  total = " << total.to_string()
       << "\n  h(F) = " << input.h_F.get_str() << ", h+(F) = " << input.h_plus.get_str()
       << "\n  zeta_F(-1) = " << input.order.field.zeta_minus_one.to_string() << "\n";
    auto dump_rows = [&os](const char* name, const std::vector<ResolvedCMOrder>& rows) {
        os << "  " << name << ":\n";
        for (const auto& b : rows)
            os << "    " << b.label << ": mu=" << b.mu << " w=" << b.w
               << " h(B)=" << b.h_B.get_str() << " m=" << b.m_product.get_str()
               << " s=" << b.s << " Delta=" << b.delta
               << " M(B)=" << b.weight().to_string() << "\n";
    };
    dump_rows("B^1", input.b1_list);
    dump_rows("B", input.b_list);
    return os.str();
}

} // namespace detail

// ── class numbers ───────────────────────────────────────────────────────────

inline Int h1(const FormulaInput& input) {
    input.validate();
    Rational mass_term = Rational(2) * mass1(input.order);
    Rational sum(0);
    for (const auto& b : input.b1_list) {
        Rational term = Rational(Int((Int(1) << b.s) * b.delta * (b.mu - 2))) * b.weight();
        sum += term;
    }
    Rational total = mass_term + sum * Rational(Int(1), Int(4) * input.h_F);
    if (!total.is_integer() || total.sign() <= 0)
        throw integrality_error("h1: result " + total.to_string() + " is not a positive integer\n" +
                                detail::dump_formula_state("h1", input, mass_term, sum, total));
    return total.num();
}

inline Int h_sc(const FormulaInput& input) {
    input.validate();
    Rational mass_term = mass_sc(input.order);
    Rational sum(0);
    for (const auto& b : input.b_list) {
        Rational term = Rational(Int((Int(1) << b.s) * b.delta * (b.w - 1))) * b.weight();
        sum += term;
    }
    Rational total = mass_term + sum * Rational(Int(1), Int(2) * input.h_plus);
    if (!total.is_integer() || total.sign() <= 0)
        throw integrality_error("h_sc: result " + total.to_string() +
                                " is not a positive integer\n" +
                                detail::dump_formula_state("h_sc", input, mass_term, sum, total));
    return total.num();
}

// The general theorem route: the caller supplies the inner per-spinor-class
// embedding sums (one value per B^1 entry, already summed over Cl_sc(O)).
// Integrality is asserted only when the caller marks the input complete.
inline Rational h1_general_thm(const FormulaInput& input,
                               const std::vector<Rational>& inner_sums, bool complete) {
    input.validate();
    if (inner_sums.size() != input.b1_list.size())
        throw input_error("h1_general_thm: need one inner sum per B^1 entry");
    Rational total = Rational(2) * mass1(input.order);
    Rational u(input.order.u_value);
    for (std::size_t i = 0; i < inner_sums.size(); ++i) {
        const auto& b = input.b1_list[i];
        if (inner_sums[i].sign() < 0)
            throw input_error("h1_general_thm: inner sums are counts, must be >= 0");
        total += u * Rational(Int(1), Int(4)) *
                 Rational(Int(b.mu - 2), Int(b.w)) * inner_sums[i];
    }
    if (complete && (!total.is_integer() || total.sign() <= 0))
        throw integrality_error("h1_general_thm: result " + total.to_string() +
                                " is not a positive integer");
    return total;
}

} // namespace quatclass
