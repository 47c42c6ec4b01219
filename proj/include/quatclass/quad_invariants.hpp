#pragma once

// Quadratic-field invariants consumed by the class number formulas:
// imaginary class numbers h(d) (reduced-form count, with an independent
// Dirichlet-sum route), real class numbers h(F) and h+(F) for F = Q(sqrt p)
// (indefinite form cycles + unit-norm correction), the fundamental unit via
// the continued fraction of sqrt(p), and zeta_F(-1) via Siegel's finite
// divisor sum.

#include "quatclass/exact.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace quatclass {

// ── QuadField ───────────────────────────────────────────────────────────────

// K = Q(sqrt d), d squarefree != 0, 1. h(d) always means the class number of
// this field (the paper's convention), so the discriminant below is the
// field discriminant.
struct QuadField {
    Int radicand;
    Int discriminant;
    bool imaginary = false;

    static QuadField of_radicand(const Int& d) {
        if (d == 0 || d == 1) throw input_error("QuadField: radicand must be != 0, 1");
        if (!is_squarefree(d))
            throw input_error("QuadField: radicand " + d.get_str() + " is not squarefree");
        QuadField f;
        f.radicand = d;
        Int dm4 = d % 4;
        if (dm4 < 0) dm4 += 4;
        f.discriminant = (dm4 == 1) ? d : Int(4 * d);
        f.imaginary = d < 0;
        return f;
    }
};

// ── FieldInvariants ─────────────────────────────────────────────────────────

// Exact invariants of a totally real field F entering the mass and class
// number formulas. zeta_minus_one is the signed value; per the functional
// equation its sign is (-1)^degree.
struct FieldInvariants {
    int degree = 0;
    Rational zeta_minus_one;
    Int h;
    Int h_plus;

    FieldInvariants() = default;
    FieldInvariants(int n, Rational zeta, Int h_, Int hp)
        : degree(n), zeta_minus_one(std::move(zeta)), h(std::move(h_)), h_plus(std::move(hp)) {
        if (degree < 1) throw input_error("FieldInvariants: degree must be >= 1");
        if (h < 1 || h_plus < 1)
            throw input_error("FieldInvariants: class numbers must be positive");
        if (h_plus % h != 0)
            throw input_error("FieldInvariants: h must divide h_plus");
        Int q = h_plus / h;
        if (mpz_popcount(q.get_mpz_t()) != 1)
            throw input_error("FieldInvariants: h_plus/h = " + q.get_str() +
                              " is not a power of 2");
        int expected_sign = (degree % 2 == 0) ? 1 : -1;
        if (zeta_minus_one.sign() != expected_sign)
            throw input_error("FieldInvariants: sign of zeta_F(-1) must be (-1)^degree");
    }
};

// ── imaginary quadratic class numbers ───────────────────────────────────────

// Class number of Q(sqrt d), d < 0 squarefree, by counting reduced primitive
// forms (a,b,c) of the field discriminant: |b| <= a <= c, b^2 - 4ac = disc,
// with b >= 0 whenever |b| = a or a = c.
inline Int h_imag(const Int& d) {
    if (d >= 0) throw input_error("h_imag: d must be negative");
    QuadField K = QuadField::of_radicand(d);
    const Int disc = K.discriminant;
    Int count = 0;
    Int abs_disc = -disc;
    Int amax = isqrt(abs_disc / 3);
    for (Int a = 1; a <= amax; ++a) {
        for (Int b = (disc % 2 == 0) ? Int(0) : Int(1); b <= a; b += 2) {
            Int num = b * b - disc;       // 4ac
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            Int g = gcd(gcd(a, b), c);
            if (g != 1) continue;
            // (a,b,c) and (a,-b,c) are distinct classes unless b=0, |b|=a, a=c
            count += (b == 0 || b == a || a == c) ? 1 : 2;
        }
    }
    return count;
}

// Same value via the finite Dirichlet class number sum
// h = w/(2|disc|) * -sum_{a=1}^{|disc|-1} a*chi(a); exists solely to
// cross-validate h_imag.
inline Int h_imag_dirichlet(const Int& d) {
    if (d >= 0) throw input_error("h_imag_dirichlet: d must be negative");
    QuadField K = QuadField::of_radicand(d);
    const Int disc = K.discriminant;
    long w = (disc == -3) ? 6 : (disc == -4) ? 4 : 2;
    if (!disc.fits_slong_p() || disc < -(Int(1) << 31))
        throw input_error("h_imag_dirichlet: discriminant out of supported range");
    long long D = disc.get_si();
    long long absD = -D;
    long long s = 0;
    for (long long a = 1; a < absD; ++a) s += a * kronecker(D, a);
    Int numer = Int(-s) * w;
    Int denom = 2 * Int(absD);
    if (numer <= 0 || numer % denom != 0)
        throw integrality_error("h_imag_dirichlet: sum " + Int(s).get_str() +
                                " at disc " + disc.get_str() + " is inconsistent");
    return numer / denom;
}

// Class number of the field Q(sqrt d) for arbitrary nonsquare d (reduces a
// nonsquarefree radicand to its squarefree kernel first); report plumbing.
inline Int h_of_quad_field(const Int& d) {
    if (d >= 0) throw input_error("h_of_quad_field: d must be negative");
    Int kernel = 1;
    for (const auto& [p, e] : factorize(-d).factors)
        if (e % 2 == 1) kernel *= p;
    return h_imag(-kernel);
}

// ── fundamental unit ────────────────────────────────────────────────────────

// eps = (x + y*sqrt(p)) / (half ? 2 : 1), the fundamental unit of O_F,
// F = Q(sqrt p). norm_sign is Nm_{F/Q}(eps) in {+1,-1}.
struct FundamentalUnit {
    Int x;
    Int y;
    bool half = false;
    int norm_sign = 0;

    std::string to_string(const Int& p) const {
        std::string body = x.get_str() + "+" + y.get_str() + "·√" + p.get_str();
        if (half) body = "(" + body + ")/2";
        return body + ", norm " + (norm_sign > 0 ? "+1" : "-1");
    }
};

// Continued fraction of sqrt(p): fundamental solution of |x^2 - p y^2| = 1
// generating Z[sqrt p]^x; for p = 1 mod 4 the fundamental unit of O_F may be
// its cube root (t + u sqrt p)/2 with t^2 - p u^2 = +-4, which is searched
// for exactly.
inline FundamentalUnit fundamental_unit(const Int& p) {
    if (!is_prime(p)) throw input_error("fundamental_unit: p must be prime");
    const Int a0 = isqrt(p);
    // CF state for (P + sqrt p)/Q
    Int P = 0, Q = 1, a = a0;
    Int h_prev = 1, h_cur = a0;   // convergent numerators
    Int k_prev = 0, k_cur = 1;    // convergent denominators
    long period = 0;
    while (true) {
        ++period;
        P = a * Q - P;
        Q = (p - P * P) / Q;
        a = (P + a0) / Q;
        if (Q == 1) break;        // period of sqrt(p) ends where Q returns to 1
        Int h_next = a * h_cur + h_prev;
        Int k_next = a * k_cur + k_prev;
        h_prev = h_cur; h_cur = h_next;
        k_prev = k_cur; k_cur = k_next;
    }
    Int x = h_cur, y = k_cur;
    int norm = (period % 2 == 0) ? 1 : -1;
    if (x * x - p * y * y != norm)
        throw integrality_error("fundamental_unit: Pell identity failed at p = " + p.get_str());

    FundamentalUnit eps{x, y, false, norm};
    if (p % 4 == 1) {
        // cube-root search: u (p u^2 + 3 s) = 2 y, monotone in u
        const Int target = 2 * y;
        Int lo = 1, hi = y + 1;
        while (lo < hi) {
            Int mid = (lo + hi) / 2;
            if (mid * (p * mid * mid + 3 * norm) < target) lo = mid + 1;
            else hi = mid;
        }
        const Int u = lo;
        if (u * (p * u * u + 3 * norm) == target) {
            Int t2 = p * u * u + 4 * norm;
            if (is_square(t2)) {
                Int t = isqrt(t2);
                if (t * t * t + 3 * t * u * u * p == 8 * x &&
                    3 * t * t * u + u * u * u * p == 8 * y)
                    eps = FundamentalUnit{t, u, true, norm};
            }
        }
    }
    return eps;
}

// ── indefinite form cycles / real class numbers ─────────────────────────────

namespace detail {

struct IndefForm {
    Int a, b, c;
    bool operator<(const IndefForm& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
    bool operator==(const IndefForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

// reduced <=> 0 < b < sqrt(disc) and sqrt(disc) - b < 2|a| < sqrt(disc) + b,
// decided by exact integer comparisons (disc is never a square here)
inline bool indef_reduced(const Int& a, const Int& b, const Int& disc, const Int& sqrt_disc) {
    if (b <= 0 || b > sqrt_disc) return false;
    Int twoa = 2 * (a < 0 ? Int(-a) : a);
    if (disc >= (twoa + b) * (twoa + b)) return false;
    Int t = twoa - b;
    return t <= 0 || t * t < disc;
}

// reduction step: (a,b,c) -> (c, b', (b'^2 - disc)/(4c)) with
// b' = -b mod 2|c| shifted into the reduced window
inline IndefForm indef_rho(const IndefForm& f, const Int& disc, const Int& sqrt_disc) {
    Int c = f.c;
    Int twoc = 2 * (c < 0 ? Int(-c) : c);
    Int b = -f.b % twoc;
    if (b < 0) b += twoc;
    // largest b = -f.b (mod 2|c|) strictly below sqrt_disc (floor window)
    Int shift = (sqrt_disc - b) / twoc;
    b += shift * twoc;
    while (b > sqrt_disc) b -= twoc;
    while (b + twoc <= sqrt_disc) b += twoc;
    Int c2 = (b * b - disc) / (4 * c);
    return IndefForm{c, b, c2};
}

} // namespace detail

// Number of cycles of reduced primitive indefinite forms of the given
// positive nonsquare discriminant = the narrow form class number h+(disc).
inline Int narrow_form_class_number(const Int& disc) {
    if (disc <= 0 || disc % 4 == 2 || disc % 4 == 3 || is_square(disc))
        throw input_error("narrow_form_class_number: invalid discriminant " + disc.get_str());
    const Int sd = isqrt(disc);
    std::set<detail::IndefForm> all;
    for (Int b = (disc % 2 == 0) ? Int(2) : Int(1); b <= sd; b += 2) {
        Int m = (b * b - disc) / 4;   // = a*c < 0
        Int am = -m;
        for (Int e = 1; e * e <= am; ++e) {
            if (am % e != 0) continue;
            Int f2 = am / e;
            int ndiv = (e == f2) ? 1 : 2;
            for (int which = 0; which < ndiv; ++which) {
                Int aa = (which == 0) ? e : f2;
                for (int sign = 0; sign < 2; ++sign) {
                    Int fa = sign ? Int(-aa) : aa;
                    Int fc = m / fa;
                    if (!detail::indef_reduced(fa, b, disc, sd)) continue;
                    if (gcd(gcd(fa, b), fc) != 1) continue;
                    all.insert(detail::IndefForm{fa, b, fc});
                }
            }
        }
    }
    Int cycles = 0;
    std::set<detail::IndefForm> seen;
    const std::size_t step_bound = 10 * all.size() + 100;
    for (const auto& f : all) {
        if (seen.count(f)) continue;
        ++cycles;
        detail::IndefForm g = f;
        std::size_t steps = 0;
        do {
            seen.insert(g);
            g = detail::indef_rho(g, disc, sd);
            if (++steps > step_bound)
                throw integrality_error("narrow_form_class_number: reduction walk did not "
                                        "close at discriminant " + disc.get_str());
        } while (!(g == f));
    }
    return cycles;
}

// Class number of Q(sqrt p): narrow form class count of the field
// discriminant, divided by 2 when the fundamental unit has norm +1.
inline Int h_real(const Int& p) {
    if (!is_prime(p)) throw input_error("h_real: p must be prime");
    Int disc = (p % 4 == 1) ? p : Int(4 * p);
    Int narrow = narrow_form_class_number(disc);
    if (fundamental_unit(p).norm_sign == 1) {
        if (narrow % 2 != 0)
            throw integrality_error("h_real: odd narrow class count " + narrow.get_str() +
                                    " with totally positive unit at p = " + p.get_str());
        return narrow / 2;
    }
    return narrow;
}

// h+(F) = 2 h(F) if p = 3 mod 4 (the unit-index factor is 2 exactly when the
// fundamental unit is totally positive), else h(F).
inline Int narrow_class_number(const Int& p) {
    if (!is_prime(p)) throw input_error("narrow_class_number: p must be prime");
    Int h = h_real(p);
    return (p % 4 == 3) ? Int(2 * h) : h;
}

// ── zeta_F(-1) ──────────────────────────────────────────────────────────────

// Siegel's divisor sum for real quadratic F of field discriminant D:
// zeta_F(-1) = (1/60) * sum over b^2 < D, b^2 = D mod 4 of sigma1((D-b^2)/4).
// Returned as the (positive) absolute value.
inline Rational zeta_minus_one_real_quadratic(const Int& p) {
    if (!is_prime(p)) throw input_error("zeta_minus_one_real_quadratic: p must be prime");
    const Int disc = (p % 4 == 1) ? p : Int(4 * p);
    Int sum = 0;
    for (Int b = (disc % 2 == 0) ? Int(0) : Int(1); b * b < disc; b += 2) {
        Int s = sigma1((disc - b * b) / 4);
        sum += (b == 0) ? s : 2 * s;
    }
    return Rational(sum, 60);
}

// The assembled invariants of F = Q(sqrt p); zeta is stored signed, and
// (-1)^2 = +1 for the quadratic case.
inline FieldInvariants field_invariants_qsqrtp(const Int& p) {
    Int h = h_real(p);
    Int hp = (p % 4 == 3) ? Int(2 * h) : h;
    return FieldInvariants(2, zeta_minus_one_real_quadratic(p), h, hp);
}

} // namespace quatclass
