#pragma once

// Exact arithmetic layer: arbitrary-precision integers, exact rationals,
// and the elementary number-theoretic kernels shared by every other header.
// No floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quatclass {

using Int = mpz_class;

// ── errors ──────────────────────────────────────────────────────────────────

// Malformed user/caller input (CLI exit 2).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Local order shape outside the supported theory (e_p = 0); also exit 2.
struct unsupported_case_error : input_error {
    explicit unsupported_case_error(const std::string& msg) : input_error(msg) {}
};

// A value that must be an integer is not; always a data/transcription bug
// upstream, never silently rounded (CLI exit 3). Carries a diagnostic dump.
struct integrality_error : std::runtime_error {
    explicit integrality_error(const std::string& msg) : std::runtime_error(msg) {}
};

// ── Rational ────────────────────────────────────────────────────────────────

// Exact rational, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}             // NOLINT(google-explicit-constructor)
    Rational(const Int& n) : v_(n) {}       // NOLINT(google-explicit-constructor)
    Rational(const Int& num, const Int& den) {
        if (den == 0) throw input_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    Int num() const { return Int(v_.get_num()); }
    Int den() const { return Int(v_.get_den()); }

    Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
    Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
    Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
    Rational operator/(const Rational& o) const {
        if (o.v_ == 0) throw input_error("Rational: division by zero");
        return Rational(v_ / o.v_);
    }
    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    int sign() const { return sgn(v_); }
    Rational abs() const { return v_ < 0 ? Rational(-v_) : *this; }
    bool is_integer() const { return v_.get_den() == 1; }

    // Exact integer extraction; refuses to round.
    Int to_integer(const std::string& what = "value") const {
        if (!is_integer())
            throw integrality_error(what + " = " + to_string() + " is not an integer");
        return num();
    }

    std::string to_string() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

// ── Factorization ───────────────────────────────────────────────────────────

// Prime-exponent pairs with strictly increasing primes; product reconstructs
// the input (empty list encodes 1).
struct Factorization {
    std::vector<std::pair<Int, int>> factors;

    Int value() const {
        Int v = 1;
        for (const auto& [p, e] : factors)
            for (int i = 0; i < e; ++i) v *= p;
        return v;
    }
};

// ── Kronecker symbol ────────────────────────────────────────────────────────

// Standard extension: (a|2) is 0 for even a, else +-1 by a mod 8;
// (a|-1) = sign of a (1 for a >= 0); (a|0) = 1 iff a = +-1. Total function,
// multiplicative in both arguments.
inline int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // strip factors of 2 from n using (a|2)
    int n2 = 0;
    while ((n & 1) == 0) { n >>= 1; ++n2; }
    if (n2 & 1) {
        long long am8 = a % 8;
        if (am8 < 0) am8 += 8;
        if (am8 == 3 || am8 == 5) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    // now n odd positive, 0 <= a < n: binary Jacobi
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            long long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline int kronecker(const Int& a, const Int& n) {
    if (a.fits_slong_p() && n.fits_slong_p())
        return kronecker(static_cast<long long>(a.get_si()),
                         static_cast<long long>(n.get_si()));
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (mpz_even_p(a.get_mpz_t()) && mpz_even_p(n.get_mpz_t())) return 0;
    int result = 1;
    Int nn = n;
    if (nn < 0) {
        nn = -nn;
        if (a < 0) result = -result;
    }
    unsigned long n2 = mpz_scan1(nn.get_mpz_t(), 0);
    nn >>= n2;
    if (n2 & 1) {
        Int am8 = a % 8;
        if (am8 < 0) am8 += 8;
        if (am8 == 3 || am8 == 5) result = -result;
    }
    Int aa = a % nn;
    if (aa < 0) aa += nn;
    while (aa != 0) {
        unsigned long a2 = mpz_scan1(aa.get_mpz_t(), 0);
        aa >>= a2;
        if (a2 & 1) {
            Int nm8 = nn % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(aa, nn);
        if (mpz_congruent_ui_p(aa.get_mpz_t(), 3, 4) &&
            mpz_congruent_ui_p(nn.get_mpz_t(), 3, 4))
            result = -result;
        aa %= nn;
    }
    return nn == 1 ? result : 0;
}

// ── primality ───────────────────────────────────────────────────────────────

namespace detail {

inline Int mulmod(const Int& a, const Int& b, const Int& m) { return (a * b) % m; }

inline Int powmod(Int base, Int exp, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool miller_rabin_witness(const Int& n, const Int& a) {
    // returns true if a proves n composite
    Int d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    d >>= r;
    Int x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

} // namespace detail

// Deterministic for n < 3.317e24 (covers the spec's n < 2^64 guarantee) via
// the first-twelve-primes witness set; larger inputs fall back to GMP's
// probabilistic test, far outside the artifact's working range.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long p : small) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) return false;
    }
    static const Int det_bound("3317044064679887385961981");
    if (n < det_bound) {
        for (long p : small)
            if (detail::miller_rabin_witness(n, Int(p))) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// ── factorization / divisor sum ─────────────────────────────────────────────

// Trial division with a 2-3-5 wheel; intended scale n < 10^12.
inline Factorization factorize(Int n) {
    if (n <= 0) throw input_error("factorize: argument must be >= 1, got " + n.get_str());
    Factorization f;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e > 0) f.factors.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    strip(5);
    static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    Int d = 7;
    int wi = 0;
    while (d * d <= n) {
        strip(d);
        d += wheel[wi];
        wi = (wi + 1) & 7;
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

// Sum of positive divisors.
inline Int sigma1(const Int& n) {
    if (n <= 0) throw input_error("sigma1: argument must be >= 1, got " + n.get_str());
    Int s = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        Int geom = 1, pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            geom += pk;
        }
        s *= geom;
    }
    return s;
}

// squarefree <=> no exponent exceeds 1
inline bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    Int m = n < 0 ? Int(-n) : n;
    for (const auto& [p, e] : factorize(m).factors)
        if (e > 1) return false;
    return true;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

} // namespace quatclass
