#include "quatclass/exact.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace quatclass;

namespace {

// independent divisor-sum oracle
Int brute_sigma1(long n) {
    Int s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

bool brute_is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("kronecker: stated values") {
    CHECK(kronecker(Int(-7), Int(2)) == 1);    // p = 7 mod 8
    CHECK(kronecker(Int(-3), Int(2)) == -1);   // p = 3 mod 8
    CHECK(kronecker(Int(12345), Int(1)) == 1);
    CHECK(kronecker(Int(-9), Int(1)) == 1);
    CHECK(kronecker(Int(0), Int(1)) == 1);
}

TEST_CASE("kronecker: conventions at 0, -1 and 2") {
    CHECK(kronecker(Int(1), Int(0)) == 1);
    CHECK(kronecker(Int(-1), Int(0)) == 1);
    CHECK(kronecker(Int(2), Int(0)) == 0);
    CHECK(kronecker(Int(5), Int(-1)) == 1);
    CHECK(kronecker(Int(-5), Int(-1)) == -1);
    CHECK(kronecker(Int(4), Int(2)) == 0);
    CHECK(kronecker(Int(7), Int(2)) == 1);
    CHECK(kronecker(Int(3), Int(2)) == -1);
}

TEST_CASE("kronecker: agrees with GMP and is multiplicative") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<long long> dist(-2000, 2000);
    for (int i = 0; i < 4000; ++i) {
        long long a = dist(rng), b = dist(rng), n = dist(rng);
        Int A(a), B(b), N(n);
        CHECK(kronecker(A, N) ==
              mpz_kronecker(A.get_mpz_t(), N.get_mpz_t()));
        CHECK(kronecker(Int(A * B), N) == kronecker(A, N) * kronecker(B, N));
        CHECK(kronecker(A, Int(B * N)) == kronecker(A, B) * kronecker(A, N));
    }
}

TEST_CASE("kronecker: Euler criterion at odd primes") {
    std::mt19937_64 rng(7);
    for (long q : {3L, 5L, 7L, 11L, 101L, 997L}) {
        std::uniform_int_distribution<long long> dist(1, 100000);
        for (int i = 0; i < 200; ++i) {
            long long a = dist(rng);
            if (a % q == 0) continue;
            Int e;
            mpz_powm(e.get_mpz_t(), Int(a).get_mpz_t(), Int((q - 1) / 2).get_mpz_t(),
                     Int(q).get_mpz_t());
            int euler = (e == 1) ? 1 : -1;
            CHECK(kronecker(Int(a), Int(q)) == euler);
        }
    }
}

TEST_CASE("kronecker: big-operand path matches the word-size path") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> dist(-300, 300);
    Int shift = Int(1) << 80;
    for (int i = 0; i < 500; ++i) {
        long long a = dist(rng), n = 2 * dist(rng) + 1;
        Int biga = Int(a) + shift * n;   // same residue class mod n
        CHECK(kronecker(biga, Int(n)) == mpz_kronecker(biga.get_mpz_t(), Int(n).get_mpz_t()));
    }
}

TEST_CASE("sigma1: stated values and oracle sweep") {
    CHECK(sigma1(Int(1)) == 1);
    CHECK(sigma1(Int(6)) == 12);
    CHECK(sigma1(Int(7)) == 8);
    for (long n = 1; n <= 2000; ++n) CHECK(sigma1(Int(n)) == brute_sigma1(n));
    CHECK_THROWS_AS(sigma1(Int(0)), input_error);
}

TEST_CASE("sigma1: multiplicative on coprime arguments") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> dist(1, 5000);
    for (int i = 0; i < 500; ++i) {
        Int m = dist(rng), n = dist(rng);
        if (gcd(m, n) != 1) continue;
        CHECK(sigma1(Int(m * n)) == sigma1(m) * sigma1(n));
    }
}

TEST_CASE("factorize: stated values") {
    CHECK(factorize(Int(1)).factors.empty());
    auto f = factorize(Int(84));
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::pair<Int, int>{2, 2});
    CHECK(f.factors[1] == std::pair<Int, int>{3, 1});
    CHECK(f.factors[2] == std::pair<Int, int>{7, 1});
    auto g = factorize(Int(7919));
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0] == std::pair<Int, int>{7919, 1});
    CHECK_THROWS_AS(factorize(Int(0)), input_error);
}

TEST_CASE("factorize: reconstruction, ordering, primality of factors") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long long> dist(1, 10000000);
    for (int i = 0; i < 300; ++i) {
        Int n(dist(rng));
        auto f = factorize(n);
        CHECK(f.value() == n);
        for (std::size_t j = 0; j + 1 < f.factors.size(); ++j)
            CHECK(f.factors[j].first < f.factors[j + 1].first);
        for (const auto& [p, e] : f.factors) {
            CHECK(is_prime(p));
            CHECK(e >= 1);
        }
    }
}

TEST_CASE("is_prime: stated values and sweeps") {
    CHECK(is_prime(Int(2)));
    CHECK_FALSE(is_prime(Int(1)));
    CHECK_FALSE(is_prime(Int(0)));
    CHECK_FALSE(is_prime(Int(7917)));   // 3 | 7917
    CHECK(is_prime(Int(7919)));
    for (long n = 0; n <= 20000; ++n) CHECK(is_prime(Int(n)) == brute_is_prime(n));
    // around 2^32 and a few larger Mersenne-ish cases
    CHECK(is_prime(Int("4294967311")));
    CHECK_FALSE(is_prime(Int("4294967297")));            // Fermat F5 = 641 * 6700417
    CHECK(is_prime(Int("2305843009213693951")));         // 2^61 - 1
    CHECK_FALSE(is_prime(Int("2305843009213693953")));
}

TEST_CASE("Rational: canonical form and exactness") {
    Rational r(Int(6), Int(-4));
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(r.to_string() == "-3/2");
    CHECK(Rational(Int(0), Int(7)).to_string() == "0");
    CHECK_THROWS_AS(Rational(Int(1), Int(0)), input_error);
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(7).is_integer());
    CHECK(Rational(7).to_integer() == 7);
    CHECK_THROWS_AS(Rational(1, 2).to_integer(), integrality_error);
    CHECK(Rational(-5, 3) < Rational(-1, 3));
    CHECK(Rational(-5, 3).abs() == Rational(5, 3));
}

TEST_CASE("Rational: arithmetic round-trips exactly") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    for (int i = 0; i < 1000; ++i) {
        long a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
        if (b == 0 || d == 0) continue;
        Rational x(a, b), y(c, d);
        CHECK((x + y) - y == x);
        CHECK(x + y == y + x);
        CHECK((x * y) == (y * x));
        if (y != Rational(0)) CHECK((x / y) * y == x);
        CHECK(x.den() > 0);
        CHECK(gcd(x.num(), x.den()) == 1);
    }
}
