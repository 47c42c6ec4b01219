#include "quatclass/cm_orders.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace quatclass;

namespace {

CMOrderSpec order_with(std::map<std::string, int> conductor,
                       std::map<std::string, int> artin) {
    CMOrderSpec b;
    b.label = "test";
    b.mu_order = 4;
    b.w = 2;
    b.class_datum = ClassDatum::explicit_value(Int(1));
    b.conductor_valuations = std::move(conductor);
    b.artin_symbols = std::move(artin);
    return b;
}

OrderLocalProfile local(const char* id, long norm, int e, int v) {
    return OrderLocalProfile{id, Int(norm), e, v};
}

const CMOrderSpec* find_row(const std::vector<CMOrderSpec>& rows, const std::string& label) {
    for (const auto& r : rows)
        if (r.label == label) return &r;
    return nullptr;
}

} // namespace

TEST_CASE("eichler_symbol: conductor wins, else Artin") {
    CHECK(eichler_symbol(order_with({{"q", 2}}, {{"q", -1}}), "q") == 1);
    CHECK(eichler_symbol(order_with({{"q", 0}}, {{"q", 0}}), "q") == 0);
    CHECK(eichler_symbol(order_with({}, {{"q", 1}}), "q") == 1);
    CHECK(eichler_symbol(order_with({}, {{"q", -1}}), "q") == -1);
    CHECK_THROWS_AS(eichler_symbol(order_with({}, {}), "q"), input_error);
}

TEST_CASE("m_p: the three squarefree-level Eichler cases") {
    auto inert = order_with({}, {{"q", -1}});
    auto split = order_with({}, {{"q", 1}});
    auto ramified = order_with({}, {{"q", 0}});

    // p | d(D): 1 - (B/p)
    CHECK(m_p(inert, local("q", 2, -1, 1)) == 2);
    CHECK(m_p(split, local("q", 2, -1, 1)) == 0);
    CHECK(m_p(ramified, local("q", 2, -1, 1)) == 1);
    // p | n: 1 + (B/p)
    CHECK(m_p(inert, local("q", 2, 1, 1)) == 0);
    CHECK(m_p(split, local("q", 2, 1, 1)) == 2);
    // neither: 1
    CHECK(m_p(inert, local("q", 2, 2, 0)) == 1);
    // conductor primes always give symbol 1
    CHECK(m_p(order_with({{"q", 3}}, {{"q", -1}}), local("q", 2, 1, 1)) == 2);
}

TEST_CASE("m_p: values stay in {0,1,2} for formula shapes") {
    for (int artin : {-1, 0, 1})
        for (int e : {-1, 1}) {
            Int m = m_p(order_with({}, {{"q", artin}}), local("q", 5, e, 1));
            CHECK(m >= 0);
            CHECK(m <= 2);
        }
}

TEST_CASE("m_p: non-Eichler shapes need an override") {
    auto b = order_with({}, {{"q", -1}});
    CHECK_THROWS_AS(m_p(b, local("q", 2, -1, 3)), input_error);
    CHECK_THROWS_AS(m_p(b, local("q", 2, 1, 2)), input_error);
    CHECK(m_p(b, local("q", 2, -1, 3), Int(5)) == 5);
    CHECK_THROWS_AS(m_p(b, local("q", 2, -1, 3), Int(-1)), input_error);
}

TEST_CASE("big_M: stated values") {
    CMOrderSpec b = order_with({}, {});
    b.class_datum = ClassDatum::explicit_value(Int(4));
    b.w = 2;
    CHECK(big_M(b, Int(1), Rational(1)) == Rational(2));

    b.class_datum = ClassDatum::explicit_value(Int(4));   // h(-39)
    b.mu_order = 6;
    b.w = 3;
    CHECK(big_M(b, Int(1), Rational(1)) == Rational(4, 3));

    CHECK(big_M(b, Int(1), Rational(0)) == Rational(0));

    b.class_datum = ClassDatum::ratio(1, 0, 2, AuxClassNumber::h_minus_p);
    CHECK_THROWS_AS(big_M(b, Int(1), Rational(1)), input_error);
}

TEST_CASE("ClassDatum: printed forms and resolution") {
    auto r1 = ClassDatum::ratio(1, 0, 2, AuxClassNumber::h_minus_p);
    CHECK(r1.printed() == "h(-p)/2");
    CHECK(r1.resolve(Int(3), Int(4), Int(0), Int(0), 1) == 6);

    auto r2 = ClassDatum::ratio(2, -1, 1, AuxClassNumber::h_minus_p);
    CHECK(r2.printed() == "(2-(2|p))*h(-p)");
    CHECK(r2.resolve(Int(1), Int(5), Int(0), Int(0), 1) == 5);
    CHECK(r2.resolve(Int(1), Int(5), Int(0), Int(0), -1) == 15);

    auto r3 = ClassDatum::ratio(1, 0, 1, AuxClassNumber::none);
    CHECK(r3.printed() == "1");
    CHECK(r3.resolve(Int(7), Int(0), Int(0), Int(0), 1) == 7);

    auto r4 = ClassDatum::ratio(1, 0, 2, AuxClassNumber::h_minus_3p);
    CHECK(r4.printed() == "h(-3p)/2");
    CHECK_THROWS_AS(r4.resolve(Int(1), Int(0), Int(0), Int(3), 1), integrality_error);
}

TEST_CASE("qsqrtp_b_tables: p = 13 rows match the printed table") {
    auto t = qsqrtp_b_tables(Int(13));
    CHECK(t.regime == QSqrtPRegime::p1mod4_ge13);
    REQUIRE(t.b1.size() == 2);
    CHECK(t.b_full.empty());

    const auto* k1 = find_row(t.b1, "O_K1");
    REQUIRE(k1);
    CHECK(k1->mu_order == 4);
    CHECK(k1->w == 2);
    CHECK(k1->class_datum.printed() == "h(-p)/2");
    CHECK(k1->s() == 0);
    CHECK(k1->delta_principal == 1);
    CHECK(k1->delta_nonprincipal == 1);

    const auto* k3 = find_row(t.b1, "O_K3");
    REQUIRE(k3);
    CHECK(k3->mu_order == 6);
    CHECK(k3->w == 3);
    CHECK(k3->class_datum.printed() == "h(-3p)/2");
    CHECK(k3->s() == 0);
    CHECK(k3->delta_principal == 1);
}

TEST_CASE("qsqrtp_b_tables: p = 2 rows") {
    auto t = qsqrtp_b_tables(Int(2));
    REQUIRE(t.b1.size() == 3);
    CHECK(find_row(t.b1, "Z[sqrt(2),sqrt(-1)]"));
    for (const auto& row : t.b1) {
        CHECK(row.class_datum.printed() == "1");
        CHECK(row.s() == 0);
        CHECK(row.delta_principal == 1);
        CHECK(row.delta_nonprincipal == 1);
    }
    const auto* k1 = find_row(t.b1, "O_K1");
    REQUIRE(k1);
    CHECK(k1->mu_order == 8);
    CHECK(k1->w == 4);
}

TEST_CASE("qsqrtp_b_tables: p = 5 rows") {
    auto t = qsqrtp_b_tables(Int(5));
    REQUIRE(t.b1.size() == 3);
    const auto* z10 = find_row(t.b1, "Z[zeta_10]");
    REQUIRE(z10);
    CHECK(z10->mu_order == 10);
    CHECK(z10->w == 5);
    CHECK(z10->class_datum.printed() == "1");
}

TEST_CASE("qsqrtp_b_tables: p = 3 rows") {
    auto t = qsqrtp_b_tables(Int(3));
    REQUIRE(t.b1.size() == 4);
    const auto* b13 = find_row(t.b1, "B_{1,3}");
    REQUIRE(b13);
    CHECK(b13->mu_order == 6);
    CHECK(b13->w == 3);
    CHECK(b13->s() == 1);
    CHECK(b13->delta_principal == 0);
    CHECK(b13->delta_nonprincipal == 1);
    CHECK(b13->conductor_valuations.at("sqrt_p") == 1);
    const auto* k1 = find_row(t.b1, "O_K1");
    REQUIRE(k1);
    CHECK(k1->mu_order == 12);
    CHECK(k1->w == 12);
    CHECK(k1->delta_principal == 1);
}

TEST_CASE("qsqrtp_b_tables: p = 7 and p = 11 delta columns (Eq. of chi(q))") {
    auto t7 = qsqrtp_b_tables(Int(7));   // (2|7) = 1
    CHECK(t7.regime == QSqrtPRegime::p3mod4_ge7);
    const auto* b12 = find_row(t7.b1, "B_{1,2}");
    REQUIRE(b12);
    CHECK(b12->delta_principal == 1);
    CHECK(b12->delta_nonprincipal == 0);
    CHECK(b12->class_datum.printed() == "(2-(2|p))*h(-p)");
    CHECK(b12->conductor_valuations.at("q") == 1);

    auto t11 = qsqrtp_b_tables(Int(11));   // (2|11) = -1
    const auto* b12n = find_row(t11.b1, "B_{1,2}");
    REQUIRE(b12n);
    CHECK(b12n->delta_principal == 0);
    CHECK(b12n->delta_nonprincipal == 1);

    REQUIRE(t7.b_full.size() == 5);
    const auto* k2 = find_row(t7.b_full, "O_K2");
    REQUIRE(k2);
    CHECK(k2->w == 2);
    CHECK(k2->class_datum.printed() == "h(-2p)");
    CHECK(k2->s() == 0);
    CHECK(k2->delta_principal == 1);
    CHECK(k2->delta_nonprincipal == 1);
}

TEST_CASE("qsqrtp_b_tables: selectivity/delta invariants across the range") {
    for (long p = 2; p < 10000; ++p) {
        if (!is_prime(Int(p))) continue;
        auto t = qsqrtp_b_tables(Int(p));
        auto check_rows = [](const std::vector<CMOrderSpec>& rows) {
            for (const auto& row : rows) {
                if (row.in_spinor_genus_field)
                    CHECK(row.delta_principal + row.delta_nonprincipal == 1);
                else
                    CHECK((row.delta_principal == 1 && row.delta_nonprincipal == 1));
            }
        };
        check_rows(t.b1);
        check_rows(t.b_full);
        if (t.regime == QSqrtPRegime::p3mod4_ge7) {
            const auto* ofi = find_row(t.b1, "O_F[sqrt(-1)]");
            const auto* k1 = find_row(t.b1, "O_K1");
            REQUIRE(ofi);
            REQUIRE(k1);
            CHECK(ofi->delta_principal == 1);
            CHECK(k1->delta_principal == 1);
        }
    }
    CHECK_THROWS_AS(qsqrtp_b_tables(Int(6)), input_error);
}

TEST_CASE("CMOrderSpec: delta/selectivity consistency is enforced") {
    CMOrderSpec bad = order_with({}, {});
    bad.in_spinor_genus_field = false;
    bad.delta_principal = 0;
    CHECK_THROWS_AS(bad.validate(), input_error);
    bad.in_spinor_genus_field = true;
    bad.delta_principal = 1;
    bad.delta_nonprincipal = 1;
    CHECK_THROWS_AS(bad.validate(), input_error);
    bad.delta_nonprincipal = 0;
    CHECK_NOTHROW(bad.validate());
    bad.mu_order = 3;
    CHECK_THROWS_AS(bad.validate(), input_error);
}
