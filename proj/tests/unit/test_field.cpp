#include <catch2/catch_amalgamated.hpp>

#include "qcover/field.hpp"

using namespace qcover;

TEST_CASE("field construction picks the least irreducible modulus") {
    auto f2 = Field::make(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.modulus() == std::vector<Elem>{0, 1}); // x

    auto f4 = Field::make(2, 2);
    CHECK(f4.q() == 4);
    CHECK(f4.modulus() == std::vector<Elem>{1, 1, 1}); // x^2+x+1, the only choice

    // oracle: enumerate monic quadratics over GF(3), keep those with no root,
    // take the least coefficient code
    int best = -1;
    for (int code = 0; code < 9 && best < 0; ++code) {
        int c0 = code % 3, c1 = code / 3;
        bool has_root = false;
        for (int x = 0; x < 3; ++x)
            if ((x * x + c1 * x + c0) % 3 == 0) has_root = true;
        if (!has_root) best = code;
    }
    auto f9 = Field::make(3, 2);
    REQUIRE(best >= 0);
    CHECK(f9.modulus()[0] == best % 3);
    CHECK(f9.modulus()[1] == best / 3);
    CHECK(f9.modulus()[2] == 1);

    CHECK_THROWS_AS(Field::make(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(2, 0), std::invalid_argument);
}

TEST_CASE("field operation examples") {
    auto f2 = Field::make(2, 1);
    CHECK(f2.add(1, 1) == 0);

    auto f4 = Field::make(2, 2);
    CHECK(f4.mul(2, 3) == 1); // x * (x+1) = x^2+x = 1 mod x^2+x+1

    auto f9 = Field::make(3, 2);
    for (Elem a = 1; a < 9; ++a) CHECK(f9.mul(a, f9.inv(a)) == 1);
    CHECK_THROWS_AS(f9.inv(0), std::invalid_argument);
}

TEST_CASE("field axioms, exhaustive for q <= 9") {
    for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        auto F = Field::make(p, e);
        int q = F.q();
        INFO("q = " << q);
        for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b) {
                Elem ea = static_cast<Elem>(a), eb = static_cast<Elem>(b);
                REQUIRE(F.add(ea, eb) == F.add(eb, ea));
                REQUIRE(F.mul(ea, eb) == F.mul(eb, ea));
                REQUIRE(F.sub(F.add(ea, eb), eb) == ea);
                for (int c = 0; c < q; ++c) {
                    Elem ec = static_cast<Elem>(c);
                    REQUIRE(F.add(F.add(ea, eb), ec) == F.add(ea, F.add(eb, ec)));
                    REQUIRE(F.mul(F.mul(ea, eb), ec) == F.mul(ea, F.mul(eb, ec)));
                    REQUIRE(F.mul(ea, F.add(eb, ec)) == F.add(F.mul(ea, eb), F.mul(ea, ec)));
                }
            }
        }
    }
}

TEST_CASE("extension fields: expansion and Frobenius") {
    struct Case { int p, e, m; };
    for (auto [p, e, m] : {Case{2, 1, 3}, {2, 2, 2}, {3, 1, 2}, {2, 1, 12}, {3, 2, 2}}) {
        auto B = Field::make(p, e);
        auto E = ExtField::make(B, m);
        long long Q = E.order();
        INFO("q = " << B.q() << " m = " << m);

        // expand/compress identity on every element
        for (long long a = 0; a < Q; ++a) REQUIRE(E.compress(E.expand(a)) == a);

        auto zero = E.expand(0);
        for (auto d : zero) REQUIRE(d == 0);
        auto one = E.expand(1);
        REQUIRE(one[0] == 1);
        for (int i = 1; i < m; ++i) REQUIRE(one[i] == 0);

        // expansion is additive
        for (long long a = 0; a < std::min<long long>(Q, 64); ++a)
            for (long long b = 0; b < std::min<long long>(Q, 64); ++b) {
                auto ea = E.expand(a), eb = E.expand(b), es = E.expand(E.add(a, b));
                for (int i = 0; i < m; ++i) REQUIRE(es[i] == B.add(ea[i], eb[i]));
            }

        // Frobenius a -> a^q is GF(q)-linear (exhaustive for q^m <= 2^12)
        if (Q <= 4096) {
            std::vector<long long> frob(Q);
            for (long long a = 0; a < Q; ++a) frob[a] = E.frobenius(a);
            for (long long a = 0; a < Q; ++a)
                for (long long b = 0; b < Q; ++b)
                    REQUIRE(frob[E.add(a, b)] == E.add(frob[a], frob[b]));
            for (int c = 0; c < B.q(); ++c)
                for (long long a = 0; a < Q; ++a)
                    REQUIRE(frob[E.scale(static_cast<Elem>(c), a)] ==
                            E.scale(static_cast<Elem>(c), frob[a]));
        }
    }
}
