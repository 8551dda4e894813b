#include <catch2/catch_amalgamated.hpp>

#include "qcover/bounds.hpp"

using namespace qcover;

TEST_CASE("bounds for C_q(2n,3,2)") {
    auto r32 = bounds_2n32(3, 2);
    CHECK(r32.lower == 93); // ceil(21*31/7)
    CHECK(r32.upper == 105);
    CHECK(r32.constructed == r32.upper);

    CHECK(bounds_2n32(4, 2).upper == 1657);
    CHECK(bounds_2n32(3, 3).upper == 884);

    // the tabulated upper equals the recursion total for every family member
    for (int q : {2, 3, 4, 5})
        for (int n = 3; n <= 8; ++n) {
            auto row = bounds_2n32(n, q);
            REQUIRE(row.upper == c2n32_size<BigInt>(n, q));
            REQUIRE(row.constructed == row.upper);
        }
}

TEST_CASE("bounds for C_q(3n+8,4,2)") {
    auto r0 = bounds_3n8_42(0, 2);
    CHECK(r0.upper == 346);
    CHECK(r0.constructed == 346);
    // ceiling expression: ceil(255*127/105)
    CHECK(r0.lower == 309);

    auto r1 = bounds_3n8_42(1, 2);
    CHECK(r1.upper == 21154); // nominal recursion value
    CHECK(*r1.constructed == 20986); // materialized size with the measured census

    // the alternative closed form is a third value; at q=2, n=1 it happens
    // to coincide with the materialized size, at q=3 it matches neither
    CHECK(c3n8_upper_closed_form(0, 2) == 346);
    CHECK(c3n8_upper_closed_form(1, 2) == 20986);
    CHECK(c3n8_nominal_size<BigInt>(1, 3) == 5061333);       // nominal recursion total
    CHECK(c3n8_size_built<BigInt>(1, 3) == 5058525); // measured-census recursion
    CHECK(c3n8_upper_closed_form(1, 3) == 5059497);

    for (int q : {2, 3, 4, 5})
        for (int n = 0; n <= 5; ++n)
            REQUIRE(bounds_3n8_42(n, q).upper == c3n8_nominal_size<BigInt>(n, q));
}

TEST_CASE("bounds for C_q(8,4,3) and C_q(10,4,3)") {
    auto r843 = bounds_43(BoundsFamily::c843, 2);
    CHECK(r843.lower == 6477);
    CHECK(r843.upper == 6897);
    CHECK(r843.constructed == r843.upper);

    auto r1043 = bounds_43(BoundsFamily::c1043, 2);
    CHECK(r1043.lower == 423181); // 17*73*341
    CHECK(r1043.upper == 457585);
    CHECK(r1043.constructed == r1043.upper);

    CHECK(bounds_43(BoundsFamily::c843, 3).upper == 636742);

    // the recurrence value at n=5 equals the tabulated upper for all q
    for (int q : {2, 3, 4, 5}) {
        REQUIRE(bounds_43(BoundsFamily::c1043, q).upper == rec43<BigInt>(5, q).size);
        REQUIRE(bounds_43(BoundsFamily::c843, q).upper == rec43<BigInt>(4, q).size);
    }
}

TEST_CASE("recurrence chain stays exact out to n=8") {
    for (int q : {2, 3, 4, 5}) {
        auto prev = rec43<BigInt>(4, q);
        for (int n = 5; n <= 8; ++n) {
            auto cur = rec43<BigInt>(n, q);
            REQUIRE(cur.alpha == prev.size); // alpha_{n+1} = |S_n|
            REQUIRE(cur.size == ipow<BigInt>(BigInt(q), 6 * (n - 2)) +
                                    (BigInt(q) * q + 1) * (BigInt(q) * q + q + 1) * prev.size -
                                    BigInt(q) * (q + 1) * (q + 1) * (BigInt(q) * q + 1) * prev.beta +
                                    ipow<BigInt>(BigInt(q), 3) * (BigInt(q) * q + q + 1) * prev.alpha);
            prev = cur;
        }
    }
}

TEST_CASE("monotonicity: lower <= upper over the sweep range") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        for (int n = 3; n <= 10; ++n) {
            auto row = bounds_2n32(n, q);
            REQUIRE(row.lower <= row.upper);
        }
        for (int n = 0; n <= 10; ++n) {
            auto row = bounds_3n8_42(n, q);
            REQUIRE(row.lower <= row.upper);
        }
        REQUIRE(bounds_43(BoundsFamily::c843, q).lower <= bounds_43(BoundsFamily::c843, q).upper);
        REQUIRE(bounds_43(BoundsFamily::c1043, q).lower <= bounds_43(BoundsFamily::c1043, q).upper);
    }
}
