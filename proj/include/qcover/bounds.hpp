#pragma once

// Lower and upper bound tables for the three covering-design families.
// Everything runs on arbitrary-precision integers: the bound products
// overflow 64 bits well inside the q <= 16 sweep range.
//
// Lower bounds evaluate the ceiling expressions verbatim.  Upper bounds are
// the recursion totals; for the C_q(3n+8,4,2) family the nominal recursion
// assumes a hyperplane census the materialized construction beats, so the
// table reports the nominal upper bound and the constructed column carries
// the (smaller) materialized size.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "qcover/formulas.hpp"

namespace qcover {

using BigInt = boost::multiprecision::cpp_int;

enum class BoundsFamily { f2n32, f3n8_42, c843, c1043 };

struct BoundsRow {
    BoundsFamily family;
    int n = 0; // family parameter (unused for c843/c1043)
    BigInt q;
    BigInt lower;
    BigInt upper;
    std::optional<BigInt> constructed;
};

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

// ceil(theta_{n-1,q^2} theta_{2n-2,q} / (q^2+q+1))  <=  C_q(2n,3,2)  <=
// q^{2n-2} theta_{n-2,q^2} + q^{2n-3} - 1 + sum_{i=2}^{n-1}(theta_{4i-5} - theta_{2i-4} + q^{2i-2})
inline BoundsRow bounds_2n32(int n, const BigInt& q) {
    if (n < 3) throw std::invalid_argument("bounds_2n32: n >= 3");
    BoundsRow row{BoundsFamily::f2n32, n, q, 0, 0, std::nullopt};
    row.lower = ceil_div(theta<BigInt>(n - 1, q * q) * theta<BigInt>(2 * n - 2, q), q * q + q + 1);
    BigInt upper = ipow<BigInt>(q, 2 * n - 2) * theta<BigInt>(n - 2, q * q) +
                   ipow<BigInt>(q, 2 * n - 3) - 1;
    for (int i = 2; i <= n - 1; ++i)
        upper += theta<BigInt>(4 * i - 5, q) - theta<BigInt>(2 * i - 4, q) + ipow<BigInt>(q, 2 * i - 2);
    row.upper = upper;
    row.constructed = c2n32_size<BigInt>(n, q);
    return row;
}

// Alternative closed form for the C_q(3n+8,4,2) upper bound; kept so the
// gap against the recursion totals stays measurable (they disagree for
// n >= 1, e.g. by 168 at n=1, q=2).
inline BigInt c3n8_upper_closed_form(int n, const BigInt& q) {
    BigInt s = ipow<BigInt>(q, 3 * n + 5) * theta<BigInt>(n + 1, ipow<BigInt>(q, 3));
    for (int i = 0; i <= n - 1; ++i)
        s += theta<BigInt>(6 * i + 10, q) - theta<BigInt>(3 * i + 4, q);
    for (int i = 0; i <= n; ++i) s += ipow<BigInt>(q, 3 * i + 2) * (2 * q * q - 1);
    s += q * (q + 1) * (2 * q + 1);
    return s;
}

inline BoundsRow bounds_3n8_42(int n, const BigInt& q) {
    if (n < 0) throw std::invalid_argument("bounds_3n8_42: n >= 0");
    BoundsRow row{BoundsFamily::f3n8_42, n, q, 0, 0, std::nullopt};
    row.lower = ceil_div(theta<BigInt>(3 * n + 7, q) * theta<BigInt>(3 * n + 6, q),
                         (q + 1) * (q * q + 1) * (q * q + q + 1));
    row.upper = c3n8_nominal_size<BigInt>(n, q);
    row.constructed = c3n8_size_built<BigInt>(n, q);
    return row;
}

inline BoundsRow bounds_43(BoundsFamily which, const BigInt& q) {
    BoundsRow row{which, which == BoundsFamily::c843 ? 4 : 5, q, 0, 0, std::nullopt};
    if (which == BoundsFamily::c843) {
        row.lower = ipow<BigInt>(q, 12) +
                    q * q * (ipow<BigInt>(q, 4) + 1) * (q * q + 1) * (q * q + q + 1) + 1;
        row.upper = size_843<BigInt>(q);
        row.constructed = row.upper;
    } else if (which == BoundsFamily::c1043) {
        row.lower = (ipow<BigInt>(q, 4) + 1) * (ipow<BigInt>(q, 6) + ipow<BigInt>(q, 3) + 1) *
                    (ipow<BigInt>(q, 8) + ipow<BigInt>(q, 6) + ipow<BigInt>(q, 4) + q * q + 1);
        row.upper = ipow<BigInt>(q, 18) +
                    ipow<BigInt>(q, 4) * (q * q + 1) * (q * q + q + 1) *
                        (ipow<BigInt>(q, 8) + ipow<BigInt>(q, 6) + ipow<BigInt>(q, 4) +
                         ipow<BigInt>(q, 3) + q * q + 1) +
                    1;
        row.constructed = rec43<BigInt>(5, q).size;
    } else {
        throw std::invalid_argument("bounds_43: family must be c843 or c1043");
    }
    return row;
}

inline const char* family_name(BoundsFamily f) {
    switch (f) {
        case BoundsFamily::f2n32: return "2n32";
        case BoundsFamily::f3n8_42: return "3n8-42";
        case BoundsFamily::c843: return "c843";
        case BoundsFamily::c1043: return "c1043";
    }
    return "?";
}

} // namespace qcover
