#pragma once

// Point and subspace counting functions: theta_{n,q}, Gaussian binomials,
// and the disjoint-line count used by the lifting checks.  Templated on the
// integer type so the bounds module can run them on arbitrary-precision
// integers while everything desk-scale stays on uint64.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qcover {

template <class I>
I ipow(I q, int n) {
    I r = 1;
    for (int i = 0; i < n; ++i) r *= q;
    return r;
}

// theta_{n,q} = q^n + ... + q + 1, the number of points of PG(n,q).
// theta_{-1,q} = 0 by convention.
template <class I>
I theta(int n, I q) {
    if (n < 0) return 0;
    I r = 0, t = 1;
    for (int i = 0; i <= n; ++i) {
        r += t;
        t *= q;
    }
    return r;
}

// Gaussian binomial [n choose k]_q: the number of k-dimensional subspaces of
// GF(q)^n.  Computed by the Pascal-type recurrence, so no division is needed.
template <class I>
I gaussian(int n, int k, I q) {
    if (k < 0 || k > n) return 0;
    if (k == 0 || k == n) return 1;
    std::vector<I> row(static_cast<size_t>(k) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j) {
            // [i j] = [i-1 j-1] + q^j [i-1 j]
            row[j] = row[j - 1] + ipow<I>(q, j) * row[j];
        }
    }
    return row[k];
}

// Number of lines of PG(m+2,q) disjoint from a fixed (m-1)-space:
// (theta_{m+2} - theta_{m-1})(theta_{m+1} - theta_{m-1}) / (q+1),
// which simplifies to q^{2m} (q^2+q+1).
template <class I>
I count_disjoint_lines(int m, I q) {
    if (m < 3) throw std::invalid_argument("count_disjoint_lines: m >= 3");
    I num = (theta<I>(m + 2, q) - theta<I>(m - 1, q)) * (theta<I>(m + 1, q) - theta<I>(m - 1, q));
    return num / (q + 1);
}

inline std::uint64_t theta_u64(int n, std::uint64_t q) { return theta<std::uint64_t>(n, q); }
inline std::uint64_t gaussian_u64(int n, int k, std::uint64_t q) { return gaussian<std::uint64_t>(n, k, q); }

} // namespace qcover
