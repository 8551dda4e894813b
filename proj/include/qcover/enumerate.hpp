#pragma once

// Exhaustive enumeration of k-subspaces of GF(q)^n in canonical RREF form,
// and the packed-key representation of canonical generator matrices.
//
// Enumeration order is deterministic and frozen: pivot-column sets in
// lexicographic order, then free entries as a base-q odometer with the last
// free position (row-major) moving fastest.  The stream is splittable by
// pivot-set index so the verifier can partition work; concatenating the
// partitions reproduces the single-stream order.
//
// Packed key layout (frozen, shared by the .qcd/.qps file formats): the
// k*n entries of the RREF generator matrix are read row-major as base-q
// digits, least significant digit first, and assembled into an unsigned
// integer of at most 128 bits.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qcover/counting.hpp"
#include "qcover/linalg.hpp"

namespace qcover {

struct Key {
    std::uint64_t lo = 0, hi = 0;
    friend bool operator==(const Key&, const Key&) = default;
    friend auto operator<=>(const Key&, const Key&) = default;
};

struct KeyHash {
    size_t operator()(const Key& k) const {
        std::uint64_t x = k.lo * 0x9e3779b97f4a7c15ULL;
        x ^= x >> 32;
        x += k.hi * 0xc2b2ae3d27d4eb4fULL;
        x ^= x >> 29;
        return static_cast<size_t>(x * 0xff51afd7ed558ccdULL >> 1);
    }
};

inline Key subspace_key(const Subspace& S, int q) {
    int digits = S.k() * S.n;
    // capacity check: q^digits must fit in 128 bits
    if (digits * std::log2(static_cast<double>(q)) > 126.0)
        throw std::invalid_argument("subspace_key: does not fit in 128 bits");
    unsigned __int128 v = 0;
    for (int i = digits - 1; i >= 0; --i) v = v * static_cast<unsigned>(q) + S.gens.a[i];
    return Key{static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
}

inline Subspace subspace_from_key(Key key, int q, int n, int k) {
    Mat g(k, n);
    unsigned __int128 v = (static_cast<unsigned __int128>(key.hi) << 64) | key.lo;
    for (int i = 0; i < k * n; ++i) {
        g.a[i] = static_cast<Elem>(static_cast<unsigned>(v % static_cast<unsigned>(q)));
        v /= static_cast<unsigned>(q);
    }
    return Subspace{n, std::move(g)};
}

// Lexicographic k-combinations of columns {0..limit-1}.
inline std::vector<std::vector<int>> pivot_sets(int limit, int k) {
    std::vector<std::vector<int>> out;
    if (k > limit || k < 0) return out;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[i] == limit - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

namespace detail {

// Free positions of a pivot set, row-major: row i may hold arbitrary values
// in non-pivot columns to the right of its own pivot.
inline std::vector<std::pair<int, int>> free_positions(const std::vector<int>& pivots, int n) {
    int k = static_cast<int>(pivots.size());
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::pair<int, int>> free;
    for (int r = 0; r < k; ++r)
        for (int c = pivots[r] + 1; c < n; ++c)
            if (!is_pivot[c]) free.emplace_back(r, c);
    return free;
}

} // namespace detail

// Stream every k-subspace whose pivot-set index lies in [block_begin,
// block_end) of pivot_sets(head, k); head < n restricts pivots to the first
// `head` columns, which enumerates exactly the subspaces disjoint from the
// tail coordinate subspace <e_head, ..., e_{n-1}>.
template <class Fn>
void for_each_subspace_block(int n, int k, int q, int head,
                             size_t block_begin, size_t block_end, Fn&& fn) {
    auto combos = pivot_sets(head, k);
    block_end = std::min(block_end, combos.size());
    for (size_t ci = block_begin; ci < block_end; ++ci) {
        const auto& pivots = combos[ci];
        auto free = detail::free_positions(pivots, n);
        Mat g(k, n);
        for (int r = 0; r < k; ++r) g.at(r, pivots[r]) = 1;
        if (free.empty()) {
            fn(Subspace{n, g});
            continue;
        }
        std::vector<Elem> vals(free.size(), 0);
        while (true) {
            Subspace S{n, g};
            fn(S);
            int i = static_cast<int>(free.size()) - 1;
            while (i >= 0 && vals[i] == q - 1) {
                vals[i] = 0;
                g.at(free[i].first, free[i].second) = 0;
                --i;
            }
            if (i < 0) break;
            ++vals[i];
            g.at(free[i].first, free[i].second) = vals[i];
        }
    }
}

template <class Fn>
void for_each_subspace(int n, int k, int q, Fn&& fn) {
    for_each_subspace_block(n, k, q, n, 0, static_cast<size_t>(-1), std::forward<Fn>(fn));
}

// Subspaces disjoint from the last `tail` coordinates.
template <class Fn>
void for_each_subspace_head(int n, int k, int q, int head, Fn&& fn) {
    for_each_subspace_block(n, k, q, head, 0, static_cast<size_t>(-1), std::forward<Fn>(fn));
}

// Materializing variant, guarded: refuses to allocate beyond the cap.
inline std::vector<Subspace> all_subspaces(int n, int k, int q,
                                           std::uint64_t cap = 50'000'000) {
    std::uint64_t count = gaussian_u64(n, k, q);
    if (count > cap)
        throw std::runtime_error("all_subspaces: " + std::to_string(count) +
                                 " subspaces exceed the cap");
    std::vector<Subspace> out;
    out.reserve(count);
    for_each_subspace(n, k, q, [&](const Subspace& S) { out.push_back(S); });
    return out;
}

// The r-subspaces inside S, canonical in the ambient space: compose every
// canonical r x k coefficient matrix with the generators and re-reduce.
template <class Fn>
void for_each_subspace_within(const Field& F, const Subspace& S, int r, Fn&& fn) {
    for_each_subspace(S.k(), r, F.q(), [&](const Subspace& W) {
        Mat M = mat_mul(F, W.gens, S.gens);
        fn(span(F, std::move(M)));
    });
}

} // namespace qcover
