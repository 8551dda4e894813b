#pragma once

// Exhaustive covering verification.
//
// Strategy: enumerate the gaussian(k,r,q) r-subspaces inside every block and
// record their packed keys, then stream all r-subspaces of the ambient space
// and look each one up.  Cost is O(|blocks| * gaussian(k,r,q) + targets),
// which is what makes the PG(9,2) plane census feasible; per-target
// containment tests against every block would not be.
//
// The key store is a flat open-addressing hash map by default and falls back
// to a sorted key vector when the projected table size exceeds the byte
// budget (QCOVER_MEM_BUDGET or the argument).  Both give identical reports.
// The target stream is partitioned by pivot-set blocks across workers;
// reports merge deterministically, so worker count never changes the output.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qcover/design.hpp"
#include "qcover/errors.hpp"
#include "qcover/enumerate.hpp"

namespace qcover {

enum class VerifyMode { mark, count };

struct CoverageReport {
    std::uint64_t total_targets = 0;
    std::uint64_t covered = 0;
    std::uint32_t min_mult = 0;
    std::uint32_t max_mult = 0;
    std::map<std::uint32_t, std::uint64_t> histogram; // multiplicity -> target count
    std::vector<Subspace> uncovered_sample;           // at most 10, enumeration order
    double wall_seconds = 0.0;

    bool fully_covered() const { return covered == total_targets; }
};

namespace detail {

// Flat open-addressing multiplicity map over 128-bit packed keys.
class KeyCounter {
  public:
    explicit KeyCounter(std::uint64_t expected) {
        std::uint64_t want = 16;
        while (want < expected * 2) want <<= 1;
        mask_ = want - 1;
        slots_.assign(want, Slot{});
    }

    static std::uint64_t projected_bytes(std::uint64_t expected) {
        std::uint64_t want = 16;
        while (want < expected * 2) want <<= 1;
        return want * sizeof(Slot);
    }

    void add(const Key& k) {
        size_t i = KeyHash{}(k) & mask_;
        while (true) {
            Slot& s = slots_[i];
            if (s.count == 0) {
                s.key = k;
                s.count = 1;
                ++distinct_;
                return;
            }
            if (s.key == k) {
                ++s.count;
                return;
            }
            i = (i + 1) & mask_;
        }
    }

    std::uint32_t lookup(const Key& k) const {
        size_t i = KeyHash{}(k) & mask_;
        while (true) {
            const Slot& s = slots_[i];
            if (s.count == 0) return 0;
            if (s.key == k) return s.count;
            i = (i + 1) & mask_;
        }
    }

    std::uint64_t distinct() const { return distinct_; }

  private:
    struct Slot {
        Key key;
        std::uint32_t count = 0;
    };
    std::vector<Slot> slots_;
    std::uint64_t mask_ = 0;
    std::uint64_t distinct_ = 0;
};

// Sorted-run fallback: the same multiplicity queries off a sorted vector.
class SortedKeys {
  public:
    void add(const Key& k) { keys_.push_back(k); }
    void finalize() { std::sort(keys_.begin(), keys_.end()); }
    std::uint32_t lookup(const Key& k) const {
        auto [lo, hi] = std::equal_range(keys_.begin(), keys_.end(), k);
        return static_cast<std::uint32_t>(hi - lo);
    }
    std::uint64_t distinct() const {
        std::uint64_t d = 0;
        for (size_t i = 0; i < keys_.size(); ++i)
            if (i == 0 || !(keys_[i] == keys_[i - 1])) ++d;
        return d;
    }

  private:
    std::vector<Key> keys_;
};

inline std::uint64_t mem_budget_bytes(std::uint64_t fallback) {
    if (const char* env = std::getenv("QCOVER_MEM_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return fallback;
}

} // namespace detail

struct VerifyOptions {
    VerifyMode mode = VerifyMode::count;
    int workers = 1;
    std::uint64_t max_targets = 20'000'000;      // resource cap
    std::uint64_t mem_budget = 3'000'000'000ULL; // bytes, env QCOVER_MEM_BUDGET overrides
};

template <class Store>
CoverageReport verify_with_store(const Field& F, const Design& D, Store& store,
                                 const VerifyOptions& opt, std::uint64_t total) {
    int q = F.q();
    CoverageReport rep;
    rep.total_targets = total;

    auto combos = pivot_sets(D.n, D.r);
    int workers = std::max(1, opt.workers);
    struct Part {
        std::uint64_t covered = 0;
        std::map<std::uint32_t, std::uint64_t> hist;
        std::vector<Subspace> uncovered;
    };
    std::vector<Part> parts(workers);
    std::vector<std::thread> threads;
    size_t per = (combos.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        size_t begin = w * per, end = std::min(combos.size(), begin + per);
        threads.emplace_back([&, w, begin, end] {
            Part& part = parts[w];
            for_each_subspace_block(D.n, D.r, q, D.n, begin, end, [&](const Subspace& T) {
                std::uint32_t m = store.lookup(subspace_key(T, q));
                if (m > 0) ++part.covered;
                if (opt.mode == VerifyMode::count) ++part.hist[m];
                else ++part.hist[m > 0 ? 1 : 0];
                if (m == 0 && part.uncovered.size() < 10) part.uncovered.push_back(T);
            });
        });
    }
    for (auto& t : threads) t.join();
    for (auto& part : parts) {
        rep.covered += part.covered;
        for (auto [m, c] : part.hist) rep.histogram[m] += c;
        for (auto& u : part.uncovered)
            if (rep.uncovered_sample.size() < 10) rep.uncovered_sample.push_back(u);
    }
    rep.min_mult = rep.histogram.empty() ? 0 : rep.histogram.begin()->first;
    rep.max_mult = rep.histogram.empty() ? 0 : rep.histogram.rbegin()->first;
    return rep;
}

inline CoverageReport verify_covering(const Field& F, const Design& D,
                                      VerifyOptions opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    int q = F.q();
    if (D.q != q) throw std::invalid_argument("verify_covering: field mismatch");
    std::uint64_t total = gaussian_u64(D.n, D.r, q);
    if (total > opt.max_targets)
        throw ResourceError("verify_covering: target count " + std::to_string(total) +
                            " above resource cap");
    std::uint64_t expected_keys = D.blocks.size() * gaussian_u64(D.k, D.r, q);
    std::uint64_t budget = detail::mem_budget_bytes(opt.mem_budget);

    CoverageReport rep;
    if (detail::KeyCounter::projected_bytes(expected_keys) <= budget) {
        detail::KeyCounter store(expected_keys);
        for (const auto& b : D.blocks)
            for_each_subspace_within(F, b, D.r, [&](const Subspace& T) {
                store.add(subspace_key(T, q));
            });
        rep = verify_with_store(F, D, store, opt, total);
    } else if (expected_keys * sizeof(Key) <= budget) {
        detail::SortedKeys store;
        for (const auto& b : D.blocks)
            for_each_subspace_within(F, b, D.r, [&](const Subspace& T) {
                store.add(subspace_key(T, q));
            });
        store.finalize();
        rep = verify_with_store(F, D, store, opt, total);
    } else {
        throw ResourceError("verify_covering: key store above memory budget");
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Number of blocks contained in a subspace.
inline std::uint64_t census(const Field& F, const Design& D, const Subspace& container) {
    std::uint64_t n = 0;
    for (const auto& b : D.blocks)
        if (b.k() <= container.k() && contains(F, container, b)) ++n;
    return n;
}

// The q+1 hyperplanes of GF(q)^n through a given (n-1)-dimensional... for a
// general S of rank k: the hyperplanes containing S, enumerated canonically.
inline std::vector<Subspace> hyperplanes_through(const Field& F, const Subspace& S) {
    std::vector<Subspace> out;
    for_each_subspace(S.n, S.n - 1, F.q(), [&](const Subspace& H) {
        if (contains(F, H, S)) out.push_back(H);
    });
    return out;
}

} // namespace qcover
