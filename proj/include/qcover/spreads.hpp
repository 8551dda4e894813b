#pragma once

// Line-spreads and 1-parallelisms of PG(3,q).
//
// The regular spread comes from field reduction: the q^2+1 points of
// PG(1,q^2) pull back to q^2+1 pairwise disjoint lines partitioning the
// points of PG(3,q).  Parallelisms are found by backtracking (spread by
// spread, lexicographic-least branching) for q in {2,3}; larger q is served
// by the .qps import path.  Every structure is certified by the exhaustive
// verify_* checks, not trusted from construction.
//
// .qps file format: header line "q n_spreads"; one spread per blank-line
// separated block, one packed line key (hex) per row; '#' starts a comment.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcover/enumerate.hpp"
#include "qcover/errors.hpp"
#include "qcover/field.hpp"
#include "qcover/linalg.hpp"

namespace qcover {

struct LineSpread {
    std::vector<Subspace> lines; // q^2+1 rank-2 subspaces of GF(q)^4
};

struct Parallelism {
    std::vector<LineSpread> spreads; // q^2+q+1 spreads
};

inline LineSpread regular_spread(const Field& F) {
    ExtField E = ExtField::make(F, 2); // GF(q^2)
    long long Q = E.order();
    auto embed = [&](long long a, long long b) {
        std::vector<Elem> v(4);
        auto ea = E.expand(a), eb = E.expand(b);
        v[0] = ea[0];
        v[1] = ea[1];
        v[2] = eb[0];
        v[3] = eb[1];
        return v;
    };
    LineSpread out;
    long long x = E.basis(1);
    auto push_line = [&](long long a, long long b) {
        std::vector<std::vector<Elem>> rows{embed(a, b), embed(E.mul(x, a), E.mul(x, b))};
        Subspace l = span_rows(F, 4, rows);
        if (l.k() != 2) throw std::logic_error("regular_spread: degenerate line");
        out.lines.push_back(l);
    };
    push_line(0, 1);
    for (long long a = 0; a < Q; ++a) push_line(1, a);
    return out;
}

inline bool verify_spread(const Field& F, const LineSpread& s) {
    int q = F.q();
    if (s.lines.size() != static_cast<size_t>(q) * q + 1) return false;
    std::set<std::vector<Elem>> covered;
    for (const auto& l : s.lines) {
        if (l.n != 4 || l.k() != 2) return false;
        for (auto& pt : all_points(F, l))
            if (!covered.insert(pt).second) return false; // point hit twice
    }
    return covered.size() == theta_u64(3, q);
}

inline bool verify_parallelism(const Field& F, const Parallelism& p) {
    int q = F.q();
    if (p.spreads.size() != static_cast<size_t>(q) * q + q + 1) return false;
    std::set<Subspace> used;
    for (const auto& s : p.spreads) {
        if (!verify_spread(F, s)) return false;
        for (const auto& l : s.lines)
            if (!used.insert(l).second) return false; // line in two spreads
    }
    return used.size() == gaussian_u64(4, 2, q);
}

namespace detail {

// All spreads through `first` using only lines enabled in `allowed`,
// lexicographic-least branching on the least uncovered point.
template <class Fn>
bool spreads_through(const Field& F, const std::vector<std::vector<int>>& point_lines,
                     const std::vector<std::vector<int>>& line_points,
                     const std::vector<bool>& allowed, int first, Fn&& emit) {
    int q = F.q();
    int n_points = static_cast<int>(point_lines.size());
    std::vector<int> chosen{first};
    std::vector<bool> covered(n_points, false);
    for (int pt : line_points[first]) covered[pt] = true;

    // returns true if the consumer asked to stop
    auto rec = [&](auto&& self) -> bool {
        if (chosen.size() == static_cast<size_t>(q) * q + 1) return emit(chosen);
        int pt = 0;
        while (covered[pt]) ++pt;
        for (int li : point_lines[pt]) {
            if (!allowed[li]) continue;
            bool free = true;
            for (int p2 : line_points[li])
                if (covered[p2]) { free = false; break; }
            if (!free) continue;
            chosen.push_back(li);
            for (int p2 : line_points[li]) covered[p2] = true;
            if (self(self)) return true;
            for (int p2 : line_points[li]) covered[p2] = false;
            chosen.pop_back();
        }
        return false;
    };
    return rec(rec);
}

} // namespace detail

struct ParallelismSearchStats {
    std::uint64_t nodes = 0;
    bool budget_exhausted = false;
};

// Backtracking over spreads: repeatedly pick the least unused line, branch
// over the spreads through it that avoid used lines, and recurse.  Output is
// deterministic for a fixed q.
inline Parallelism find_parallelism(const Field& F, std::uint64_t max_nodes = 50'000'000,
                                    ParallelismSearchStats* stats = nullptr) {
    int q = F.q();
    if (q > 3)
        throw std::invalid_argument("find_parallelism: built-in search supports q in {2,3}; import a .qps file instead");
    auto lines = all_subspaces(4, 2, q);
    auto points = all_subspaces(4, 1, q);
    std::map<Subspace, int> point_id;
    for (size_t i = 0; i < points.size(); ++i) point_id[points[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> point_lines(points.size()), line_points(lines.size());
    for (size_t li = 0; li < lines.size(); ++li)
        for (auto& pt : all_points(F, lines[li])) {
            Subspace P;
            P.n = 4;
            P.gens = Mat(1, 4);
            for (int c = 0; c < 4; ++c) P.gens.at(0, c) = pt[c];
            int pi = point_id.at(P);
            point_lines[pi].push_back(static_cast<int>(li));
            line_points[li].push_back(pi);
        }

    std::vector<bool> unused(lines.size(), true);
    std::vector<std::vector<int>> solution;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;

    auto rec = [&](auto&& self) -> bool {
        int first = -1;
        for (size_t li = 0; li < lines.size(); ++li)
            if (unused[li]) { first = static_cast<int>(li); break; }
        if (first < 0) return true;
        if (++nodes > max_nodes) {
            out_of_budget = true;
            return false;
        }
        bool done = detail::spreads_through(
            F, point_lines, line_points, unused, first, [&](const std::vector<int>& spread) {
                for (int li : spread) unused[li] = false;
                solution.push_back(spread);
                if (self(self)) return true;
                solution.pop_back();
                for (int li : spread) unused[li] = true;
                return out_of_budget; // stop enumerating spreads once the budget is gone
            });
        return done && !out_of_budget;
    };
    bool ok = rec(rec);
    if (stats) {
        stats->nodes = nodes;
        stats->budget_exhausted = out_of_budget;
    }
    if (!ok)
        throw SearchError(out_of_budget ? "find_parallelism: search budget exhausted"
                                        : "find_parallelism: no parallelism found");
    Parallelism out;
    for (const auto& spread : solution) {
        LineSpread s;
        for (int li : spread) s.lines.push_back(lines[li]);
        out.spreads.push_back(std::move(s));
    }
    return out;
}

// ---- .qps serialization ----------------------------------------------------

inline std::string key_hex(const Subspace& S, int q) {
    Key k = subspace_key(S, q);
    // little-endian byte order, two hex digits per byte, fixed width from q^(k*n)
    int digits = S.k() * S.n;
    double bits = digits * std::log2(static_cast<double>(q));
    int nbytes = static_cast<int>((bits + 7.999) / 8.0);
    std::string out;
    unsigned __int128 v = (static_cast<unsigned __int128>(k.hi) << 64) | k.lo;
    static const char* cs = "0123456789abcdef";
    for (int i = 0; i < nbytes; ++i) {
        unsigned byte = static_cast<unsigned>(v & 0xff);
        out.push_back(cs[byte >> 4]);
        out.push_back(cs[byte & 0xf]);
        v >>= 8;
    }
    return out;
}

inline Subspace subspace_from_hex(const std::string& hex, int q, int n, int k) {
    unsigned __int128 v = 0;
    if (hex.size() % 2 != 0) throw std::runtime_error("bad hex key");
    for (size_t i = hex.size(); i >= 2; i -= 2) {
        auto nib = [&](char c) -> unsigned {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            if (c >= 'A' && c <= 'F') return c - 'A' + 10;
            throw std::runtime_error("bad hex digit");
        };
        v = (v << 8) | (nib(hex[i - 2]) << 4 | nib(hex[i - 1]));
    }
    return subspace_from_key(Key{static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)},
                             q, n, k);
}

inline void write_qps(std::ostream& os, const Field& F, const Parallelism& p) {
    os << F.q() << " " << p.spreads.size() << "\n";
    for (const auto& s : p.spreads) {
        for (const auto& l : s.lines) os << key_hex(l, F.q()) << "\n";
        os << "\n";
    }
}

inline Parallelism read_qps(std::istream& is, const Field& F) {
    std::string line;
    // header
    int q = 0;
    size_t n_spreads = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream hs(line);
        if (!(hs >> q >> n_spreads)) throw std::runtime_error("read_qps: bad header");
        break;
    }
    if (q != F.q()) throw std::runtime_error("read_qps: field mismatch");
    Parallelism p;
    LineSpread cur;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '#') continue;
        if (line.empty()) {
            if (!cur.lines.empty()) {
                p.spreads.push_back(std::move(cur));
                cur = LineSpread{};
            }
            continue;
        }
        cur.lines.push_back(subspace_from_hex(line, q, 4, 2));
    }
    if (!cur.lines.empty()) p.spreads.push_back(std::move(cur));
    if (p.spreads.size() != n_spreads) throw std::runtime_error("read_qps: spread count mismatch");
    return p;
}

} // namespace qcover
