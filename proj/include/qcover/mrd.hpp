#pragma once

// Gabidulin maximum-rank-distance codes and the lifting construction.
//
// The (n x m, delta)_q code is realized through linearized polynomials over
// GF(q^m): with t = n - delta + 1, every coefficient vector (a_0,...,a_{t-1})
// in GF(q^m)^t defines f(x) = a_0 x + a_1 x^q + ... + a_{t-1} x^{q^{t-1}},
// and the codeword is the n x m matrix whose row i is the coordinate vector
// of f(g_i) for the evaluation points g_i = 1, x, ..., x^{n-1] (the
// polynomial basis, any GF(q)-independent set works; fixing this one makes
// the codewords reproducible).  The code is GF(q)-linear of size q^{mt}.
//
// lift(A) is the row space of (I_n | A), an (n-1)-space of PG(n+m-1,q)
// disjoint from the tail coordinate space Sigma = <U_{n+1},...,U_{n+m}>.

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "qcover/enumerate.hpp"
#include "qcover/errors.hpp"
#include "qcover/field.hpp"
#include "qcover/linalg.hpp"

namespace qcover {

class RankCode {
  public:
    RankCode(const Field& F, int n, int m, int delta)
        : F_(F), n_(n), m_(m), delta_(delta), ext_(ExtField::make(F, m)) {
        if (n > m) throw std::invalid_argument("RankCode: requires n <= m");
        if (delta < 1 || delta > n) throw std::invalid_argument("RankCode: requires 1 <= delta <= n");
        t_ = n - delta + 1;
        size_ = 1;
        for (int i = 0; i < m * t_; ++i) size_ *= F.q();
        // frobenius powers of the evaluation points: eval_[j][i] = g_i^{q^j}
        eval_.assign(t_, std::vector<long long>(n_));
        for (int i = 0; i < n_; ++i) {
            long long g = ext_.basis(i);
            for (int j = 0; j < t_; ++j) {
                eval_[j][i] = g;
                g = ext_.frobenius(g);
            }
        }
    }

    int n() const { return n_; }
    int m() const { return m_; }
    int delta() const { return delta_; }
    std::uint64_t size() const { return size_; }
    const Field& field() const { return F_; }

    // Codeword for one coefficient vector, each coefficient a code in [0,q^m).
    Mat codeword(const std::vector<long long>& coeffs) const {
        Mat A(n_, m_);
        for (int i = 0; i < n_; ++i) {
            long long y = 0;
            for (int j = 0; j < t_; ++j)
                if (coeffs[j] != 0) y = ext_.add(y, ext_.mul(coeffs[j], eval_[j][i]));
            auto row = ext_.expand(y);
            for (int c = 0; c < m_; ++c) A.at(i, c) = row[c];
        }
        return A;
    }

    // Stream all codewords in lexicographic coefficient-vector order
    // (a_0 major, a_{t-1} fastest).
    template <class Fn>
    void for_each_codeword(Fn&& fn) const {
        std::vector<long long> coeffs(t_, 0);
        long long Q = ext_.order();
        while (true) {
            fn(codeword(coeffs));
            int i = t_ - 1;
            while (i >= 0 && coeffs[i] == Q - 1) coeffs[i--] = 0;
            if (i < 0) break;
            ++coeffs[i];
        }
    }

    // Minimum rank over the nonzero codewords.  For a GF(q)-linear code this
    // equals the minimum rank distance, so checking delta needs only q^{mt}-1
    // rank computations instead of a pairwise sweep.
    int min_rank_nonzero() const {
        int best = n_ + 1;
        std::vector<long long> coeffs(t_, 0);
        long long Q = ext_.order();
        while (true) {
            int i = t_ - 1;
            while (i >= 0 && coeffs[i] == Q - 1) coeffs[i--] = 0;
            if (i < 0) break;
            ++coeffs[i];
            int r = rank_of(F_, codeword(coeffs));
            if (r < best) best = r;
        }
        return best;
    }

  private:
    Field F_;
    int n_, m_, delta_, t_;
    std::uint64_t size_ = 0;
    ExtField ext_;
    std::vector<std::vector<long long>> eval_;
};

inline RankCode gabidulin(const Field& F, int n, int m, int delta) {
    return RankCode(F, n, m, delta);
}

// Row space of (I_n | A); the result is already in canonical RREF.
inline Subspace lift(const Mat& A) {
    Mat g(A.rows, A.rows + A.cols);
    for (int r = 0; r < A.rows; ++r) {
        g.at(r, r) = 1;
        for (int c = 0; c < A.cols; ++c) g.at(r, A.rows + c) = A.at(r, c);
    }
    return Subspace{A.rows + A.cols, std::move(g)};
}

inline std::vector<Subspace> lifted_set(const RankCode& code) {
    std::vector<Subspace> out;
    out.reserve(code.size());
    code.for_each_codeword([&](const Mat& A) { out.push_back(lift(A)); });
    return out;
}

// The tail coordinate (m-1)-space <U_{n+1},...,U_{n+m}> the lifts avoid.
inline Subspace lift_sigma(int n, int m) {
    Mat g(m, n + m);
    for (int i = 0; i < m; ++i) g.at(i, n + i) = 1;
    return Subspace{n + m, std::move(g)};
}

enum class LiftingCase { planes_over_lines, solids_over_lines, solids_over_planes };

struct LiftingCheck {
    bool ok = false;
    std::uint64_t targets = 0;        // subspaces disjoint from Sigma
    std::uint64_t covered_once = 0;   // targets covered exactly once
    std::uint64_t duplicate_keys = 0; // internal targets hit twice (0 on success)
};

// Exhaustively verify the lifting exactness: every r-target of
// PG(n+m-1,q) disjoint from Sigma lies in exactly one lifted block.
// planes_over_lines: (3 x m, 2).  solids_over_lines: (4 x m, 3).
// solids_over_planes: (4 x m, 2), plane targets.
inline LiftingCheck check_lifting_case(const RankCode& code, LiftingCase which,
                                       std::uint64_t max_targets = (1ULL << 26)) {
    int r = which == LiftingCase::solids_over_planes ? 3 : 2;
    switch (which) {
        case LiftingCase::planes_over_lines:
            if (code.n() != 3 || code.delta() != 2)
                throw std::invalid_argument("check_lifting_case: planes_over_lines needs (3 x m, 2)");
            break;
        case LiftingCase::solids_over_lines:
            if (code.n() != 4 || code.delta() != 3)
                throw std::invalid_argument("check_lifting_case: solids_over_lines needs (4 x m, 3)");
            break;
        case LiftingCase::solids_over_planes:
            if (code.n() != 4 || code.delta() != 2)
                throw std::invalid_argument("check_lifting_case: solids_over_planes needs (4 x m, 2)");
            break;
    }
    const Field& F = code.field();
    int q = F.q();
    int N = code.n() + code.m();
    std::uint64_t expect =
        gaussian_u64(code.n(), r, q) * ipow<std::uint64_t>(q, static_cast<std::uint64_t>(r) * code.m());
    if (expect > max_targets) throw ResourceError("check_lifting_case: target count above resource cap");

    LiftingCheck out;
    std::unordered_map<Key, std::uint32_t, KeyHash> mult;
    mult.reserve(expect * 2);
    code.for_each_codeword([&](const Mat& A) {
        Subspace block = lift(A);
        for_each_subspace_within(F, block, r, [&](const Subspace& T) {
            auto [it, fresh] = mult.emplace(subspace_key(T, q), 1);
            if (!fresh) {
                ++it->second;
                ++out.duplicate_keys;
            }
        });
    });
    // every block is disjoint from Sigma, so all keys are valid targets;
    // stream the disjoint targets and check each is hit exactly once
    std::uint64_t seen = 0, once = 0;
    for_each_subspace_head(N, r, q, code.n(), [&](const Subspace& T) {
        ++seen;
        auto it = mult.find(subspace_key(T, q));
        if (it != mult.end() && it->second == 1) ++once;
    });
    out.targets = seen;
    out.covered_once = once;
    out.ok = (seen == expect) && (once == seen) && (out.duplicate_keys == 0) &&
             (mult.size() == seen);
    return out;
}

} // namespace qcover
