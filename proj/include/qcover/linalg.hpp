#pragma once

// Dense matrices over GF(q), canonical reduced row echelon form, and the
// Subspace lattice (span/meet/join/containment).
//
// A Subspace is the row space of a canonical RREF generator matrix: no zero
// rows, strictly increasing pivot columns, pivot entries 1, zeros above and
// below every pivot.  Two subspaces are equal iff their generator matrices
// are identical, which makes packed RREF bytes usable as hash keys.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qcover/field.hpp"

namespace qcover {

struct Mat {
    int rows = 0, cols = 0;
    std::vector<Elem> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    Elem& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    Elem at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const Mat&) const = default;
};

inline Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            Elem v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(v, B.at(k, j)));
        }
    return C;
}

// In-place Gauss-Jordan elimination to canonical RREF.  Returns the rank;
// rows beyond the rank are zeroed but kept.
inline int rref_in_place(const Field& F, Mat& M) {
    int rank = 0;
    for (int col = 0; col < M.cols && rank < M.rows; ++col) {
        int piv = -1;
        for (int r = rank; r < M.rows; ++r)
            if (M.at(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = 0; c < M.cols; ++c) std::swap(M.at(piv, c), M.at(rank, c));
        Elem s = F.inv(M.at(rank, col));
        if (s != 1)
            for (int c = col; c < M.cols; ++c) M.at(rank, c) = F.mul(s, M.at(rank, c));
        for (int r = 0; r < M.rows; ++r) {
            if (r == rank) continue;
            Elem v = M.at(r, col);
            if (v == 0) continue;
            for (int c = col; c < M.cols; ++c)
                M.at(r, c) = F.sub(M.at(r, c), F.mul(v, M.at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

inline int rank_of(const Field& F, Mat M) { return rref_in_place(F, M); }

struct Subspace {
    int n = 0;  // ambient vector-space dimension (PG dimension n-1)
    Mat gens;   // k x n canonical RREF

    int k() const { return gens.rows; }

    bool operator==(const Subspace&) const = default;
    bool operator<(const Subspace& o) const {
        if (n != o.n) return n < o.n;
        if (gens.rows != o.gens.rows) return gens.rows < o.gens.rows;
        return gens.a < o.gens.a;
    }
};

// Row space of an arbitrary generator matrix (zero rows dropped).
inline Subspace span(const Field& F, Mat M) {
    int rank = rref_in_place(F, M);
    Mat g(rank, M.cols);
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < M.cols; ++c) g.at(r, c) = M.at(r, c);
    return Subspace{M.cols, std::move(g)};
}

inline Subspace span_rows(const Field& F, int n, const std::vector<std::vector<Elem>>& rows) {
    Mat M(static_cast<int>(rows.size()), n);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].size()) != n) throw std::invalid_argument("span_rows: bad row size");
        for (int c = 0; c < n; ++c) M.at(static_cast<int>(r), c) = rows[r][c];
    }
    return span(F, M);
}

inline Subspace join(const Field& F, const Subspace& S, const Subspace& T) {
    if (S.n != T.n) throw std::invalid_argument("join: ambient mismatch");
    Mat M(S.k() + T.k(), S.n);
    for (int r = 0; r < S.k(); ++r)
        for (int c = 0; c < S.n; ++c) M.at(r, c) = S.gens.at(r, c);
    for (int r = 0; r < T.k(); ++r)
        for (int c = 0; c < S.n; ++c) M.at(S.k() + r, c) = T.gens.at(r, c);
    return span(F, M);
}

// Intersection via the Zassenhaus block trick: rref of [S|S; T|0]; rows whose
// left half vanished carry the meet in their right half.
inline Subspace meet(const Field& F, const Subspace& S, const Subspace& T) {
    if (S.n != T.n) throw std::invalid_argument("meet: ambient mismatch");
    int n = S.n;
    Mat M(S.k() + T.k(), 2 * n);
    for (int r = 0; r < S.k(); ++r)
        for (int c = 0; c < n; ++c) {
            M.at(r, c) = S.gens.at(r, c);
            M.at(r, n + c) = S.gens.at(r, c);
        }
    for (int r = 0; r < T.k(); ++r)
        for (int c = 0; c < n; ++c) M.at(S.k() + r, c) = T.gens.at(r, c);
    int rank = rref_in_place(F, M);
    std::vector<std::vector<Elem>> rows;
    for (int r = 0; r < rank; ++r) {
        bool left_zero = true;
        for (int c = 0; c < n; ++c)
            if (M.at(r, c) != 0) { left_zero = false; break; }
        if (!left_zero) continue;
        std::vector<Elem> v(n);
        for (int c = 0; c < n; ++c) v[c] = M.at(r, n + c);
        rows.push_back(std::move(v));
    }
    return span_rows(F, n, rows);
}

// Reduce v against the RREF rows of S; v is in the row space iff the residue
// is zero.
inline bool member(const Field& F, const Subspace& S, std::vector<Elem> v) {
    if (static_cast<int>(v.size()) != S.n) throw std::invalid_argument("member: bad vector size");
    for (int r = 0; r < S.k(); ++r) {
        int piv = -1;
        for (int c = 0; c < S.n; ++c)
            if (S.gens.at(r, c) != 0) { piv = c; break; }
        Elem coef = v[piv];
        if (coef == 0) continue;
        for (int c = piv; c < S.n; ++c) v[c] = F.sub(v[c], F.mul(coef, S.gens.at(r, c)));
    }
    for (Elem x : v)
        if (x != 0) return false;
    return true;
}

// T subseteq S
inline bool contains(const Field& F, const Subspace& S, const Subspace& T) {
    if (S.n != T.n) throw std::invalid_argument("contains: ambient mismatch");
    if (T.k() > S.k()) return false;
    for (int r = 0; r < T.k(); ++r) {
        std::vector<Elem> v(S.n);
        for (int c = 0; c < S.n; ++c) v[c] = T.gens.at(r, c);
        if (!member(F, S, std::move(v))) return false;
    }
    return true;
}

// Projectively disjoint: meet has rank 0.
inline bool is_disjoint(const Field& F, const Subspace& S, const Subspace& T) {
    if (S.n != T.n) throw std::invalid_argument("is_disjoint: ambient mismatch");
    Mat M(S.k() + T.k(), S.n);
    for (int r = 0; r < S.k(); ++r)
        for (int c = 0; c < S.n; ++c) M.at(r, c) = S.gens.at(r, c);
    for (int r = 0; r < T.k(); ++r)
        for (int c = 0; c < S.n; ++c) M.at(S.k() + r, c) = T.gens.at(r, c);
    return rref_in_place(F, M) == S.k() + T.k();
}

// Projective points of S: coefficient vectors with leading coefficient 1
// composed with the RREF generators land directly on canonical point
// representatives (first nonzero coordinate 1).
inline std::vector<std::vector<Elem>> all_points(const Field& F, const Subspace& S) {
    std::vector<std::vector<Elem>> pts;
    int k = S.k();
    // leading coefficient position l runs over rows; coef[l] = 1, later ones free
    for (int l = 0; l < k; ++l) {
        std::vector<Elem> free_vals(k - l - 1, 0);
        while (true) {
            std::vector<Elem> v(S.n, 0);
            for (int c = 0; c < S.n; ++c) v[c] = S.gens.at(l, c);
            for (int i = 0; i < k - l - 1; ++i) {
                Elem x = free_vals[i];
                if (x == 0) continue;
                for (int c = 0; c < S.n; ++c)
                    v[c] = F.add(v[c], F.mul(x, S.gens.at(l + 1 + i, c)));
            }
            pts.push_back(std::move(v));
            int i = k - l - 2;
            while (i >= 0 && free_vals[i] == F.q() - 1) free_vals[i--] = 0;
            if (i < 0) break;
            ++free_vals[i];
        }
    }
    return pts;
}

// Column-shift embedding: place the generators of S into an N-dimensional
// ambient space starting at column `offset`.  RREF shape is preserved.
inline Subspace embed_cols(const Subspace& S, int N, int offset) {
    if (offset + S.n > N) throw std::invalid_argument("embed_cols: does not fit");
    Mat g(S.k(), N);
    for (int r = 0; r < S.k(); ++r)
        for (int c = 0; c < S.n; ++c) g.at(r, c + offset) = S.gens.at(r, c);
    return Subspace{N, std::move(g)};
}

// Gauss-Jordan inverse; throws if singular.
inline Mat mat_inverse(const Field& F, const Mat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("mat_inverse: not square");
    int n = A.rows;
    Mat M(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) M.at(r, c) = A.at(r, c);
        M.at(r, n + r) = 1;
    }
    if (rref_in_place(F, M) != n) throw std::invalid_argument("mat_inverse: singular");
    Mat inv(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv.at(r, c) = M.at(r, n + c);
    return inv;
}

} // namespace qcover
