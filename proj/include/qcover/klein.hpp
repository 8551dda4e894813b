#pragma once

// Klein quadric Q+(5,q) machinery and the C_q(6,3,2) base design.
//
// Coordinates: the Plucker image of a line of PG(3,q) is written in the slot
// order (p12, p34, p13, p42, p14, p23), so the image satisfies
// X1X2 + X3X4 + X5X6 = 0 with the quadratic form written exactly that way.
//
// Families: Greek planes are the images of the line-sets of planes of
// PG(3,q), Latin planes the images of line-stars of points.  The
// distinguished Greek plane g is the image of <U1,U2,U3> (x4 = 0).
//
// The design C_q(6,3,2) is the union of
//   X: q^6-q^3 conic-section planes disjoint from g (exact-cover search),
//   Y: the q^3+q^2+q Greek planes distinct from g,
//   Z: for each line l of g, the q-1 planes meeting the quadric exactly in l,
//   T: the Singer orbit of q^2 line-pair planes through a flag of g.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qcover/design.hpp"
#include "qcover/dlx.hpp"
#include "qcover/errors.hpp"
#include "qcover/enumerate.hpp"
#include "qcover/field.hpp"
#include "qcover/linalg.hpp"
#include "qcover/verify.hpp"

namespace qcover {

inline constexpr int kPluckerSlots[6][2] = {{0, 1}, {2, 3}, {0, 2}, {3, 1}, {0, 3}, {1, 2}};

inline Elem quadric_value(const Field& F, const std::vector<Elem>& x) {
    Elem s = F.mul(x[0], x[1]);
    s = F.add(s, F.mul(x[2], x[3]));
    return F.add(s, F.mul(x[4], x[5]));
}

// Plucker coordinates of the line spanned by rows u, v, normalized so the
// first nonzero coordinate is 1 (the canonical point representative).
inline std::vector<Elem> plucker(const Field& F, const Subspace& line) {
    if (line.n != 4 || line.k() != 2)
        throw std::invalid_argument("plucker: input must be a line of PG(3,q)");
    const Mat& g = line.gens;
    std::vector<Elem> w(6);
    for (int s = 0; s < 6; ++s) {
        int a = kPluckerSlots[s][0], b = kPluckerSlots[s][1];
        w[s] = F.sub(F.mul(g.at(0, a), g.at(1, b)), F.mul(g.at(0, b), g.at(1, a)));
    }
    for (int s = 0; s < 6; ++s) {
        if (w[s] == 0) continue;
        Elem inv = F.inv(w[s]);
        if (inv != 1)
            for (int t = s; t < 6; ++t) w[t] = F.mul(inv, w[t]);
        break;
    }
    return w;
}

enum class SectionKind { conic, line, line_pair, point, full };

struct PlaneSection {
    SectionKind kind;
    std::vector<std::vector<Elem>> points; // canonical representatives, sorted
};

struct KleinCtx {
    Field F;
    std::vector<Subspace> greek, latin;
    Subspace g;
    std::unordered_set<Key, KeyHash> quadric_points; // keys of rank-1 subspaces
    Mat singer4; // 4x4 collineation of PG(3,q): Singer on the plane under g
    Mat singer6; // its exterior-square action on PG(5,q)

    explicit KleinCtx(const Field& field) : F(field) {}

    bool on_quadric(const std::vector<Elem>& pt) const { return quadric_value(F, pt) == 0; }
};

// Exterior-square action: for x -> xB on PG(3,q), the induced map on Plucker
// 6-vectors is w -> w W with W[s][t] the 2x2 minor of B on (rows of slot s,
// columns of slot t).
inline Mat exterior_square(const Field& F, const Mat& B) {
    Mat W(6, 6);
    for (int s = 0; s < 6; ++s) {
        int a = kPluckerSlots[s][0], b = kPluckerSlots[s][1];
        for (int t = 0; t < 6; ++t) {
            int c = kPluckerSlots[t][0], d = kPluckerSlots[t][1];
            W.at(s, t) = F.sub(F.mul(B.at(a, c), B.at(b, d)), F.mul(B.at(a, d), B.at(b, c)));
        }
    }
    return W;
}

namespace detail {

// x^k mod f over GF(q), f monic ascending; used for primitivity tests.
inline std::vector<Elem> poly_xpow_mod(const Field& F, std::uint64_t k, const std::vector<Elem>& f) {
    int deg = static_cast<int>(f.size()) - 1;
    auto reduce = [&](std::vector<Elem>& r) {
        for (int i = static_cast<int>(r.size()) - 1; i >= deg; --i) {
            Elem c = r[i];
            if (c == 0) continue;
            r[i] = 0;
            for (int j = 0; j < deg; ++j) r[i - deg + j] = F.sub(r[i - deg + j], F.mul(c, f[j]));
        }
        r.resize(deg);
    };
    std::vector<Elem> result{1}, base{0, 1};
    result.resize(deg, 0);
    base.resize(std::max(deg, 2), 0);
    base.resize(deg, 0);
    if (deg == 1) { // x mod f is a constant
        base = {F.neg(f[0])};
    }
    auto mulp = [&](const std::vector<Elem>& a, const std::vector<Elem>& b) {
        std::vector<Elem> prod(2 * deg, 0);
        for (int i = 0; i < deg; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < deg; ++j) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
        }
        reduce(prod);
        return prod;
    };
    while (k) {
        if (k & 1) result = mulp(result, base);
        base = mulp(base, base);
        k >>= 1;
    }
    return result;
}

inline bool poly_is_one(const std::vector<Elem>& p) {
    if (p.empty() || p[0] != 1) return false;
    for (size_t i = 1; i < p.size(); ++i)
        if (p[i] != 0) return false;
    return true;
}

// Least monic primitive cubic over GF(q): irreducible and x of order q^3-1.
inline std::vector<Elem> least_primitive_cubic(const Field& F) {
    std::uint64_t q = F.q();
    std::uint64_t order = q * q * q - 1;
    std::vector<std::uint64_t> prime_divisors;
    std::uint64_t n = order;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            prime_divisors.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) prime_divisors.push_back(n);

    std::uint64_t count = q * q * q;
    for (std::uint64_t low = 0; low < count; ++low) {
        std::vector<Elem> f(4);
        std::uint64_t x = low;
        for (int i = 0; i < 3; ++i) {
            f[i] = static_cast<Elem>(x % q);
            x /= q;
        }
        f[3] = 1;
        if (f[0] == 0) continue; // reducible: x divides
        // irreducible over GF(q): no root and not a product needing... degree 3
        // is irreducible iff it has no root in GF(q)
        bool root = false;
        for (Elem a = 0; a < q && !root; ++a) {
            Elem v = F.add(F.add(F.mul(F.mul(a, a), a), F.mul(f[2], F.mul(a, a))),
                           F.add(F.mul(f[1], a), f[0]));
            if (v == 0) root = true;
        }
        if (root) continue;
        bool primitive = true;
        for (std::uint64_t p : prime_divisors)
            if (poly_is_one(poly_xpow_mod(F, order / p, f))) { primitive = false; break; }
        if (primitive) return f;
    }
    throw std::logic_error("least_primitive_cubic: none found");
}

inline Key point_key(const std::vector<Elem>& pt, int q) {
    Subspace s;
    s.n = static_cast<int>(pt.size());
    s.gens = Mat(1, s.n);
    for (int i = 0; i < s.n; ++i) s.gens.at(0, i) = pt[i];
    return subspace_key(s, q);
}

} // namespace detail

// Singer-compatible 4x4 generator: diag(M3, lambda) with M3 the companion
// matrix of the least primitive cubic and lambda chosen so the matrix has
// projective order q^2+q+1 on PG(5,q) through the exterior square.  The
// needed lambda exists whenever gcd(3, q-1) = 1 (all desk-scale q here);
// otherwise this throws the order-mismatch error.
inline Mat singer_generator4(const Field& F) {
    auto f = detail::least_primitive_cubic(F);
    int q = F.q();
    Mat M3(3, 3);
    M3.at(0, 1) = 1;
    M3.at(1, 2) = 1;
    for (int j = 0; j < 3; ++j) M3.at(2, j) = F.neg(f[j]);
    // M3^(q^2+q+1) must be a scalar nu
    Mat P = Mat::identity(3);
    int steps = q * q + q + 1;
    for (int i = 0; i < steps; ++i) P = mat_mul(F, P, M3);
    Elem nu = P.at(0, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (P.at(i, j) != (i == j ? nu : 0))
                throw std::logic_error("singer_generator4: companion power not scalar");
    Elem lambda = 0;
    for (Elem cand = 1; cand < q; ++cand)
        if (F.pow(cand, steps) == nu) { lambda = cand; break; }
    if (lambda == 0)
        throw std::runtime_error("singer_generator4: generator order mismatch (no scalar with lambda^(q^2+q+1) = nu)");
    Mat B(4, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B.at(i, j) = M3.at(i, j);
    B.at(3, 3) = lambda;
    return B;
}

inline Subspace apply_collineation(const Field& F, const Subspace& S, const Mat& W) {
    return span(F, mat_mul(F, S.gens, W));
}

inline KleinCtx klein_make(const Field& F) {
    KleinCtx ctx(F);
    int q = F.q();

    for_each_subspace(6, 1, q, [&](const Subspace& P) {
        std::vector<Elem> x(6);
        for (int i = 0; i < 6; ++i) x[i] = P.gens.at(0, i);
        if (quadric_value(F, x) == 0) ctx.quadric_points.insert(subspace_key(P, q));
    });
    std::uint64_t expect_pts = static_cast<std::uint64_t>(q) * q + 1;
    expect_pts *= static_cast<std::uint64_t>(q) * q + q + 1;
    if (ctx.quadric_points.size() != expect_pts)
        throw std::logic_error("klein_make: quadric point count off");

    // line-stars per point of PG(3,q) and line-sets per plane
    auto points3 = all_subspaces(4, 1, q);
    auto planes3 = all_subspaces(4, 3, q);
    std::vector<std::vector<std::vector<Elem>>> star(points3.size());
    std::map<Subspace, size_t> point_index;
    for (size_t i = 0; i < points3.size(); ++i) point_index[points3[i]] = i;

    for_each_subspace(4, 2, q, [&](const Subspace& L) {
        auto w = plucker(F, L);
        for (auto& pt : all_points(F, L)) {
            Subspace P;
            P.n = 4;
            P.gens = Mat(1, 4);
            for (int c = 0; c < 4; ++c) P.gens.at(0, c) = pt[c];
            star[point_index.at(P)].push_back(w);
        }
    });
    for (auto& rows : star) {
        Subspace pl = span_rows(F, 6, rows);
        if (pl.k() != 3) throw std::logic_error("klein_make: latin plane rank off");
        ctx.latin.push_back(pl);
    }
    for (const auto& plane : planes3) {
        std::vector<std::vector<Elem>> rows;
        for_each_subspace_within(F, plane, 2, [&](const Subspace& L) { rows.push_back(plucker(F, L)); });
        Subspace pl = span_rows(F, 6, rows);
        if (pl.k() != 3) throw std::logic_error("klein_make: greek plane rank off");
        ctx.greek.push_back(pl);
        if (plane == planes3.front()) ctx.g = pl; // image of <U1,U2,U3>, the first plane
    }

    ctx.singer4 = singer_generator4(F);
    ctx.singer6 = exterior_square(F, ctx.singer4);
    // sanity: the induced map fixes the quadric and g, and has projective
    // order q^2+q+1
    Subspace g_img = apply_collineation(F, ctx.g, ctx.singer6);
    if (!(g_img == ctx.g)) throw std::logic_error("klein_make: singer does not stabilize g");
    Mat W = ctx.singer6;
    int order = 1;
    auto is_proj_identity = [&](const Mat& M) {
        Elem d = M.at(0, 0);
        if (d == 0) return false;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                if (M.at(i, j) != (i == j ? d : 0)) return false;
        return true;
    };
    while (!is_proj_identity(W)) {
        W = mat_mul(F, W, ctx.singer6);
        if (++order > q * q + q + 1) break;
    }
    if (order != q * q + q + 1)
        throw std::runtime_error("klein_make: singer generator order mismatch");
    return ctx;
}

inline PlaneSection classify_plane_section(const KleinCtx& ctx, const Subspace& plane) {
    const Field& F = ctx.F;
    if (plane.n != 6 || plane.k() != 3)
        throw std::invalid_argument("classify_plane_section: not a plane of PG(5,q)");
    int q = F.q();
    PlaneSection sec;
    for (auto& pt : all_points(F, plane))
        if (ctx.on_quadric(pt)) sec.points.push_back(pt);
    std::sort(sec.points.begin(), sec.points.end());
    size_t cnt = sec.points.size();
    size_t theta2 = static_cast<size_t>(q) * q + q + 1;

    auto collinear_all = [&]() {
        if (cnt < 3) return true;
        Mat M(static_cast<int>(cnt), 6);
        for (size_t i = 0; i < cnt; ++i)
            for (int c = 0; c < 6; ++c) M.at(static_cast<int>(i), c) = sec.points[i][c];
        return rref_in_place(F, M) <= 2;
    };

    if (cnt == theta2) {
        sec.kind = SectionKind::full;
    } else if (cnt == 1) {
        sec.kind = SectionKind::point;
    } else if (cnt == static_cast<size_t>(q) + 1) {
        sec.kind = collinear_all() ? SectionKind::line : SectionKind::conic;
        if (sec.kind == SectionKind::conic) {
            // a conic has no 3 collinear points
            for (size_t i = 0; i < cnt; ++i)
                for (size_t j = i + 1; j < cnt; ++j)
                    for (size_t l = j + 1; l < cnt; ++l) {
                        Mat M(3, 6);
                        for (int c = 0; c < 6; ++c) {
                            M.at(0, c) = sec.points[i][c];
                            M.at(1, c) = sec.points[j][c];
                            M.at(2, c) = sec.points[l][c];
                        }
                        if (rref_in_place(F, M) <= 2)
                            throw std::logic_error("classify_plane_section: degenerate conic");
                    }
        }
    } else if (cnt == 2 * static_cast<size_t>(q) + 1) {
        sec.kind = SectionKind::line_pair;
    } else {
        throw std::logic_error("classify_plane_section: unrecognized section size");
    }
    return sec;
}

// Lines inside a subspace, canonically, in internal-enumeration order.
inline std::vector<Subspace> lines_within(const Field& F, const Subspace& S) {
    std::vector<Subspace> out;
    for_each_subspace_within(F, S, 2, [&](const Subspace& L) { out.push_back(L); });
    return out;
}

// Z: for every line l of g, the q-1 planes through l meeting the quadric
// exactly in l.
inline std::vector<Subspace> build_Z(const KleinCtx& ctx) {
    const Field& F = ctx.F;
    int q = F.q();
    std::vector<Subspace> Z;
    for (const auto& l : lines_within(F, ctx.g)) {
        auto l_points = all_points(F, l);
        std::sort(l_points.begin(), l_points.end());
        std::set<Subspace> planes;
        for_each_subspace(6, 1, q, [&](const Subspace& P) {
            std::vector<Elem> pt(6);
            for (int c = 0; c < 6; ++c) pt[c] = P.gens.at(0, c);
            if (member(F, l, pt)) return;
            Mat M(3, 6);
            for (int c = 0; c < 6; ++c) {
                M.at(0, c) = l.gens.at(0, c);
                M.at(1, c) = l.gens.at(1, c);
                M.at(2, c) = pt[c];
            }
            Subspace pl = span(F, M);
            auto sec = classify_plane_section(ctx, pl);
            if (sec.kind == SectionKind::line && sec.points == l_points) planes.insert(pl);
        });
        if (planes.size() != static_cast<size_t>(q - 1))
            throw std::logic_error("build_Z: expected q-1 planes per line of g");
        Z.insert(Z.end(), planes.begin(), planes.end());
    }
    return Z;
}

// Seed set S for the T-orbit: the q^2 planes spanned by one line of the
// Latin plane through l and one line of g through P, both distinct from l.
inline std::vector<Subspace> build_T_seed(const KleinCtx& ctx, const Subspace& l,
                                          const std::vector<Elem>& P) {
    const Field& F = ctx.F;
    const Subspace* latin_pl = nullptr;
    for (const auto& pl : ctx.latin)
        if (contains(F, pl, l)) {
            if (latin_pl) throw std::logic_error("build_T_seed: line in two latin planes");
            latin_pl = &pl;
        }
    if (!latin_pl) throw std::logic_error("build_T_seed: no latin plane through l");

    auto lines_through = [&](const Subspace& plane) {
        std::vector<Subspace> out;
        for (const auto& cand : lines_within(F, plane))
            if (!(cand == l) && member(F, cand, P)) out.push_back(cand);
        return out;
    };
    auto a_lines = lines_through(*latin_pl);
    auto b_lines = lines_through(ctx.g);
    int q = F.q();
    if (a_lines.size() != static_cast<size_t>(q) || b_lines.size() != static_cast<size_t>(q))
        throw std::logic_error("build_T_seed: expected q lines on each side");
    std::vector<Subspace> S;
    for (const auto& a : a_lines)
        for (const auto& b : b_lines) {
            Subspace pl = join(F, a, b);
            if (pl.k() != 3) throw std::logic_error("build_T_seed: span not a plane");
            S.push_back(pl);
        }
    return S;
}

inline std::vector<Subspace> singer_orbit(const KleinCtx& ctx, const std::vector<Subspace>& seed) {
    const Field& F = ctx.F;
    int q = F.q();
    int steps = q * q + q + 1;
    std::vector<Subspace> orbit;
    std::set<Subspace> seen;
    std::vector<Subspace> cur = seed;
    for (int i = 0; i < steps; ++i) {
        for (const auto& pl : cur)
            if (seen.insert(pl).second) orbit.push_back(pl);
        for (auto& pl : cur) pl = apply_collineation(F, pl, ctx.singer6);
    }
    // closure: one more application permutes the orbit
    for (const auto& pl : cur)
        if (!seen.count(pl)) throw std::logic_error("singer_orbit: orbit not closed");
    return orbit;
}

// Quick exactness check used to certify the (l, P) flag choice: every secant
// line with a point on g lies in exactly one plane of T.
inline bool t_covers_secants(const KleinCtx& ctx, const std::vector<Subspace>& T) {
    const Field& F = ctx.F;
    int q = F.q();
    std::unordered_map<Key, int, KeyHash> mult;
    for (const auto& pl : T)
        for (const auto& L : lines_within(F, pl)) mult[subspace_key(L, q)] += 1;
    bool ok = true;
    for_each_subspace(6, 2, q, [&](const Subspace& L) {
        if (!ok) return;
        int on_quadric = 0;
        bool meets_g = false;
        for (auto& pt : all_points(F, L)) {
            if (ctx.on_quadric(pt)) ++on_quadric;
            if (!meets_g && member(F, ctx.g, pt)) meets_g = true;
        }
        if (on_quadric != 2 || !meets_g) return;
        auto it = mult.find(subspace_key(L, q));
        if (it == mult.end() || it->second != 1) ok = false;
    });
    return ok;
}

// T: the Singer orbit of the seed set.  The flag (l, P) defaults to the
// first line of g and its first point; if the resulting orbit fails the
// secant-cover certificate the remaining flags are tried in order.
inline std::vector<Subspace> build_T(const KleinCtx& ctx) {
    const Field& F = ctx.F;
    int q = F.q();
    std::uint64_t expect = static_cast<std::uint64_t>(q) * q * (q * q + q + 1);
    for (const auto& l : lines_within(F, ctx.g)) {
        for (const auto& P : all_points(F, l)) {
            auto orbit = singer_orbit(ctx, build_T_seed(ctx, l, P));
            if (orbit.size() != expect) continue;
            bool sections_ok = true;
            for (const auto& pl : orbit)
                if (classify_plane_section(ctx, pl).kind != SectionKind::line_pair) {
                    sections_ok = false;
                    break;
                }
            if (sections_ok && t_covers_secants(ctx, orbit)) return orbit;
        }
    }
    throw SearchError("build_T: no flag produced a covering orbit");
}

struct XSearchStats {
    std::uint64_t targets = 0;
    std::uint64_t candidates = 0;
    std::uint64_t nodes = 0;
    bool budget_exhausted = false;
    bool orbit_solution = false;
};

// X: exact cover of the non-singular lines disjoint from g by conic-section
// planes disjoint from g.
//
// The flat instance (9126 targets, ~12k candidates at q=3) is too big for
// naked Algorithm X, so the search first looks for a cover invariant under
// the Singer cycle: candidates and targets collapse to orbits, a candidate
// orbit is usable when it hits every target orbit at most once, and the
// compressed instance (q^2+q+1 times smaller) goes through dancing links.
// A compressed solution expands to a valid flat cover; if none exists the
// flat instance is searched with whatever budget remains.
inline std::vector<Subspace> build_X_exact_cover(const KleinCtx& ctx, double budget_seconds = 3600.0,
                                                 XSearchStats* stats = nullptr) {
    const Field& F = ctx.F;
    int q = F.q();
    int cycle = q * q + q + 1;

    std::vector<Subspace> targets;
    std::unordered_map<Key, int, KeyHash> target_col;
    for_each_subspace(6, 2, q, [&](const Subspace& L) {
        if (!is_disjoint(F, L, ctx.g)) return;
        int on_q = 0;
        for (auto& pt : all_points(F, L))
            if (ctx.on_quadric(pt)) ++on_q;
        if (on_q == q + 1) return; // singular lines belong to the Greek planes
        target_col.emplace(subspace_key(L, q), static_cast<int>(targets.size()));
        targets.push_back(L);
    });

    std::vector<Subspace> candidates;
    for_each_subspace(6, 3, q, [&](const Subspace& pl) {
        if (!is_disjoint(F, pl, ctx.g)) return;
        if (classify_plane_section(ctx, pl).kind == SectionKind::conic) candidates.push_back(pl);
    });
    if (stats) {
        stats->targets = targets.size();
        stats->candidates = candidates.size();
    }
    std::uint64_t expect = ipow<std::uint64_t>(q, 6) - ipow<std::uint64_t>(q, 3);

    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(budget_seconds));
    auto seconds_left = [&] {
        return std::chrono::duration<double>(deadline - std::chrono::steady_clock::now()).count();
    };

    // ---- orbit-compressed pass -------------------------------------------
    // target line -> orbit id
    std::vector<int> line_orbit(targets.size(), -1);
    int n_line_orbits = 0;
    for (size_t i = 0; i < targets.size(); ++i) {
        if (line_orbit[i] >= 0) continue;
        int id = n_line_orbits++;
        Subspace cur = targets[i];
        for (int s = 0; s < cycle; ++s) {
            line_orbit[target_col.at(subspace_key(cur, q))] = id;
            cur = apply_collineation(F, cur, ctx.singer6);
        }
    }
    // candidate plane orbits, represented by the least member
    std::unordered_map<Key, int, KeyHash> cand_index;
    for (size_t i = 0; i < candidates.size(); ++i)
        cand_index.emplace(subspace_key(candidates[i], q), static_cast<int>(i));
    std::vector<std::vector<int>> plane_orbits; // candidate indices per orbit
    {
        std::vector<bool> seen(candidates.size(), false);
        for (size_t i = 0; i < candidates.size(); ++i) {
            if (seen[i]) continue;
            std::vector<int> orbit;
            Subspace cur = candidates[i];
            for (int s = 0; s < cycle; ++s) {
                int idx = cand_index.at(subspace_key(cur, q));
                if (!seen[idx]) {
                    seen[idx] = true;
                    orbit.push_back(idx);
                }
                cur = apply_collineation(F, cur, ctx.singer6);
            }
            std::sort(orbit.begin(), orbit.end());
            plane_orbits.push_back(std::move(orbit));
        }
    }
    std::vector<int> line_orbit_size(n_line_orbits, 0);
    for (int t : line_orbit) ++line_orbit_size[t];
    ExactCover compressed(n_line_orbits);
    std::vector<int> row_to_orbit;
    for (size_t oi = 0; oi < plane_orbits.size(); ++oi) {
        std::map<int, int> hits; // line orbit -> incidence count
        for (int ci : plane_orbits[oi])
            for (const auto& L : lines_within(F, candidates[ci]))
                ++hits[line_orbit[target_col.at(subspace_key(L, q))]];
        bool usable = true;
        std::vector<int> cols;
        for (auto [col, cnt] : hits) {
            // uniform multiplicity over the orbit: cnt / orbit size
            if (cnt % line_orbit_size[col] != 0 || cnt / line_orbit_size[col] > 1) {
                usable = false;
                break;
            }
            cols.push_back(col);
        }
        if (!usable) continue;
        compressed.add_row(cols);
        row_to_orbit.push_back(static_cast<int>(oi));
    }
    auto cres = compressed.solve(UINT64_MAX, std::max(1.0, seconds_left()));
    if (cres.status == ExactCover::Status::solved) {
        std::vector<Subspace> X;
        for (int row : cres.rows)
            for (int ci : plane_orbits[row_to_orbit[row]]) X.push_back(candidates[ci]);
        std::sort(X.begin(), X.end());
        if (stats) {
            stats->nodes = cres.nodes;
            stats->orbit_solution = true;
        }
        if (X.size() != expect) throw std::logic_error("build_X_exact_cover: orbit solution size off");
        return X;
    }

    // ---- flat fallback ----------------------------------------------------
    ExactCover cover(static_cast<int>(targets.size()));
    for (const auto& pl : candidates) {
        std::vector<int> cols;
        for (const auto& L : lines_within(F, pl)) {
            auto it = target_col.find(subspace_key(L, q));
            if (it == target_col.end())
                throw std::logic_error("build_X_exact_cover: candidate covers a non-target line");
            cols.push_back(it->second);
        }
        std::sort(cols.begin(), cols.end());
        cover.add_row(cols);
    }
    auto res = cover.solve(UINT64_MAX, std::max(1.0, seconds_left()));
    if (stats) {
        stats->nodes = cres.nodes + res.nodes;
        stats->budget_exhausted = res.status == ExactCover::Status::budget_exhausted;
    }
    if (res.status == ExactCover::Status::budget_exhausted)
        throw SearchError("build_X_exact_cover: search budget exhausted after " +
                          std::to_string(cres.nodes + res.nodes) + " nodes");
    if (res.status == ExactCover::Status::unsolvable)
        throw SearchError("build_X_exact_cover: instance unsolvable (contradicts the cited lemma)");
    std::vector<Subspace> X;
    for (int row : res.rows) X.push_back(candidates[row]);
    if (X.size() != expect) throw std::logic_error("build_X_exact_cover: solution size off");
    return X;
}

// Import escape hatch: an externally supplied X set is accepted if it has the
// right size and the exact-cover property.
inline void check_X_set(const KleinCtx& ctx, const std::vector<Subspace>& X) {
    const Field& F = ctx.F;
    int q = F.q();
    std::uint64_t expect = ipow<std::uint64_t>(q, 6) - ipow<std::uint64_t>(q, 3);
    if (X.size() != expect) throw std::runtime_error("X set: wrong cardinality");
    std::unordered_map<Key, int, KeyHash> mult;
    for (const auto& pl : X) {
        if (!is_disjoint(F, pl, ctx.g)) throw std::runtime_error("X set: plane meets g");
        if (classify_plane_section(ctx, pl).kind != SectionKind::conic)
            throw std::runtime_error("X set: non-conic section");
        for (const auto& L : lines_within(F, pl)) mult[subspace_key(L, q)] += 1;
    }
    std::uint64_t targets = 0;
    bool ok = true;
    for_each_subspace(6, 2, q, [&](const Subspace& L) {
        if (!is_disjoint(F, L, ctx.g)) return;
        int on_q = 0;
        for (auto& pt : all_points(F, L))
            if (ctx.on_quadric(pt)) ++on_q;
        if (on_q == q + 1) return;
        ++targets;
        auto it = mult.find(subspace_key(L, q));
        if (it == mult.end() || it->second != 1) ok = false;
    });
    if (!ok || mult.size() != targets) throw std::runtime_error("X set: not an exact cover");
}

struct Design632Parts {
    std::vector<Subspace> X, Y, Z, T;
};

inline Design assemble_632(const KleinCtx& ctx, Design632Parts parts) {
    const Field& F = ctx.F;
    int q = F.q();
    Design D;
    D.q = q;
    D.n = 6;
    D.k = 3;
    D.r = 2;
    D.family = "632";
    std::unordered_set<Key, KeyHash> seen;
    auto push_all = [&](const std::vector<Subspace>& part) {
        for (const auto& b : part) {
            if (!seen.insert(subspace_key(b, q)).second)
                throw std::logic_error("assemble_632: duplicate block between families");
            D.blocks.push_back(b);
        }
    };
    push_all(parts.X);
    push_all(parts.Y);
    push_all(parts.Z);
    push_all(parts.T);
    D.meta["X"] = std::to_string(parts.X.size());
    D.meta["Y"] = std::to_string(parts.Y.size());
    D.meta["Z"] = std::to_string(parts.Z.size());
    D.meta["T"] = std::to_string(parts.T.size());
    return D;
}

// Distinguished-hyperplane census: a hyperplane through g containing exactly
// q^3+2q^2+q-1 blocks.  Scans the hyperplanes through g in canonical order
// and returns the first achieving the count; a miss on all of them is a
// construction bug.
inline std::pair<Subspace, std::uint64_t> hyperplane_census_632(const Field& F, const KleinCtx& ctx,
                                                                const Design& D) {
    int q = F.q();
    std::uint64_t expect = static_cast<std::uint64_t>(q) * q * q + 2 * q * q + q - 1;
    for (const auto& H : hyperplanes_through(F, ctx.g)) {
        std::uint64_t c = census(F, D, H);
        if (c == expect) return {H, c};
    }
    throw std::logic_error("hyperplane_census_632: no hyperplane through g achieves the count");
}

inline Design build_design_632(const Field& F, double x_budget_seconds = 3600.0,
                               const std::vector<Subspace>* imported_X = nullptr) {
    KleinCtx ctx = klein_make(F);
    Design632Parts parts;
    if (imported_X) {
        check_X_set(ctx, *imported_X);
        parts.X = *imported_X;
    } else {
        parts.X = build_X_exact_cover(ctx, x_budget_seconds);
    }
    for (const auto& pl : ctx.greek)
        if (!(pl == ctx.g)) parts.Y.push_back(pl);
    parts.Z = build_Z(ctx);
    parts.T = build_T(ctx);
    Design D = assemble_632(ctx, std::move(parts));

    // distinguished hyperplane and census for the recursion trace
    auto [gamma, count] = hyperplane_census_632(F, ctx, D);
    RecursionTrace trace;
    trace.lambda = gamma;
    trace.alpha = count;
    trace.beta = count;
    D.trace = trace;
    return D;
}

} // namespace qcover
