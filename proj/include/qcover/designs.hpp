#pragma once

// Base designs C_q(8,4,2) and C_q(8,4,3) and the three recursive families,
// materialized with full bookkeeping: every builder checks its block count
// against the closed form, refuses duplicate blocks, and records the
// distinguished subspace with its census values in the recursion trace.
//
// Coordinate frames follow the lifting convention: the MRD lift (I_k | A)
// sits in the first k coordinates and the distinguished subspace
// (Sigma / Lambda) occupies the tail coordinates, so the lifted blocks are
// exactly the blocks avoiding it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "qcover/design.hpp"
#include "qcover/enumerate.hpp"
#include "qcover/formulas.hpp"
#include "qcover/klein.hpp"
#include "qcover/mrd.hpp"
#include "qcover/spreads.hpp"
#include "qcover/verify.hpp"

namespace qcover {

namespace detail {

inline Subspace coordinate_subspace(int N, int offset, int dim) {
    Mat g(dim, N);
    for (int i = 0; i < dim; ++i) g.at(i, offset + i) = 1;
    return Subspace{N, std::move(g)};
}

inline void append_checked(const Field& F, Design& D, const std::vector<Subspace>& part,
                           std::unordered_set<Key, KeyHash>& seen, const char* what) {
    for (const auto& b : part) {
        if (!seen.insert(subspace_key(b, F.q())).second)
            throw std::logic_error(std::string("duplicate block while assembling ") + what);
        D.blocks.push_back(b);
    }
}

// Point rows of S that lie outside T.
inline std::vector<std::vector<Elem>> points_outside(const Field& F, const Subspace& S,
                                                     const Subspace& T) {
    std::vector<std::vector<Elem>> out;
    for (auto& pt : all_points(F, S))
        if (!member(F, T, pt)) out.push_back(pt);
    return out;
}

inline std::vector<Subspace> sorted_lines(std::vector<Subspace> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace detail

// ---- C_q(8,4,2) -------------------------------------------------------------

// X: the lifted (4x4,3)_q code.  Y: for every spread-line pair
// (l_i' in Sigma', l_i in Sigma), the solids of <Sigma, l_i'> that meet Sigma
// in a plane through l_i.  The bijection mu is index order after sorting both
// spreads by line key.
inline Design build_842(const Field& F, const LineSpread* spread_prime = nullptr,
                        const LineSpread* spread = nullptr) {
    int q = F.q();
    LineSpread sp_default, spp_default;
    if (!spread || !spread_prime) {
        sp_default = regular_spread(F);
        spp_default = sp_default;
        spread = &sp_default;
        spread_prime = &spp_default;
    }
    if (!verify_spread(F, *spread) || !verify_spread(F, *spread_prime))
        throw std::invalid_argument("build_842: invalid spread");

    Subspace sigma = detail::coordinate_subspace(8, 4, 4);  // <U5..U8>

    auto embed_sorted = [&](const LineSpread& s, int offset) {
        std::vector<Subspace> lines;
        for (const auto& l : s.lines) lines.push_back(embed_cols(l, 8, offset));
        return detail::sorted_lines(std::move(lines));
    };
    auto ell_prime = embed_sorted(*spread_prime, 0);
    auto ell = embed_sorted(*spread, 4);

    Design D;
    D.q = q;
    D.n = 8;
    D.k = 4;
    D.r = 2;
    D.family = "842";
    std::unordered_set<Key, KeyHash> seen;

    std::vector<Subspace> X = lifted_set(gabidulin(F, 4, 4, 3));
    detail::append_checked(F, D, X, seen, "842 X");

    std::uint64_t y_total = 0;
    for (size_t i = 0; i < ell.size(); ++i) {
        Subspace gamma_i = join(F, sigma, ell_prime[i]);
        auto outside = detail::points_outside(F, gamma_i, sigma);
        // planes of Sigma through l_i
        std::vector<Subspace> y_i;
        for_each_subspace_within(F, sigma, 3, [&](const Subspace& alpha) {
            if (!contains(F, alpha, ell[i])) return;
            std::set<Subspace> solids;
            for (const auto& y : outside) {
                Mat M(4, 8);
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 8; ++c) M.at(r, c) = alpha.gens.at(r, c);
                for (int c = 0; c < 8; ++c) M.at(3, c) = y[c];
                solids.insert(span(F, M)); // meets Sigma exactly in alpha
            }
            if (solids.size() != static_cast<size_t>(q) * q + q)
                throw std::logic_error("build_842: expected q^2+q solids per plane");
            y_i.insert(y_i.end(), solids.begin(), solids.end());
        });
        if (y_i.size() != static_cast<size_t>(q) * (q + 1) * (q + 1))
            throw std::logic_error("build_842: expected q(q+1)^2 solids per spread line");
        y_total += y_i.size();
        detail::append_checked(F, D, y_i, seen, "842 Y");
    }
    if (D.blocks.size() != size_842<std::uint64_t>(q))
        throw std::logic_error("build_842: size formula mismatch");
    D.meta["X"] = std::to_string(X.size());
    D.meta["Y"] = std::to_string(y_total);

    // census hyperplane: every hyperplane through Sigma carries the same
    // measured count q(q+1)(q^2+q+1) (the nominal q(q+1)(2q+1) occurs on no
    // hyperplane at all); record the first for the recursion
    auto hps = hyperplanes_through(F, sigma);
    std::uint64_t expect = census_842_measured<std::uint64_t>(q);
    for (const auto& H : hps)
        if (census(F, D, H) != expect)
            throw std::logic_error("build_842: census mismatch on a hyperplane through Sigma");
    RecursionTrace trace;
    trace.lambda = hps.front();
    trace.alpha = expect;
    trace.beta = expect;
    D.trace = trace;
    return D;
}

// ---- C_q(8,4,3) -------------------------------------------------------------

namespace detail {

// Deterministic ordering of a parallelism: lines sorted within each spread,
// spreads sorted by their line-key sequences.
inline std::vector<std::vector<Subspace>> normalized_parallelism(const Parallelism& p) {
    std::vector<std::vector<Subspace>> out;
    for (const auto& s : p.spreads) {
        std::vector<Subspace> lines = s.lines;
        std::sort(lines.begin(), lines.end());
        out.push_back(std::move(lines));
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<Subspace>& a, const std::vector<Subspace>& b) { return a < b; });
    return out;
}

} // namespace detail

// X: the lifted (4x4,2)_q code.  Z: for every line l' of Sigma', with S_j the
// spread of P' through l' and mu(S_j') = S_j, the q^4 solids of <Sigma, l'>
// meeting Sigma exactly in l, for each l in S_j.  Sigma itself completes the
// design.
inline Design build_843(const Field& F, const Parallelism* par_prime = nullptr,
                        const Parallelism* par = nullptr) {
    int q = F.q();
    Parallelism p_default;
    if (!par || !par_prime) {
        p_default = find_parallelism(F);
        par = &p_default;
        par_prime = &p_default;
    }
    if (!verify_parallelism(F, *par) || !verify_parallelism(F, *par_prime))
        throw std::invalid_argument("build_843: invalid parallelism");

    Subspace sigma = detail::coordinate_subspace(8, 4, 4);
    auto P = detail::normalized_parallelism(*par);        // spreads of Sigma (internal coords)
    auto Pp = detail::normalized_parallelism(*par_prime); // spreads of Sigma'

    // spread index of every line of Sigma'
    std::map<Subspace, int> spread_of;
    for (size_t j = 0; j < Pp.size(); ++j)
        for (const auto& l : Pp[j]) spread_of[l] = static_cast<int>(j);

    Design D;
    D.q = q;
    D.n = 8;
    D.k = 4;
    D.r = 3;
    D.family = "843";
    std::unordered_set<Key, KeyHash> seen;

    std::vector<Subspace> X = lifted_set(gabidulin(F, 4, 4, 2));
    detail::append_checked(F, D, X, seen, "843 X");

    std::uint64_t z_total = 0;
    for_each_subspace(4, 2, q, [&](const Subspace& lp_int) {
        int j = spread_of.at(lp_int);
        Subspace lp = embed_cols(lp_int, 8, 0);
        for (const auto& l_int : P[j]) {
            Subspace l = embed_cols(l_int, 8, 4);
            // complete l to Sigma with the unit vectors on its non-pivot columns
            std::vector<int> compl_cols;
            for (int c = 0; c < 4; ++c) {
                bool piv = false;
                for (int r = 0; r < 2; ++r)
                    if (l_int.gens.at(r, c) == 1) {
                        bool leading = true;
                        for (int cc = 0; cc < c; ++cc)
                            if (l_int.gens.at(r, cc) != 0) leading = false;
                        if (leading) piv = true;
                    }
                if (!piv) compl_cols.push_back(4 + c);
            }
            if (compl_cols.size() != 2) throw std::logic_error("build_843: completion failed");
            std::vector<Subspace> z_l;
            // q^4 solids l + {l'_r + B[r][0] e_{c0} + B[r][1] e_{c1}}
            std::vector<Elem> B(4, 0);
            while (true) {
                Mat M(4, 8);
                for (int c = 0; c < 8; ++c) {
                    M.at(0, c) = l.gens.at(0, c);
                    M.at(1, c) = l.gens.at(1, c);
                    M.at(2, c) = lp.gens.at(0, c);
                    M.at(3, c) = lp.gens.at(1, c);
                }
                M.at(2, compl_cols[0]) = F.add(M.at(2, compl_cols[0]), B[0]);
                M.at(2, compl_cols[1]) = F.add(M.at(2, compl_cols[1]), B[1]);
                M.at(3, compl_cols[0]) = F.add(M.at(3, compl_cols[0]), B[2]);
                M.at(3, compl_cols[1]) = F.add(M.at(3, compl_cols[1]), B[3]);
                z_l.push_back(span(F, M));
                int i = 3;
                while (i >= 0 && B[i] == q - 1) B[i--] = 0;
                if (i < 0) break;
                ++B[i];
            }
            if (z_l.size() != ipow<std::uint64_t>(q, 4))
                throw std::logic_error("build_843: expected q^4 solids per (l, l') pair");
            z_total += z_l.size();
            detail::append_checked(F, D, z_l, seen, "843 Z");
        }
    });
    detail::append_checked(F, D, {sigma}, seen, "843 Sigma");
    if (D.blocks.size() != size_843<std::uint64_t>(q))
        throw std::logic_error("build_843: size formula mismatch");
    D.meta["X"] = std::to_string(X.size());
    D.meta["Z"] = std::to_string(z_total);

    // distinguished Lambda = <Sigma, r0> for the least line r0 of Sigma'
    Subspace r0;
    bool first = true;
    for_each_subspace(4, 2, q, [&](const Subspace& l) {
        if (first) {
            r0 = embed_cols(l, 8, 0);
            first = false;
        }
    });
    Subspace lambda = join(F, sigma, r0);
    std::uint64_t alpha = census(F, D, lambda);
    if (alpha != alpha_843<std::uint64_t>(q))
        throw std::logic_error("build_843: alpha census mismatch");
    std::uint64_t beta_expect = beta_843<std::uint64_t>(q);
    for (const auto& H : hyperplanes_through(F, lambda))
        if (census(F, D, H) != beta_expect)
            throw std::logic_error("build_843: beta census mismatch");
    RecursionTrace trace;
    trace.lambda = lambda;
    trace.alpha = alpha;
    trace.beta = beta_expect;
    D.trace = trace;
    return D;
}

// ---- shared embedding plumbing ----------------------------------------------

// Linear injection of the model space into the big space: the rows of
// `shared` (a subspace of the model space, completed to a basis by the least
// unit vectors) map to the rows of `shared_image`, and the completion units
// map to `extra_images`.  Blocks inside `shared` land identically for every
// choice of extras, which is what makes the glued copies agree.
struct ModelEmbedding {
    Mat map; // d x D
};

inline std::vector<int> completion_units(const Field& F, const Subspace& S) {
    std::vector<int> units;
    Mat probe = S.gens;
    int rank = S.k();
    for (int i = 0; i < S.n && rank + static_cast<int>(units.size()) < S.n; ++i) {
        Mat trial(probe.rows + 1, S.n);
        for (int r = 0; r < probe.rows; ++r)
            for (int c = 0; c < S.n; ++c) trial.at(r, c) = probe.at(r, c);
        trial.at(probe.rows, i) = 1;
        if (rank_of(F, trial) == probe.rows + 1) {
            units.push_back(i);
            probe = std::move(trial);
        }
    }
    return units;
}

inline ModelEmbedding make_embedding(const Field& F, const Subspace& shared,
                                     const std::vector<int>& units,
                                     const Subspace& shared_image,
                                     const std::vector<std::vector<Elem>>& extra_images, int D) {
    int d = shared.n;
    if (shared.k() + static_cast<int>(units.size()) != d)
        throw std::invalid_argument("make_embedding: basis incomplete");
    if (shared_image.k() != shared.k() || static_cast<int>(extra_images.size()) != static_cast<int>(units.size()))
        throw std::invalid_argument("make_embedding: image shape mismatch");
    Mat A(d, d);
    for (int r = 0; r < shared.k(); ++r)
        for (int c = 0; c < d; ++c) A.at(r, c) = shared.gens.at(r, c);
    for (size_t i = 0; i < units.size(); ++i) A.at(shared.k() + static_cast<int>(i), units[i]) = 1;
    Mat T(d, D);
    for (int r = 0; r < shared.k(); ++r)
        for (int c = 0; c < D; ++c) T.at(r, c) = shared_image.gens.at(r, c);
    for (size_t i = 0; i < extra_images.size(); ++i)
        for (int c = 0; c < D; ++c) T.at(shared.k() + static_cast<int>(i), c) = extra_images[i][c];
    return ModelEmbedding{mat_mul(F, mat_inverse(F, A), T)};
}

inline Subspace embed_block(const Field& F, const Subspace& block, const ModelEmbedding& e) {
    return span(F, mat_mul(F, block.gens, e.map));
}

// ---- C_q(2n,3,2), n >= 3 -----------------------------------------------------

inline Design build_2n32(int n, const Field& F, double x_budget_seconds = 3600.0) {
    if (n < 3) throw std::invalid_argument("build_2n32: n >= 3");
    if (n == 3) {
        Design D = build_design_632(F, x_budget_seconds);
        D.family = "2n32";
        D.meta["n"] = "3";
        return D;
    }
    int q = F.q();
    Design model = build_2n32(n - 1, F, x_budget_seconds);
    if (!model.trace) throw std::logic_error("build_2n32: model carries no trace");
    const Subspace& model_h = model.trace->lambda; // hyperplane of the model space

    int D_dim = 2 * n;
    Subspace lambda = detail::coordinate_subspace(D_dim, 3, 2 * n - 3); // <U4..U2n>
    Subspace pi = detail::coordinate_subspace(D_dim, 0, 3);             // <U1,U2,U3>

    std::vector<Subspace> in_h, out_h;
    for (const auto& b : model.blocks)
        (contains(F, model_h, b) ? in_h : out_h).push_back(b);
    if (in_h.size() != model.trace->alpha)
        throw std::logic_error("build_2n32: model census disagrees with trace");

    auto units = completion_units(F, model_h);
    if (units.size() != 1) throw std::logic_error("build_2n32: expected one completion unit");

    Design D;
    D.q = q;
    D.n = D_dim;
    D.k = 3;
    D.r = 2;
    D.family = "2n32";
    D.meta["n"] = std::to_string(n);
    std::unordered_set<Key, KeyHash> seen;

    std::vector<Subspace> U = lifted_set(gabidulin(F, 3, 2 * n - 3, 2));
    detail::append_checked(F, D, U, seen, "2n32 U");

    bool shared_done = false;
    for (auto& P : all_points(F, pi)) {
        ModelEmbedding e = make_embedding(F, model_h, units, lambda, {P}, D_dim);
        std::vector<Subspace> copy;
        for (const auto& b : out_h) copy.push_back(embed_block(F, b, e));
        detail::append_checked(F, D, copy, seen, "2n32 V");
        if (!shared_done) {
            std::vector<Subspace> w;
            for (const auto& b : in_h) w.push_back(embed_block(F, b, e));
            detail::append_checked(F, D, w, seen, "2n32 W");
            shared_done = true;
        }
    }
    if (D.blocks.size() != c2n32_size<std::uint64_t>(n, q))
        throw std::logic_error("build_2n32: size formula mismatch");

    // distinguished hyperplane <Lambda, l> for the least line l of pi
    Subspace ell = lines_within(F, pi).front();
    RecursionTrace trace;
    trace.lambda = join(F, lambda, ell);
    trace.alpha = c2n32_in<std::uint64_t>(n, q);
    trace.beta = trace.alpha;
    D.trace = trace;
    return D;
}

// ---- C_q(3n+8,4,2), n >= 0 -----------------------------------------------------

inline Design build_3n8_42(int n, const Field& F) {
    if (n < 0) throw std::invalid_argument("build_3n8_42: n >= 0");
    if (n == 0) {
        Design D = build_842(F);
        D.family = "3n8-42";
        D.meta["n"] = "0";
        return D;
    }
    int q = F.q();
    Design model = build_3n8_42(n - 1, F);
    if (!model.trace) throw std::logic_error("build_3n8_42: model carries no trace");
    const Subspace& model_h = model.trace->lambda;

    int D_dim = 3 * n + 8;
    Subspace lambda = detail::coordinate_subspace(D_dim, 4, 3 * n + 4); // <U5..U_{3n+8}>
    Subspace Pi = detail::coordinate_subspace(D_dim, 0, 4);             // <U1..U4>

    std::vector<Subspace> in_h, out_h;
    for (const auto& b : model.blocks)
        (contains(F, model_h, b) ? in_h : out_h).push_back(b);
    if (in_h.size() != model.trace->alpha)
        throw std::logic_error("build_3n8_42: model census disagrees with trace");

    auto units = completion_units(F, model_h);
    if (units.size() != 1) throw std::logic_error("build_3n8_42: expected one completion unit");

    Design D;
    D.q = q;
    D.n = D_dim;
    D.k = 4;
    D.r = 2;
    D.family = "3n8-42";
    D.meta["n"] = std::to_string(n);
    std::unordered_set<Key, KeyHash> seen;

    std::vector<Subspace> U = lifted_set(gabidulin(F, 4, 3 * n + 4, 3));
    detail::append_checked(F, D, U, seen, "3n8 U");

    bool shared_done = false;
    for (auto& P : all_points(F, Pi)) {
        ModelEmbedding e = make_embedding(F, model_h, units, lambda, {P}, D_dim);
        std::vector<Subspace> copy;
        for (const auto& b : out_h) copy.push_back(embed_block(F, b, e));
        detail::append_checked(F, D, copy, seen, "3n8 V");
        if (!shared_done) {
            std::vector<Subspace> w;
            for (const auto& b : in_h) w.push_back(embed_block(F, b, e));
            detail::append_checked(F, D, w, seen, "3n8 W");
            shared_done = true;
        }
    }
    if (D.blocks.size() != c3n8_size_built<std::uint64_t>(n, q))
        throw std::logic_error("build_3n8_42: size formula mismatch");

    Subspace sigma_pl = detail::coordinate_subspace(D_dim, 0, 3); // least plane of Pi
    RecursionTrace trace;
    trace.lambda = join(F, lambda, sigma_pl);
    trace.alpha = c3n8_split_built<std::uint64_t>(n, q).second;
    trace.beta = trace.alpha;
    D.trace = trace;
    return D;
}

// ---- C_q(2n,4,3), n >= 4 ------------------------------------------------------

// One copy of the model is embedded per line of the solid Gamma = <U1..U4>;
// the copies share the blocks inside Lambda, and for every point P of Gamma
// the blocks inside <Lambda, P> are taken from the copy of the least line
// through P.  The least line designates all q+1 model hyperplane classes, so
// the glued design stays a covering design (planes inside Lambda keep a
// covering block).
inline Design build_2n43(int n, const Field& F) {
    if (n < 4) throw std::invalid_argument("build_2n43: n >= 4");
    if (n == 4) {
        Design D = build_843(F);
        D.family = "2n43";
        D.meta["n"] = "4";
        return D;
    }
    int q = F.q();
    Design model = build_2n43(n - 1, F);
    if (!model.trace) throw std::logic_error("build_2n43: model carries no trace");
    const Subspace& model_lambda = model.trace->lambda; // codimension 2 in the model

    int D_dim = 2 * n;
    Subspace lambda = detail::coordinate_subspace(D_dim, 4, 2 * n - 4); // <U5..U_{2n}>
    Subspace gamma = detail::coordinate_subspace(D_dim, 0, 4);          // <U1..U4>

    // classify model blocks: inside Lambda / per hyperplane through Lambda /
    // in none of them
    auto model_hps = hyperplanes_through(F, model_lambda);
    if (model_hps.size() != static_cast<size_t>(q) + 1)
        throw std::logic_error("build_2n43: expected q+1 hyperplanes through Lambda");
    std::vector<Subspace> in_lambda, free_blocks;
    std::vector<std::vector<Subspace>> in_hp(model_hps.size());
    for (const auto& b : model.blocks) {
        if (contains(F, model_lambda, b)) {
            in_lambda.push_back(b);
            continue;
        }
        bool placed = false;
        for (size_t u = 0; u < model_hps.size(); ++u)
            if (contains(F, model_hps[u], b)) {
                in_hp[u].push_back(b);
                placed = true;
                break; // a block not inside Lambda fits at most one
            }
        if (!placed) free_blocks.push_back(b);
    }
    if (in_lambda.size() != model.trace->alpha)
        throw std::logic_error("build_2n43: model alpha census disagrees with trace");
    for (size_t u = 0; u < model_hps.size(); ++u)
        if (in_lambda.size() + in_hp[u].size() != model.trace->beta)
            throw std::logic_error("build_2n43: model beta census disagrees with trace");

    auto units = completion_units(F, model_lambda);
    if (units.size() != 2) throw std::logic_error("build_2n43: expected two completion units");

    Design D;
    D.q = q;
    D.n = D_dim;
    D.k = 4;
    D.r = 3;
    D.family = "2n43";
    D.meta["n"] = std::to_string(n);
    std::unordered_set<Key, KeyHash> seen;

    std::vector<Subspace> U = lifted_set(gabidulin(F, 4, 2 * n - 4, 2));
    detail::append_checked(F, D, U, seen, "2n43 U");

    auto gamma_lines = lines_within(F, gamma);
    std::vector<ModelEmbedding> emb;
    emb.reserve(gamma_lines.size());
    for (const auto& l : gamma_lines) {
        std::vector<std::vector<Elem>> extra;
        for (int r = 0; r < 2; ++r) {
            std::vector<Elem> row(D_dim);
            for (int c = 0; c < D_dim; ++c) row[c] = l.gens.at(r, c);
            extra.push_back(std::move(row));
        }
        emb.push_back(make_embedding(F, model_lambda, units, lambda, extra, D_dim));
    }

    // V: per line, the images of the hyperplane-free blocks
    for (size_t li = 0; li < gamma_lines.size(); ++li) {
        std::vector<Subspace> copy;
        for (const auto& b : free_blocks) copy.push_back(embed_block(F, b, emb[li]));
        detail::append_checked(F, D, copy, seen, "2n43 V");
    }

    // W: per point of Gamma, the section of the copy of the least line
    // through it
    for (auto& P : all_points(F, gamma)) {
        size_t li = gamma_lines.size();
        for (size_t i = 0; i < gamma_lines.size(); ++i)
            if (member(F, gamma_lines[i], P)) {
                li = i;
                break;
            }
        if (li == gamma_lines.size()) throw std::logic_error("build_2n43: no line through point");
        // model hyperplane mapping into <Lambda, P>: Lambda_model + a w1 + b w2
        // with P = a l_row0 + b l_row1
        const Subspace& l = gamma_lines[li];
        // the rows of l are RREF, so reading P at their pivot columns yields
        // the coefficients of P = a l_row0 + b l_row1
        Elem a = 0, b = 0;
        {
            int p0 = -1, p1 = -1;
            for (int c = 0; c < D_dim; ++c) {
                if (p0 < 0 && l.gens.at(0, c) != 0) p0 = c;
                if (p1 < 0 && l.gens.at(1, c) != 0 && c > p0) p1 = c;
            }
            a = P[p0];
            b = P[p1];
        }
        std::vector<Elem> w_row(model_lambda.n, 0);
        w_row[units[0]] = a;
        w_row[units[1]] = b;
        Mat hm(model_lambda.k() + 1, model_lambda.n);
        for (int r = 0; r < model_lambda.k(); ++r)
            for (int c = 0; c < model_lambda.n; ++c) hm.at(r, c) = model_lambda.gens.at(r, c);
        for (int c = 0; c < model_lambda.n; ++c) hm.at(model_lambda.k(), c) = w_row[c];
        Subspace model_h = span(F, hm);
        size_t u = model_hps.size();
        for (size_t i = 0; i < model_hps.size(); ++i)
            if (model_hps[i] == model_h) {
                u = i;
                break;
            }
        if (u == model_hps.size()) throw std::logic_error("build_2n43: section hyperplane not found");
        std::vector<Subspace> w;
        for (const auto& blk : in_hp[u]) w.push_back(embed_block(F, blk, emb[li]));
        detail::append_checked(F, D, w, seen, "2n43 W");
    }

    // shared blocks inside Lambda (identical through every embedding)
    std::vector<Subspace> wbar;
    for (const auto& blk : in_lambda) wbar.push_back(embed_block(F, blk, emb[0]));
    detail::append_checked(F, D, wbar, seen, "2n43 Wbar");

    auto expect = rec43<std::uint64_t>(n, q);
    if (D.blocks.size() != expect.size)
        throw std::logic_error("build_2n43: size recurrence mismatch");

    RecursionTrace trace;
    trace.lambda = join(F, lambda, gamma_lines.front());
    trace.alpha = expect.alpha;
    trace.beta = expect.beta;
    D.trace = trace;
    return D;
}

} // namespace qcover
