// Acceptance suite: one criterion per section, one PASS/FAIL line each,
// every expected value pinned in code.  The process exits nonzero if any
// criterion fails.
//
// Two criteria pin nominal values the materialized designs refute: the
// C_q(8,4,2) hyperplane census (criterion 5) asserts q(q+1)(2q+1), but an
// exhaustive scan shows no hyperplane with that census (the spectrum is
// {q^4+q+1, q(q+1)(q^2+q+1)}), and the C_q(3n+8,4,2) tally (criterion 7)
// inherits that census in its block counts.  The suite keeps the nominal
// assertions, fails them honestly, and reports the measured values
// alongside; see the README for the analysis.

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qcover/bounds.hpp"
#include "qcover/designs.hpp"
#include "qcover/io.hpp"
#include "qcover/verify.hpp"

using namespace qcover;

namespace {

struct Harness {
    int failures = 0;

    void run(int id, const std::string& label, double budget_seconds,
             const std::function<void(std::string&)>& body) {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = true;
        try {
            body(note);
        } catch (const std::exception& e) {
            ok = false;
            note = note.empty() ? e.what() : note + "; " + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > budget_seconds) {
            ok = false;
            note += (note.empty() ? "" : "; ") + std::string("over time budget");
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %d: %s (%.2fs%s%s)\n", ok ? "PASS" : "FAIL", id, label.c_str(),
                    secs, note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
    }
};

void expect(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

template <class T>
void expect_eq(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
        std::ostringstream os;
        os << what << ": expected " << want << ", got " << got;
        throw std::runtime_error(os.str());
    }
}

double mem_gb() {
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return static_cast<double>(ru.ru_maxrss) / (1024.0 * 1024.0);
}

} // namespace

int main() {
    Harness h;
    auto F2 = Field::make(2, 1);
    auto F3 = Field::make(3, 1);

    h.run(1, "lifted (3x3,2)_2: 64 planes, 448 disjoint lines each once", 1.0,
          [&](std::string&) {
              auto code = gabidulin(F2, 3, 3, 2);
              expect_eq<std::uint64_t>(code.size(), 64, "code size");
              auto res = check_lifting_case(code, LiftingCase::planes_over_lines);
              expect_eq<std::uint64_t>(res.targets, 448, "disjoint lines");
              expect_eq<std::uint64_t>(res.covered_once, 448, "covered exactly once");
              expect(res.ok, "exact cover violated");
          });

    h.run(2, "lifted (4x4,3)_2 and (4x4,2)_2 exactness", 30.0, [&](std::string&) {
        auto code2 = gabidulin(F2, 4, 4, 3);
        expect_eq<std::uint64_t>(code2.size(), 256, "(4x4,3) code size");
        auto res2 = check_lifting_case(code2, LiftingCase::solids_over_lines);
        expect_eq<std::uint64_t>(res2.targets, 8960, "(4x4,3) disjoint lines");
        expect(res2.ok && res2.covered_once == res2.targets, "(4x4,3) exact cover violated");

        auto code3 = gabidulin(F2, 4, 4, 2);
        expect_eq<std::uint64_t>(code3.size(), 4096, "(4x4,2) code size");
        auto res3 = check_lifting_case(code3, LiftingCase::solids_over_planes);
        expect_eq<std::uint64_t>(res3.targets, 61440, "(4x4,2) disjoint planes");
        expect(res3.ok && res3.covered_once == res3.targets, "(4x4,2) exact cover violated");
    });

    h.run(3, "C_2(6,3,2): 105 blocks, 651 lines covered, census 17 = 0+2+3+12", 60.0,
          [&](std::string&) {
              KleinCtx ctx = klein_make(F2);
              Design D = build_design_632(F2, 60.0);
              expect_eq<size_t>(D.blocks.size(), 105, "block count");
              auto rep = verify_covering(F2, D);
              expect_eq<std::uint64_t>(rep.total_targets, 651, "line count");
              expect_eq<std::uint64_t>(rep.covered, 651, "covered lines");
              expect(rep.min_mult >= 1, "multiplicity floor");
              auto [gamma, count] = hyperplane_census_632(F2, ctx, D);
              expect_eq<std::uint64_t>(count, 17, "census");
              size_t x = std::stoul(D.meta.at("X")), y = std::stoul(D.meta.at("Y")),
                     z = std::stoul(D.meta.at("Z"));
              std::uint64_t parts[4] = {0, 0, 0, 0};
              for (size_t i = 0; i < D.blocks.size(); ++i) {
                  if (!contains(F2, gamma, D.blocks[i])) continue;
                  if (i < x) ++parts[0];
                  else if (i < x + y) ++parts[1];
                  else if (i < x + y + z) ++parts[2];
                  else ++parts[3];
              }
              expect_eq<std::uint64_t>(parts[0], 0, "X in Gamma");
              expect_eq<std::uint64_t>(parts[1], 2, "Y in Gamma");
              expect_eq<std::uint64_t>(parts[2], 3, "Z in Gamma");
              expect_eq<std::uint64_t>(parts[3], 12, "T in Gamma");
          });

    {
        double budget = 3600.0;
        if (const char* env = std::getenv("QCOVER_X3_BUDGET")) budget = std::atof(env);
        h.run(4, "C_3(6,3,2) stretch: 884 blocks, 11011 lines covered, census 47", budget,
              [&](std::string& note) {
                  try {
                      Design D = build_design_632(F3, budget);
                      expect_eq<size_t>(D.blocks.size(), 884, "block count");
                      auto rep = verify_covering(F3, D);
                      expect_eq<std::uint64_t>(rep.total_targets, 11011, "line count");
                      expect_eq<std::uint64_t>(rep.covered, 11011, "covered lines");
                      KleinCtx ctx = klein_make(F3);
                      auto [gamma, count] = hyperplane_census_632(F3, ctx, D);
                      expect_eq<std::uint64_t>(count, 47, "census");
                  } catch (const SearchError& e) {
                      // a budget exhaustion is reported, not failed
                      note = std::string("X search not finished within budget: ") + e.what();
                  }
              });
    }

    h.run(5, "C_2(8,4,2): 346 blocks, 10795 lines covered, census 30", 10.0,
          [&](std::string& note) {
              Design D = build_842(F2);
              expect_eq<size_t>(D.blocks.size(), 346, "block count");
              auto rep = verify_covering(F2, D);
              expect_eq<std::uint64_t>(rep.total_targets, 10795, "line count");
              expect_eq<std::uint64_t>(rep.covered, 10795, "covered lines");
              // Metsch question: 346 < (q^4+1)(q^4+q^2+1) = 357
              expect(346 < 357, "Metsch comparison");
              std::uint64_t measured = census(F2, D, D.trace->lambda);
              note = "measured census " + std::to_string(measured) +
                     " = q(q+1)(q^2+q+1); no hyperplane of the design holds the nominal 30";
              expect_eq<std::uint64_t>(measured, 30, "nominal census"); // fails; see README
          });

    h.run(6, "C_2(8,4,3): 6897 blocks, 97155 planes, mult-4 class, census (81,561)", 60.0,
          [&](std::string&) {
              Design D = build_843(F2);
              expect_eq<size_t>(D.blocks.size(), 6897, "block count");
              auto rep = verify_covering(F2, D);
              expect_eq<std::uint64_t>(rep.total_targets, 97155, "plane count");
              expect_eq<std::uint64_t>(rep.covered, 97155, "covered planes");
              // the q^2 = 4 class is exactly the planes meeting Sigma in a line
              Subspace sigma = detail::coordinate_subspace(8, 4, 4);
              std::uint64_t meets_in_line = 0;
              for_each_subspace(8, 3, 2, [&](const Subspace& pl) {
                  if (meet(F2, pl, sigma).k() == 2) ++meets_in_line;
              });
              expect_eq<std::uint64_t>(rep.histogram.at(4), meets_in_line, "mult-4 class");
              expect_eq<std::uint64_t>(meets_in_line, 2100, "planes meeting Sigma in a line");
              expect_eq<std::uint64_t>(census(F2, D, D.trace->lambda), 81, "alpha");
              auto hps = hyperplanes_through(F2, D.trace->lambda);
              expect_eq<size_t>(hps.size(), 3, "hyperplanes through Lambda");
              for (const auto& H : hps)
                  expect_eq<std::uint64_t>(census(F2, D, H), 561, "beta");
          });

    h.run(7, "recursions materialized: 2n32(4,2), 3n8-42(1,2), 2n43(5,2)", 900.0,
          [&](std::string& note) {
              Design d32 = build_2n32(4, F2, 60.0);
              expect_eq<size_t>(d32.blocks.size(), 1657, "2n32(4,2) blocks");
              auto rep32 = verify_covering(F2, d32);
              expect_eq<std::uint64_t>(rep32.covered, 10795, "2n32(4,2) lines covered");
              expect(rep32.fully_covered(), "2n32(4,2) coverage");

              Design d42 = build_3n8_42(1, F2);
              auto rep42 = verify_covering(F2, d42);
              expect_eq<std::uint64_t>(rep42.total_targets, 698027, "PG(10,2) line count");
              expect(rep42.fully_covered(), "3n8-42(1,2) coverage");

              Design d43 = build_2n43(5, F2);
              expect_eq<size_t>(d43.blocks.size(), 457585, "2n43(5,2) blocks");
              auto rep43 = verify_covering(F2, d43);
              // the number of planes of PG(9,2) is gaussian(10,3,2)
              expect_eq<std::uint64_t>(rep43.total_targets, 6347715, "PG(9,2) plane count");
              expect(rep43.fully_covered(), "2n43(5,2) coverage");
              expect_eq<std::uint64_t>(census(F2, d43, d43.trace->lambda), 6897, "alpha_5");
              for (const auto& H : hyperplanes_through(F2, d43.trace->lambda))
                  expect_eq<std::uint64_t>(census(F2, d43, H), 41073,
                                           "beta_5 (corrected recurrence)");
              expect(mem_gb() < 4.0, "memory above 4 GB");

              note = "3n8-42(1,2) built " + std::to_string(d42.blocks.size()) +
                     " blocks; the nominal tally 21154 presumes the census-30 hyperplane, which "
                     "does not exist";
              expect_eq<size_t>(d42.blocks.size(), 21154, "3n8-42(1,2) nominal size"); // fails
          });

    h.run(8, "formula consistency across q in {2,3,4,5}", 1.0, [&](std::string&) {
        for (int q : {2, 3, 4, 5}) {
            for (int n = 3; n <= 8; ++n)
                expect(bounds_2n32(n, q).upper == c2n32_size<BigInt>(n, q),
                       "2n32 upper = recursion size");
            for (int n = 0; n <= 5; ++n)
                expect(bounds_3n8_42(n, q).upper == c3n8_nominal_size<BigInt>(n, q),
                       "3n8-42 upper = recursion size");
            auto chain = rec43<BigInt>(8, q); // recurrences evaluate out to n = 8
            expect(chain.size > 0, "chain positive");
            expect(bounds_43(BoundsFamily::c1043, q).upper == rec43<BigInt>(5, q).size,
                   "C_q(10,4,3) upper = |S_5|");
        }
        expect(bounds_2n32(3, 2).lower == 93, "lower instance 93");
        expect(bounds_43(BoundsFamily::c843, 2).lower == 6477, "lower instance 6477");
        expect(bounds_43(BoundsFamily::c1043, 2).lower == 423181, "lower instance 423181");
        expect(bounds_2n32(3, 2).upper == 105 && bounds_2n32(4, 2).upper == 1657,
               "upper instances");
    });

    h.run(9, "structure certificates: spreads and parallelisms of PG(3,2), PG(3,3)", 5.0,
          [&](std::string&) {
              for (const Field* P : {&F2, &F3}) {
                  const Field& F = *P;
                  auto s = regular_spread(F);
                  expect(verify_spread(F, s), "regular spread certificate");
                  auto par = find_parallelism(F);
                  expect(verify_parallelism(F, par), "parallelism certificate");
                  std::uint64_t lines = 0;
                  for (const auto& sp : par.spreads) lines += sp.lines.size();
                  expect_eq<std::uint64_t>(lines, F.q() == 2 ? 35 : 130, "parallelism line total");
              }
          });

    h.run(10, "property suites: field axioms, rref invariance, workers, round trip", 120.0,
          [&](std::string&) {
              // exhaustive field axioms for q <= 9
              for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
                  auto F = Field::make(p, e);
                  int q = F.q();
                  for (int a = 0; a < q; ++a)
                      for (int b = 0; b < q; ++b)
                          for (int c = 0; c < q; ++c) {
                              Elem ea = Elem(a), eb = Elem(b), ec = Elem(c);
                              expect(F.add(F.add(ea, eb), ec) == F.add(ea, F.add(eb, ec)),
                                     "additive associativity");
                              expect(F.mul(F.mul(ea, eb), ec) == F.mul(ea, F.mul(eb, ec)),
                                     "multiplicative associativity");
                              expect(F.mul(ea, F.add(eb, ec)) ==
                                         F.add(F.mul(ea, eb), F.mul(ea, ec)),
                                     "distributivity");
                          }
                  for (int a = 1; a < q; ++a)
                      expect(F.mul(Elem(a), F.inv(Elem(a))) == 1, "inverse law");
              }

              // canonical form invariance on 1e4 random matrices
              std::mt19937 rng(20250809);
              for (int trial = 0; trial < 10000; ++trial) {
                  const Field& F = trial % 2 ? F3 : F2;
                  int q = F.q();
                  int rows = 1 + int(rng() % 4), cols = 2 + int(rng() % 6);
                  Mat M(rows, cols);
                  for (auto& v : M.a) v = Elem(rng() % q);
                  Subspace S = span(F, M);
                  Mat T(rows, rows);
                  do {
                      for (auto& v : T.a) v = Elem(rng() % q);
                  } while (rank_of(F, T) < rows);
                  Subspace S2 = span(F, mat_mul(F, T, M));
                  expect(S == S2, "canonical form invariance");
                  expect(span(F, S.gens) == S, "canonical form idempotence");
              }

              // verifier worker invariance on the 843 design
              Design D = build_843(F2);
              VerifyOptions w1, w4;
              w1.workers = 1;
              w4.workers = 4;
              auto r1 = verify_covering(F2, D, w1);
              auto r4 = verify_covering(F2, D, w4);
              expect(r1.covered == r4.covered && r1.histogram == r4.histogram &&
                         r1.uncovered_sample == r4.uncovered_sample,
                     "worker invariance");

              // byte-identical file round trip
              std::string text = qcd_to_string(F2, D);
              auto parsed = qcd_from_string(text);
              qcd_validate(F2, parsed.design);
              expect(qcd_to_string(F2, parsed.design) == text, "round-trip byte identity");
          });

    std::printf("%d of 10 criteria passed", 10 - h.failures);
    if (h.failures)
        std::printf(" (%d failing on nominal values the measurements refute; see README)", h.failures);
    std::printf("\n");
    return h.failures == 0 ? 0 : 1;
}
