// qcover: construct, verify and tabulate q-covering designs.
//
// Exit codes: 0 success / fully covered, 1 uncovered, 2 usage error,
// 3 resource cap exceeded, 4 search failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcover/bounds.hpp"
#include "qcover/designs.hpp"
#include "qcover/io.hpp"
#include "qcover/verify.hpp"

using namespace qcover;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Field field_for_q(int q) {
    for (int p = 2; p <= q; ++p) {
        if (!detail::is_prime(p) || q % p != 0) continue;
        int e = 0;
        long long x = q;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        if (x != 1) break;
        return Field::make(p, e);
    }
    throw Usage("q = " + std::to_string(q) + " is not a prime power");
}

void print_report(const CoverageReport& rep, bool with_histogram) {
    std::printf("targets %llu\n", static_cast<unsigned long long>(rep.total_targets));
    std::printf("covered %llu / %llu\n", static_cast<unsigned long long>(rep.covered),
                static_cast<unsigned long long>(rep.total_targets));
    std::printf("min_mult %u\nmax_mult %u\n", rep.min_mult, rep.max_mult);
    std::printf("wall_seconds %.3f\n", rep.wall_seconds);
    if (with_histogram) {
        std::printf("histogram\n");
        for (auto [m, c] : rep.histogram)
            std::printf("  mult %u : %llu\n", m, static_cast<unsigned long long>(c));
    }
    if (!rep.uncovered_sample.empty()) {
        std::printf("uncovered_sample\n");
        for (const auto& w : rep.uncovered_sample) {
            std::printf("  ");
            for (int r = 0; r < w.k(); ++r) {
                for (int c = 0; c < w.n; ++c) std::printf("%d", static_cast<int>(w.gens.at(r, c)));
                std::printf(r + 1 < w.k() ? "|" : "\n");
            }
        }
    }
}

std::vector<Subspace> load_xset(const std::string& path, const Field& F) {
    QcdFile file = read_qcd(path);
    if (file.q != F.q()) throw Usage("xset file field mismatch");
    qcd_validate(F, file.design);
    return file.design.blocks;
}

int cmd_construct(const std::string& family, std::optional<int> n_opt, int q,
                  const std::string& out, bool no_verify, int workers,
                  const std::string& parallelism_path, const std::string& xset_path,
                  double x_budget, std::uint64_t max_targets) {
    Field F = field_for_q(q);
    Design D;
    // pre-flight the verification resource cap so an oversized run fails
    // before hours of construction
    auto preflight = [&](int amb, int r) {
        if (no_verify) return;
        BigInt t = gaussian<BigInt>(amb, r, q);
        if (t > max_targets)
            throw ResourceError("verification needs " + t.str() +
                                " targets, above the cap; rerun with --no-verify or raise --max-targets");
    };
    if (family == "632") {
        preflight(6, 2);
        if (!xset_path.empty()) {
            auto xs = load_xset(xset_path, F);
            D = build_design_632(F, x_budget, &xs);
        } else {
            D = build_design_632(F, x_budget);
        }
    } else if (family == "842") {
        preflight(8, 2);
        D = build_842(F);
    } else if (family == "843") {
        preflight(8, 3);
        if (!parallelism_path.empty()) {
            std::ifstream in(parallelism_path);
            if (!in) throw Usage("cannot open " + parallelism_path);
            Parallelism p = read_qps(in, F);
            if (!verify_parallelism(F, p)) throw Usage("imported parallelism fails verification");
            D = build_843(F, &p, &p);
        } else {
            D = build_843(F);
        }
    } else if (family == "2n32") {
        if (!n_opt) throw Usage("--n required for family 2n32");
        preflight(2 * *n_opt, 2);
        D = build_2n32(*n_opt, F, x_budget);
    } else if (family == "3n8-42") {
        if (!n_opt) throw Usage("--n required for family 3n8-42");
        preflight(3 * *n_opt + 8, 2);
        D = build_3n8_42(*n_opt, F);
    } else if (family == "2n43") {
        if (!n_opt) throw Usage("--n required for family 2n43");
        preflight(2 * *n_opt, 3);
        D = build_2n43(*n_opt, F);
    } else {
        throw Usage("unknown family '" + family + "'");
    }

    BigInt predicted = 0;
    if (family == "632") predicted = size_632<BigInt>(q);
    else if (family == "842") predicted = size_842<BigInt>(q);
    else if (family == "843") predicted = size_843<BigInt>(q);
    else if (family == "2n32") predicted = c2n32_size<BigInt>(*n_opt, q);
    else if (family == "3n8-42") predicted = c3n8_size_built<BigInt>(*n_opt, q);
    else if (family == "2n43") predicted = rec43<BigInt>(*n_opt, q).size;

    std::printf("family %s\n", D.family.c_str());
    std::printf("blocks %zu\n", D.blocks.size());
    std::printf("predicted %s\n", predicted.str().c_str());
    if (D.trace) {
        std::printf("alpha %llu\n", static_cast<unsigned long long>(D.trace->alpha));
        std::printf("beta %llu\n", static_cast<unsigned long long>(D.trace->beta));
    }
    if (!out.empty()) {
        write_qcd(out, F, D);
        std::printf("wrote %s\n", out.c_str());
    }
    if (!no_verify) {
        VerifyOptions opt;
        opt.workers = workers;
        opt.max_targets = max_targets;
        auto rep = verify_covering(F, D, opt);
        print_report(rep, false);
        if (!rep.fully_covered()) return 1;
    }
    return 0;
}

int cmd_verify(const std::string& path, bool multiplicity, int workers, std::uint64_t max_targets) {
    QcdFile file = read_qcd(path);
    Field F = field_for_q(file.q);
    qcd_validate(F, file.design);
    VerifyOptions opt;
    opt.mode = multiplicity ? VerifyMode::count : VerifyMode::mark;
    opt.workers = workers;
    opt.max_targets = max_targets;
    auto rep = verify_covering(F, file.design, opt);
    std::printf("family %s blocks %zu\n", file.design.family.c_str(), file.design.blocks.size());
    print_report(rep, multiplicity);
    return rep.fully_covered() ? 0 : 1;
}

int cmd_bounds(const std::string& family, const std::string& n_range, const std::string& q_list) {
    std::vector<int> qs;
    {
        std::stringstream ss(q_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) qs.push_back(std::stoi(tok));
    }
    int n_lo = 0, n_hi = -1;
    if (!n_range.empty()) {
        auto dots = n_range.find("..");
        if (dots == std::string::npos) {
            n_lo = n_hi = std::stoi(n_range);
        } else {
            n_lo = std::stoi(n_range.substr(0, dots));
            n_hi = std::stoi(n_range.substr(dots + 2));
        }
    }
    std::vector<BoundsRow> rows;
    for (int q : qs) {
        if (family == "2n32") {
            if (n_hi < 0) throw Usage("--n required for family 2n32");
            for (int n = n_lo; n <= n_hi; ++n) rows.push_back(bounds_2n32(n, q));
        } else if (family == "3n8-42") {
            if (n_hi < 0) throw Usage("--n required for family 3n8-42");
            for (int n = n_lo; n <= n_hi; ++n) rows.push_back(bounds_3n8_42(n, q));
        } else if (family == "43") {
            rows.push_back(bounds_43(BoundsFamily::c843, q));
            rows.push_back(bounds_43(BoundsFamily::c1043, q));
        } else {
            throw Usage("unknown bounds family '" + family + "'");
        }
    }
    std::printf("%-8s %-4s %-4s %-24s %-24s %-24s\n", "family", "n", "q", "lower", "upper",
                "constructed");
    for (const auto& row : rows) {
        std::printf("%-8s %-4d %-4s %-24s %-24s %-24s\n", family_name(row.family), row.n,
                    row.q.str().c_str(), row.lower.str().c_str(), row.upper.str().c_str(),
                    row.constructed ? row.constructed->str().c_str() : "-");
    }
    return 0;
}

int cmd_stats(const std::string& path) {
    QcdFile file = read_qcd(path);
    Field F = field_for_q(file.q);
    qcd_validate(F, file.design);
    const Design& D = file.design;
    std::printf("family %s\n", D.family.c_str());
    std::printf("q %d (p=%d e=%d)\n", file.q, file.p, file.e);
    std::printf("n %d k %d r %d\n", D.n, D.k, D.r);
    std::printf("blocks %zu\n", D.blocks.size());
    std::unordered_set<Key, KeyHash> keys;
    for (const auto& b : D.blocks) keys.insert(subspace_key(b, file.q));
    std::printf("distinct %zu\n", keys.size());
    for (const auto& [k, v] : D.meta) std::printf("meta %s %s\n", k.c_str(), v.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-covering design construction and verification"};
    app.require_subcommand(1);

    std::string family, out, n_range, q_list = "2", path, parallelism_path, xset_path;
    std::optional<int> n_opt;
    int q = 2, workers = 1;
    bool no_verify = false, multiplicity = false;
    double x_budget = 3600.0;
    std::uint64_t max_targets = 20'000'000;

    auto* c = app.add_subcommand("construct", "build a design and write a .qcd file");
    c->add_option("--family", family, "632 | 842 | 843 | 2n32 | 3n8-42 | 2n43")->required();
    c->add_option("--n", n_opt, "family parameter n");
    c->add_option("--q", q, "field order (prime power)")->required();
    c->add_option("--out", out, "output .qcd (or .qcd.gz) path");
    c->add_flag("--no-verify", no_verify, "skip covering verification");
    c->add_option("--workers", workers, "verifier worker threads");
    c->add_option("--parallelism", parallelism_path, "import a .qps parallelism (family 843)");
    c->add_option("--xset", xset_path, "import an X set .qcd (family 632)");
    c->add_option("--x-budget", x_budget, "exact-cover search budget in seconds");
    c->add_option("--max-targets", max_targets, "verification resource cap");

    auto* v = app.add_subcommand("verify", "verify a .qcd design file");
    v->add_option("path", path, "design file")->required();
    v->add_flag("--multiplicity", multiplicity, "report the full multiplicity histogram");
    v->add_option("--workers", workers, "worker threads");
    v->add_option("--max-targets", max_targets, "verification resource cap");

    auto* b = app.add_subcommand("bounds", "evaluate the bound tables");
    b->add_option("--family", family, "2n32 | 3n8-42 | 43")->required();
    b->add_option("--n", n_range, "n or a..b range");
    b->add_option("--q", q_list, "comma-separated field orders");

    auto* s = app.add_subcommand("stats", "summarize a .qcd design file");
    s->add_option("path", path, "design file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c->parsed())
            return cmd_construct(family, n_opt, q, out, no_verify, workers, parallelism_path,
                                 xset_path, x_budget, max_targets);
        if (v->parsed()) return cmd_verify(path, multiplicity, workers, max_targets);
        if (b->parsed()) return cmd_bounds(family, n_range, q_list);
        if (s->parsed()) return cmd_stats(path);
    } catch (const Usage& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const SearchError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
