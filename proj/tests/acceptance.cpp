// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace teich::cli;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Run {
    Report report;
    double seconds = 0.0;
};

Run run_named(const std::string& suite) {
    RunConfig cfg;
    cfg.suite = suite;
    cfg.seed = kSeed;
    const auto t0 = std::chrono::steady_clock::now();
    Run r{run_suite(cfg), 0.0};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> suites;
    double time_limit_s;  // 0: no limit
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "kernel transport, 1e5 triples, max rel err <= 1e-12, < 5 s", {"kernel-transport"}, 5.0},
        {2, "poisson reproduction, harmonic family n <= 6, 5x5 grid, <= 1e-8, < 60 s", {"poisson-reproduction"}, 60.0},
        {3, "hubbard-masur constant, 20 random pairs, 1 +- 1e-10", {"hm-constant"}, 0.0},
        {4, "kerckhoff closed form vs sup <= 1e-9 on 1e4 pairs, maximizer stable", {"kerckhoff"}, 0.0},
        {5, "green function vs disk <= 1e-10 on 1e4 pairs, u_F stencil <= 1e-5", {"green"}, 0.0},
        {6, "minsky inequality, 1e5 triples, slack 1e-12, equality at i", {"minsky"}, 0.0},
        {7, "green formula, psh family at 5 points, <= 1e-4", {"green-formula"}, 0.0},
        {8, "schwarz limit, monotone gap, final gap <= 1e-3", {"schwarz"}, 0.0},
        {9, "residue identity -1 +- 1e-8, cr check <= 1e-8 and >= 1e-2", {"derivative", "cr"}, 0.0},
        {10, "mcg equivariance <= 1e-12 on 1e5, pushforward KS < 1.63/sqrt(n) for 10 maps", {"mcg"}, 0.0},
        {11, "thurston homogeneity, cone dim 2, volume ratio 4 within 3 se at n = 1e6", {"thurston-homogeneity"}, 0.0},
    };

    std::map<std::string, std::string> first_json;
    bool all = true;
    auto line = [&](bool ok, int id, const std::string& title, const std::string& detail) {
        std::printf("%s %2d %s [%s]\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
        std::fflush(stdout);
        all = all && ok;
    };

    for (const auto& c : criteria) {
        bool ok = true;
        std::string detail;
        for (const auto& s : c.suites) {
            const Run r = run_named(s);
            first_json[s] = to_json(r.report);
            std::size_t passed = 0;
            for (const auto& rec : r.report.records) passed += rec.pass ? 1 : 0;
            ok = ok && r.report.pass();
            if (c.time_limit_s > 0.0) ok = ok && r.seconds < c.time_limit_s;
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s%s %zu/%zu checks, %.2f s", detail.empty() ? "" : "; ", s.c_str(), passed,
                          r.report.records.size(), r.seconds);
            detail += buf;
            for (const auto& rec : r.report.records) {
                if (!rec.pass) detail += "; failed: " + rec.name;
            }
        }
        line(ok, c.id, c.title, detail);
    }

    const std::vector<std::string> stochastic{"kernel-transport", "hm-constant", "kerckhoff", "green",
                                              "minsky",           "mcg",         "thurston-homogeneity"};
    bool same = true;
    std::string diff;
    for (const auto& s : stochastic) {
        if (to_json(run_named(s).report) != first_json[s]) {
            same = false;
            diff += " " + s;
        }
    }
    line(same, 12, "determinism, stochastic suites re-run with the same seed give byte-identical reports",
         same ? std::to_string(stochastic.size()) + " suites identical" : "differs:" + diff);

    return all ? 0 : 1;
}
