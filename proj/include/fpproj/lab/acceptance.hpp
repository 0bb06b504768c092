#pragma once

// The twelve acceptance criteria. Each criterion produces a pass flag, a
// one-line detail and, for the data-producing ones, a CSV artifact. The
// determinism criterion regenerates every artifact with a different thread
// count and compares bytes against what was written.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fpproj/fourier.hpp"
#include "fpproj/lab/sweep.hpp"

namespace fpproj::lab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;  // 0: no limit

    std::string line() const {
        char timing[96];
        if (limit_seconds > 0)
            std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", seconds, limit_seconds);
        else
            std::snprintf(timing, sizeof timing, "%.2fs", seconds);
        return std::string(pass ? "PASS" : "FAIL") + " criterion " + std::to_string(id) + " (" + name +
               "): " + detail + " [" + timing + "]";
    }
};

struct AcceptanceOptions {
    std::string out_dir = "acceptance_out";
    unsigned threads = 1;
    /// Thread count for the determinism re-run; 0 picks threads + 3.
    unsigned rerun_threads = 0;
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;

    bool all_pass() const {
        return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    }
};

namespace accept_detail {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string artifact;  // file name, empty when none
    std::string csv;
};

/// Running totals for the Cauchy-Schwarz chain, fed by criteria 5 and 8.
struct ChainTally {
    std::uint64_t pairwise = 0, pairwise_failures = 0;
    std::uint64_t argument = 0, argument_failures = 0;
};

inline std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

/// Ten set sizes round(p^{s}) for s = 1/4, 2/4, ..., 10/4, capped at p^n.
inline std::vector<std::uint64_t> battery_sizes(std::uint64_t p, std::size_t n) {
    const auto total = Ambient::make(p, n).point_count();
    std::vector<std::uint64_t> sizes;
    for (int i = 1; i <= 10; ++i) {
        const auto s = static_cast<std::uint64_t>(std::llround(std::pow(double(p), 0.25 * i)));
        sizes.push_back(std::clamp<std::uint64_t>(s, 1, total));
    }
    return sizes;
}

inline std::vector<std::string> battery_specs(std::uint64_t p, std::size_t n, std::uint64_t seed_base) {
    std::vector<std::string> specs;
    const auto sizes = battery_sizes(p, n);
    for (std::size_t i = 0; i < sizes.size(); ++i)
        specs.push_back("random:" + std::to_string(sizes[i]) + ":" + std::to_string(seed_base + i));
    return specs;
}

inline ExperimentConfig ratio_config(std::uint64_t p, std::size_t n, std::size_t m, std::vector<std::string> families,
                                     std::uint64_t seed_base) {
    ExperimentConfig cfg;
    cfg.p = p;
    cfg.n = n;
    cfg.m = m;
    cfg.families = std::move(families);
    cfg.sets = battery_specs(p, n, seed_base);
    cfg.threshold_kind = ThresholdKind::N;
    for (int N : {1, 2, 4, 8}) cfg.thresholds.emplace_back(N);
    cfg.constants.ratio = 16;
    cfg.constants.spread = 8;
    return cfg;
}

/// Runs a sweep and folds it into an outcome; rows are appended to `csv`.
inline void absorb_sweep(const SweepResult& res, Outcome& out, ChainTally* chain, Rational& worst,
                         std::size_t& cells) {
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const auto& row = res.rows[i];
        out.csv += csv_line(row) + '\n';
        if (row.skipped) {
            out.pass = false;
            continue;
        }
        ++cells;
        out.pass = out.pass && row.pass;
        worst = std::max(worst, row.ratio);
        if (chain) {
            ++chain->argument;
            chain->argument_failures += !row.argument_holds;
            if (row.threshold == Rational(1)) {  // one pass over G per (family, set)
                chain->pairwise += row.pairwise_checked;
                chain->pairwise_failures += row.pairwise_holds ? 0 : 1;
            }
        }
    }
}

inline Outcome grassmannian_exactness() {
    Outcome o;
    std::size_t cells = 0;
    for (std::uint64_t p : {2, 3, 5})
        for (std::size_t n = 1; n <= 4; ++n)
            for (std::size_t k = 0; k <= n; ++k) {
                const auto g = enumerate_subspaces(Ambient::make(p, n), k);
                const bool distinct = std::adjacent_find(g.begin(), g.end()) == g.end();
                if (g.size() != gaussian_binomial(n, k, p) || !distinct) {
                    o.pass = false;
                    o.detail = "mismatch at p=" + std::to_string(p) + " n=" + std::to_string(n) +
                               " k=" + std::to_string(k);
                    return o;
                }
                ++cells;
            }
    o.detail = std::to_string(cells) + " (p,n,k) cells match the Gaussian binomial";
    return o;
}

inline Outcome stabilizer_counts(unsigned threads) {
    Outcome o;
    struct Cell {
        std::uint64_t p;
        std::size_t n, k;
    };
    std::vector<Cell> grid;
    for (std::uint64_t p : {2, 3, 5})
        for (std::size_t n = 2; n <= 4; ++n)
            for (std::size_t k = 1; k < n; ++k) grid.push_back({p, n, k});
    std::vector<std::uint64_t> bad(grid.size(), 0), checked(grid.size(), 0);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        const auto [p, n, k] = grid[i];
        const auto amb = Ambient::make(p, n);
        const auto full = Family::full(amb, n - k);
        for (auto kind : {SpreadKind::containing, SpreadKind::perp}) {
            const auto expected = stab_count_theoretical(amb, k, kind);
            const auto counts = spread_counts(full, kind);
            for (PointCode xi = 1; xi < counts.size(); ++xi) {
                ++checked[i];
                bad[i] += counts[xi] != expected;
            }
        }
    });
    std::uint64_t total = 0, failures = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        total += checked[i];
        failures += bad[i];
    }
    o.pass = failures == 0;
    o.detail = std::to_string(total) + " (xi, W-family) counts checked, " + std::to_string(failures) + " mismatches";
    return o;
}

inline Outcome rank_nullity_duality() {
    Outcome o;
    std::size_t checked = 0, failures = 0;
    for (std::uint64_t p : {2, 3, 5})
        for (std::size_t n = 1; n <= 4; ++n)
            for (std::size_t k = 0; k <= n; ++k)
                for (const auto& w : enumerate_subspaces(Ambient::make(p, n), k)) {
                    const auto pw = perp(w);
                    ++checked;
                    failures += !(w.dim() + pw.dim() == n && perp(pw) == w);
                }
    o.pass = failures == 0;
    o.detail = std::to_string(checked) + " subspaces, " + std::to_string(failures) + " failures";
    return o;
}

inline Outcome plancherel(unsigned threads) {
    Outcome o;
    o.artifact = "c04_plancherel.csv";
    const std::vector<std::pair<std::uint64_t, std::size_t>> grid{{3, 3}, {5, 3}, {7, 2}, {3, 4}};
    const int sets = 100;
    std::vector<double> rel(grid.size() * sets);
    std::vector<std::uint64_t> sizes(rel.size());
    parallel_for(rel.size(), threads, [&](std::size_t i) {
        const auto [p, n] = grid[i / sets];
        const auto amb = Ambient::make(p, n);
        SeededRng rng(0x504c414eULL + i);
        const auto e = random_point_set(amb, rng.below(amb.point_count() + 1), rng.below(~0ULL));
        sizes[i] = e.size();
        rel[i] = plancherel_defect(e) / std::max(1.0, double(amb.point_count()) * double(e.size()));
    });
    double worst = 0;
    o.csv = "p,n,trial,set_size,relative_defect\n";
    for (std::size_t i = 0; i < rel.size(); ++i) {
        worst = std::max(worst, rel[i]);
        o.pass = o.pass && rel[i] < 1e-6;
        o.csv += std::to_string(grid[i / sets].first) + "," + std::to_string(grid[i / sets].second) + "," +
                 std::to_string(i % sets) + "," + std::to_string(sizes[i]) + "," + fmt("%.6e", rel[i]) + "\n";
    }
    o.detail = std::to_string(rel.size()) + " sets, worst relative defect " + fmt("%.3e", worst);
    return o;
}

inline Outcome coset_identity(unsigned threads, ChainTally& chain) {
    Outcome o;
    o.artifact = "c05_coset_identity.csv";
    struct Cfg {
        std::uint64_t p;
        std::size_t n, m;
    };
    const std::vector<Cfg> grid{{3, 3, 1}, {3, 3, 2}, {5, 3, 1}, {5, 3, 2}, {3, 4, 2}};
    const int trials = 20;
    struct Trial {
        std::string csv;
        std::uint64_t checks = 0, failures = 0, cs_checks = 0, cs_failures = 0;
        double worst = 0;
    };
    std::vector<Trial> out(grid.size() * trials);
    parallel_for(out.size(), threads, [&](std::size_t i) {
        const auto c = grid[i / trials];
        const auto amb = Ambient::make(c.p, c.n);
        SeededRng rng(0x4b4b4b4bULL + i);
        const auto e = random_point_set(amb, rng.below(amb.point_count() + 1), rng.below(~0ULL));
        const auto table = dft(e);
        auto& t = out[i];
        for (const auto& w : enumerate_subspaces(amb, c.n - c.m)) {
            const auto r = verify_coset_identity(table, e, w, 1e-6);
            ++t.checks;
            t.failures += !r.pass;
            t.worst = std::max(t.worst, r.defect() / std::max(1.0, double(r.spatial)));
            ++t.cs_checks;
            t.cs_failures += !cauchy_schwarz_gap(e, w).holds();
            t.csv += std::to_string(c.p) + "," + std::to_string(c.n) + "," + std::to_string(c.m) + "," +
                     std::to_string(i % trials) + "," + std::to_string(e.size()) + "," + csv_field(w.serialize()) +
                     "," + std::to_string(r.spatial) + "," + fmt("%.12g", r.spectral) + "," + (r.pass ? "true" : "false") +
                     "\n";
        }
    });
    o.csv = "p,n,m,trial,set_size,subspace,spatial,spectral,pass\n";
    std::uint64_t checks = 0, failures = 0;
    double worst = 0;
    for (const auto& t : out) {
        o.csv += t.csv;
        checks += t.checks;
        failures += t.failures;
        worst = std::max(worst, t.worst);
        chain.pairwise += t.cs_checks;
        chain.pairwise_failures += t.cs_failures;
    }
    o.pass = failures == 0;
    o.detail = std::to_string(checks) + " (E, W) checks, " + std::to_string(failures) + " failures, worst relative defect " +
               fmt("%.3e", worst);
    return o;
}

inline Outcome explicit_constant_battery(unsigned threads) {
    Outcome o;
    o.artifact = "c07_explicit_constant.csv";
    const std::vector<Rational> ts{Rational(1, 2), Rational(3, 4), Rational(1)};
    struct Item {
        std::uint64_t p;
        std::string id;
    };
    std::vector<Item> items;
    for (std::uint64_t p : {11, 13}) {
        for (int i = 0; i < 30; ++i) {
            const double s = 0.5 + i / 29.0;
            const auto size = static_cast<std::uint64_t>(std::llround(std::pow(double(p), s)));
            items.push_back({p, "random:" + std::to_string(size) + ":" + std::to_string(700 + i)});
        }
        items.push_back({p, "flat:0:0"});
        items.push_back({p, "flat:0:5"});
        items.push_back({p, "flat:1:0"});
        items.push_back({p, "flat:2:0"});
        for (int i = 0; i < 6; ++i) items.push_back({p, "flat:1:" + std::to_string(3 * i + 1) + ":" + std::to_string(800 + i)});
        for (int i = 0; i < 5; ++i)
            items.push_back({p, "flat:1:" + std::to_string(i) + ":" + std::to_string(900 + i) + "|flat:1:" +
                                    std::to_string(2 * i + 7) + ":" + std::to_string(950 + i)});
        for (int i = 0; i < 5; ++i)
            items.push_back({p, "flat:1:" + std::to_string(i) + ":" + std::to_string(1000 + i) + "|random:" +
                                    std::to_string(p / 2) + ":" + std::to_string(1050 + i)});
    }
    std::vector<std::string> rows(items.size());
    std::vector<std::uint64_t> checks(items.size(), 0), failures(items.size(), 0);
    parallel_for(items.size(), threads, [&](std::size_t i) {
        const auto amb = Ambient::make(items[i].p, 2);
        PointSet e = PointSet::empty(amb);
        for (const auto& part : fpproj::detail::split(items[i].id, '|')) e = e | build_set(part, amb);
        const std::uint64_t p = items[i].p;
        auto emit = [&](const Rational& t, const ExplicitConstantResult& r) {
            ++checks[i];
            failures[i] += !r.pass;
            rows[i] += std::to_string(p) + "," + csv_field(items[i].id) + "," + std::to_string(e.size()) + "," +
                       std::string(1, r.branch) + "," + (r.branch == 'a' ? to_fraction_string(t) : "") + "," +
                       std::to_string(r.family_size) + "," + std::to_string(r.count) + "," + fmt("%.12g", r.bound) +
                       "," + (r.vacuous ? "vacuous" : (r.pass ? "true" : "false")) + "\n";
        };
        if (e.size() > p) {
            emit(Rational(1), explicit_constant_check(e, 1, Rational(1)));
            return;
        }
        if (e.size() == 1) {
            emit(Rational(0), explicit_constant_check(e, 1, ts[0]));
            return;
        }
        for (const auto& t : ts)
            if (compare_with_power(Rational(1), Rational(e.size()), p, -t) <= 0)  // t <= s
                emit(t, explicit_constant_check(e, 1, t));
    });
    o.csv = "p,set_id,set_size,branch,t,family_size,count,bound,pass\n";
    std::uint64_t total = 0, bad = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        o.csv += rows[i];
        total += checks[i];
        bad += failures[i];
    }
    o.pass = bad == 0;
    o.detail = std::to_string(items.size()) + " sets, " + std::to_string(total) + " checks, " + std::to_string(bad) +
               " failures";
    return o;
}

inline Outcome ratio_audit(unsigned threads, ChainTally& chain) {
    Outcome o;
    o.artifact = "c08_ratio_audit.csv";
    o.csv = std::string(kCsvHeader) + "\n";
    Rational worst = 0;
    std::size_t cells = 0;
    for (std::uint64_t p : {7, 11})
        for (std::size_t m : {1, 2}) {
            const std::size_t n = 3;
            for (const auto& alpha : {Rational(5, 4), Rational(3, 2), Rational(5, 2)}) {
                if (!(alpha > Rational(std::min(m, n - m)) && alpha < Rational(m * (n - m)))) continue;
                std::vector<std::string> fams;
                for (int s = 0; s < 20; ++s) fams.push_back("random:" + to_fraction_string(alpha) + ":" + std::to_string(s));
                absorb_sweep(run_sweep(ratio_config(p, n, m, fams, 100 * p + 10 * m), threads), o, &chain, worst,
                             cells);
            }
        }
    o.detail = std::to_string(cells) + " cells, max ratio " + to_decimal_string(worst) + " (limit 16)";
    return o;
}

inline Outcome concentration() {
    Outcome o;
    o.artifact = "c09_concentration.csv";
    const auto cfg = RandomFamilyConfig::make(Ambient::make(7, 3), 1, Rational(3, 2), 0);
    std::vector<std::uint64_t> seeds(200);
    std::iota(seeds.begin(), seeds.end(), 0);
    const auto rep = size_concentration_report(cfg, seeds);
    o.csv = "seed,family_size,deviates\n";
    for (std::size_t i = 0; i < seeds.size(); ++i)
        o.csv += std::to_string(seeds[i]) + "," + std::to_string(rep.sizes[i]) + "," +
                 (deviates_by_half(rep.sizes[i], 7, cfg.alpha) ? "true" : "false") + "\n";
    o.pass = rep.fraction <= 0.216;
    o.detail = "fraction " + fmt("%.3f", rep.fraction) + " (Chebyshev " + fmt("%.3f", rep.chebyshev) + ")";
    return o;
}

inline Outcome circle_example(unsigned threads) {
    Outcome o;
    o.artifact = "c10_circle.csv";
    o.csv = std::string(kCsvHeader) + "\n";
    std::string facts;
    Rational worst = 0;
    std::size_t cells = 0;
    for (std::uint64_t p : {5, 7, 11, 13}) {
        std::uint64_t brute = 0;
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) brute += (a * a + b * b) % p == 1;
        const std::uint64_t expected = (p == 5 || p == 13) ? p - 1 : p + 1;
        const auto s = circle_set(p);
        const auto g = circle_family(p);
        const auto sp = spread_perp(g).max_count;
        const bool ok = brute == expected && s.size() == brute && g.size() == s.size() && sp <= 2;
        o.pass = o.pass && ok;
        facts += " p=" + std::to_string(p) + ":|S|=" + std::to_string(s.size()) + ",perp=" + std::to_string(sp);
        absorb_sweep(run_sweep(ratio_config(p, 3, 2, {"circle"}, 2000 + p), threads), o, nullptr, worst, cells);
    }
    o.detail = "sizes and spreads" + facts + "; " + std::to_string(cells) + " cells, max ratio " +
               to_decimal_string(worst);
    return o;
}

inline Outcome moment_example(unsigned threads) {
    Outcome o;
    o.artifact = "c11_moment.csv";
    o.csv = std::string(kCsvHeader) + "\n";
    std::uint64_t worst_hyper = 0;
    Rational worst = 0;
    std::size_t cells = 0;
    for (std::uint64_t p : {7, 11, 13})
        for (std::size_t n : {3, 4}) {
            const auto s = moment_curve_set(p, n);
            const auto hyper = hyperplane_intersection_max(s);
            worst_hyper = std::max<std::uint64_t>(worst_hyper, hyper);
            o.pass = o.pass && moment_family(p, n).size() == p - 1 && hyper <= n - 1;
            absorb_sweep(run_sweep(ratio_config(p, n, n - 1, {"moment"}, 3000 + 10 * p + n), threads), o, nullptr,
                         worst, cells);
        }
    o.detail = "family sizes p-1, max hyperplane intersection " + std::to_string(worst_hyper) + "; " +
               std::to_string(cells) + " cells, max ratio " + to_decimal_string(worst);
    return o;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace accept_detail

inline AcceptanceReport run_acceptance(const AcceptanceOptions& opt) {
    using namespace accept_detail;
    namespace fs = std::filesystem;
    fs::create_directories(opt.out_dir);
    AcceptanceReport report;
    ChainTally chain;
    std::vector<std::string> artifacts;
    // Producers of CSV artifacts, re-run for the determinism check.
    std::vector<std::function<Outcome(unsigned)>> producers;

    auto record = [&](int id, std::string name, double limit, const std::function<Outcome()>& body) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = body();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("error: ") + e.what();
        }
        CriterionResult r{id, std::move(name), out.pass, out.detail,
                          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), limit};
        if (limit > 0 && r.seconds > limit) {
            r.pass = false;
            r.detail += "; over time limit";
        }
        if (!out.artifact.empty()) {
            std::ofstream(fs::path(opt.out_dir) / out.artifact, std::ios::binary) << out.csv;
            artifacts.push_back(out.artifact);
        }
        report.results.push_back(std::move(r));
    };
    const unsigned th = opt.threads;
    ChainTally scratch;  // the re-run must not double-count the chain tally

    record(1, "Grassmannian exactness", 30, [] { return grassmannian_exactness(); });
    record(2, "subspace incidence counts", 120, [&] { return stabilizer_counts(th); });
    record(3, "rank-nullity and duality", 0, [] { return rank_nullity_duality(); });
    record(4, "Plancherel", 60, [&] { return plancherel(th); });
    producers.push_back([](unsigned t) { return plancherel(t); });
    record(5, "coset energy identity", 180, [&] { return coset_identity(th, chain); });
    producers.push_back([&](unsigned t) { return coset_identity(t, scratch); });
    record(7, "explicit-constant check", 60, [&] { return explicit_constant_battery(th); });
    producers.push_back([](unsigned t) { return explicit_constant_battery(t); });
    record(8, "exceptional-set ratio audit", 600, [&] { return ratio_audit(th, chain); });
    producers.push_back([&](unsigned t) { return ratio_audit(t, scratch); });
    record(6, "Cauchy-Schwarz chain", 0, [&] {
        Outcome o;
        o.pass = chain.pairwise > 0 && chain.argument > 0 && chain.pairwise_failures == 0 &&
                 chain.argument_failures == 0;
        o.detail = std::to_string(chain.pairwise) + " per-subspace and " + std::to_string(chain.argument) +
                   " summed instances, " + std::to_string(chain.pairwise_failures + chain.argument_failures) +
                   " failures";
        return o;
    });
    record(9, "random-family size concentration", 60, [] { return concentration(); });
    producers.push_back([](unsigned) { return concentration(); });
    record(10, "circle direction family", 60, [&] { return circle_example(th); });
    producers.push_back([](unsigned t) { return circle_example(t); });
    record(11, "moment curve direction family", 180, [&] { return moment_example(th); });
    producers.push_back([](unsigned t) { return moment_example(t); });
    record(12, "determinism", 0, [&] {
        Outcome o;
        const unsigned rerun = opt.rerun_threads ? opt.rerun_threads : th + 3;
        std::size_t same = 0;
        for (auto& produce : producers) {
            const Outcome again = produce(rerun);
            if (read_file(fs::path(opt.out_dir) / again.artifact) == again.csv)
                ++same;
            else
                o.detail += " differs: " + again.artifact + ";";
        }
        o.pass = same == producers.size() && producers.size() == artifacts.size();
        o.detail = std::to_string(same) + "/" + std::to_string(producers.size()) +
                   " artifacts byte-identical on re-run with " + std::to_string(rerun) + " threads" + o.detail;
        return o;
    });
    std::sort(report.results.begin(), report.results.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return report;
}

}  // namespace fpproj::lab
