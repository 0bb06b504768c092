// fplab: command-line front end for the projection lab.
//
// Exit codes: 0 success, 1 a check or bound failed, 2 usage or parse error,
// 3 budget exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fpproj/fpproj.hpp"
#include "fpproj/lab/acceptance.hpp"
#include "fpproj/lab/config.hpp"
#include "fpproj/lab/specs.hpp"
#include "fpproj/lab/sweep.hpp"

using namespace fpproj;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct Globals {
    Budget budget;
    unsigned threads = 1;
};

std::string decimal(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

int cmd_count(const Globals& g, std::uint64_t p, std::size_t n, std::size_t k) {
    const Ambient amb = Ambient::make(p, n);
    if (k > n) throw DomainError("k must not exceed n");
    const auto formula = gaussian_binomial(n, k, p);
    std::cout << "gaussian_binomial " << formula << '\n';
    if (formula > g.budget.max_subspaces) {
        std::cout << "enumerated skipped (budget " << g.budget.max_subspaces << ")\n";
        return kBudget;
    }
    const auto enumerated = enumerate_subspaces(amb, k, g.budget).size();
    std::cout << "enumerated " << enumerated << '\n';
    return enumerated == formula ? kOk : kCheckFailed;
}

int cmd_project(const Globals& g, std::uint64_t p, std::size_t n, const std::string& basis, const std::string& set_spec,
                bool list_labels) {
    const Ambient amb = Ambient::make(p, n);
    const Subspace w = Subspace::parse(amb, basis);
    const PointSet e = lab::build_set(set_spec, amb, g.budget);
    const auto image = project(e, w);
    const auto cs = cauchy_schwarz_gap(e, w);
    std::cout << "subspace " << w.serialize() << " (dim " << w.dim() << ")\n";
    std::cout << "set_size " << e.size() << '\n';
    std::cout << "projection_size " << image.size() << '\n';
    std::cout << "coset_energy " << coset_energy(e, w) << '\n';
    std::cout << "cauchy_schwarz " << cs.lhs << " <= " << cs.rhs << (cs.holds() ? "" : " VIOLATED") << '\n';
    if (list_labels)
        for (auto code : image.labels) std::cout << "  " << decode(amb, code).to_string() << '\n';
    return cs.holds() ? kOk : kCheckFailed;
}

int cmd_identity_check(const Globals& g, std::uint64_t p, std::size_t n, std::size_t m, std::uint64_t trials,
                       std::uint64_t seed, double tol, bool include_full) {
    const Ambient amb = Ambient::make(p, n);
    if (m < 1 || m >= n) throw DomainError("m must satisfy 1 <= m <= n-1");
    require_dft_budget(amb, g.budget);
    const auto grass = enumerate_subspaces(amb, n - m, g.budget);
    const std::uint64_t total = trials + (include_full ? 1 : 0);
    std::vector<std::string> out(total);
    std::vector<char> ok(total, 1);
    lab::parallel_for(total, g.threads, [&](std::size_t i) {
        PointSet e = PointSet::full(amb, g.budget);
        if (i < trials) {
            SeededRng rng(splitmix64(seed) ^ i);
            e = random_point_set(amb, rng.below(amb.point_count() + 1), rng.below(~0ULL), g.budget);
        }
        const auto table = dft(e, g.budget);
        double mass = 0;
        for (const auto& v : table.values()) mass += std::norm(v);
        const double exact = double(amb.point_count()) * double(e.size());
        const double pd = plancherel_defect(table, e.size());
        const bool p_ok = pd <= tol * std::max(1.0, exact);
        ok[i] = ok[i] && p_ok;
        out[i] += std::to_string(i) + "," + std::to_string(e.size()) + ",plancherel,," +
                  std::to_string(amb.point_count() * e.size()) + "," + decimal(mass) + "," + decimal(pd) + "," +
                  (p_ok ? "true" : "false") + "\n";
        for (const auto& w : grass) {
            const auto r = verify_coset_identity(table, e, w, tol);
            ok[i] = ok[i] && r.pass;
            out[i] += std::to_string(i) + "," + std::to_string(e.size()) + ",coset," +
                      lab::csv_field(w.serialize()) + "," + std::to_string(r.spatial) + "," + decimal(r.spectral) +
                      "," + decimal(r.defect()) + "," + (r.pass ? "true" : "false") + "\n";
        }
    });
    std::cout << "trial,set_size,check,subspace,exact,approx,defect,pass\n";
    bool all = true;
    for (std::size_t i = 0; i < total; ++i) {
        std::cout << out[i];
        all = all && ok[i];
    }
    return all ? kOk : kCheckFailed;
}

int cmd_random_family(const Globals& g, std::uint64_t p, std::size_t n, std::size_t m, const std::string& alpha_text,
                      std::uint64_t seed, bool any_alpha, const std::string& save_path) {
    const Ambient amb = Ambient::make(p, n);
    const auto cfg = RandomFamilyConfig::make(amb, m, lab::parse_exponent(alpha_text), seed,
                                              any_alpha ? AlphaRange::any_positive : AlphaRange::restricted);
    const Family fam = sample_random_family(cfg, g.budget);
    std::cout << "grassmannian_size " << cfg.grassmannian_size << '\n';
    std::cout << "alpha " << to_fraction_string(cfg.alpha) << '\n';
    std::cout << "delta " << decimal(cfg.delta()) << (cfg.clamped ? " (clamped)" : "") << '\n';
    std::cout << "expected_size " << decimal(cfg.expected_size()) << '\n';
    std::cout << "family_size " << fam.size() << '\n';
    const auto c = spread_containing(fam);
    const auto q = spread_perp(fam);
    std::cout << "spread_containing " << c.max_count << " at " << decode(amb, c.witness).to_string() << '\n';
    std::cout << "spread_perp " << q.max_count << " at " << decode(amb, q.witness).to_string() << '\n';
    if (!save_path.empty()) save_family(fam, save_path);
    return kOk;
}

int cmd_examples(const Globals& g, const std::string& which, std::uint64_t p, std::size_t n) {
    Family fam = which == "circle" ? circle_family(p) : moment_family(p, n);
    const Ambient amb = fam.ambient();
    bool ok = true;
    std::cout << "family " << which << " " << amb.to_string() << ",m=" << fam.codim() << '\n';
    std::cout << "family_size " << fam.size() << '\n';
    const auto sp = spread_perp(fam).max_count;
    std::cout << "spread_perp " << sp << '\n';
    if (which == "circle") {
        ok = ok && sp <= 2;
    } else {
        const auto h = hyperplane_intersection_max(moment_curve_set(p, n, g.budget), g.budget);
        std::cout << "hyperplane_intersection_max " << h << '\n';
        ok = ok && fam.size() == p - 1 && h <= n - 1;
    }
    std::cout << "exceptional ratios (limit 16):\n";
    for (const auto& spec : lab::accept_detail::battery_specs(p, amb.n(), 4000)) {
        const PointSet e = lab::build_set(spec, amb, g.budget);
        std::cout << "  " << spec;
        for (std::uint64_t N : {1, 2, 4, 8}) {
            const auto rep = exceptional_count(e, fam, N);
            ok = ok && rep.ratio <= 16;
            std::cout << " N=" << N << ":" << to_decimal_string(rep.ratio);
        }
        std::cout << '\n';
    }
    return ok ? kOk : kCheckFailed;
}

int cmd_sweep(const Globals& g, const std::string& config_path, const std::string& out_override, bool threads_given) {
    lab::ExperimentConfig cfg = lab::load_config(config_path);
    const unsigned threads = threads_given ? g.threads : cfg.threads;
    const auto res = lab::run_sweep(cfg, threads);
    const std::string out_path = out_override.empty() ? cfg.output : out_override;
    if (out_path.empty() || out_path == "-") {
        lab::write_csv(std::cout, res.rows);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error("cannot write '" + out_path + "'");
        lab::write_csv(out, res.rows);
    }
    for (const auto& row : res.rows)
        if (row.skipped)
            std::cerr << "skipped " << row.family_id << " x " << row.set_id << ": " << row.skip_reason << '\n';
    if (res.failures) return kCheckFailed;
    if (res.budget_skips) return kBudget;
    return kOk;
}

int cmd_accept(const Globals& g, const std::string& out_dir) {
    lab::AcceptanceOptions opt;
    opt.out_dir = out_dir;
    opt.threads = g.threads;
    const auto report = lab::run_acceptance(opt);
    for (const auto& r : report.results) std::cout << r.line() << '\n';
    std::cout << (report.all_pass() ? "all criteria passed" : "some criteria FAILED") << '\n';
    return report.all_pass() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fplab: exact projection experiments over F_p^n"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--max-points", g.budget.max_points, "budget on p^n for point sets and spectral tables")
        ->capture_default_str();
    app.add_option("--max-subspaces", g.budget.max_subspaces, "budget on subspace enumeration")->capture_default_str();
    auto* threads_opt = app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);

    std::uint64_t p = 0, seed = 0, trials = 20;
    std::size_t n = 0, k = 0, m = 1;
    double tol = 1e-6;
    std::string basis, set_spec, alpha, which, path, out, accept_dir;
    bool flag = false, any_alpha = false;

    auto* count = app.add_subcommand("count", "Gaussian binomial versus enumerated |G(n,k)|");
    count->add_option("--p", p)->required();
    count->add_option("--n", n)->required();
    count->add_option("--k", k)->required();

    auto* proj = app.add_subcommand("project", "project a set along a subspace");
    proj->add_option("--p", p)->required();
    proj->add_option("--n", n)->required();
    proj->add_option("--w", basis, "basis rows, e.g. 1,0,2;0,1,1")->required();
    proj->add_option("--set", set_spec, "set spec, e.g. random:20:7")->required();
    proj->add_flag("--labels", flag, "list the coset representatives");

    auto* ident = app.add_subcommand("identity-check", "Plancherel and the coset energy identity on random sets");
    ident->add_option("--p", p)->required();
    ident->add_option("--n", n)->required();
    ident->add_option("--m", m)->required();
    ident->add_option("--trials", trials)->capture_default_str();
    ident->add_option("--seed", seed)->capture_default_str();
    ident->add_option("--tol", tol)->capture_default_str();
    ident->add_flag("--full", flag, "add a trial with E = F_p^n");

    auto* rfam = app.add_subcommand("random-family", "sample a random family of codimension-m subspaces");
    rfam->add_option("--p", p)->required();
    rfam->add_option("--n", n)->required();
    rfam->add_option("--m", m)->required();
    rfam->add_option("--alpha", alpha, "rational exponent, e.g. 3/2")->required();
    rfam->add_option("--seed", seed)->capture_default_str();
    rfam->add_flag("--any-alpha", any_alpha, "accept any alpha > 0 instead of min(m,n-m) < alpha <= m(n-m)");
    rfam->add_option("--save", path, "write the family file here");

    auto* ex = app.add_subcommand("examples", "circle and moment-curve direction families");
    ex->add_option("which", which)->required()->check(CLI::IsMember({"circle", "moment"}));
    ex->add_option("--p", p)->required();
    ex->add_option("--n", n, "ambient dimension (moment only)")->default_val(3);

    auto* sweep = app.add_subcommand("sweep", "run a JSON-configured sweep and write the CSV report");
    sweep->add_option("config", path)->required();
    sweep->add_option("--out", out, "CSV path, '-' for stdout; overrides the config");

    auto* acc = app.add_subcommand("accept", "run the acceptance criteria");
    acc->add_option("--out", accept_dir, "artifact directory")->default_val("acceptance_out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*count) return cmd_count(g, p, n, k);
        if (*proj) return cmd_project(g, p, n, basis, set_spec, flag);
        if (*ident) return cmd_identity_check(g, p, n, m, trials, seed, tol, flag);
        if (*rfam) return cmd_random_family(g, p, n, m, alpha, seed, any_alpha, path);
        if (*ex) return cmd_examples(g, which, p, which == "circle" ? 3 : n);
        if (*sweep) return cmd_sweep(g, path, out, threads_opt->count() > 0);
        if (*acc) return cmd_accept(g, accept_dir);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kUsage;
}
