#pragma once

// Sweep runner: one report row per (family, set, threshold) cell, emitted in
// config order regardless of thread count.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fpproj/families.hpp"
#include "fpproj/lab/config.hpp"
#include "fpproj/lab/parallel.hpp"
#include "fpproj/lab/specs.hpp"
#include "fpproj/projection.hpp"

namespace fpproj::lab {

inline constexpr const char* kCsvHeader =
    "p,n,m,family_id,family_size,set_id,set_size,threshold_kind,threshold,exceptional_count,bound_num,bound_den,"
    "ratio,spread_containing,spread_perp,seed,pass";

struct ReportRow {
    std::uint64_t p = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::string family_id;
    std::optional<std::uint64_t> family_size;
    std::string set_id;
    std::optional<std::uint64_t> set_size;
    ThresholdKind threshold_kind = ThresholdKind::N;
    Rational threshold;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> spread_containing;
    std::optional<std::uint64_t> spread_perp;

    bool skipped = false;
    bool skipped_for_budget = false;
    std::string skip_reason;

    std::uint64_t threshold_n = 0;  // the integer N actually applied
    std::uint64_t exceptional_count = 0;
    Rational bound;
    Rational ratio;
    bool pass = false;

    // Chain checks for the cell, kept out of the CSV.
    bool argument_holds = true;
    bool pairwise_holds = true;
    std::uint64_t pairwise_checked = 0;
};

/// The integer N for a threshold: N itself, floor(p^t), or floor(eps p^m).
inline std::uint64_t applied_threshold(ThresholdKind kind, const Rational& value, std::uint64_t p, std::size_t m) {
    BigInt n;
    switch (kind) {
        case ThresholdKind::N: n = numerator_of(value); break;
        case ThresholdKind::t: n = floor_scaled_power(Rational(1), p, value); break;
        case ThresholdKind::eps: n = floor_scaled_power(value, p, Rational(m)); break;
    }
    if (n > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("threshold does not fit in 64 bits");
    return n.convert_to<std::uint64_t>();
}

/// Spreadness conditions applied to random families with exponent alpha:
///   alpha > m:      spread_containing <= C |G| p^{-m}
///   alpha > n - m:  spread_perp       <= C |G| p^{-(n-m)}
inline bool random_spread_pass(const Rational& alpha, std::uint64_t p, std::size_t n, std::size_t m,
                               std::uint64_t family_size, std::uint64_t containing, std::uint64_t perp_count,
                               const Rational& c) {
    const Rational g(family_size);
    bool ok = true;
    if (alpha > m) ok = ok && le_times_power(Rational(containing), c * g, p, -Rational(m));
    if (alpha > n - m) ok = ok && le_times_power(Rational(perp_count), c * g, p, -Rational(n - m));
    return ok;
}

struct SweepResult {
    std::vector<ReportRow> rows;
    std::size_t failures = 0;
    std::size_t budget_skips = 0;
    std::size_t other_skips = 0;
};

inline SweepResult run_sweep(const ExperimentConfig& cfg, unsigned threads) {
    const Ambient amb = cfg.ambient();

    struct FamilySlot {
        std::optional<BuiltFamily> built;
        std::uint64_t containing = 0, perp_count = 0;
        std::string budget_error;
    };
    struct SetSlot {
        std::optional<PointSet> set;
        std::string budget_error;
    };
    auto as_parse_error = [&](const std::string& spec, const std::exception& e) {
        return ParseError(spec + ": " + e.what(), cfg.line_of(spec));
    };

    std::vector<FamilySlot> fams(cfg.families.size());
    parallel_for(fams.size(), threads, [&](std::size_t i) {
        const auto& spec = cfg.families[i];
        try {
            fams[i].built = build_family(spec, amb, cfg.m, cfg.budget);
            fams[i].containing = spread_containing(fams[i].built->family).max_count;
            fams[i].perp_count = spread_perp(fams[i].built->family).max_count;
        } catch (const BudgetError& e) {
            fams[i].budget_error = e.what();
        } catch (const ParseError& e) {
            throw ParseError(e.what(), e.line() ? e.line() : cfg.line_of(spec));
        } catch (const DomainError& e) {
            throw as_parse_error(spec, e);
        }
    });
    std::vector<SetSlot> sets(cfg.sets.size());
    parallel_for(sets.size(), threads, [&](std::size_t i) {
        const auto& spec = cfg.sets[i];
        try {
            sets[i].set = build_set(spec, amb, cfg.budget);
        } catch (const BudgetError& e) {
            sets[i].budget_error = e.what();
        } catch (const ParseError& e) {
            throw ParseError(e.what(), e.line() ? e.line() : cfg.line_of(spec));
        } catch (const DomainError& e) {
            throw as_parse_error(spec, e);
        }
    });

    const std::size_t nt = cfg.thresholds.size();
    SweepResult result;
    result.rows.resize(fams.size() * sets.size() * nt);
    parallel_for(fams.size() * sets.size(), threads, [&](std::size_t pair) {
        const auto& fam = fams[pair / sets.size()];
        const auto& st = sets[pair % sets.size()];
        const std::size_t base = pair * nt;

        // Cauchy-Schwarz per subspace, shared by all thresholds of the pair.
        bool pairwise = true;
        std::uint64_t checked = 0;
        if (fam.built && st.set && !st.set->is_empty())
            for (const auto& w : fam.built->family) {
                pairwise = pairwise && cauchy_schwarz_gap(*st.set, w).holds();
                ++checked;
            }

        for (std::size_t ti = 0; ti < nt; ++ti) {
            ReportRow& row = result.rows[base + ti];
            row.p = cfg.p;
            row.n = cfg.n;
            row.m = cfg.m;
            row.family_id = cfg.families[pair / sets.size()];
            row.set_id = cfg.sets[pair % sets.size()];
            row.threshold_kind = cfg.threshold_kind;
            row.threshold = cfg.thresholds[ti];
            if (fam.built) {
                row.family_size = fam.built->family.size();
                row.seed = fam.built->seed;
                row.spread_containing = fam.containing;
                row.spread_perp = fam.perp_count;
            }
            if (st.set) row.set_size = st.set->size();
            if (!fam.built || !st.set) {
                row.skipped = row.skipped_for_budget = true;
                row.skip_reason = !fam.built ? fam.budget_error : st.budget_error;
                continue;
            }
            if (st.set->is_empty()) {
                row.skipped = true;
                row.skip_reason = "empty set";
                continue;
            }
            const auto& g = fam.built->family;
            row.threshold_n = applied_threshold(cfg.threshold_kind, row.threshold, cfg.p, cfg.m);
            const auto rep = exceptional_count(*st.set, g, row.threshold_n);
            row.exceptional_count = rep.count;
            row.bound = rep.bound;
            row.ratio = rep.ratio;
            row.argument_holds = rep.argument_holds;
            row.pairwise_holds = pairwise;
            row.pairwise_checked = checked;
            row.pass = row.ratio <= cfg.constants.ratio;
            if (fam.built->alpha)
                row.pass = row.pass && random_spread_pass(*fam.built->alpha, cfg.p, cfg.n, cfg.m, g.size(),
                                                          fam.containing, fam.perp_count, cfg.constants.spread);
        }
    });
    for (const auto& row : result.rows) {
        if (row.skipped)
            ++(row.skipped_for_budget ? result.budget_skips : result.other_skips);
        else if (!row.pass)
            ++result.failures;
    }
    return result;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_line(const ReportRow& r) {
    auto opt = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
    std::string threshold = r.threshold_kind == ThresholdKind::N ? numerator_of(r.threshold).str()
                                                                  : to_fraction_string(r.threshold);
    std::vector<std::string> f{std::to_string(r.p),
                               std::to_string(r.n),
                               std::to_string(r.m),
                               csv_field(r.family_id),
                               opt(r.family_size),
                               csv_field(r.set_id),
                               opt(r.set_size),
                               to_string(r.threshold_kind),
                               threshold};
    if (r.skipped) {
        f.insert(f.end(), {"", "", "", ""});
    } else {
        f.push_back(std::to_string(r.exceptional_count));
        f.push_back(numerator_of(r.bound).str());
        f.push_back(denominator_of(r.bound).str());
        f.push_back(to_decimal_string(r.ratio));
    }
    f.push_back(opt(r.spread_containing));
    f.push_back(opt(r.spread_perp));
    f.push_back(opt(r.seed));
    f.push_back(r.skipped ? "skipped" : (r.pass ? "true" : "false"));
    std::string line;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) line += ',';
        line += f[i];
    }
    return line;
}

inline void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) out << csv_line(r) << '\n';
}

}  // namespace fpproj::lab
