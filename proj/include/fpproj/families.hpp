#pragma once

// Restricted families G ⊂ G(n, n-m): the δ-random model, spreadness
// auditors, and the explicit line families through the circle and the
// moment curve.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fpproj/error.hpp"
#include "fpproj/family.hpp"
#include "fpproj/field.hpp"
#include "fpproj/grassmannian.hpp"
#include "fpproj/pointset.hpp"
#include "fpproj/projection.hpp"
#include "fpproj/rational.hpp"
#include "fpproj/rng.hpp"

namespace fpproj {

/// Which exponent range RandomFamilyConfig::make accepts.
enum class AlphaRange {
    restricted,  // min(m, n-m) < alpha <= m(n-m)
    any_positive,
};

/// Each member of G(n, n-m) is kept independently with probability
/// δ = p^alpha / |G(n, n-m)| (clamped to 1).
///
/// Inclusion of the subspace at enumeration index i is decided by the 53-bit
/// counter draw k = counter_draw53(seed, i): keep iff k / 2^53 < δ. The
/// comparison is exact; `draw_threshold` is the number of draws that keep.
struct RandomFamilyConfig {
    Ambient ambient;
    std::size_t codim;
    Rational alpha;
    std::uint64_t seed;
    std::uint64_t grassmannian_size;
    std::uint64_t draw_threshold;
    bool clamped;

    static RandomFamilyConfig make(const Ambient& amb, std::size_t codim, const Rational& alpha, std::uint64_t seed,
                                   AlphaRange range = AlphaRange::restricted) {
        const std::size_t n = amb.n();
        if (codim < 1 || codim >= n) throw DomainError("random family: m out of range");
        if (range == AlphaRange::restricted) {
            const std::size_t lo = std::min(codim, n - codim);
            const std::size_t hi = codim * (n - codim);
            if (!(alpha > lo && alpha <= hi))
                throw DomainError("random family: alpha=" + to_fraction_string(alpha) + " outside (" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
        } else if (alpha <= 0) {
            throw DomainError("random family: alpha must be positive");
        }
        const std::uint64_t gsize = gaussian_binomial(n, n - codim, amb.p());
        // Smallest k in [0, 2^53] with k |G| >= 2^53 p^alpha.
        const Rational two53 = Rational(BigInt(kDraw53Range));
        auto keeps = [&](std::uint64_t k) {
            return compare_with_power(Rational(BigInt(k) * gsize), two53, amb.p(), alpha) < 0;
        };
        std::uint64_t lo = 0, hi = kDraw53Range;
        bool clamped = keeps(kDraw53Range - 1);
        if (!clamped) {
            while (lo < hi) {
                const std::uint64_t mid = lo + (hi - lo) / 2;
                if (keeps(mid))
                    lo = mid + 1;
                else
                    hi = mid;
            }
        } else {
            lo = kDraw53Range;
        }
        return {amb, codim, alpha, seed, gsize, lo, clamped};
    }

    RandomFamilyConfig with_seed(std::uint64_t s) const {
        RandomFamilyConfig c = *this;
        c.seed = s;
        return c;
    }

    /// Display value of δ.
    double delta() const noexcept { return static_cast<double>(draw_threshold) / static_cast<double>(kDraw53Range); }

    /// Display value of p^alpha.
    double expected_size() const { return std::pow(static_cast<double>(ambient.p()), to_double(alpha)); }

    bool includes(std::uint64_t index) const noexcept { return counter_draw53(seed, index) < draw_threshold; }
};

inline Family sample_random_family(const RandomFamilyConfig& cfg, const Budget& budget = {}) {
    auto grass = enumerate_subspaces(cfg.ambient, cfg.ambient.n() - cfg.codim, budget);
    std::vector<Subspace> kept;
    for (std::size_t i = 0; i < grass.size(); ++i)
        if (cfg.includes(i)) kept.push_back(std::move(grass[i]));
    return Family(cfg.ambient, cfg.codim, std::move(kept));
}

/// How often |G| strays from p^alpha by more than p^alpha / 2, next to the
/// Chebyshev prediction 4 / p^alpha.
struct ConcentrationReport {
    std::vector<std::uint64_t> sizes;
    std::uint64_t deviations = 0;
    double fraction = 0;
    double chebyshev = 0;
};

inline bool deviates_by_half(std::uint64_t size, std::uint64_t p, const Rational& alpha) {
    return compare_with_power(Rational(size), Rational(3, 2), p, alpha) > 0 ||
           compare_with_power(Rational(size), Rational(1, 2), p, alpha) < 0;
}

inline ConcentrationReport size_concentration_report(const RandomFamilyConfig& cfg,
                                                     const std::vector<std::uint64_t>& seeds,
                                                     const Budget& budget = {}) {
    ConcentrationReport rep;
    rep.chebyshev = 4.0 / cfg.expected_size();
    auto grass_size = enumerate_subspaces(cfg.ambient, cfg.ambient.n() - cfg.codim, budget).size();
    for (auto s : seeds) {
        const auto c = cfg.with_seed(s);
        std::uint64_t size = 0;
        for (std::size_t i = 0; i < grass_size; ++i) size += c.includes(i);
        rep.sizes.push_back(size);
        rep.deviations += deviates_by_half(size, cfg.ambient.p(), cfg.alpha);
    }
    rep.fraction = seeds.empty() ? 0.0 : static_cast<double>(rep.deviations) / static_cast<double>(seeds.size());
    return rep;
}

enum class SpreadKind { containing, perp };

inline const char* to_string(SpreadKind k) { return k == SpreadKind::containing ? "contains" : "perp"; }

/// |{W in G : ξ in W}| (containing) or |{W in G : ξ in Per(W)}| (perp) for
/// every ξ, indexed by point code. Entry 0 is |G|.
inline std::vector<std::uint64_t> spread_counts(const Family& g, SpreadKind kind) {
    std::vector<std::uint64_t> counts(g.ambient().point_count(), 0);
    for (const auto& w : g) {
        const Subspace s = kind == SpreadKind::containing ? w : perp(w);
        s.for_each_point([&](PointCode c) { ++counts[c]; });
    }
    return counts;
}

struct SpreadResult {
    std::uint64_t max_count = 0;
    PointCode witness = 1;  // smallest nonzero ξ attaining the maximum
};

inline SpreadResult spread_max(const Family& g, SpreadKind kind) {
    const auto counts = spread_counts(g, kind);
    SpreadResult r;
    for (PointCode c = 1; c < counts.size(); ++c)
        if (counts[c] > r.max_count) r = {counts[c], c};
    return r;
}

inline SpreadResult spread_containing(const Family& g) { return spread_max(g, SpreadKind::containing); }
inline SpreadResult spread_perp(const Family& g) { return spread_max(g, SpreadKind::perp); }

/// For any ξ != 0: |{W in G(n,k) : ξ in W}| = |G(n-1, k-1)| and
/// |{W in G(n,k) : ξ in Per(W)}| = |G(n-1, k)|.
inline std::uint64_t stab_count_theoretical(const Ambient& amb, std::size_t k, SpreadKind kind) {
    if (k < 1 || k + 1 > amb.n()) throw DomainError("stab_count_theoretical: k out of range");
    return gaussian_binomial(amb.n() - 1, kind == SpreadKind::containing ? k - 1 : k, amb.p());
}

/// G_D = {span(x) : x in D}, a family of lines (m = n - 1).
inline Family family_from_directions(const PointSet& d) {
    const Ambient& amb = d.ambient();
    if (amb.n() < 2) throw DomainError("family_from_directions: lines need n >= 2");
    if (d.contains(PointCode{0})) throw DomainError("family_from_directions: D contains the zero vector");
    std::vector<Subspace> lines;
    d.for_each([&](PointCode c) { lines.push_back(span_of_point(decode(amb, c))); });
    return Family(amb, amb.n() - 1, std::move(lines));
}

inline Family circle_family(std::uint64_t p) { return family_from_directions(circle_set(p)); }

inline Family moment_family(std::uint64_t p, std::uint64_t n) { return family_from_directions(moment_curve_set(p, n)); }

/// max over hyperplanes W of |W ∩ S|, by enumerating G(n, n-1).
inline std::uint64_t hyperplane_intersection_max(const PointSet& s, const Budget& budget = {}) {
    const Ambient& amb = s.ambient();
    const auto members = s.members();
    std::vector<std::vector<Residue>> pts;
    for (auto c : members) {
        std::vector<Residue> x(amb.n());
        decode_coords(amb, c, x);
        pts.push_back(std::move(x));
    }
    std::uint64_t best = 0;
    for (const auto& w : enumerate_subspaces(amb, amb.n() - 1, budget)) {
        std::uint64_t hits = 0;
        for (const auto& x : pts) hits += w.contains_coords(x);
        best = std::max(best, hits);
    }
    return best;
}

struct EnergyAudit {
    std::uint64_t set_size = 0;
    std::uint64_t energy = 0;  // E(E, G'), exact
    double bound = 0;          // display value of the right-hand side
    bool pass = true;
};

struct FamilyAudit {
    SpreadKind kind;
    SpreadResult spread;
    double spread_bound = 0;  // display value of C |G| p^{-beta}
    bool spread_pass = true;
    std::vector<EnergyAudit> energies;

    bool pass() const {
        return spread_pass && std::all_of(energies.begin(), energies.end(), [](const auto& a) { return a.pass; });
    }
};

/// Spreadness hypothesis with constant C,
///   containing:  |{W : ξ in W}|      <= C |G| p^{-beta}
///   perp:        |{W : ξ in Per(W)}| <= C |G| p^{-beta},
/// and, for each test set E, the matching energy conclusion with the same C,
///   containing:  E(E, G') <= C (|E||G| + |E|^2 |G| p^{-beta})
///   perp:        E(E, G') <= C p^{-m} |G| (|E|^2 + |E| p^{n-beta}).
inline FamilyAudit audit_family(const Family& g, SpreadKind kind, const Rational& beta, const Rational& c,
                                const std::vector<PointSet>& sets = {}) {
    const std::uint64_t p = g.ambient().p();
    const double pd = static_cast<double>(p);
    FamilyAudit audit{kind, spread_max(g, kind), 0, true, {}};
    const Rational gsize(g.size());
    audit.spread_pass = le_times_power(Rational(audit.spread.max_count), c * gsize, p, -beta);
    audit.spread_bound = to_double(c * gsize) * std::pow(pd, -to_double(beta));

    const Rational pm = Rational(big_pow(p, g.codim()));
    for (const auto& e : sets) {
        require_same_ambient(e.ambient(), g.ambient(), "audit_family");
        const Rational es(e.size());
        EnergyAudit ea;
        ea.set_size = e.size();
        ea.energy = family_coset_energy(e, g);
        // lhs - fixed <= coef * p^gamma
        Rational fixed, coef, gamma;
        if (kind == SpreadKind::containing) {
            fixed = c * es * gsize;
            coef = c * es * es * gsize;
            gamma = -beta;
        } else {
            fixed = c * gsize * es * es / pm;
            coef = c * gsize * es / pm;
            gamma = Rational(g.ambient().n()) - beta;
        }
        const Rational slack = Rational(ea.energy) - fixed;
        ea.pass = slack <= 0 || le_times_power(slack, coef, p, gamma);
        ea.bound = to_double(fixed) + to_double(coef) * std::pow(pd, to_double(gamma));
        audit.energies.push_back(ea);
    }
    return audit;
}

}  // namespace fpproj
