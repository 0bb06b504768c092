#pragma once

// Projections pi^W(E), coset energies, and the exceptional-set machinery.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "fpproj/error.hpp"
#include "fpproj/family.hpp"
#include "fpproj/field.hpp"
#include "fpproj/grassmannian.hpp"
#include "fpproj/pointset.hpp"
#include "fpproj/rational.hpp"

namespace fpproj {

/// |E ∩ (x + W)| for every coset of W, indexed by Subspace::quotient_index.
inline std::vector<std::uint64_t> fiber_counts(const PointSet& e, const Subspace& w) {
    require_same_ambient(e.ambient(), w.ambient(), "fiber_counts");
    require_proper(w, "fiber_counts");
    std::vector<std::uint64_t> counts(w.coset_count(), 0);
    std::vector<Residue> x(e.ambient().n());
    e.for_each([&](PointCode c) {
        decode_coords(e.ambient(), c, x);
        ++counts[w.quotient_index(x)];
    });
    return counts;
}

/// pi^W(E): the cosets of W that meet E.
struct ProjectionImage {
    Subspace subspace;
    std::vector<PointCode> labels;  // coset representatives, increasing

    std::size_t size() const noexcept { return labels.size(); }
};

inline ProjectionImage project(const PointSet& e, const Subspace& w) {
    auto counts = fiber_counts(e, w);
    ProjectionImage img{w, {}};
    for (std::uint64_t idx = 0; idx < counts.size(); ++idx)
        if (counts[idx] != 0) img.labels.push_back(w.representative_of_index(idx));
    return img;
}

inline std::uint64_t projection_size(const PointSet& e, const Subspace& w) {
    std::uint64_t size = 0;
    for (auto c : fiber_counts(e, w)) size += c != 0;
    return size;
}

/// E(E, A) = sum over the listed planes of |E ∩ plane|^2.
inline std::uint64_t energy(const PointSet& e, std::span<const CosetLabel> planes) {
    std::uint64_t total = 0;
    std::vector<Residue> offset(e.ambient().n());
    for (const auto& plane : planes) {
        require_same_ambient(e.ambient(), plane.subspace.ambient(), "energy");
        decode_coords(e.ambient(), plane.representative, offset);
        std::uint64_t hits = 0;
        plane.subspace.for_each_point(std::span<const Residue>(offset), [&](PointCode c) { hits += e.contains(c); });
        total = checked_add(total, checked_mul(hits, hits));
    }
    return total;
}

/// sum_j |E ∩ (x_j + W)|^2 over all cosets of W.
inline std::uint64_t coset_energy(const PointSet& e, const Subspace& w) {
    std::uint64_t total = 0;
    for (auto c : fiber_counts(e, w)) total = checked_add(total, checked_mul(c, c));
    return total;
}

/// E(E, G') = sum over W in G of the coset energy of W.
inline std::uint64_t family_coset_energy(const PointSet& e, const Family& g) {
    require_same_ambient(e.ambient(), g.ambient(), "family_coset_energy");
    std::uint64_t total = 0;
    for (const auto& w : g) total = checked_add(total, coset_energy(e, w));
    return total;
}

/// E(E, G') split into incidences and ordered distinct pairs sharing a coset.
struct IncidenceDecomposition {
    std::uint64_t incidences;  // sum |E ∩ coset|, equals |G||E|
    std::uint64_t pairs;       // sum |E ∩ coset| (|E ∩ coset| - 1)

    std::uint64_t total() const { return checked_add(incidences, pairs); }
};

inline IncidenceDecomposition incidence_decomposition(const PointSet& e, const Family& g) {
    require_same_ambient(e.ambient(), g.ambient(), "incidence_decomposition");
    IncidenceDecomposition d{0, 0};
    for (const auto& w : g)
        for (auto c : fiber_counts(e, w)) {
            d.incidences = checked_add(d.incidences, c);
            if (c > 1) d.pairs = checked_add(d.pairs, checked_mul(c, c - 1));
        }
    return d;
}

/// Both sides of |E|^2 <= |pi^W(E)| * sum_j |E ∩ (x_j + W)|^2.
struct CauchySchwarzSides {
    std::uint64_t lhs;
    std::uint64_t rhs;

    bool holds() const noexcept { return lhs <= rhs; }
};

inline CauchySchwarzSides cauchy_schwarz_gap(const PointSet& e, const Subspace& w) {
    std::uint64_t image = 0, sum_sq = 0;
    for (auto c : fiber_counts(e, w)) {
        image += c != 0;
        sum_sq = checked_add(sum_sq, checked_mul(c, c));
    }
    return {checked_mul(e.size(), e.size()), checked_mul(image, sum_sq)};
}

/// Exceptional set Θ = {W in G : |pi^W(E)| <= N} against the bound
/// |G| N (|E|^{-1} + p^{-m}).
struct ExceptionalReport {
    std::uint64_t family_size = 0;
    std::uint64_t threshold = 0;
    std::uint64_t count = 0;
    Rational bound;
    Rational ratio;  // count / bound; zero when the bound is zero
    /// E(E, Θ') and the check |Θ| |E|^2 <= E(E, Θ') N (vacuous for N = 0).
    std::uint64_t exceptional_energy = 0;
    bool argument_holds = true;
    Family exceptional;
};

/// |G| N (p^m + |E|) / (|E| p^m).
inline Rational exceptional_bound(std::uint64_t family_size, std::uint64_t threshold, std::uint64_t set_size,
                                  std::uint64_t p, std::size_t codim) {
    if (set_size == 0) throw DomainError("exceptional bound needs a nonempty set");
    const BigInt pm = big_pow(p, codim);
    return Rational(BigInt(family_size) * threshold * (pm + set_size), BigInt(set_size) * pm);
}

inline ExceptionalReport exceptional_count(const PointSet& e, const Family& g, std::uint64_t threshold) {
    require_same_ambient(e.ambient(), g.ambient(), "exceptional_count");
    if (e.is_empty()) throw DomainError("exceptional_count: E must be nonempty");
    ExceptionalReport rep{g.size(), threshold, 0, 0, 0, 0, true, Family(g.ambient(), g.codim())};
    std::vector<Subspace> theta;
    for (const auto& w : g) {
        std::uint64_t image = 0, sum_sq = 0;
        for (auto c : fiber_counts(e, w)) {
            image += c != 0;
            sum_sq += c * c;
        }
        if (image <= threshold) {
            theta.push_back(w);
            rep.exceptional_energy = checked_add(rep.exceptional_energy, sum_sq);
        }
    }
    rep.count = theta.size();
    rep.exceptional = Family(g.ambient(), g.codim(), std::move(theta));
    rep.bound = exceptional_bound(g.size(), threshold, e.size(), e.ambient().p(), g.codim());
    rep.ratio = rep.bound == 0 ? Rational(0) : Rational(rep.count) / rep.bound;
    if (threshold >= 1)
        rep.argument_holds = BigInt(rep.count) * e.size() * e.size() <= BigInt(rep.exceptional_energy) * threshold;
    return rep;
}

/// Explicit-constant check over the full Grassmannian G(n, n - m), with
/// |E| = p^s:
///   (a) s <= m, t in (0, s]: #{W : |pi^W(E)| <= p^t / 10} <= p^{m(n-m) - (m - t)} / 2
///   (b) s >  m:              #{W : |pi^W(E)| <= p^m / 10} <= p^{m(n-m) - (s - m)} / 2
/// Every comparison is done in exact integer arithmetic.
struct ExplicitConstantResult {
    char branch = 'a';
    bool vacuous = false;  // branch (a) with |E| = 1: the t-range (0, 0] is empty
    std::uint64_t family_size = 0;
    std::uint64_t count = 0;
    double bound = 0;  // display value of the right-hand side
    bool pass = true;
};

inline ExplicitConstantResult explicit_constant_check(const PointSet& e, std::size_t codim, const Rational& t,
                                       const Budget& budget = {}) {
    const Ambient& amb = e.ambient();
    const std::uint64_t p = amb.p();
    const std::size_t n = amb.n();
    if (e.is_empty()) throw DomainError("explicit_constant_check: E must be nonempty");
    if (codim < 1 || codim >= n) throw DomainError("explicit_constant_check: m out of range");
    const auto grass = enumerate_subspaces(amb, n - codim, budget);
    const BigInt pm = big_pow(p, codim);
    const std::int64_t base_exp = static_cast<std::int64_t>(codim * (n - codim));

    ExplicitConstantResult res;
    res.family_size = grass.size();
    if (BigInt(e.size()) <= pm) {
        res.branch = 'a';
        if (t <= 0) throw DomainError("explicit_constant_check: t must be positive");
        if (e.size() == 1) {
            res.vacuous = true;
            return res;
        }
        // t <= s  <=>  p^t <= |E|
        if (compare_with_power(Rational(1), Rational(e.size()), p, -t) > 0)
            throw DomainError("explicit_constant_check: t exceeds s = log_p |E|");
        for (const auto& w : grass)
            if (le_times_power(Rational(10 * projection_size(e, w)), Rational(1), p, t)) ++res.count;
        const Rational exponent = Rational(base_exp - static_cast<std::int64_t>(codim)) + t;
        res.pass = le_times_power(Rational(2 * res.count), Rational(1), p, exponent);
        res.bound = 0.5 * std::pow(static_cast<double>(p), to_double(exponent));
    } else {
        res.branch = 'b';
        for (const auto& w : grass)
            if (BigInt(10) * projection_size(e, w) <= pm) ++res.count;
        const BigInt rhs = big_pow(p, static_cast<std::uint64_t>(base_exp) + codim);
        res.pass = BigInt(2) * res.count * e.size() <= rhs;
        res.bound = to_double(Rational(rhs, BigInt(2) * e.size()));
    }
    return res;
}

}  // namespace fpproj
