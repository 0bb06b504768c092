#pragma once

// Discrete Fourier transform over F_p^n with additive characters
//   Ê(ξ) = sum_{x in E} e(-x.ξ),   e(-v) = exp(-2πi v / p),
// and the coset energy identity
//   sum_j |E ∩ (x_j + W)|^2 = p^{-m} sum_{ξ in Per(W)} |Ê(ξ)|^2.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "fpproj/error.hpp"
#include "fpproj/field.hpp"
#include "fpproj/grassmannian.hpp"
#include "fpproj/pointset.hpp"
#include "fpproj/projection.hpp"

namespace fpproj {

using Complex = std::complex<double>;

/// exp(-2πi k / p) for k in [0, p).
inline std::vector<Complex> roots_of_unity(Residue p) {
    std::vector<Complex> roots(p);
    for (Residue k = 0; k < p; ++k) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
        roots[k] = {std::cos(angle), std::sin(angle)};
    }
    return roots;
}

/// ξ -> Ê(ξ) for all p^n frequencies, indexed by the PointCode of ξ.
class SpectralTable {
public:
    SpectralTable(const Ambient& amb, std::vector<Complex> values) : amb_(amb), values_(std::move(values)) {
        if (values_.size() != amb_.point_count()) throw DomainError("spectral table has the wrong length");
    }

    const Ambient& ambient() const noexcept { return amb_; }
    const Complex& at(PointCode xi) const { return values_.at(xi); }
    const Complex& operator[](PointCode xi) const noexcept { return values_[xi]; }
    const std::vector<Complex>& values() const noexcept { return values_; }

    double power(PointCode xi) const noexcept { return std::norm(values_[xi]); }

private:
    Ambient amb_;
    std::vector<Complex> values_;
};

inline void require_dft_budget(const Ambient& amb, const Budget& budget) {
    if (amb.point_count() > budget.max_points)
        throw BudgetError("p^n = " + std::to_string(amb.point_count()) + " exceeds the DFT budget of " +
                          std::to_string(budget.max_points));
}

/// Direct summation, O(|E| p^n).
inline SpectralTable dft_direct(const PointSet& e, const Budget& budget = {}) {
    const Ambient& amb = e.ambient();
    require_dft_budget(amb, budget);
    const auto roots = roots_of_unity(amb.p());
    const auto members = e.members();
    std::vector<std::vector<Residue>> pts;
    pts.reserve(members.size());
    for (auto c : members) {
        std::vector<Residue> x(amb.n());
        decode_coords(amb, c, x);
        pts.push_back(std::move(x));
    }
    std::vector<Complex> values(amb.point_count());
    std::vector<Residue> xi(amb.n());
    for (PointCode f = 0; f < amb.point_count(); ++f) {
        decode_coords(amb, f, xi);
        Complex acc = 0;
        for (const auto& x : pts) {
            std::uint64_t d = 0;
            for (std::size_t i = 0; i < amb.n(); ++i) d += std::uint64_t{x[i]} * xi[i] % amb.p();
            acc += roots[d % amb.p()];
        }
        values[f] = acc;
    }
    return SpectralTable(amb, std::move(values));
}

/// Axis-factored transform: one length-p DFT along each coordinate axis in
/// turn, O(n p^{n+1}).
inline SpectralTable dft(const PointSet& e, const Budget& budget = {}) {
    const Ambient& amb = e.ambient();
    require_dft_budget(amb, budget);
    const Residue p = amb.p();
    const auto roots = roots_of_unity(p);
    std::vector<Complex> a(amb.point_count(), 0.0);
    e.for_each([&](PointCode c) { a[c] = 1.0; });
    std::vector<Complex> line(p), out(p);
    std::uint64_t stride = 1;
    for (std::size_t axis = 0; axis < amb.n(); ++axis) {
        const std::uint64_t block = stride * p;
        for (std::uint64_t base = 0; base < amb.point_count(); base += block)
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (Residue j = 0; j < p; ++j) line[j] = a[base + off + j * stride];
                for (Residue k = 0; k < p; ++k) {
                    Complex acc = 0;
                    std::uint64_t phase = 0;  // j*k mod p
                    for (Residue j = 0; j < p; ++j) {
                        acc += line[j] * roots[phase];
                        phase += k;
                        if (phase >= p) phase -= p;
                    }
                    out[k] = acc;
                }
                for (Residue k = 0; k < p; ++k) a[base + off + k * stride] = out[k];
            }
        stride = block;
    }
    return SpectralTable(amb, std::move(a));
}

/// |sum_ξ |Ê(ξ)|^2 - p^n |E||.
inline double plancherel_defect(const SpectralTable& table, std::uint64_t set_size) {
    double total = 0;
    for (const auto& v : table.values()) total += std::norm(v);
    return std::abs(total - static_cast<double>(table.ambient().point_count()) * static_cast<double>(set_size));
}

inline double plancherel_defect(const PointSet& e, const Budget& budget = {}) {
    return plancherel_defect(dft(e, budget), e.size());
}

/// p^{-m} sum_{ξ in Per(W)} |Ê(ξ)|^2, iterating Per(W) through its basis.
inline double coset_energy_via_fourier(const SpectralTable& table, const Subspace& w) {
    require_same_ambient(table.ambient(), w.ambient(), "coset_energy_via_fourier");
    require_proper(w, "coset_energy_via_fourier");
    const Subspace annihilator = perp(w);
    double total = 0;
    annihilator.for_each_point([&](PointCode xi) { total += table.power(xi); });
    return total / std::pow(static_cast<double>(w.ambient().p()), static_cast<double>(w.codim()));
}

inline double coset_energy_via_fourier(const PointSet& e, const Subspace& w, const Budget& budget = {}) {
    return coset_energy_via_fourier(dft(e, budget), w);
}

/// The exact spatial side against the floating-point spectral side.
struct CosetIdentityCheck {
    std::uint64_t spatial;
    double spectral;
    bool pass;

    double defect() const noexcept { return std::abs(static_cast<double>(spatial) - spectral); }
};

inline CosetIdentityCheck verify_coset_identity(const SpectralTable& table, const PointSet& e, const Subspace& w,
                                                double tol) {
    const std::uint64_t spatial = coset_energy(e, w);
    const double spectral = coset_energy_via_fourier(table, w);
    const double scale = std::max(1.0, static_cast<double>(spatial));
    return {spatial, spectral, std::abs(static_cast<double>(spatial) - spectral) <= tol * scale};
}

inline CosetIdentityCheck verify_coset_identity(const PointSet& e, const Subspace& w, double tol,
                                                const Budget& budget = {}) {
    return verify_coset_identity(dft(e, budget), e, w, tol);
}

}  // namespace fpproj
