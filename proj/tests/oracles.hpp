#pragma once

// Brute-force reference computations for the unit and acceptance suites.
// Everything here works on plain coordinate vectors and explicit point sets,
// without the RREF / quotient machinery in the library.

#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<std::uint32_t>;

inline Vec decode(std::uint64_t code, std::uint32_t p, std::size_t n) {
    Vec v(n);
    for (auto& c : v) {
        c = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return v;
}

inline std::uint64_t encode(const Vec& v, std::uint32_t p) {
    std::uint64_t code = 0, place = 1;
    for (auto c : v) {
        code += c * place;
        place *= p;
    }
    return code;
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

/// The set of point codes spanned by the given vectors, by closure under
/// all coefficient combinations.
inline std::set<std::uint64_t> span_points(const std::vector<Vec>& gens, std::uint32_t p, std::size_t n) {
    const std::uint64_t combos = ipow(p, gens.size());
    std::set<std::uint64_t> pts;
    for (std::uint64_t t = 0; t < combos; ++t) {
        Vec coeff = decode(t, p, gens.size());
        Vec x(n, 0);
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (std::size_t i = 0; i < n; ++i) x[i] = (x[i] + coeff[g] * gens[g][i]) % p;
        pts.insert(encode(x, p));
    }
    return pts;
}

/// All k-dimensional subspaces of F_p^n as point sets, from every k-tuple of
/// vectors whose span has p^k points.
inline std::set<std::set<std::uint64_t>> all_subspaces(std::uint32_t p, std::size_t n, std::size_t k) {
    const std::uint64_t total = ipow(p, n);
    const std::uint64_t tuples = ipow(total, k);
    std::set<std::set<std::uint64_t>> out;
    for (std::uint64_t t = 0; t < tuples; ++t) {
        std::vector<Vec> gens;
        std::uint64_t rest = t;
        for (std::size_t g = 0; g < k; ++g) {
            gens.push_back(decode(rest % total, p, n));
            rest /= total;
        }
        auto pts = span_points(gens, p, n);
        if (pts.size() == ipow(p, k)) out.insert(std::move(pts));
    }
    return out;
}

inline std::uint32_t dot(const Vec& a, const Vec& b, std::uint32_t p) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::uint64_t{a[i]} * b[i];
    return static_cast<std::uint32_t>(s % p);
}

/// {x : x.w = 0 for every w in W}, by filtering all p^n points.
inline std::set<std::uint64_t> annihilator(const std::set<std::uint64_t>& w, std::uint32_t p, std::size_t n) {
    std::set<std::uint64_t> out;
    for (std::uint64_t x = 0; x < ipow(p, n); ++x) {
        Vec xv = decode(x, p, n);
        bool ok = true;
        for (auto y : w)
            if (dot(xv, decode(y, p, n), p) != 0) {
                ok = false;
                break;
            }
        if (ok) out.insert(x);
    }
    return out;
}

/// Coset of W containing x, as an explicit point set.
inline std::set<std::uint64_t> coset_of(std::uint64_t x, const std::set<std::uint64_t>& w, std::uint32_t p,
                                        std::size_t n) {
    std::set<std::uint64_t> out;
    Vec xv = decode(x, p, n);
    for (auto y : w) {
        Vec yv = decode(y, p, n);
        for (std::size_t i = 0; i < n; ++i) yv[i] = (yv[i] + xv[i]) % p;
        out.insert(encode(yv, p));
    }
    return out;
}

/// The distinct cosets of W that meet E, each as a point set.
inline std::set<std::set<std::uint64_t>> projection(const std::vector<std::uint64_t>& e,
                                                    const std::set<std::uint64_t>& w, std::uint32_t p,
                                                    std::size_t n) {
    std::set<std::set<std::uint64_t>> out;
    for (auto x : e) out.insert(coset_of(x, w, p, n));
    return out;
}

/// sum over all cosets of W of |E ∩ coset|^2, by explicit cosets.
inline std::uint64_t coset_energy(const std::vector<std::uint64_t>& e, const std::set<std::uint64_t>& w,
                                  std::uint32_t p, std::size_t n) {
    std::set<std::set<std::uint64_t>> cosets;
    for (std::uint64_t x = 0; x < ipow(p, n); ++x) cosets.insert(coset_of(x, w, p, n));
    std::set<std::uint64_t> es(e.begin(), e.end());
    std::uint64_t total = 0;
    for (const auto& c : cosets) {
        std::uint64_t hits = 0;
        for (auto y : c) hits += es.count(y);
        total += hits * hits;
    }
    return total;
}

/// Ê(ξ) by direct summation with freshly computed angles.
inline std::complex<double> fourier_coefficient(const std::vector<std::uint64_t>& e, std::uint64_t xi,
                                                std::uint32_t p, std::size_t n) {
    std::complex<double> acc = 0;
    Vec xv = decode(xi, p, n);
    for (auto x : e) {
        const double phase = -2.0 * std::numbers::pi * dot(decode(x, p, n), xv, p) / p;
        acc += std::polar(1.0, phase);
    }
    return acc;
}

}  // namespace oracle
