#pragma once

// Linear subspaces of F_p^n in canonical (RREF) form, their annihilators,
// and coset labelling.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpproj/error.hpp"
#include "fpproj/field.hpp"

namespace fpproj {

class Subspace {
public:
    /// The span of arbitrary rows.
    static Subspace span(const FpMatrix& rows) {
        std::vector<Residue> data = rows.flat();
        auto pivots = detail::reduce_echelon(rows.ambient(), data);
        return Subspace(rows.ambient(), std::move(data), std::move(pivots));
    }

    static Subspace span(const Ambient& amb, const std::vector<FpVector>& rows) {
        return span(FpMatrix(amb, rows));
    }

    /// Adopts a basis that must already be in RREF with full row rank.
    static Subspace from_canonical(const FpMatrix& basis) {
        auto red = rref(basis);
        if (red.rank != basis.rows() || !(red.matrix == basis))
            throw DomainError("basis is not in reduced row echelon form with full rank");
        return Subspace(basis.ambient(), basis.flat(), std::move(red.pivots));
    }

    static Subspace zero(const Ambient& amb) { return Subspace(amb, {}, {}); }

    static Subspace full(const Ambient& amb) {
        std::vector<Residue> id(std::size_t{amb.n()} * amb.n(), 0);
        std::vector<std::size_t> piv(amb.n());
        for (std::size_t i = 0; i < amb.n(); ++i) {
            id[i * amb.n() + i] = 1;
            piv[i] = i;
        }
        return Subspace(amb, std::move(id), std::move(piv));
    }

    /// Parses the "r0c0,r0c1;r1c0,r1c1" serialization (any spanning rows;
    /// the result is canonicalized). The empty string is the zero subspace.
    static Subspace parse(const Ambient& amb, std::string_view text) {
        std::vector<Residue> data;
        std::size_t start = 0;
        while (!text.empty() && start <= text.size()) {
            std::size_t end = text.find(';', start);
            if (end == std::string_view::npos) end = text.size();
            auto row = parse_row(amb, text.substr(start, end - start));
            data.insert(data.end(), row.begin(), row.end());
            start = end + 1;
        }
        return span(FpMatrix::from_flat(amb, std::move(data)));
    }

    const Ambient& ambient() const noexcept { return amb_; }
    std::size_t dim() const noexcept { return pivots_.size(); }
    std::size_t codim() const noexcept { return amb_.n() - dim(); }
    FpMatrix basis() const { return FpMatrix::from_flat(amb_, basis_); }
    std::span<const Residue> basis_row(std::size_t i) const {
        return std::span<const Residue>(basis_).subspan(i * amb_.n(), amb_.n());
    }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    /// Proper and nontrivial: 0 < dim < n.
    bool is_proper_nontrivial() const noexcept { return dim() > 0 && dim() < amb_.n(); }

    /// p^dim, the number of points in W (and in each coset).
    std::uint64_t point_count() const { return checked_pow(amb_.p(), dim()); }

    /// p^codim, the number of cosets.
    std::uint64_t coset_count() const { return checked_pow(amb_.p(), codim()); }

    bool contains_coords(std::span<const Residue> x) const {
        const std::size_t n = amb_.n();
        // x - sum_i x[pivot_i] * row_i must vanish.
        for (std::size_t j = 0; j < n; ++j) {
            Residue acc = x[j];
            for (std::size_t i = 0; i < dim(); ++i)
                acc = amb_.sub(acc, amb_.mul(x[pivots_[i]], basis_[i * n + j]));
            if (acc != 0) return false;
        }
        return true;
    }

    bool contains(const FpVector& v) const {
        require_same_ambient(amb_, v.ambient(), "Subspace::contains");
        return contains_coords(v.coords());
    }

    bool contains_code(PointCode code) const {
        std::vector<Residue> x(amb_.n());
        decode_coords(amb_, code, x);
        return contains_coords(x);
    }

    /// Index of the coset x + W in [0, p^codim). Indices are ordered the same
    /// way as the coset representatives' point codes.
    std::uint64_t quotient_index(std::span<const Residue> x) const noexcept {
        const std::size_t n = amb_.n();
        std::uint64_t idx = 0;
        for (std::size_t j = free_cols_.size(); j-- > 0;) {
            const std::size_t f = free_cols_[j];
            Residue r = x[f];
            for (std::size_t i = 0; i < high_pivots_.size(); ++i)
                r = amb_.sub(r, amb_.mul(x[high_pivots_[i]], high_[i * n + f]));
            idx = idx * amb_.p() + r;
        }
        return idx;
    }

    /// Minimum point code in the coset with the given quotient index.
    PointCode representative_of_index(std::uint64_t idx) const noexcept {
        std::vector<Residue> r(amb_.n(), 0);
        for (std::size_t f : free_cols_) {
            r[f] = static_cast<Residue>(idx % amb_.p());
            idx /= amb_.p();
        }
        return encode_coords(amb_, r);
    }

    /// Minimum point code in x + W.
    ///
    /// The high-first echelon basis has rows whose highest nonzero coordinate
    /// is a pivot, zero in every other row. Zeroing those pivot coordinates of
    /// x gives r; any r + w with w != 0 is nonzero at w's top pivot, where r is
    /// zero, and agrees with r above it, so r + w has the larger code.
    PointCode representative(std::span<const Residue> x) const noexcept {
        return representative_of_index(quotient_index(x));
    }

    /// Calls fn(code) for every point of offset + W (offset given as coords).
    template <typename Fn>
    void for_each_point(std::span<const Residue> offset, Fn&& fn) const {
        const std::size_t n = amb_.n();
        const std::size_t k = dim();
        std::vector<Residue> cur(offset.begin(), offset.end());
        std::vector<Residue> digits(k, 0);
        while (true) {
            fn(encode_coords(amb_, cur));
            // Odometer over coefficients; a digit wrapping to 0 has had its row
            // added p times in total, which is zero.
            std::size_t j = 0;
            for (; j < k; ++j) {
                for (std::size_t c = 0; c < n; ++c) cur[c] = amb_.add(cur[c], basis_[j * n + c]);
                if (++digits[j] < amb_.p()) break;
                digits[j] = 0;
            }
            if (j == k) return;
        }
    }

    template <typename Fn>
    void for_each_point(Fn&& fn) const {
        std::vector<Residue> origin(amb_.n(), 0);
        for_each_point(std::span<const Residue>(origin), std::forward<Fn>(fn));
    }

    std::string serialize() const {
        std::string s;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) s += ';';
            for (std::size_t j = 0; j < amb_.n(); ++j) {
                if (j) s += ',';
                s += std::to_string(basis_[i * amb_.n() + j]);
            }
        }
        return s;
    }

    bool operator==(const Subspace& o) const noexcept { return amb_ == o.amb_ && basis_ == o.basis_; }

    /// Total order within one ambient: by dimension, then lexicographic on the
    /// row-major canonical basis.
    std::strong_ordering operator<=>(const Subspace& o) const noexcept {
        if (auto c = dim() <=> o.dim(); c != 0) return c;
        return basis_ <=> o.basis_;
    }

private:
    friend std::vector<Subspace> enumerate_subspaces(const Ambient&, std::size_t, const Budget&);

    Subspace(const Ambient& amb, std::vector<Residue> rref_basis, std::vector<std::size_t> pivots)
        : amb_(amb), basis_(std::move(rref_basis)), pivots_(std::move(pivots)) {
        high_ = basis_;
        high_pivots_ = detail::reduce_echelon(amb_, high_, true);
        std::vector<bool> is_pivot(amb_.n(), false);
        for (auto c : high_pivots_) is_pivot[c] = true;
        for (std::size_t c = 0; c < amb_.n(); ++c)
            if (!is_pivot[c]) free_cols_.push_back(c);
    }

    static std::vector<Residue> parse_row(const Ambient& amb, std::string_view text) {
        std::vector<Residue> row;
        std::size_t start = 0;
        while (true) {
            std::size_t end = text.find(',', start);
            if (end == std::string_view::npos) end = text.size();
            auto tok = text.substr(start, end - start);
            if (tok.empty() || tok.size() > 10 ||
                !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
                throw ParseError("bad subspace coordinate '" + std::string(tok) + "'");
            const std::uint64_t v = std::stoull(std::string(tok));
            if (v >= amb.p()) throw ParseError("subspace coordinate " + std::string(tok) + " not below p");
            row.push_back(static_cast<Residue>(v));
            if (end == text.size()) break;
            start = end + 1;
        }
        if (row.size() != amb.n())
            throw ParseError("subspace row has " + std::to_string(row.size()) + " coordinates, expected " +
                             std::to_string(amb.n()));
        return row;
    }

    Ambient amb_;
    std::vector<Residue> basis_;
    std::vector<std::size_t> pivots_;
    std::vector<Residue> high_;
    std::vector<std::size_t> high_pivots_;
    std::vector<std::size_t> free_cols_;
};

/// Every k-dimensional subspace of F_p^n exactly once, sorted by the
/// Subspace order (lexicographic on the canonical basis). Positions in this
/// list are the stable enumeration indices used by the random family sampler.
inline std::vector<Subspace> enumerate_subspaces(const Ambient& amb, std::size_t k,
                                                 const Budget& budget = {}) {
    const std::size_t n = amb.n();
    if (k > n) throw DomainError("enumerate_subspaces: k out of range");
    const std::uint64_t total = gaussian_binomial(n, k, amb.p());
    if (total > budget.max_subspaces)
        throw BudgetError("|G(" + std::to_string(n) + "," + std::to_string(k) + ")| = " + std::to_string(total) +
                          " exceeds the subspace budget of " + std::to_string(budget.max_subspaces));

    std::vector<Subspace> out;
    out.reserve(total);
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
        // Free slots: row i, column c > piv[i], c not a pivot column.
        std::vector<bool> is_pivot(n, false);
        for (auto c : piv) is_pivot[c] = true;
        std::vector<std::size_t> slots;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = piv[i] + 1; c < n; ++c)
                if (!is_pivot[c]) slots.push_back(i * n + c);
        std::vector<Residue> base(k * n, 0);
        for (std::size_t i = 0; i < k; ++i) base[i * n + piv[i]] = 1;
        std::vector<Residue> digits(slots.size(), 0);
        while (true) {
            std::vector<Residue> b = base;
            for (std::size_t s = 0; s < slots.size(); ++s) b[slots[s]] = digits[s];
            out.push_back(Subspace(amb, std::move(b), piv));
            std::size_t s = 0;
            for (; s < slots.size(); ++s) {
                if (++digits[s] < amb.p()) break;
                digits[s] = 0;
            }
            if (s == slots.size()) break;
        }
        // Next pivot combination.
        std::size_t i = k;
        while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++piv[i - 1];
        for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Per(W) = {x : x . w = 0 for all w in W}; dim Per(W) = n - dim W.
inline Subspace perp(const Subspace& w) { return Subspace::span(nullspace(w.basis())); }

/// The line through a nonzero point.
inline Subspace span_of_point(const FpVector& x) {
    if (x.is_zero()) throw DomainError("span_of_point: zero vector");
    return Subspace::span(x.ambient(), {x});
}

/// A coset x + W named by its minimum point code.
struct CosetLabel {
    Subspace subspace;
    PointCode representative;

    bool operator==(const CosetLabel&) const = default;
};

inline void require_proper(const Subspace& w, const char* where) {
    if (!w.is_proper_nontrivial())
        throw DomainError(std::string(where) + ": subspace must be proper and nontrivial (dim " +
                          std::to_string(w.dim()) + " in n=" + std::to_string(w.ambient().n()) + ")");
}

inline CosetLabel coset_label(const Subspace& w, const FpVector& x) {
    require_proper(w, "coset_label");
    require_same_ambient(w.ambient(), x.ambient(), "coset_label");
    return {w, w.representative(x.coords())};
}

/// All p^codim cosets, ordered by representative.
inline std::vector<CosetLabel> enumerate_cosets(const Subspace& w) {
    require_proper(w, "enumerate_cosets");
    std::vector<CosetLabel> out;
    const std::uint64_t count = w.coset_count();
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) out.push_back({w, w.representative_of_index(idx)});
    return out;
}

}  // namespace fpproj
