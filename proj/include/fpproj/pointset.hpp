#pragma once

// Subsets E of F_p^n as dense bit arrays indexed by PointCode.

#include <bit>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fpproj/error.hpp"
#include "fpproj/field.hpp"
#include "fpproj/grassmannian.hpp"
#include "fpproj/rng.hpp"

namespace fpproj {

class PointSet {
public:
    static PointSet empty(const Ambient& amb, const Budget& budget = {}) { return PointSet(amb, budget); }

    static PointSet full(const Ambient& amb, const Budget& budget = {}) {
        PointSet s(amb, budget);
        for (PointCode c = 0; c < amb.point_count(); ++c) s.set(c);
        return s;
    }

    /// Duplicate codes are rejected.
    static PointSet from_codes(const Ambient& amb, std::span<const PointCode> codes, const Budget& budget = {}) {
        PointSet s(amb, budget);
        for (auto c : codes) {
            if (c >= amb.point_count()) throw DomainError("point code out of range");
            if (s.contains(c)) throw DomainError("duplicate point " + decode(amb, c).to_string());
            s.set(c);
        }
        return s;
    }

    static PointSet from_points(const Ambient& amb, const std::vector<FpVector>& pts, const Budget& budget = {}) {
        std::vector<PointCode> codes;
        for (const auto& v : pts) {
            require_same_ambient(amb, v.ambient(), "PointSet::from_points");
            codes.push_back(encode(v));
        }
        return from_codes(amb, codes, budget);
    }

    const Ambient& ambient() const noexcept { return amb_; }
    std::uint64_t size() const noexcept { return card_; }
    bool is_empty() const noexcept { return card_ == 0; }

    bool contains(PointCode c) const noexcept { return (words_[c >> 6] >> (c & 63)) & 1u; }
    bool contains(const FpVector& v) const { return contains(encode(v)); }

    /// Calls fn(code) for each member in increasing code order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                fn(static_cast<PointCode>(w * 64 + std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    std::vector<PointCode> members() const {
        std::vector<PointCode> out;
        out.reserve(card_);
        for_each([&](PointCode c) { out.push_back(c); });
        return out;
    }

    bool is_subset_of(const PointSet& o) const {
        require_same_ambient(amb_, o.amb_, "PointSet::is_subset_of");
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~o.words_[w]) return false;
        return true;
    }

    bool is_disjoint_from(const PointSet& o) const {
        require_same_ambient(amb_, o.amb_, "PointSet::is_disjoint_from");
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & o.words_[w]) return false;
        return true;
    }

    PointSet operator|(const PointSet& o) const {
        require_same_ambient(amb_, o.amb_, "PointSet union");
        PointSet r = *this;
        r.card_ = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            r.words_[w] |= o.words_[w];
            r.card_ += std::popcount(r.words_[w]);
        }
        return r;
    }

    bool operator==(const PointSet&) const = default;

private:
    friend PointSet random_point_set(const Ambient&, std::uint64_t, std::uint64_t, const Budget&);

    PointSet(const Ambient& amb, const Budget& budget) : amb_(amb) {
        if (amb.point_count() > budget.max_points)
            throw BudgetError("p^n = " + std::to_string(amb.point_count()) + " exceeds the point budget of " +
                              std::to_string(budget.max_points));
        words_.assign((amb.point_count() + 63) / 64, 0);
    }

    void set(PointCode c) noexcept {
        words_[c >> 6] |= std::uint64_t{1} << (c & 63);
        ++card_;
    }

    Ambient amb_;
    std::vector<std::uint64_t> words_;
    std::uint64_t card_ = 0;
};

/// Uniform subset of exactly `size` points; a pure function of
/// (ambient, size, seed). Floyd's sampling without replacement.
inline PointSet random_point_set(const Ambient& amb, std::uint64_t size, std::uint64_t seed,
                                 const Budget& budget = {}) {
    if (size > amb.point_count())
        throw DomainError("random_point_set: size " + std::to_string(size) + " exceeds p^n");
    PointSet s(amb, budget);
    SeededRng rng(seed);
    const std::uint64_t total = amb.point_count();
    for (std::uint64_t j = total - size; j < total; ++j) {
        const PointCode t = rng.below(j + 1);
        s.set(s.contains(t) ? j : t);
    }
    return s;
}

/// offset + W.
inline PointSet affine_flat_set(const Subspace& w, const FpVector& offset, const Budget& budget = {}) {
    require_same_ambient(w.ambient(), offset.ambient(), "affine_flat_set");
    std::vector<PointCode> codes;
    w.for_each_point(offset.coords(), [&](PointCode c) { codes.push_back(c); });
    return PointSet::from_codes(w.ambient(), codes, budget);
}

/// {(x1, x2, 1) in F_p^3 : x1^2 + x2^2 = 1}.
inline PointSet circle_set(std::uint64_t p, const Budget& budget = {}) {
    if (p == 2) throw DomainError("circle_set: p = 2 gives a degenerate circle");
    const Ambient amb = Ambient::make(p, 3);
    std::vector<PointCode> codes;
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b)
            if ((a * a + b * b) % p == 1)
                codes.push_back(encode_coords(amb, std::vector<Residue>{Residue(a), Residue(b), 1}));
    return PointSet::from_codes(amb, codes, budget);
}

/// {(a, a^2, ..., a^n) : a != 0}.
inline PointSet moment_curve_set(std::uint64_t p, std::uint64_t n, const Budget& budget = {}) {
    if (n < 2) throw DomainError("moment_curve_set: n must be at least 2");
    if (p < 3) throw DomainError("moment_curve_set: p must be at least 3");
    const Ambient amb = Ambient::make(p, n);
    std::vector<PointCode> codes;
    std::vector<Residue> x(n);
    for (Residue a = 1; a < p; ++a) {
        Residue power = 1;
        for (auto& c : x) c = power = amb.mul(power, a);
        codes.push_back(encode_coords(amb, x));
    }
    return PointSet::from_codes(amb, codes, budget);
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t end = s.find(sep, start);
        out.push_back(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
        if (end == std::string::npos) return out;
        start = end + 1;
    }
}

inline std::uint64_t parse_decimal(const std::string& tok, std::size_t line) {
    if (tok.empty() || tok.size() > 18 || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("expected a non-negative integer, got '" + tok + "'", line);
    return std::stoull(tok);
}

/// Parses "key=<int>,key=<int>,..." with exactly the given keys in order.
inline std::vector<std::uint64_t> parse_header(const std::string& text, const std::vector<std::string>& keys) {
    auto fields = split(text, ',');
    if (fields.size() != keys.size()) throw ParseError("malformed header '" + text + "'", 1);
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const std::string prefix = keys[i] + "=";
        if (fields[i].rfind(prefix, 0) != 0) throw ParseError("malformed header '" + text + "'", 1);
        out.push_back(parse_decimal(fields[i].substr(prefix.size()), 1));
    }
    return out;
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace detail

/// Reads a point-set file:
///
///   p=<p>,n=<n>
///   x0,x1,...,x_{n-1}
///   ...
///
/// If `expected` is given, the header must match it.
inline PointSet load_point_set(const std::string& path, const Ambient* expected = nullptr,
                               const Budget& budget = {}) {
    auto lines = detail::read_lines(path);
    if (lines.empty()) throw ParseError("missing header", 1);
    auto hdr = detail::parse_header(lines[0], {"p", "n"});
    Ambient amb = [&] {
        try {
            return Ambient::make(hdr[0], hdr[1]);
        } catch (const DomainError& e) {
            throw ParseError(e.what(), 1);
        }
    }();
    if (expected && !(amb == *expected))
        throw ParseError("header " + amb.to_string() + " does not match requested " + expected->to_string(), 1);
    PointSet::empty(amb, budget);  // budget check before reading the body
    std::vector<PointCode> codes;
    std::unordered_map<PointCode, std::size_t> seen;
    std::vector<Residue> x(amb.n());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        if (lines[i].empty() && i + 1 == lines.size()) break;
        auto toks = detail::split(lines[i], ',');
        if (toks.size() != amb.n())
            throw ParseError("expected " + std::to_string(amb.n()) + " coordinates", lineno);
        for (std::size_t j = 0; j < toks.size(); ++j) {
            auto v = detail::parse_decimal(toks[j], lineno);
            if (v >= amb.p()) throw ParseError("coordinate " + toks[j] + " out of range", lineno);
            x[j] = static_cast<Residue>(v);
        }
        const PointCode code = encode_coords(amb, x);
        if (auto [it, fresh] = seen.emplace(code, lineno); !fresh)
            throw ParseError("duplicate point (first on line " + std::to_string(it->second) + ")", lineno);
        codes.push_back(code);
    }
    return PointSet::from_codes(amb, codes, budget);
}

/// Members are written in increasing code order.
inline void save_point_set(const PointSet& e, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << e.ambient().to_string() << '\n';
    e.for_each([&](PointCode c) { out << decode(e.ambient(), c).to_string() << '\n'; });
    if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace fpproj
