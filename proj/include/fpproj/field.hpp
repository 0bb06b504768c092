#pragma once

// Exact arithmetic and linear algebra over the prime field F_p.
//
// Points of F_p^n are indexed by PointCode, the little-endian base-p reading
// of the coordinates: coordinate 0 is the least significant digit.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpproj/error.hpp"

namespace fpproj {

using Residue = std::uint32_t;
using PointCode = std::uint64_t;

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("exact integer overflow in multiplication");
    return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exact integer overflow in addition");
    return r;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

/// Trial division; the moduli used here are small.
constexpr bool is_prime(std::uint64_t v) noexcept {
    if (v < 2) return false;
    if (v < 4) return true;
    if (v % 2 == 0) return false;
    for (std::uint64_t d = 3; d <= v / d; d += 2)
        if (v % d == 0) return false;
    return true;
}

/// F_p^n: the modulus, the dimension and p^n.
class Ambient {
public:
    static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

    static Ambient make(std::uint64_t p, std::uint64_t n) {
        if (p >= kMaxModulus || !is_prime(p))
            throw DomainError("modulus " + std::to_string(p) + " is not a supported prime");
        if (n < 1) throw DomainError("ambient dimension must be at least 1");
        std::uint64_t count;
        try {
            count = checked_pow(p, n);
        } catch (const OverflowError&) {
            throw OverflowError("p^n does not fit in 64 bits for p=" + std::to_string(p) +
                                ", n=" + std::to_string(n));
        }
        return Ambient(static_cast<Residue>(p), static_cast<std::uint32_t>(n), count);
    }

    Residue p() const noexcept { return p_; }
    std::uint32_t n() const noexcept { return n_; }
    std::uint64_t point_count() const noexcept { return count_; }

    Residue add(Residue a, Residue b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(std::uint64_t{a} * b % p_);
    }
    Residue reduce(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    /// Multiplicative inverse of a nonzero residue.
    Residue inv(Residue a) const {
        if (a % p_ == 0) throw DomainError("zero has no inverse");
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
            std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
        }
        return reduce(t);
    }

    bool operator==(const Ambient&) const = default;

    std::string to_string() const { return "p=" + std::to_string(p_) + ",n=" + std::to_string(n_); }

private:
    Ambient(Residue p, std::uint32_t n, std::uint64_t count) : p_(p), n_(n), count_(count) {}

    Residue p_;
    std::uint32_t n_;
    std::uint64_t count_;
};

inline void require_same_ambient(const Ambient& a, const Ambient& b, const char* where) {
    if (!(a == b))
        throw DomainError(std::string(where) + ": ambient mismatch (" + a.to_string() + " vs " +
                          b.to_string() + ")");
}

// Coordinate-level codec used in inner loops; the caller guarantees sizes.
inline PointCode encode_coords(const Ambient& amb, std::span<const Residue> coords) noexcept {
    PointCode code = 0;
    for (std::size_t i = coords.size(); i-- > 0;) code = code * amb.p() + coords[i];
    return code;
}

inline void decode_coords(const Ambient& amb, PointCode code, std::span<Residue> out) noexcept {
    for (auto& c : out) {
        c = static_cast<Residue>(code % amb.p());
        code /= amb.p();
    }
}

class FpVector {
public:
    /// Coordinates must already be reduced mod p.
    FpVector(const Ambient& amb, std::vector<Residue> coords) : amb_(amb), coords_(std::move(coords)) {
        if (coords_.size() != amb_.n())
            throw DomainError("vector has " + std::to_string(coords_.size()) +
                              " coordinates, ambient dimension is " + std::to_string(amb_.n()));
        for (Residue c : coords_)
            if (c >= amb_.p()) throw DomainError("coordinate not reduced mod p");
    }

    /// Reduces arbitrary integers mod p.
    static FpVector of(const Ambient& amb, std::initializer_list<std::int64_t> values) {
        std::vector<Residue> c;
        c.reserve(values.size());
        for (auto v : values) c.push_back(amb.reduce(v));
        return FpVector(amb, std::move(c));
    }

    static FpVector zero(const Ambient& amb) { return FpVector(amb, std::vector<Residue>(amb.n(), 0)); }

    static FpVector unit(const Ambient& amb, std::size_t i) {
        if (i >= amb.n()) throw DomainError("unit vector index out of range");
        std::vector<Residue> c(amb.n(), 0);
        c[i] = 1;
        return FpVector(amb, std::move(c));
    }

    const Ambient& ambient() const noexcept { return amb_; }
    std::span<const Residue> coords() const noexcept { return coords_; }
    Residue operator[](std::size_t i) const { return coords_.at(i); }
    std::size_t size() const noexcept { return coords_.size(); }

    bool is_zero() const noexcept {
        return std::all_of(coords_.begin(), coords_.end(), [](Residue c) { return c == 0; });
    }

    FpVector operator+(const FpVector& o) const {
        require_same_ambient(amb_, o.amb_, "vector addition");
        std::vector<Residue> c(coords_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = amb_.add(coords_[i], o.coords_[i]);
        return FpVector(amb_, std::move(c));
    }

    FpVector operator-(const FpVector& o) const {
        require_same_ambient(amb_, o.amb_, "vector subtraction");
        std::vector<Residue> c(coords_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = amb_.sub(coords_[i], o.coords_[i]);
        return FpVector(amb_, std::move(c));
    }

    FpVector scaled(Residue k) const {
        std::vector<Residue> c(coords_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = amb_.mul(coords_[i], k % amb_.p());
        return FpVector(amb_, std::move(c));
    }

    bool operator==(const FpVector&) const = default;

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(coords_[i]);
        }
        return s;
    }

private:
    Ambient amb_;
    std::vector<Residue> coords_;
};

/// (u . v) mod p.
inline Residue dot(const FpVector& u, const FpVector& v) {
    require_same_ambient(u.ambient(), v.ambient(), "dot");
    const Ambient& amb = u.ambient();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc = (acc + std::uint64_t{u[i]} * v[i]) % amb.p();
    return static_cast<Residue>(acc);
}

inline PointCode encode(const FpVector& v) { return encode_coords(v.ambient(), v.coords()); }

inline FpVector decode(const Ambient& amb, PointCode code) {
    if (code >= amb.point_count())
        throw DomainError("point code " + std::to_string(code) + " out of range for " + amb.to_string());
    std::vector<Residue> c(amb.n());
    decode_coords(amb, code, c);
    return FpVector(amb, std::move(c));
}

/// Row-major matrix whose rows live in F_p^n.
class FpMatrix {
public:
    explicit FpMatrix(const Ambient& amb) : amb_(amb) {}

    FpMatrix(const Ambient& amb, const std::vector<FpVector>& rows) : amb_(amb) {
        data_.reserve(rows.size() * amb.n());
        for (const auto& r : rows) {
            require_same_ambient(amb, r.ambient(), "matrix row");
            data_.insert(data_.end(), r.coords().begin(), r.coords().end());
        }
        rows_ = rows.size();
    }

    /// Entries are reduced mod p.
    static FpMatrix of(const Ambient& amb, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
        std::vector<FpVector> v;
        for (auto r : rows) v.push_back(FpVector::of(amb, r));
        return FpMatrix(amb, v);
    }

    /// Takes ownership of a flat row-major buffer of reduced residues.
    static FpMatrix from_flat(const Ambient& amb, std::vector<Residue> data) {
        if (data.size() % amb.n() != 0) throw DomainError("flat matrix buffer is not a whole number of rows");
        FpMatrix m(amb);
        m.rows_ = data.size() / amb.n();
        m.data_ = std::move(data);
        return m;
    }

    const Ambient& ambient() const noexcept { return amb_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return amb_.n(); }
    Residue at(std::size_t r, std::size_t c) const { return data_.at(r * cols() + c); }
    std::span<const Residue> row(std::size_t r) const {
        return std::span<const Residue>(data_).subspan(r * cols(), cols());
    }
    const std::vector<Residue>& flat() const noexcept { return data_; }

    FpVector row_vector(std::size_t r) const {
        auto s = row(r);
        return FpVector(amb_, std::vector<Residue>(s.begin(), s.end()));
    }

    std::vector<FpVector> to_vectors() const {
        std::vector<FpVector> out;
        for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r));
        return out;
    }

    bool operator==(const FpMatrix&) const = default;

private:
    Ambient amb_;
    std::vector<Residue> data_;
    std::size_t rows_ = 0;
};

namespace detail {

/// In-place reduced row echelon form of a flat k x n buffer. Columns are
/// scanned in increasing order, or decreasing when `high_first` is set (the
/// "leading" entry of each row is then its highest nonzero coordinate).
/// Zero rows are dropped; returns the pivot column of each surviving row.
inline std::vector<std::size_t> reduce_echelon(const Ambient& amb, std::vector<Residue>& data,
                                               bool high_first = false) {
    const std::size_t n = amb.n();
    const std::size_t rows = data.size() / n;
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t step = 0; step < n && next < rows; ++step) {
        const std::size_t col = high_first ? n - 1 - step : step;
        std::size_t pr = next;
        while (pr < rows && data[pr * n + col] == 0) ++pr;
        if (pr == rows) continue;
        if (pr != next)
            std::swap_ranges(data.begin() + pr * n, data.begin() + (pr + 1) * n, data.begin() + next * n);
        const Residue scale = amb.inv(data[next * n + col]);
        for (std::size_t j = 0; j < n; ++j) data[next * n + j] = amb.mul(data[next * n + j], scale);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == next) continue;
            const Residue f = data[r * n + col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                data[r * n + j] = amb.sub(data[r * n + j], amb.mul(f, data[next * n + j]));
        }
        pivots.push_back(col);
        ++next;
    }
    data.resize(next * n);
    return pivots;
}

}  // namespace detail

struct RrefResult {
    FpMatrix matrix;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

/// The unique reduced row echelon form: pivots equal 1, pivot columns are
/// otherwise zero, zero rows dropped, pivot columns strictly increasing.
inline RrefResult rref(const FpMatrix& m) {
    std::vector<Residue> data = m.flat();
    auto pivots = detail::reduce_echelon(m.ambient(), data);
    const std::size_t rank = pivots.size();
    return {FpMatrix::from_flat(m.ambient(), std::move(data)), rank, std::move(pivots)};
}

/// RREF basis of {x : M x^T = 0}; it has n - rank(M) rows.
inline FpMatrix nullspace(const FpMatrix& m) {
    const Ambient& amb = m.ambient();
    const std::size_t n = amb.n();
    const auto red = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto c : red.pivots) is_pivot[c] = true;
    std::vector<Residue> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Residue> x(n, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < red.rank; ++i) x[red.pivots[i]] = amb.neg(red.matrix.at(i, f));
        basis.insert(basis.end(), x.begin(), x.end());
    }
    detail::reduce_echelon(amb, basis);
    return FpMatrix::from_flat(amb, std::move(basis));
}

/// Number of k-dimensional subspaces of F_p^n, exact:
///   prod_{i<k} (p^n - p^i) / (p^k - p^i).
/// Throws OverflowError instead of wrapping.
inline std::uint64_t gaussian_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    if (k > n) throw DomainError("gaussian_binomial: k out of range");
    if (!is_prime(p)) throw DomainError("gaussian_binomial: modulus is not prime");
    k = std::min(k, n - k);
    // G(n, j) = G(n, j-1) * (p^{n-j+1} - 1) / (p^j - 1); every partial result is an integer.
    unsigned __int128 acc = 1;
    for (std::uint64_t j = 1; j <= k; ++j) {
        const std::uint64_t top = checked_pow(p, n - j + 1) - 1;
        const std::uint64_t bottom = checked_pow(p, j) - 1;
        acc = acc * top;
        acc /= bottom;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw OverflowError("gaussian_binomial: result exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace fpproj
