#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fpproj/field.hpp"
#include "oracles.hpp"

using namespace fpproj;

TEST(Ambient, ValidatesModulusAndDimension) {
    EXPECT_NO_THROW(Ambient::make(3, 2));
    EXPECT_THROW(Ambient::make(4, 2), DomainError);
    EXPECT_THROW(Ambient::make(1, 2), DomainError);
    EXPECT_THROW(Ambient::make(3, 0), DomainError);
    EXPECT_THROW(Ambient::make(2, 64), OverflowError);
    EXPECT_EQ(Ambient::make(5, 3).point_count(), 125u);
    EXPECT_EQ(Ambient::make(2, 63).point_count(), std::uint64_t{1} << 63);
}

TEST(Ambient, InverseTable) {
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 101}) {
        auto amb = Ambient::make(p, 1);
        for (Residue a = 1; a < p; ++a) EXPECT_EQ(amb.mul(a, amb.inv(a)), 1u) << "p=" << p << " a=" << a;
        EXPECT_THROW(amb.inv(0), DomainError);
    }
}

TEST(Dot, Examples) {
    auto a3 = Ambient::make(3, 2);
    EXPECT_EQ(dot(FpVector::of(a3, {1, 2}), FpVector::of(a3, {2, 1})), 1u);
    auto a7 = Ambient::make(7, 3);
    auto v = FpVector::of(a7, {3, 5, 6});
    EXPECT_EQ(dot(FpVector::zero(a7), v), 0u);
    EXPECT_EQ(dot(FpVector::unit(a7, 0), FpVector::unit(a7, 1)), 0u);
    EXPECT_THROW(dot(FpVector::zero(a3), v), DomainError);
}

TEST(FpVector, RejectsUnreducedAndWrongLength) {
    auto a = Ambient::make(5, 2);
    EXPECT_THROW(FpVector(a, {5, 0}), DomainError);
    EXPECT_THROW(FpVector(a, {1, 2, 3}), DomainError);
    EXPECT_EQ(FpVector::of(a, {-1, 7}), FpVector(a, {4, 2}));
}

TEST(Rref, Examples) {
    auto a3 = Ambient::make(3, 2);
    auto id = FpMatrix::of(a3, {{1, 0}, {0, 1}});
    auto r = rref(id);
    EXPECT_EQ(r.matrix, id);
    EXPECT_EQ(r.rank, 2u);

    auto z = rref(FpMatrix::of(a3, {{0, 0}, {0, 0}}));
    EXPECT_EQ(z.rank, 0u);
    EXPECT_EQ(z.matrix.rows(), 0u);

    auto a5 = Ambient::make(5, 2);
    auto r5 = rref(FpMatrix::of(a5, {{1, 2}, {2, 4}}));
    EXPECT_EQ(r5.rank, 1u);
    EXPECT_EQ(r5.matrix, FpMatrix::of(a5, {{1, 2}}));
    EXPECT_EQ(r5.pivots, (std::vector<std::size_t>{0}));

    // Scaling and swapping needed.
    auto r7 = rref(FpMatrix::of(Ambient::make(7, 3), {{0, 3, 1}, {2, 1, 0}}));
    EXPECT_EQ(r7.matrix, FpMatrix::of(Ambient::make(7, 3), {{1, 0, 1}, {0, 1, 5}}));
}

namespace {

FpMatrix random_matrix(std::mt19937_64& rng, const Ambient& amb, std::size_t rows) {
    std::vector<Residue> data(rows * amb.n());
    for (auto& x : data) x = static_cast<Residue>(rng() % amb.p());
    return FpMatrix::from_flat(amb, data);
}

oracle::Vec as_vec(std::span<const Residue> s) { return oracle::Vec(s.begin(), s.end()); }

}  // namespace

TEST(Rref, PropertiesOnRandomMatrices) {
    std::mt19937_64 rng(2024);
    for (std::uint64_t p : {2, 3, 5, 7})
        for (std::size_t n = 1; n <= 4; ++n)
            for (int trial = 0; trial < 40; ++trial) {
                auto amb = Ambient::make(p, n);
                auto m = random_matrix(rng, amb, 1 + rng() % 5);
                auto r = rref(m);
                // Idempotent.
                EXPECT_EQ(rref(r.matrix).matrix, r.matrix);
                EXPECT_EQ(r.rank, r.matrix.rows());
                // Canonical shape.
                for (std::size_t i = 0; i < r.rank; ++i) {
                    if (i) {
                        EXPECT_LT(r.pivots[i - 1], r.pivots[i]);
                    }
                    for (std::size_t k = 0; k < r.rank; ++k)
                        EXPECT_EQ(r.matrix.at(k, r.pivots[i]), k == i ? 1u : 0u);
                    for (std::size_t c = 0; c < r.pivots[i]; ++c) EXPECT_EQ(r.matrix.at(i, c), 0u);
                }
                // Row spaces agree, by explicit closure.
                std::vector<oracle::Vec> orig, red;
                for (std::size_t i = 0; i < m.rows(); ++i) orig.push_back(as_vec(m.row(i)));
                for (std::size_t i = 0; i < r.rank; ++i) red.push_back(as_vec(r.matrix.row(i)));
                auto span_red = oracle::span_points(red, p, n);
                for (const auto& row : orig) EXPECT_TRUE(span_red.count(oracle::encode(row, p)));
                EXPECT_EQ(oracle::span_points(orig, p, n), span_red);
            }
}

TEST(Nullspace, Examples) {
    auto a3 = Ambient::make(3, 2);
    EXPECT_EQ(nullspace(FpMatrix::of(a3, {{1, 0}, {0, 1}})).rows(), 0u);
    auto a33 = Ambient::make(3, 3);
    auto full = nullspace(FpMatrix::of(a33, {{0, 0, 0}}));
    EXPECT_EQ(full.rows(), 3u);

    auto ns = nullspace(FpMatrix::of(a33, {{1, 0, 1}}));
    ASSERT_EQ(ns.rows(), 2u);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(dot(ns.row_vector(i), FpVector::of(a33, {1, 0, 1})), 0u);
    // Exhaustive: exactly 9 of the 27 vectors solve x0 + x2 = 0, and they are
    // the span of the returned basis.
    std::set<std::uint64_t> solutions;
    for (std::uint64_t c = 0; c < 27; ++c) {
        auto v = oracle::decode(c, 3, 3);
        if ((v[0] + v[2]) % 3 == 0) solutions.insert(c);
    }
    EXPECT_EQ(solutions.size(), 9u);
    EXPECT_EQ(oracle::span_points({as_vec(ns.row(0)), as_vec(ns.row(1))}, 3, 3), solutions);
}

TEST(Nullspace, RankNullityOnRandomMatrices) {
    std::mt19937_64 rng(7);
    for (std::uint64_t p : {2, 3, 5, 7})
        for (std::size_t n = 1; n <= 4; ++n)
            for (int trial = 0; trial < 30; ++trial) {
                auto amb = Ambient::make(p, n);
                auto m = random_matrix(rng, amb, 1 + rng() % 4);
                auto ns = nullspace(m);
                EXPECT_EQ(rref(m).rank + ns.rows(), n);
                EXPECT_EQ(rref(ns).matrix, ns);
                for (std::size_t i = 0; i < ns.rows(); ++i)
                    for (std::size_t j = 0; j < m.rows(); ++j) EXPECT_EQ(dot(ns.row_vector(i), m.row_vector(j)), 0u);
            }
}

TEST(GaussianBinomial, Examples) {
    EXPECT_EQ(gaussian_binomial(3, 1, 3), 13u);
    EXPECT_EQ(gaussian_binomial(4, 2, 2), 35u);
    for (std::uint64_t n = 0; n <= 6; ++n) {
        EXPECT_EQ(gaussian_binomial(n, 0, 5), 1u);
        EXPECT_EQ(gaussian_binomial(n, n, 5), 1u);
    }
    EXPECT_THROW(gaussian_binomial(3, 4, 3), DomainError);
    EXPECT_THROW(gaussian_binomial(3, 1, 4), DomainError);
}

TEST(GaussianBinomial, MatchesBruteForceSubspaceCount) {
    for (std::uint32_t p : {2u, 3u})
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::size_t k = 0; k <= n && k <= 2; ++k)
                EXPECT_EQ(gaussian_binomial(n, k, p), oracle::all_subspaces(p, n, k).size())
                    << "p=" << p << " n=" << n << " k=" << k;
    EXPECT_EQ(oracle::all_subspaces(2, 4, 2).size(), 35u);
}

TEST(GaussianBinomial, Symmetry) {
    for (std::uint64_t p : {2, 3, 5})
        for (std::uint64_t n = 0; n <= 5; ++n)
            for (std::uint64_t k = 0; k <= n; ++k) EXPECT_EQ(gaussian_binomial(n, k, p), gaussian_binomial(n, n - k, p));
}

TEST(GaussianBinomial, OverflowIsRejected) {
    EXPECT_THROW(gaussian_binomial(64, 32, 2), OverflowError);
    EXPECT_THROW(gaussian_binomial(30, 15, 13), OverflowError);
    // Largest values near the edge still compute.
    EXPECT_EQ(gaussian_binomial(63, 1, 2), (std::uint64_t{1} << 63) - 1);
}

TEST(Codec, Examples) {
    auto a = Ambient::make(3, 2);
    EXPECT_EQ(encode(FpVector::zero(a)), 0u);
    EXPECT_EQ(encode(FpVector::of(a, {2, 1})), 5u);
    EXPECT_THROW(decode(a, 9), DomainError);
}

TEST(Codec, BijectiveOnSmallSpaces) {
    for (auto [p, n] : {std::pair{3u, 3u}, {5u, 5u}, {2u, 10u}, {7u, 4u}}) {
        auto amb = Ambient::make(p, n);
        ASSERT_LE(amb.point_count(), 3125u);
        std::set<std::vector<Residue>> seen;
        for (PointCode c = 0; c < amb.point_count(); ++c) {
            auto v = decode(amb, c);
            EXPECT_EQ(encode(v), c);
            seen.insert(std::vector<Residue>(v.coords().begin(), v.coords().end()));
            EXPECT_EQ(v.coords()[0], c % p);  // little-endian
        }
        EXPECT_EQ(seen.size(), amb.point_count());
    }
}
