#include <gtest/gtest.h>

#include <random>

#include "fpproj/fourier.hpp"
#include "oracles.hpp"

using namespace fpproj;

namespace {

PointCode negate_code(const Ambient& amb, PointCode c) { return encode(FpVector::zero(amb) - decode(amb, c)); }

}  // namespace

TEST(Dft, ZeroFrequencyIsSize) {
    for (auto [p, n] : {std::pair{3u, 2u}, {5u, 3u}, {7u, 2u}}) {
        auto amb = Ambient::make(p, n);
        for (std::uint64_t size : {0, 1, 7, 20}) {
            if (size > amb.point_count()) continue;
            auto e = random_point_set(amb, size, size + p);
            EXPECT_NEAR(dft(e)[0].real(), double(size), 1e-9);
            EXPECT_NEAR(dft(e)[0].imag(), 0.0, 1e-9);
        }
    }
}

TEST(Dft, FullSpaceSpectrum) {
    auto amb = Ambient::make(5, 3);
    auto t = dft(PointSet::full(amb));
    EXPECT_NEAR(t[0].real(), 125.0, 1e-9);
    for (PointCode xi = 1; xi < amb.point_count(); ++xi) EXPECT_LT(std::abs(t[xi]), 1e-6);
}

TEST(Dft, FactoredMatchesDirectAndOracle) {
    std::mt19937_64 rng(17);
    for (auto [p, n] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {7u, 2u}, {2u, 4u}}) {
        auto amb = Ambient::make(p, n);
        for (int trial = 0; trial < 5; ++trial) {
            auto e = random_point_set(amb, rng() % (amb.point_count() + 1), rng());
            auto fast = dft(e);
            auto slow = dft_direct(e);
            for (PointCode xi = 0; xi < amb.point_count(); ++xi) {
                EXPECT_LT(std::abs(fast[xi] - slow[xi]), 1e-9);
                EXPECT_LT(std::abs(fast[xi] - oracle::fourier_coefficient(e.members(), xi, p, n)), 1e-9);
            }
        }
    }
}

TEST(Dft, BudgetIsEnforced) {
    Budget small;
    small.max_points = 100;
    auto amb = Ambient::make(5, 3);
    EXPECT_THROW(dft(PointSet::empty(amb), small), BudgetError);
}

TEST(Dft, ConjugateSymmetryAndLinearity) {
    std::mt19937_64 rng(23);
    for (auto [p, n] : {std::pair{3u, 3u}, {5u, 2u}, {7u, 2u}}) {
        auto amb = Ambient::make(p, n);
        for (int trial = 0; trial < 5; ++trial) {
            auto e = random_point_set(amb, rng() % amb.point_count(), rng());
            auto t = dft(e);
            for (PointCode xi = 0; xi < amb.point_count(); ++xi)
                EXPECT_LT(std::abs(t[negate_code(amb, xi)] - std::conj(t[xi])), 1e-9);

            // Split E into two disjoint halves.
            std::vector<PointCode> a, b;
            for (auto c : e.members()) (rng() & 1 ? a : b).push_back(c);
            auto ta = dft(PointSet::from_codes(amb, a));
            auto tb = dft(PointSet::from_codes(amb, b));
            for (PointCode xi = 0; xi < amb.point_count(); ++xi) EXPECT_LT(std::abs(t[xi] - ta[xi] - tb[xi]), 1e-9);
        }
    }
}

TEST(Plancherel, Examples) {
    auto amb = Ambient::make(5, 2);
    EXPECT_EQ(plancherel_defect(PointSet::empty(amb)), 0.0);
    auto one = random_point_set(amb, 1, 3);
    auto t = dft(one);
    for (const auto& v : t.values()) EXPECT_NEAR(std::abs(v), 1.0, 1e-12);
    EXPECT_LT(plancherel_defect(one), 1e-9);
}

TEST(Plancherel, RandomSetsP7N2) {
    auto amb = Ambient::make(7, 2);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto e = random_point_set(amb, 1 + seed % 49, seed);
        EXPECT_LT(plancherel_defect(e), 1e-6 * 49.0 * double(e.size())) << "seed " << seed;
    }
}

TEST(CosetEnergyViaFourier, Examples) {
    auto amb = Ambient::make(3, 2);
    auto w = span_of_point(FpVector::of(amb, {0, 1}));
    EXPECT_NEAR(coset_energy_via_fourier(PointSet::empty(amb), w), 0.0, 1e-12);
    auto e = PointSet::from_points(amb, {FpVector::of(amb, {0, 0}), FpVector::of(amb, {1, 0}),
                                         FpVector::of(amb, {1, 1})});
    EXPECT_NEAR(coset_energy_via_fourier(e, w), 5.0, 1e-9);

    auto a5 = Ambient::make(5, 3);
    for (std::size_t k = 1; k <= 2; ++k)
        for (const auto& pl : enumerate_subspaces(a5, k)) {
            const double m = double(3 - k);
            EXPECT_NEAR(coset_energy_via_fourier(PointSet::full(a5), pl), std::pow(5.0, 6.0 - m), 1e-6);
        }
    EXPECT_THROW(coset_energy_via_fourier(e, Subspace::zero(amb)), DomainError);
}

TEST(CosetIdentity, Examples) {
    auto amb = Ambient::make(5, 3);
    auto planes = enumerate_subspaces(amb, 2);
    auto r = verify_coset_identity(PointSet::empty(amb), planes[0], 1e-6);
    EXPECT_EQ(r.spatial, 0u);
    EXPECT_NEAR(r.spectral, 0.0, 1e-12);
    EXPECT_TRUE(r.pass);
    for (const auto& w : planes) {
        auto one = verify_coset_identity(affine_flat_set(w, FpVector::of(amb, {2, 0, 1})), w, 1e-6);
        EXPECT_EQ(one.spatial, 625u);
        EXPECT_TRUE(one.pass);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto e = random_point_set(amb, 1 + seed * 6, seed);
        auto t = dft(e);
        for (const auto& w : planes) EXPECT_TRUE(verify_coset_identity(t, e, w, 1e-6).pass);
    }
}

TEST(CosetIdentity, GridAgreesWithOracle) {
    struct Cfg {
        std::uint32_t p;
        std::size_t n, m;
    };
    std::mt19937_64 rng(31);
    for (auto c : {Cfg{3, 3, 1}, Cfg{3, 3, 2}, Cfg{5, 3, 1}, Cfg{5, 3, 2}, Cfg{3, 4, 2}}) {
        auto amb = Ambient::make(c.p, c.n);
        auto grass = enumerate_subspaces(amb, c.n - c.m);
        for (int trial = 0; trial < 4; ++trial) {
            auto e = random_point_set(amb, rng() % (amb.point_count() + 1), rng());
            auto t = dft(e);
            EXPECT_LE(plancherel_defect(t, e.size()), 1e-6 * std::max(1.0, double(amb.point_count() * e.size())));
            for (const auto& w : grass) {
                auto r = verify_coset_identity(t, e, w, 1e-6);
                EXPECT_TRUE(r.pass) << "defect " << r.defect();
                std::set<std::uint64_t> wpts;
                w.for_each_point([&](PointCode x) { wpts.insert(x); });
                EXPECT_EQ(r.spatial, oracle::coset_energy(e.members(), wpts, c.p, c.n));
            }
        }
    }
}

TEST(CosetIdentity, FrequencyMultiplicityAcrossFamily) {
    // Summing the spectral side over every W of dimension n - m counts each
    // nonzero frequency once per m-dimensional subspace containing it.
    auto amb = Ambient::make(3, 3);
    auto e = random_point_set(amb, 10, 4);
    auto t = dft(e);
    for (std::size_t m = 1; m <= 2; ++m) {
        double lhs = 0;
        const auto grass = enumerate_subspaces(amb, 3 - m);
        for (const auto& w : grass) lhs += coset_energy_via_fourier(t, w) * std::pow(3.0, double(m));
        const double mult = double(gaussian_binomial(2, m - 1, 3));
        double rhs = double(grass.size()) * t.power(0);
        for (PointCode xi = 1; xi < amb.point_count(); ++xi) rhs += mult * t.power(xi);
        EXPECT_NEAR(lhs, rhs, 1e-6 * rhs);
    }
}

TEST(FamilyCosetEnergy, MatchesFourierSide) {
    auto amb = Ambient::make(3, 3);
    auto g = Family::full(amb, 1);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto e = random_point_set(amb, 5, seed);
        auto t = dft(e);
        double spectral = 0;
        for (const auto& w : g) spectral += coset_energy_via_fourier(t, w);
        EXPECT_NEAR(double(family_coset_energy(e, g)), spectral, 1e-6 * spectral);
        EXPECT_EQ(double(family_coset_energy(e, g)), std::round(spectral));
    }
}
