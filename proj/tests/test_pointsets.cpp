#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fpproj/pointset.hpp"

using namespace fpproj;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "fpproj_test_pointsets";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

}  // namespace

TEST(RandomPointSet, SizesAndDeterminism) {
    auto amb = Ambient::make(3, 3);
    EXPECT_TRUE(random_point_set(amb, 0, 1).is_empty());
    EXPECT_EQ(random_point_set(amb, 27, 1), PointSet::full(amb));
    for (std::uint64_t size : {1, 5, 13, 26}) {
        auto a = random_point_set(amb, size, 99);
        EXPECT_EQ(a.size(), size);
        EXPECT_EQ(a.members().size(), size);
        EXPECT_EQ(a, random_point_set(amb, size, 99));
    }
    EXPECT_NE(random_point_set(amb, 10, 1), random_point_set(amb, 10, 2));
    EXPECT_THROW(random_point_set(amb, 28, 1), DomainError);
}

TEST(RandomPointSet, InclusionFrequencyIsUniform) {
    auto amb = Ambient::make(5, 3);
    std::vector<int> hits(amb.point_count(), 0);
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) random_point_set(amb, 25, s).for_each([&](PointCode c) { ++hits[c]; });
    for (PointCode c = 0; c < amb.point_count(); ++c) {
        const double freq = hits[c] / double(seeds);
        EXPECT_GE(freq, 0.12) << "point " << c;
        EXPECT_LE(freq, 0.28) << "point " << c;
    }
}

TEST(PointSet, BudgetAndDuplicates) {
    Budget small;
    small.max_points = 100;
    EXPECT_THROW(PointSet::empty(Ambient::make(5, 3), small), BudgetError);
    auto amb = Ambient::make(3, 2);
    std::vector<PointCode> dup{1, 4, 1};
    EXPECT_THROW(PointSet::from_codes(amb, dup), DomainError);
}

TEST(AffineFlat, Examples) {
    auto amb = Ambient::make(3, 2);
    auto e1 = span_of_point(FpVector::unit(amb, 0));
    auto flat = affine_flat_set(e1, FpVector::of(amb, {0, 1}));
    EXPECT_EQ(flat, PointSet::from_points(amb, {FpVector::of(amb, {0, 1}), FpVector::of(amb, {1, 1}),
                                                FpVector::of(amb, {2, 1})}));
    EXPECT_EQ(affine_flat_set(e1, FpVector::of(amb, {2, 0})), affine_flat_set(e1, FpVector::zero(amb)));

    auto a5 = Ambient::make(5, 3);
    for (std::size_t k = 0; k <= 3; ++k)
        for (const auto& w : enumerate_subspaces(a5, k)) {
            auto f = affine_flat_set(w, FpVector::of(a5, {1, 2, 3}));
            EXPECT_EQ(f.size(), w.point_count());
        }
}

TEST(CircleSet, Examples) {
    EXPECT_EQ(circle_set(5).size(), 4u);
    EXPECT_EQ(circle_set(7).size(), 8u);
    EXPECT_THROW(circle_set(2), DomainError);
    auto s = circle_set(13);
    s.for_each([&](PointCode c) {
        auto v = decode(s.ambient(), c);
        EXPECT_EQ((std::uint64_t{v[0]} * v[0] + std::uint64_t{v[1]} * v[1]) % 13, 1u);
        EXPECT_EQ(v[2], 1u);
    });
}

TEST(CircleSet, SizeMatchesBruteForceForOddPrimes) {
    for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        std::uint64_t brute = 0;
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) brute += (a * a + b * b) % p == 1;
        EXPECT_EQ(circle_set(p).size(), brute);
        EXPECT_EQ(brute, p % 4 == 1 ? p - 1 : p + 1) << "p=" << p;
    }
}

TEST(MomentCurve, Examples) {
    auto s = moment_curve_set(7, 3);
    EXPECT_EQ(s.size(), 6u);
    std::set<Residue> firsts;
    s.for_each([&](PointCode c) {
        auto v = decode(s.ambient(), c);
        const Residue a = v[0];
        firsts.insert(a);
        EXPECT_EQ(v[1], a * a % 7);
        EXPECT_EQ(v[2], a * a * a % 7);
    });
    EXPECT_EQ(firsts.size(), 6u);
    EXPECT_EQ(firsts.count(0), 0u);
    for (std::uint64_t p : {3, 5, 7, 11, 13})
        for (std::uint64_t n : {2, 3, 4}) EXPECT_EQ(moment_curve_set(p, n).size(), p - 1);
    EXPECT_THROW(moment_curve_set(7, 1), DomainError);
    EXPECT_THROW(moment_curve_set(2, 3), DomainError);
}

TEST(PointSetFile, RoundTrip) {
    auto amb = Ambient::make(3, 3);
    auto e = random_point_set(amb, 11, 5);
    auto path = temp_file("roundtrip.txt").string();
    save_point_set(e, path);
    EXPECT_EQ(load_point_set(path), e);
    EXPECT_EQ(load_point_set(path, &amb), e);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "p=3,n=3");
}

TEST(PointSetFile, EmptyBodyAndErrors) {
    auto path = temp_file("cases.txt");
    write_text(path, "p=3,n=2\n");
    EXPECT_TRUE(load_point_set(path.string()).is_empty());

    auto other = Ambient::make(3, 3);
    EXPECT_THROW(load_point_set(path.string(), &other), ParseError);

    write_text(path, "p=3;n=2\n1,2\n");
    EXPECT_THROW(load_point_set(path.string()), ParseError);
    write_text(path, "p=4,n=2\n1,2\n");
    EXPECT_THROW(load_point_set(path.string()), ParseError);
    write_text(path, "p=3,n=2\n1,3\n");
    EXPECT_THROW(load_point_set(path.string()), ParseError);
    write_text(path, "p=3,n=2\n1,2,0\n");
    EXPECT_THROW(load_point_set(path.string()), ParseError);

    write_text(path, "p=3,n=2\n1,2\n0,0\n1,2\n");
    try {
        load_point_set(path.string());
        FAIL() << "duplicate accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}
