#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "capflow/error.hpp"
#include "capflow/lattice.hpp"
#include "capflow/polygon.hpp"
#include "oracles.hpp"

using namespace capflow;

TEST(Lattice, NeighborsOrder) {
    using A = std::array<Site, 4>;
    EXPECT_EQ(neighbors(Site{0, 0}), (A{Site{1, 0}, Site{0, 1}, Site{-1, 0}, Site{0, -1}}));
    EXPECT_EQ(neighbors(Site{2, -3}), (A{Site{3, -3}, Site{2, -2}, Site{1, -3}, Site{2, -4}}));
    for (Site n : neighbors(Site{0, 0})) {
        const auto back = neighbors(n);
        EXPECT_NE(std::find(back.begin(), back.end(), Site{0, 0}), back.end());
    }
}

TEST(Lattice, BondCanonicalOrder) {
    const Bond b = Bond::make({1, 0}, {0, 0});
    EXPECT_EQ(b.a, (Site{0, 0}));
    EXPECT_EQ(b.b, (Site{1, 0}));
    EXPECT_THROW(Bond::make({0, 0}, {1, 1}), Error);
    EXPECT_THROW(Bond::make({0, 0}, {0, 0}), Error);
}

TEST(Lattice, DualOfBondExamples) {
    // (1/2, -1/2) and (1/2, 1/2) are the dual sites (0, -1) and (0, 0).
    EXPECT_EQ(dual_bond(Bond::make({0, 0}, {1, 0})), DualBond::make({0, -1}, {0, 0}));
    // (-1/2, 1/2) and (1/2, 1/2).
    EXPECT_EQ(dual_bond(Bond::make({0, 0}, {0, 1})), DualBond::make({-1, 0}, {0, 0}));
    EXPECT_EQ(primal_bond(DualBond::make({0, -1}, {0, 0})), Bond::make({0, 0}, {1, 0}));
    EXPECT_EQ(primal_bond(DualBond::make({-1, 0}, {0, 0})), Bond::make({0, 0}, {0, 1}));
}

TEST(Lattice, InvolutionAndUnitSquare) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-1000, 1000);
    for (int i = 0; i < 1000; ++i) {
        const Site a{c(rng), c(rng)};
        const Site b = (rng() & 1) ? Site{a.x + 1, a.y} : Site{a.x, a.y + 1};
        const Bond e = Bond::make(a, b);
        const DualBond d = dual_bond(e);
        ASSERT_EQ(primal_bond(d), e);
        ASSERT_EQ(dual_bond(primal_bond(d)), d);

        // a, i, b, j: every primal endpoint is at distance 1/sqrt(2) from every dual endpoint,
        // and the two diagonals have length 1.
        for (const Site& p : {e.a, e.b}) {
            for (const DualSite& q : {d.a, d.b}) {
                const double dx = q.px() - p.x;
                const double dy = q.py() - p.y;
                ASSERT_DOUBLE_EQ(dx * dx + dy * dy, 0.5);
            }
        }
        const double ddx = d.a.px() - d.b.px();
        const double ddy = d.a.py() - d.b.py();
        ASSERT_DOUBLE_EQ(ddx * ddx + ddy * ddy, 1.0);
    }
}

TEST(Lattice, IntOfPoint) {
    EXPECT_EQ(int_of_point(0.5, 0.5), (DualSite{0, 0}));
    EXPECT_EQ(int_of_point(0.0, 0.0), (DualSite{0, 0}));
    EXPECT_EQ(int_of_point(3.2, -1.9), (DualSite{3, -2}));
    EXPECT_EQ(int_of_point(-0.0001, 0.9999), (DualSite{-1, 0}));
    EXPECT_EQ(int_of_point(1.0, -1.0), (DualSite{1, -1}));
}

TEST(Lattice, SquareDiscretization) {
    const ConvexPolygon sq = centered_square(Rational(1));
    const SiteSet one = sites_in_scaled_polygon(sq, 1);
    EXPECT_EQ(one.size(), 9u);
    for (int x = -1; x <= 1; ++x) {
        for (int y = -1; y <= 1; ++y) EXPECT_TRUE(one.contains({x, y}));
    }
    for (std::int64_t n = 1; n <= 12; ++n) {
        EXPECT_EQ(sites_in_scaled_polygon(sq, n).size(), static_cast<std::size_t>((2 * n + 1) * (2 * n + 1)));
    }
}

TEST(Lattice, TriangleDiscretizationMatchesBruteForce) {
    const ConvexPolygon tri({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
    const SiteSet got = sites_in_scaled_polygon(tri, 2);
    EXPECT_EQ(got, SiteSet({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}}));

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const ConvexPolygon p = oracle::random_polygon(rng);
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 3);
        const SiteSet s = sites_in_scaled_polygon(p, n);
        const ConvexPolygon big = scale(p, Rational(n));
        std::vector<Site> expected;
        const BoundingBox bb = big.lattice_bounds();
        for (int x = bb.xmin - 1; x <= bb.xmax + 1; ++x) {
            for (int y = bb.ymin - 1; y <= bb.ymax + 1; ++y) {
                if (oracle::rational_contains(big, Rational(x), Rational(y))) expected.push_back({x, y});
            }
        }
        ASSERT_EQ(s, SiteSet(expected));
    }
}

TEST(Lattice, DiscretizationIsMonotone) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const ConvexPolygon p = oracle::random_polygon(rng);
        const SiteSet small = sites_in_scaled_polygon(p, 1);
        const SiteSet large = sites_in_scaled_polygon(p, 2);
        for (const Site& s : small.sites()) ASSERT_TRUE(large.contains(s));
    }
}

TEST(Lattice, EmptyRegion) {
    const ConvexPolygon tiny({{Rational(1, 10), Rational(1, 10)},
                              {Rational(2, 10), Rational(1, 10)},
                              {Rational(1, 10), Rational(2, 10)}});
    try {
        (void)sites_in_scaled_polygon(tiny, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyRegion);
    }
}

TEST(Lattice, DiamondIndexRoundTrip) {
    for (int r : {0, 1, 2, 7}) {
        const DiamondIndex idx(r);
        EXPECT_EQ(idx.size(), static_cast<std::size_t>(2 * r * r + 2 * r + 1));
        for (std::size_t k = 0; k < idx.size(); ++k) {
            ASSERT_EQ(idx.index(idx.site(k)), static_cast<std::int64_t>(k));
        }
        EXPECT_EQ(idx.index({r + 1, 0}), -1);
        EXPECT_TRUE(idx.on_boundary({0, -r}));
    }
}

TEST(Lattice, SiteSetBasics) {
    const SiteSet s({{2, 1}, {0, 0}, {2, 1}, {-3, 0}});
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.l1_radius(), 3);
    EXPECT_TRUE(s.contains({2, 1}));
    EXPECT_FALSE(s.contains({1, 2}));
    EXPECT_EQ(s.bounds(), (BoundingBox{-3, 2, 0, 1}));
    EXPECT_TRUE(s.translated(1, 1).contains({3, 2}));
}
