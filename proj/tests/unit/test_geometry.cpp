#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "capflow/error.hpp"
#include "capflow/functional.hpp"
#include "capflow/polygon.hpp"
#include "oracles.hpp"

using namespace capflow;

namespace {

constexpr std::int64_t kUnit = std::int64_t{1} << 20;

ConvexPolygon unit_square() {
    return ConvexPolygon({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(1), Rational(1)}, {Rational(0), Rational(1)}});
}

const MuTable& l1_table() {
    static const MuTable t = MuTable::exact_l1(Rational(kUnit));
    return t;
}

}  // namespace

TEST(Polygon, RejectsNonConvexOrClockwise) {
    EXPECT_THROW(ConvexPolygon({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}}), Error);
    EXPECT_THROW(ConvexPolygon({{Rational(0), Rational(0)}, {Rational(0), Rational(1)}, {Rational(1), Rational(0)}}), Error);
    // collinear middle vertex
    EXPECT_THROW(ConvexPolygon({{Rational(0), Rational(0)},
                                {Rational(1), Rational(0)},
                                {Rational(2), Rational(0)},
                                {Rational(0), Rational(1)}}),
                 Error);
}

TEST(Polygon, ContainsOriginInterior) {
    EXPECT_TRUE(contains_origin_interior(centered_square(Rational(1))));
    EXPECT_FALSE(contains_origin_interior(
        ConvexPolygon({{Rational(1), Rational(1)}, {Rational(2), Rational(1)}, {Rational(1), Rational(2)}})));
    EXPECT_FALSE(contains_origin_interior(unit_square()));
}

TEST(Polygon, ScaleRoundTripIsBitwise) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const ConvexPolygon p = oracle::random_polygon(rng);
        EXPECT_EQ(scale(scale(p, Rational(1, 2)), Rational(2)), p);
        EXPECT_EQ(scale(p, Rational(1)), p);
    }
}

TEST(Polygon, RegularPolygon) {
    const ConvexPolygon sq = regular_polygon(4, Rational(1));
    ASSERT_EQ(sq.size(), 4u);
    EXPECT_EQ(sq.vertices()[0], (RationalPoint{Rational(1), Rational(0)}));
    for (const auto& v : sq.vertices()) {
        EXPECT_EQ(v.x.den() * v.y.den() <= kVertexDenominator * kVertexDenominator, true);
        EXPECT_EQ(std::abs(v.x.to_double()) + std::abs(v.y.to_double()), 1.0);
    }
    for (int k : {3, 5, 8, 16, 32, 64}) {
        for (const Rational& r : {Rational(1, 3), Rational(1), Rational(17, 2)}) {
            const ConvexPolygon p = regular_polygon(k, r);
            EXPECT_TRUE(contains_origin_interior(p));
            for (const auto& v : p.vertices()) {
                EXPECT_EQ(kVertexDenominator % v.x.den(), 0);
                EXPECT_EQ(kVertexDenominator % v.y.den(), 0);
            }
        }
    }
}

TEST(Polygon, ParseSpecsAndFiles) {
    EXPECT_EQ(parse_polygon("square:1"), centered_square(Rational(1)));
    EXPECT_EQ(parse_polygon("ngon:6:2"), regular_polygon(6, Rational(2)));
    const ConvexPolygon tri({{Rational(-1, 3), Rational(-1, 2)}, {Rational(2), Rational(0)}, {Rational(0), Rational(3, 4)}});
    const std::string path = testing::TempDir() + "capflow_poly.txt";
    {
        std::ofstream out(path);
        out << format_polygon_file(tri);
    }
    EXPECT_EQ(parse_polygon("@" + path), tri);
    std::remove(path.c_str());
    EXPECT_THROW(parse_polygon("circle:1"), Error);
    EXPECT_THROW(parse_polygon("@/nonexistent/file"), Error);
}

TEST(Functional, ClosedFormsUnderL1) {
    EXPECT_EQ(i_functional(unit_square(), l1_table()).value, Rational(4 * kUnit));
    EXPECT_EQ(i_functional(centered_square(Rational(1)), l1_table()).value, Rational(8 * kUnit));
    const ConvexPolygon tri({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
    EXPECT_EQ(i_functional(tri, l1_table()).value, Rational(4 * kUnit));
    EXPECT_EQ(i_functional(scale(unit_square(), Rational(3)), l1_table()).value, Rational(12 * kUnit));
}

TEST(Functional, MuEvalSymmetries) {
    MuTable t;
    t.insert(MuEstimate{{1, 0}, 32, 5, Rational(kUnit), 0.0});
    EXPECT_EQ(t.eval({5, 0}), Rational(5 * kUnit));
    EXPECT_EQ(t.eval({0, -3}), Rational(3 * kUnit));
    t.insert(MuEstimate{{1, 1}, 32, 5, Rational(7, 3), 0.0});
    EXPECT_EQ(t.eval({2, 2}), Rational(14, 3));
    EXPECT_EQ(t.eval({-2, 2}), Rational(14, 3));
    try {
        (void)t.eval({2, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingDirection);
    }
}

TEST(Functional, HomogeneityIsExact) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> num(1, 50);
    for (int i = 0; i < 100; ++i) {
        const ConvexPolygon p = oracle::random_polygon(rng);
        const Rational lambda(num(rng), num(rng));
        EXPECT_EQ(i_functional(scale(p, lambda), l1_table()).value, lambda * i_functional(p, l1_table()).value);
    }
}

TEST(Functional, MonotoneUnderContraction) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> t(1, 15);
    for (int i = 0; i < 50; ++i) {
        const ConvexPolygon outer = oracle::random_polygon(rng);
        const Rational factor(t(rng), 16);
        Rational cx(0), cy(0);
        for (const auto& v : outer.vertices()) {
            cx += v.x;
            cy += v.y;
        }
        cx /= Rational(static_cast<std::int64_t>(outer.size()));
        cy /= Rational(static_cast<std::int64_t>(outer.size()));
        std::vector<RationalPoint> inner;
        for (const auto& v : outer.vertices()) inner.push_back({cx + factor * (v.x - cx), cy + factor * (v.y - cy)});
        const ConvexPolygon in(inner);
        EXPECT_LE(i_functional(in, l1_table()).value, i_functional(outer, l1_table()).value);
    }
}

TEST(Functional, RotationInvariance) {
    MuTable t;
    t.insert(MuEstimate{{1, 0}, 64, 30, Rational(3, 2), 0.0});
    t.insert(MuEstimate{{1, 1}, 64, 30, Rational(5, 2), 0.0});
    const std::vector<std::pair<int, int>> corners{{2, 1}, {1, 2}, {-1, 2}, {-2, 1}, {-2, -1}, {-1, -2}, {1, -2}, {2, -1}};
    std::vector<RationalPoint> oct, rotated;
    for (const auto& [x, y] : corners) {
        oct.push_back({Rational(x), Rational(y)});
        rotated.push_back({Rational(-y), Rational(x)});
    }
    const Rational a = i_functional(ConvexPolygon(oct), t).value;
    EXPECT_EQ(a, i_functional(ConvexPolygon(rotated), t).value);
    EXPECT_EQ(a, Rational(22));  // four axis sides of length 2, four unit diagonal steps
    EXPECT_GT(a, Rational(0));
}

TEST(Functional, RegularPolygonsIncreaseTowardDisc) {
    Rational prev(0);
    for (int k : {4, 8, 16, 32}) {
        const Rational v = i_functional(regular_polygon(k, Rational(1)), l1_table()).value;
        EXPECT_GE(v, prev);
        prev = v;
    }
    // l1 length of the unit circle is 8.
    EXPECT_LT(prev.to_double(), 8.0 * kUnit + 1.0);
    EXPECT_GT(prev.to_double(), 7.9 * kUnit);
}

TEST(Functional, SideDirections) {
    const auto dirs = side_directions(centered_square(Rational(1)));
    ASSERT_EQ(dirs.size(), 1u);
    EXPECT_EQ(dirs[0], (IntVec{1, 0}));
    const ConvexPolygon tri({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
    const auto tdirs = side_directions(tri);
    EXPECT_EQ(tdirs, (std::vector<IntVec>{{1, 0}, {1, 1}}));
    const SideDecomposition d = decompose_side({Rational(-3, 2), Rational(9, 4)});
    EXPECT_EQ(d.direction, (IntVec{-2, 3}));
    EXPECT_EQ(d.length, Rational(3, 4));
}
