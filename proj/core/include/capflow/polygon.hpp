#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capflow/lattice.hpp"
#include "capflow/rational.hpp"

namespace capflow {

struct RationalPoint {
    Rational x;
    Rational y;

    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// Polygon with integer vertices, obtained by clearing denominators with a common
/// factor; point tests take coordinates already multiplied by that factor.
class IntegerPolygon {
public:
    IntegerPolygon(std::vector<std::int64_t> xs, std::vector<std::int64_t> ys, std::int64_t factor);

    std::int64_t factor() const noexcept { return factor_; }
    /// Is the lattice point (x, y) of the unscaled plane inside or on the boundary?
    bool contains(std::int64_t x, std::int64_t y) const noexcept;

private:
    std::vector<std::int64_t> xs_;
    std::vector<std::int64_t> ys_;
    std::int64_t factor_;
};

/// Counterclockwise, strictly convex polygon with rational vertices.
class ConvexPolygon {
public:
    /// Throws InvalidArgument unless there are >= 3 vertices in strictly convex
    /// counterclockwise position.
    explicit ConvexPolygon(std::vector<RationalPoint> vertices);

    std::span<const RationalPoint> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    /// Side vector s_i - s_{i+1}, indices taken cyclically.
    RationalPoint side(std::size_t i) const;

    IntegerPolygon integer_form() const;
    /// Smallest box of integer points covering the polygon.
    BoundingBox lattice_bounds() const;

    friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

private:
    std::vector<RationalPoint> vertices_;
};

ConvexPolygon scale(const ConvexPolygon& polygon, const Rational& factor);

/// Convex hull of the k points (r cos 2pi j/k, r sin 2pi j/k) rounded to multiples of 2^-16.
ConvexPolygon regular_polygon(int k, const Rational& radius);

/// Square with vertices (+-half_side, +-half_side).
ConvexPolygon centered_square(const Rational& half_side);

bool contains_origin_interior(const ConvexPolygon& polygon);

/// "square:<r>", "ngon:<k>:<r>" or "@<path>"; the file holds one "x y" rational
/// pair per line, counterclockwise.
ConvexPolygon parse_polygon(std::string_view spec);
ConvexPolygon read_polygon_file(const std::string& path);
std::string format_polygon_file(const ConvexPolygon& polygon);

inline constexpr std::int64_t kVertexDenominator = 1 << 16;

}  // namespace capflow
