#include "capflow/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "capflow/error.hpp"

namespace capflow {

namespace {

// Sign of cross(b - a, c - a).
int orientation(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c) {
    const Rational cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return cross.num() > 0 ? 1 : (cross.num() < 0 ? -1 : 0);
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    const __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
    if (l > INT64_MAX) throw Error(ErrorCode::Overflow, "common denominator too large");
    return static_cast<std::int64_t>(l);
}

std::int64_t ceil_of(const Rational& r) { return -(-r).floor(); }

std::vector<RationalPoint> strict_hull(std::vector<RationalPoint> pts) {
    auto less = [](const RationalPoint& p, const RationalPoint& q) {
        return p.x < q.x || (p.x == q.x && p.y < q.y);
    };
    std::sort(pts.begin(), pts.end(), less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;

    std::vector<RationalPoint> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && orientation(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

IntegerPolygon::IntegerPolygon(std::vector<std::int64_t> xs, std::vector<std::int64_t> ys, std::int64_t factor)
    : xs_(std::move(xs)), ys_(std::move(ys)), factor_(factor) {}

bool IntegerPolygon::contains(std::int64_t x, std::int64_t y) const noexcept {
    const __int128 px = static_cast<__int128>(x) * factor_;
    const __int128 py = static_cast<__int128>(y) * factor_;
    const std::size_t k = xs_.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = (i + 1) % k;
        const __int128 ex = static_cast<__int128>(xs_[j]) - xs_[i];
        const __int128 ey = static_cast<__int128>(ys_[j]) - ys_[i];
        const __int128 cross = ex * (py - ys_[i]) - ey * (px - xs_[i]);
        if (cross < 0) return false;
    }
    return true;
}

ConvexPolygon::ConvexPolygon(std::vector<RationalPoint> vertices) : vertices_(std::move(vertices)) {
    const std::size_t k = vertices_.size();
    if (k < 3) throw Error(ErrorCode::InvalidArgument, "a polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < k; ++i) {
        const auto& a = vertices_[i];
        const auto& b = vertices_[(i + 1) % k];
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i || j == (i + 1) % k) continue;
            if (orientation(a, b, vertices_[j]) <= 0) {
                throw Error(ErrorCode::InvalidArgument, "vertices are not in strictly convex counterclockwise order");
            }
        }
    }
}

RationalPoint ConvexPolygon::side(std::size_t i) const {
    const auto& a = vertices_[i % vertices_.size()];
    const auto& b = vertices_[(i + 1) % vertices_.size()];
    return RationalPoint{a.x - b.x, a.y - b.y};
}

IntegerPolygon ConvexPolygon::integer_form() const {
    std::int64_t factor = 1;
    for (const auto& v : vertices_) factor = checked_lcm(checked_lcm(factor, v.x.den()), v.y.den());
    std::vector<std::int64_t> xs, ys;
    for (const auto& v : vertices_) {
        xs.push_back((v.x * Rational(factor)).num());
        ys.push_back((v.y * Rational(factor)).num());
    }
    return IntegerPolygon(std::move(xs), std::move(ys), factor);
}

BoundingBox ConvexPolygon::lattice_bounds() const {
    Rational xmin = vertices_[0].x, xmax = xmin, ymin = vertices_[0].y, ymax = ymin;
    for (const auto& v : vertices_) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    auto narrow = [](std::int64_t v) {
        if (v < INT32_MIN || v > INT32_MAX) throw Error(ErrorCode::Overflow, "polygon exceeds lattice range");
        return static_cast<std::int32_t>(v);
    };
    return BoundingBox{narrow(ceil_of(xmin)), narrow(xmax.floor()), narrow(ceil_of(ymin)), narrow(ymax.floor())};
}

ConvexPolygon scale(const ConvexPolygon& polygon, const Rational& factor) {
    if (factor <= Rational(0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
    std::vector<RationalPoint> out;
    out.reserve(polygon.size());
    for (const auto& v : polygon.vertices()) out.push_back({v.x * factor, v.y * factor});
    return ConvexPolygon(std::move(out));
}

ConvexPolygon regular_polygon(int k, const Rational& radius) {
    if (k < 3) throw Error(ErrorCode::InvalidArgument, "regular polygon needs k >= 3");
    if (radius <= Rational(0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
    const double r = radius.to_double();
    std::vector<RationalPoint> pts;
    for (int j = 0; j < k; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / k;
        const auto qx = static_cast<std::int64_t>(std::llround(r * std::cos(angle) * kVertexDenominator));
        const auto qy = static_cast<std::int64_t>(std::llround(r * std::sin(angle) * kVertexDenominator));
        pts.push_back({Rational(qx, kVertexDenominator), Rational(qy, kVertexDenominator)});
    }
    auto hull = strict_hull(std::move(pts));
    if (hull.size() < 3) throw Error(ErrorCode::InvalidArgument, "radius too small for the vertex grid");
    // start from the vertex on the positive x axis side, like the unrounded construction
    auto first = std::max_element(hull.begin(), hull.end(), [](const auto& p, const auto& q) {
        return p.x < q.x || (p.x == q.x && p.y > q.y);
    });
    std::rotate(hull.begin(), first, hull.end());
    return ConvexPolygon(std::move(hull));
}

ConvexPolygon centered_square(const Rational& half_side) {
    if (half_side <= Rational(0)) throw Error(ErrorCode::InvalidArgument, "square size must be positive");
    const Rational h = half_side;
    return ConvexPolygon({{-h, -h}, {h, -h}, {h, h}, {-h, h}});
}

bool contains_origin_interior(const ConvexPolygon& polygon) {
    const RationalPoint origin{Rational(0), Rational(0)};
    const auto verts = polygon.vertices();
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (orientation(verts[i], verts[(i + 1) % verts.size()], origin) <= 0) return false;
    }
    return true;
}

ConvexPolygon parse_polygon(std::string_view spec) {
    if (spec.starts_with("@")) return read_polygon_file(std::string(spec.substr(1)));

    std::vector<std::string> parts;
    std::stringstream ss{std::string(spec)};
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);

    if (parts.size() == 2 && parts[0] == "square") return centered_square(Rational::parse(parts[1]));
    if (parts.size() == 3 && parts[0] == "ngon") {
        const Rational k = Rational::parse(parts[1]);
        if (!k.is_integer() || k.num() < 3 || k.num() > 1'000'000) {
            throw Error(ErrorCode::InvalidArgument, "ngon needs an integer k >= 3");
        }
        return regular_polygon(static_cast<int>(k.num()), Rational::parse(parts[2]));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown polygon spec '" + std::string(spec) + "'");
}

ConvexPolygon read_polygon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open polygon file " + path);
    std::vector<RationalPoint> pts;
    for (std::string line; std::getline(in, line);) {
        std::istringstream row(line);
        std::string x, y, extra;
        if (!(row >> x)) continue;  // blank line
        if (!(row >> y) || (row >> extra)) throw Error(ErrorCode::InvalidArgument, "bad polygon line: " + line);
        pts.push_back({Rational::parse(x), Rational::parse(y)});
    }
    return ConvexPolygon(std::move(pts));
}

std::string format_polygon_file(const ConvexPolygon& polygon) {
    std::string out;
    for (const auto& v : polygon.vertices()) out += v.x.str() + " " + v.y.str() + "\n";
    return out;
}

}  // namespace capflow
