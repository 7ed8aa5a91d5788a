#include "capflow/functional.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "capflow/error.hpp"

namespace capflow {

SideDecomposition decompose_side(const RationalPoint& side) {
    const std::int64_t den = std::lcm(side.x.den(), side.y.den());
    const std::int64_t a = (side.x * Rational(den)).num();
    const std::int64_t b = (side.y * Rational(den)).num();
    if (a == 0 && b == 0) throw Error(ErrorCode::InvalidArgument, "degenerate side");
    const std::int64_t g = std::gcd(a, b);
    return SideDecomposition{IntVec{a / g, b / g}, Rational(g, den)};
}

std::vector<IntVec> side_directions(const ConvexPolygon& polygon) {
    std::vector<IntVec> dirs;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        dirs.push_back(canonical_direction(decompose_side(polygon.side(i)).direction));
    }
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    return dirs;
}

IValue i_functional(const ConvexPolygon& polygon, const MuTable& table) {
    Rational total(0);
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const SideDecomposition side = decompose_side(polygon.side(i));
        total += table.eval(side.direction) * side.length;
    }
    return IValue{total};
}

}  // namespace capflow
