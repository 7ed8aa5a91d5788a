#pragma once

#include <vector>

#include "capflow/fpp.hpp"
#include "capflow/polygon.hpp"
#include "capflow/rational.hpp"

namespace capflow {

/// Side s_i - s_{i+1} written as length * direction with direction primitive.
struct SideDecomposition {
    IntVec direction;
    Rational length;
};

SideDecomposition decompose_side(const RationalPoint& side);

/// Distinct side directions of the polygon up to 90-degree rotations,
/// each in canonical_direction() form, sorted.
std::vector<IntVec> side_directions(const ConvexPolygon& polygon);

struct IValue {
    Rational value;  // micro-units
};

/// I(P) = sum_i mu(s_i - s_{i+1}). Throws MissingDirection when a side
/// direction is not resolvable by the table.
IValue i_functional(const ConvexPolygon& polygon, const MuTable& table);

}  // namespace capflow
