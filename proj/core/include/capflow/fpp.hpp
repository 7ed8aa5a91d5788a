#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "capflow/capacity.hpp"
#include "capflow/lattice.hpp"
#include "capflow/rational.hpp"

namespace capflow {

/// Integer vector of Z^2 (directions, side vectors).
struct IntVec {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend auto operator<=>(const IntVec&, const IntVec&) = default;
};

/// (x, y) / gcd(|x|, |y|); throws InvalidArgument for the zero vector.
IntVec primitive(IntVec v);
/// z -> z^perp = (-y, x).
inline IntVec perp(IntVec v) noexcept { return IntVec{-v.y, v.x}; }
/// Representative of the orbit of v under 90-degree rotations with x > 0, y >= 0.
IntVec canonical_direction(IntVec v);

/// Shortest-path passage time between two sites, using only sites in `box`.
/// Throws InvalidArgument if an endpoint lies outside the box and Unreachable
/// if no path exists.
std::int64_t distance(const CapacityField& field, Site a, Site b, const BoundingBox& box);
/// Same on the dual lattice, where a dual bond weighs the capacity of the primal
/// bond it crosses; `box` is in dual index coordinates (i, j).
std::int64_t distance(const CapacityField& field, DualSite a, DualSite b, const BoundingBox& box);

/// l(gamma) for a primal path given as consecutive sites.
std::int64_t path_weight(const CapacityField& field, std::span<const Site> path);
/// l*(gamma) = l(s(gamma)) for a dual path given as consecutive dual sites.
std::int64_t path_weight(const CapacityField& field, std::span<const DualSite> path);

struct MuEstimate {
    IntVec direction;
    std::int64_t n_used = 0;
    std::int64_t replicates = 0;
    Rational mean;           // micro-units per copy of `direction`
    double std_error = 0.0;  // of `mean`
};

/// Box used by estimate_mu: the bounding box of the segment [0, n v] grown by
/// half its longest extent on every side.
BoundingBox mu_box(IntVec v, std::int64_t n);

/// Mean of d(0, n v)/n over `reps` independent fields; replicate r uses seed
/// derive_seed(seed, {r}). Requires v primitive, n >= 4, reps >= 2.
MuEstimate estimate_mu(const DistributionSpec& spec, IntVec v, std::int64_t n, std::int64_t reps, std::uint64_t seed,
                       std::int64_t scale = kDefaultScale);

/// Table of time-constant estimates, evaluated with homogeneity and the
/// rotation symmetry mu(z) = mu(z^perp).
class MuTable {
public:
    MuTable() = default;

    /// Table for a law whose time constant is exactly c * |.|_1 (constant capacities);
    /// every direction resolves without an entry.
    static MuTable exact_l1(const Rational& micro_per_unit);

    void insert(const MuEstimate& estimate);
    const std::map<IntVec, MuEstimate>& entries() const noexcept { return entries_; }
    std::optional<Rational> l1_scale() const noexcept { return l1_scale_; }

    /// Entry whose direction is a rotation of the primitive direction of w, if any.
    const MuEstimate* lookup(IntVec w) const;
    /// mu(w) in micro-units. Throws MissingDirection.
    Rational eval(IntVec w) const;

    /// Extremes of mu over tabulated directions normalised to |v|_1 = 1.
    Rational mu_min() const;
    Rational mu_max() const;

private:
    std::map<IntVec, MuEstimate> entries_;
    std::optional<Rational> l1_scale_;
};

/// CSV with header direction_x,direction_y,n,reps,mean_micro,stderr_micro.
std::string mu_table_csv(const MuTable& table);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Integer points y with distance(y - z, R * axis) <= radius and
/// 0 <= <y - z, axis> <= length.
struct Cylinder {
    Point2 origin;
    Point2 axis;  // unit vector
    double radius = 1.0;
    double length = 1.0;

    bool contains(Site s) const noexcept;
    BoundingBox bounds() const noexcept;
};

struct CylinderEnds {
    Site start;   // closest cylinder point to the origin
    Site finish;  // closest cylinder point to origin + length * axis
};

/// Closest points with lexicographic (x, then y) tie-break. Throws Unreachable
/// if the cylinder holds no integer point.
CylinderEnds cylinder_ends(const Cylinder& cyl);

/// Minimal passage time from start to finish using only bonds with both ends
/// in the cylinder. Requires radius >= 1 and length >= 1.
std::int64_t cylinder_crossing_time(const CapacityField& field, Point2 z, Point2 axis, double radius, double length);

}  // namespace capflow
