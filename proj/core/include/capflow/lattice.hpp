#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace capflow {

class ConvexPolygon;

/// A point of Z^2.
struct Site {
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend auto operator<=>(const Site&, const Site&) = default;
};

inline std::int64_t l1_norm(Site s) noexcept {
    return (s.x < 0 ? -std::int64_t{s.x} : s.x) + (s.y < 0 ? -std::int64_t{s.y} : s.y);
}

/// A point of the dual lattice Z^2 + (1/2, 1/2); (i, j) stands for (i + 1/2, j + 1/2).
struct DualSite {
    std::int32_t i = 0;
    std::int32_t j = 0;

    double px() const noexcept { return i + 0.5; }
    double py() const noexcept { return j + 0.5; }

    friend auto operator<=>(const DualSite&, const DualSite&) = default;
};

/// Nearest-neighbour pair {a, b} of Z^2 with a < b lexicographically.
struct Bond {
    Site a;
    Site b;

    /// Canonicalizes the endpoint order; throws InvalidArgument unless |a - b|_1 = 1.
    static Bond make(Site p, Site q);

    bool horizontal() const noexcept { return a.y == b.y; }

    friend auto operator<=>(const Bond&, const Bond&) = default;
};

/// Nearest-neighbour pair of dual sites, canonical order.
struct DualBond {
    DualSite a;
    DualSite b;

    static DualBond make(DualSite p, DualSite q);

    friend auto operator<=>(const DualBond&, const DualBond&) = default;
};

/// Neighbours in the fixed order E, N, W, S.
std::array<Site, 4> neighbors(Site s) noexcept;
std::array<DualSite, 4> neighbors(DualSite s) noexcept;

/// The dual bond crossing e: a, i, b, j form a unit square.
DualBond dual_bond(const Bond& e) noexcept;
/// Inverse of dual_bond.
Bond primal_bond(const DualBond& d) noexcept;

/// The unique dual site x with z in x + [-1/2, 1/2)^2.
DualSite int_of_point(double zx, double zy) noexcept;

struct BoundingBox {
    std::int32_t xmin = 0;
    std::int32_t xmax = -1;
    std::int32_t ymin = 0;
    std::int32_t ymax = -1;

    bool empty() const noexcept { return xmin > xmax || ymin > ymax; }
    bool contains(Site s) const noexcept { return s.x >= xmin && s.x <= xmax && s.y >= ymin && s.y <= ymax; }
    std::int64_t width() const noexcept { return std::int64_t{xmax} - xmin + 1; }
    std::int64_t height() const noexcept { return std::int64_t{ymax} - ymin + 1; }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Finite, sorted, duplicate-free set of sites.
class SiteSet {
public:
    SiteSet() = default;
    explicit SiteSet(std::vector<Site> sites);

    std::span<const Site> sites() const noexcept { return sites_; }
    std::size_t size() const noexcept { return sites_.size(); }
    bool empty() const noexcept { return sites_.empty(); }
    bool contains(Site s) const noexcept;
    const BoundingBox& bounds() const noexcept { return bounds_; }

    /// max |x|_1 over members; 0 for the empty set.
    std::int64_t l1_radius() const noexcept;

    SiteSet translated(std::int32_t dx, std::int32_t dy) const;

    friend bool operator==(const SiteSet& a, const SiteSet& b) { return a.sites_ == b.sites_; }

private:
    std::vector<Site> sites_;
    BoundingBox bounds_;
};

/// Lattice points inside or on the boundary of n*P. Throws EmptyRegion when there are none.
SiteSet sites_in_scaled_polygon(const ConvexPolygon& polygon, std::int64_t n);

/// Dense indexing of the l1 ball V_n = {x : |x|_1 <= n}, row by row from y = -n.
class DiamondIndex {
public:
    explicit DiamondIndex(std::int32_t radius);

    std::int32_t radius() const noexcept { return radius_; }
    std::size_t size() const noexcept { return size_; }
    bool contains(Site s) const noexcept { return l1_norm(s) <= radius_; }
    bool on_boundary(Site s) const noexcept { return l1_norm(s) == radius_; }

    /// Index of s, or -1 when s is outside the ball.
    std::int64_t index(Site s) const noexcept;
    Site site(std::size_t idx) const noexcept;

private:
    std::int32_t radius_;
    std::size_t size_;
    std::vector<std::int64_t> row_offset_;
};

}  // namespace capflow

template <>
struct std::hash<capflow::Site> {
    std::size_t operator()(const capflow::Site& s) const noexcept {
        return std::hash<std::uint64_t>{}((std::uint64_t(std::uint32_t(s.x)) << 32) | std::uint32_t(s.y));
    }
};
