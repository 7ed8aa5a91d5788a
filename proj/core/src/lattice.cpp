#include "capflow/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "capflow/error.hpp"
#include "capflow/polygon.hpp"

namespace capflow {

Bond Bond::make(Site p, Site q) {
    if (l1_norm(Site{p.x - q.x, p.y - q.y}) != 1) throw Error(ErrorCode::InvalidArgument, "bond endpoints are not adjacent");
    return p < q ? Bond{p, q} : Bond{q, p};
}

DualBond DualBond::make(DualSite p, DualSite q) {
    if (std::abs(p.i - q.i) + std::abs(p.j - q.j) != 1) {
        throw Error(ErrorCode::InvalidArgument, "dual bond endpoints are not adjacent");
    }
    return p < q ? DualBond{p, q} : DualBond{q, p};
}

std::array<Site, 4> neighbors(Site s) noexcept {
    return {Site{s.x + 1, s.y}, Site{s.x, s.y + 1}, Site{s.x - 1, s.y}, Site{s.x, s.y - 1}};
}

std::array<DualSite, 4> neighbors(DualSite s) noexcept {
    return {DualSite{s.i + 1, s.j}, DualSite{s.i, s.j + 1}, DualSite{s.i - 1, s.j}, DualSite{s.i, s.j - 1}};
}

DualBond dual_bond(const Bond& e) noexcept {
    if (e.horizontal()) {
        // {(x,y),(x+1,y)} is crossed by the segment from (x+1/2, y-1/2) to (x+1/2, y+1/2).
        return DualBond{DualSite{e.a.x, e.a.y - 1}, DualSite{e.a.x, e.a.y}};
    }
    return DualBond{DualSite{e.a.x - 1, e.a.y}, DualSite{e.a.x, e.a.y}};
}

Bond primal_bond(const DualBond& d) noexcept {
    if (d.a.i == d.b.i) {
        // vertical dual bond from (i+1/2, j+1/2) to (i+1/2, j+3/2)
        return Bond{Site{d.a.i, d.b.j}, Site{d.a.i + 1, d.b.j}};
    }
    return Bond{Site{d.b.i, d.a.j}, Site{d.b.i, d.a.j + 1}};
}

DualSite int_of_point(double zx, double zy) noexcept {
    // z - (i + 1/2) in [-1/2, 1/2)  <=>  i = floor(z)
    return DualSite{static_cast<std::int32_t>(std::floor(zx)), static_cast<std::int32_t>(std::floor(zy))};
}

SiteSet::SiteSet(std::vector<Site> sites) : sites_(std::move(sites)) {
    std::sort(sites_.begin(), sites_.end());
    sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
    if (sites_.empty()) return;
    bounds_ = BoundingBox{sites_.front().x, sites_.back().x, sites_.front().y, sites_.front().y};
    for (const Site& s : sites_) {
        bounds_.ymin = std::min(bounds_.ymin, s.y);
        bounds_.ymax = std::max(bounds_.ymax, s.y);
    }
}

bool SiteSet::contains(Site s) const noexcept {
    return std::binary_search(sites_.begin(), sites_.end(), s);
}

std::int64_t SiteSet::l1_radius() const noexcept {
    std::int64_t r = 0;
    for (const Site& s : sites_) r = std::max(r, l1_norm(s));
    return r;
}

SiteSet SiteSet::translated(std::int32_t dx, std::int32_t dy) const {
    std::vector<Site> moved;
    moved.reserve(sites_.size());
    for (const Site& s : sites_) moved.push_back(Site{s.x + dx, s.y + dy});
    return SiteSet(std::move(moved));
}

SiteSet sites_in_scaled_polygon(const ConvexPolygon& polygon, std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "scale factor must be >= 1");
    const ConvexPolygon scaled = scale(polygon, Rational(n));
    const IntegerPolygon grid = scaled.integer_form();

    std::vector<Site> inside;
    const BoundingBox box = scaled.lattice_bounds();
    for (std::int64_t y = box.ymin; y <= box.ymax; ++y) {
        for (std::int64_t x = box.xmin; x <= box.xmax; ++x) {
            if (grid.contains(x, y)) inside.push_back(Site{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
        }
    }
    if (inside.empty()) throw Error(ErrorCode::EmptyRegion, "no lattice point inside the scaled polygon");
    return SiteSet(std::move(inside));
}

DiamondIndex::DiamondIndex(std::int32_t radius) : radius_(radius), size_(0) {
    if (radius < 0) throw Error(ErrorCode::InvalidArgument, "negative diamond radius");
    row_offset_.resize(2 * static_cast<std::size_t>(radius) + 2);
    std::int64_t acc = 0;
    for (std::int32_t y = -radius; y <= radius; ++y) {
        row_offset_[y + radius] = acc;
        acc += 2 * (radius - std::abs(y)) + 1;
    }
    row_offset_.back() = acc;
    size_ = static_cast<std::size_t>(acc);
}

std::int64_t DiamondIndex::index(Site s) const noexcept {
    if (!contains(s)) return -1;
    const std::int32_t half = radius_ - std::abs(s.y);
    return row_offset_[s.y + radius_] + (s.x + half);
}

Site DiamondIndex::site(std::size_t idx) const noexcept {
    auto it = std::upper_bound(row_offset_.begin(), row_offset_.end() - 1, static_cast<std::int64_t>(idx));
    const auto row = static_cast<std::int32_t>(std::distance(row_offset_.begin(), it) - 1);
    const std::int32_t y = row - radius_;
    const std::int32_t half = radius_ - std::abs(y);
    return Site{static_cast<std::int32_t>(static_cast<std::int64_t>(idx) - row_offset_[row]) - half, y};
}

}  // namespace capflow
