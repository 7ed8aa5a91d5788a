#include "capflow/fpp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "capflow/error.hpp"
#include "capflow/seed.hpp"

namespace capflow {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
// Slack on real-valued cylinder membership tests.
constexpr double kEps = 1e-9;

// Dijkstra on the integer grid `box`, restricted to points accepted by `allowed`.
// `weight(x0, y0, x1, y1)` is the cost of the unit step between neighbours.
template <typename Weight, typename Allowed>
std::int64_t grid_dijkstra(const BoundingBox& box, std::int64_t sx, std::int64_t sy, std::int64_t tx, std::int64_t ty,
                           Weight weight, Allowed allowed) {
    auto inside = [&](std::int64_t x, std::int64_t y) {
        return x >= box.xmin && x <= box.xmax && y >= box.ymin && y <= box.ymax && allowed(x, y);
    };
    if (!inside(sx, sy) || !inside(tx, ty)) throw Error(ErrorCode::InvalidArgument, "endpoint outside the search region");
    if (sx == tx && sy == ty) return 0;

    const std::int64_t w = box.width();
    const std::int64_t h = box.height();
    auto index = [&](std::int64_t x, std::int64_t y) { return (y - box.ymin) * w + (x - box.xmin); };

    std::vector<std::int64_t> dist(static_cast<std::size_t>(w * h), kInf);
    using Entry = std::pair<std::int64_t, std::int64_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[index(sx, sy)] = 0;
    queue.push({0, index(sx, sy)});
    const std::int64_t target = index(tx, ty);

    constexpr std::int64_t dx[4] = {1, 0, -1, 0};
    constexpr std::int64_t dy[4] = {0, 1, 0, -1};
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d != dist[u]) continue;
        if (u == target) return d;
        const std::int64_t ux = box.xmin + u % w;
        const std::int64_t uy = box.ymin + u / w;
        for (int k = 0; k < 4; ++k) {
            const std::int64_t vx = ux + dx[k];
            const std::int64_t vy = uy + dy[k];
            if (!inside(vx, vy)) continue;
            const std::int64_t nd = d + weight(ux, uy, vx, vy);
            const std::int64_t v = index(vx, vy);
            if (nd < dist[v]) {
                dist[v] = nd;
                queue.push({nd, v});
            }
        }
    }
    throw Error(ErrorCode::Unreachable, "target not reachable inside the region");
}

Site to_site(std::int64_t x, std::int64_t y) { return Site{static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)}; }

std::int32_t narrow(std::int64_t v) {
    if (v < std::numeric_limits<std::int32_t>::min() || v > std::numeric_limits<std::int32_t>::max()) {
        throw Error(ErrorCode::Overflow, "coordinate outside the lattice range");
    }
    return static_cast<std::int32_t>(v);
}

}  // namespace

IntVec primitive(IntVec v) {
    if (v.x == 0 && v.y == 0) throw Error(ErrorCode::InvalidArgument, "zero vector has no direction");
    const std::int64_t g = std::gcd(v.x, v.y);
    return IntVec{v.x / g, v.y / g};
}

IntVec canonical_direction(IntVec v) {
    IntVec p = primitive(v);
    for (int k = 0; k < 4; ++k) {
        if (p.x > 0 && p.y >= 0) return p;
        p = perp(p);
    }
    return p;  // unreachable for nonzero p
}

std::int64_t distance(const CapacityField& field, Site a, Site b, const BoundingBox& box) {
    auto weight = [&](std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) {
        return field.capacity(Bond::make(to_site(x0, y0), to_site(x1, y1)));
    };
    return grid_dijkstra(box, a.x, a.y, b.x, b.y, weight, [](std::int64_t, std::int64_t) { return true; });
}

std::int64_t distance(const CapacityField& field, DualSite a, DualSite b, const BoundingBox& box) {
    auto weight = [&](std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) {
        const auto d = DualBond::make(DualSite{narrow(x0), narrow(y0)}, DualSite{narrow(x1), narrow(y1)});
        return field.capacity(primal_bond(d));
    };
    return grid_dijkstra(box, a.i, a.j, b.i, b.j, weight, [](std::int64_t, std::int64_t) { return true; });
}

std::int64_t path_weight(const CapacityField& field, std::span<const Site> path) {
    std::int64_t total = 0;
    for (std::size_t k = 1; k < path.size(); ++k) total += field.capacity(Bond::make(path[k - 1], path[k]));
    return total;
}

std::int64_t path_weight(const CapacityField& field, std::span<const DualSite> path) {
    std::int64_t total = 0;
    for (std::size_t k = 1; k < path.size(); ++k) {
        total += field.capacity(primal_bond(DualBond::make(path[k - 1], path[k])));
    }
    return total;
}

BoundingBox mu_box(IntVec v, std::int64_t n) {
    const std::int64_t tx = n * v.x;
    const std::int64_t ty = n * v.y;
    const std::int64_t extent = std::max(std::abs(tx), std::abs(ty));
    const std::int64_t margin = (extent + 1) / 2;
    return BoundingBox{narrow(std::min<std::int64_t>(0, tx) - margin), narrow(std::max<std::int64_t>(0, tx) + margin),
                       narrow(std::min<std::int64_t>(0, ty) - margin), narrow(std::max<std::int64_t>(0, ty) + margin)};
}

MuEstimate estimate_mu(const DistributionSpec& spec, IntVec v, std::int64_t n, std::int64_t reps, std::uint64_t seed,
                       std::int64_t scale) {
    if (primitive(v) != v) throw Error(ErrorCode::InvalidArgument, "direction must be a primitive vector");
    if (n < 4) throw Error(ErrorCode::InvalidArgument, "estimate_mu needs n >= 4");
    if (reps < 2) throw Error(ErrorCode::InvalidArgument, "estimate_mu needs reps >= 2");

    const BoundingBox box = mu_box(v, n);
    const Site target{narrow(n * v.x), narrow(n * v.y)};

    __int128 sum = 0;
    __int128 sum_sq = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
        const CapacityField field(spec, derive_seed(seed, {r}), scale);
        const std::int64_t d = distance(field, Site{0, 0}, target, box);
        sum += d;
        sum_sq += static_cast<__int128>(d) * d;
    }

    MuEstimate est;
    est.direction = v;
    est.n_used = n;
    est.replicates = reps;
    if (sum > std::numeric_limits<std::int64_t>::max()) throw Error(ErrorCode::Overflow, "passage-time sum overflows");
    est.mean = Rational(static_cast<std::int64_t>(sum), n * reps);
    // reps * sum d^2 - (sum d)^2 = reps (reps - 1) s_d^2
    const __int128 centered = sum_sq * reps - sum * sum;
    const long double var_d = static_cast<long double>(centered) / (static_cast<long double>(reps) * (reps - 1));
    const long double var_ratio = var_d / (static_cast<long double>(n) * n);
    est.std_error = static_cast<double>(std::sqrt(var_ratio / reps));
    return est;
}

MuTable MuTable::exact_l1(const Rational& micro_per_unit) {
    MuTable t;
    t.l1_scale_ = micro_per_unit;
    return t;
}

void MuTable::insert(const MuEstimate& estimate) {
    if (primitive(estimate.direction) != estimate.direction) {
        throw Error(ErrorCode::InvalidArgument, "table directions must be primitive");
    }
    entries_[estimate.direction] = estimate;
}

const MuEstimate* MuTable::lookup(IntVec w) const {
    IntVec p = primitive(w);
    for (int k = 0; k < 4; ++k) {
        if (auto it = entries_.find(p); it != entries_.end()) return &it->second;
        p = perp(p);
    }
    return nullptr;
}

Rational MuTable::eval(IntVec w) const {
    if (w.x == 0 && w.y == 0) return Rational(0);
    const IntVec p = primitive(w);
    const std::int64_t multiple = w.x != 0 ? w.x / p.x : w.y / p.y;
    if (const MuEstimate* e = lookup(w)) return e->mean * Rational(multiple);
    if (l1_scale_) return *l1_scale_ * Rational(std::abs(w.x) + std::abs(w.y));
    throw Error(ErrorCode::MissingDirection,
                "no table entry for direction (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");
}

Rational MuTable::mu_min() const {
    std::optional<Rational> best = l1_scale_;
    for (const auto& [dir, e] : entries_) {
        const Rational unit = e.mean / Rational(std::abs(dir.x) + std::abs(dir.y));
        if (!best || unit < *best) best = unit;
    }
    if (!best) throw Error(ErrorCode::MissingDirection, "empty table");
    return *best;
}

Rational MuTable::mu_max() const {
    std::optional<Rational> best = l1_scale_;
    for (const auto& [dir, e] : entries_) {
        const Rational unit = e.mean / Rational(std::abs(dir.x) + std::abs(dir.y));
        if (!best || unit > *best) best = unit;
    }
    if (!best) throw Error(ErrorCode::MissingDirection, "empty table");
    return *best;
}

std::string mu_table_csv(const MuTable& table) {
    std::string out = "direction_x,direction_y,n,reps,mean_micro,stderr_micro\n";
    char buf[256];
    for (const auto& [dir, e] : table.entries()) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%lld,", static_cast<long long>(dir.x),
                      static_cast<long long>(dir.y), static_cast<long long>(e.n_used),
                      static_cast<long long>(e.replicates));
        out += buf;
        if (e.mean.is_integer()) {
            std::snprintf(buf, sizeof buf, "%lld,", static_cast<long long>(e.mean.num()));
        } else {
            std::snprintf(buf, sizeof buf, "%.6f,", e.mean.to_double());
        }
        out += buf;
        std::snprintf(buf, sizeof buf, "%.6f\n", e.std_error);
        out += buf;
    }
    return out;
}

bool Cylinder::contains(Site s) const noexcept {
    const double rx = s.x - origin.x;
    const double ry = s.y - origin.y;
    const double along = rx * axis.x + ry * axis.y;
    if (along < -kEps || along > length + kEps) return false;
    const double px = rx - along * axis.x;
    const double py = ry - along * axis.y;
    return std::sqrt(px * px + py * py) <= radius + kEps;
}

BoundingBox Cylinder::bounds() const noexcept {
    const double ex = origin.x + length * axis.x;
    const double ey = origin.y + length * axis.y;
    const double pad = radius + 1.0;
    return BoundingBox{static_cast<std::int32_t>(std::floor(std::min(origin.x, ex) - pad)),
                       static_cast<std::int32_t>(std::ceil(std::max(origin.x, ex) + pad)),
                       static_cast<std::int32_t>(std::floor(std::min(origin.y, ey) - pad)),
                       static_cast<std::int32_t>(std::ceil(std::max(origin.y, ey) + pad))};
}

CylinderEnds cylinder_ends(const Cylinder& cyl) {
    const Point2 far{cyl.origin.x + cyl.length * cyl.axis.x, cyl.origin.y + cyl.length * cyl.axis.y};
    const BoundingBox box = cyl.bounds();
    std::optional<Site> start, finish;
    double best_start = 0.0, best_finish = 0.0;
    auto sq = [](double x, double y) { return x * x + y * y; };
    // scan in lexicographic order so the first minimiser wins ties
    for (std::int32_t x = box.xmin; x <= box.xmax; ++x) {
        for (std::int32_t y = box.ymin; y <= box.ymax; ++y) {
            const Site s{x, y};
            if (!cyl.contains(s)) continue;
            const double ds = sq(x - cyl.origin.x, y - cyl.origin.y);
            const double df = sq(x - far.x, y - far.y);
            if (!start || ds < best_start - kEps) {
                start = s;
                best_start = ds;
            }
            if (!finish || df < best_finish - kEps) {
                finish = s;
                best_finish = df;
            }
        }
    }
    if (!start) throw Error(ErrorCode::Unreachable, "cylinder contains no lattice point");
    return CylinderEnds{*start, *finish};
}

std::int64_t cylinder_crossing_time(const CapacityField& field, Point2 z, Point2 axis, double radius, double length) {
    if (radius < 1.0 || length < 1.0) throw Error(ErrorCode::InvalidArgument, "cylinder needs radius >= 1 and length >= 1");
    const double norm = std::hypot(axis.x, axis.y);
    if (std::abs(norm - 1.0) > 1e-6) throw Error(ErrorCode::InvalidArgument, "cylinder axis must be a unit vector");
    const Cylinder cyl{z, Point2{axis.x / norm, axis.y / norm}, radius, length};
    const CylinderEnds ends = cylinder_ends(cyl);

    auto weight = [&](std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) {
        return field.capacity(Bond::make(to_site(x0, y0), to_site(x1, y1)));
    };
    auto allowed = [&](std::int64_t x, std::int64_t y) { return cyl.contains(to_site(x, y)); };
    return grid_dijkstra(cyl.bounds(), ends.start.x, ends.start.y, ends.finish.x, ends.finish.y, weight, allowed);
}

}  // namespace capflow
