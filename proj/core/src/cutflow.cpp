#include "capflow/cutflow.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "capflow/error.hpp"
#include "capflow/maxflow.hpp"

namespace capflow {

namespace {

constexpr std::int32_t kSourceNode = 0;
constexpr std::int32_t kSinkNode = 1;

void require_inside(const SiteSet& source, std::int32_t n) {
    if (source.empty()) throw Error(ErrorCode::InvalidArgument, "source set is empty");
    if (source.l1_radius() >= n) {
        throw Error(ErrorCode::SourceTouchesBoundary,
                    "source reaches |x|_1 = " + std::to_string(source.l1_radius()) + " >= box radius " + std::to_string(n));
    }
}

// Sites of V_n connected to B_n without entering `blocked`.
std::vector<char> sink_side(const DiamondIndex& idx, const std::vector<char>& blocked) {
    std::vector<char> seen(idx.size(), 0);
    std::vector<std::int64_t> stack;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx.on_boundary(idx.site(k)) && !blocked[k]) {
            seen[k] = 1;
            stack.push_back(static_cast<std::int64_t>(k));
        }
    }
    while (!stack.empty()) {
        const Site s = idx.site(static_cast<std::size_t>(stack.back()));
        stack.pop_back();
        for (const Site& t : neighbors(s)) {
            const std::int64_t k = idx.index(t);
            if (k >= 0 && !seen[k] && !blocked[k]) {
                seen[k] = 1;
                stack.push_back(k);
            }
        }
    }
    return seen;
}

}  // namespace

FlowAssignment::FlowAssignment(std::int32_t radius)
    : index_(radius), east_(index_.size(), 0), north_(index_.size(), 0) {}

const std::int64_t* FlowAssignment::slot(Site from, Site to, bool& flipped) const {
    const std::int64_t dx = std::int64_t{to.x} - from.x;
    const std::int64_t dy = std::int64_t{to.y} - from.y;
    if (std::abs(dx) + std::abs(dy) != 1) throw Error(ErrorCode::InvalidArgument, "flow queried on a non-bond");
    if (!index_.contains(from) || !index_.contains(to)) return nullptr;
    flipped = dx < 0 || dy < 0;
    const Site owner = flipped ? to : from;
    const auto k = static_cast<std::size_t>(index_.index(owner));
    return dx != 0 ? &east_[k] : &north_[k];
}

std::int64_t* FlowAssignment::slot(Site from, Site to, bool& flipped) {
    return const_cast<std::int64_t*>(std::as_const(*this).slot(from, to, flipped));
}

std::int64_t FlowAssignment::at(Site from, Site to) const {
    bool flipped = false;
    const std::int64_t* p = slot(from, to, flipped);
    if (p == nullptr) return 0;
    return flipped ? -*p : *p;
}

void FlowAssignment::set(Site from, Site to, std::int64_t value) {
    bool flipped = false;
    std::int64_t* p = slot(from, to, flipped);
    if (p == nullptr) throw Error(ErrorCode::InvalidArgument, "bond leaves the flow's box");
    *p = flipped ? -value : value;
}

std::int64_t FlowAssignment::divergence(Site x) const {
    std::int64_t total = 0;
    for (const Site& y : neighbors(x)) total += at(x, y);
    return total;
}

MaxFlowResult truncated_maxflow(const CapacityField& field, const SiteSet& source, std::int32_t n) {
    require_inside(source, n);
    const DiamondIndex idx(n);
    if (idx.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max() / 4)) {
        throw Error(ErrorCode::BudgetExceeded, "box too large for the flow network");
    }

    std::vector<std::int32_t> node(idx.size());
    std::int32_t next = 2;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const Site s = idx.site(k);
        if (source.contains(s)) node[k] = kSourceNode;
        else if (idx.on_boundary(s)) node[k] = kSinkNode;
        else node[k] = next++;
    }

    struct EdgeRef {
        Site from;
        Site to;
    };
    FlowNetwork net(next);
    std::vector<EdgeRef> refs;
    refs.reserve(2 * idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const Site s = idx.site(k);
        for (const Site t : {Site{s.x + 1, s.y}, Site{s.x, s.y + 1}}) {
            const std::int64_t kt = idx.index(t);
            if (kt < 0 || node[k] == node[kt]) continue;
            const std::int64_t cap = field.capacity(Bond{s, t});
            if (cap == 0) continue;
            net.add_edge(node[k], node[kt], cap);
            refs.push_back({s, t});
        }
    }

    MaxFlowResult result;
    result.box_used = n;
    result.flow = FlowAssignment(n);
    result.value = net.edges() == 0 ? 0 : net.solve(kSourceNode, kSinkNode);
    for (std::size_t e = 0; e < refs.size(); ++e) {
        if (std::int64_t f = net.flow(static_cast<std::int32_t>(e)); f != 0) result.flow.set(refs[e].from, refs[e].to, f);
    }

    // Source side: the residual-reachable set with every pocket not connected to B_n filled in.
    std::vector<char> reachable_site(idx.size(), 0);
    if (net.edges() == 0) {
        for (std::size_t k = 0; k < idx.size(); ++k) reachable_site[k] = node[k] == kSourceNode;
    } else {
        const std::vector<char> reach = net.residual_reachable(kSourceNode);
        for (std::size_t k = 0; k < idx.size(); ++k) reachable_site[k] = reach[node[k]];
    }
    const std::vector<char> outside = sink_side(idx, reachable_site);

    std::vector<Bond> cut;
    std::int64_t cut_weight = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const Site s = idx.site(k);
        for (const Site t : {Site{s.x + 1, s.y}, Site{s.x, s.y + 1}}) {
            const std::int64_t kt = idx.index(t);
            if (kt < 0 || outside[k] == outside[kt]) continue;
            cut.push_back(Bond{s, t});
            cut_weight += field.capacity(Bond{s, t});
        }
    }
    if (cut_weight != result.value) throw std::logic_error("max-flow value differs from its cut certificate");
    std::sort(cut.begin(), cut.end());
    result.mincut = Cutset{std::move(cut), source};
    return result;
}

MaxFlowResult mincut_infinity(const CapacityField& field, const SiteSet& source, const MincutOptions& options) {
    if (source.empty()) throw Error(ErrorCode::InvalidArgument, "source set is empty");
    const std::int64_t radius = source.l1_radius();
    const std::int64_t n0 = radius + 8;
    const std::int64_t n_max = std::min<std::int64_t>(options.nmax_factor * std::max<std::int64_t>(radius, 1),
                                                      options.max_box_radius);
    if (n0 > std::numeric_limits<std::int32_t>::max() / 2) throw Error(ErrorCode::Overflow, "source too large");

    MaxFlowResult prev = truncated_maxflow(field, source, static_cast<std::int32_t>(n0));
    while (true) {
        const std::int64_t n = 2 * std::int64_t{prev.box_used};
        if (n > n_max) {
            prev.stabilized = false;
            prev.budget_exceeded = true;
            return prev;
        }
        MaxFlowResult cur = truncated_maxflow(field, source, static_cast<std::int32_t>(n));
        const bool inside = std::all_of(cur.mincut.bonds.begin(), cur.mincut.bonds.end(), [&](const Bond& b) {
            return l1_norm(b.a) < prev.box_used && l1_norm(b.b) < prev.box_used;
        });
        if (cur.value == prev.value && inside) {
            cur.stabilized = true;
            return cur;
        }
        prev = std::move(cur);
    }
}

FlowCheck verify_flow(const CapacityField& field, const FlowAssignment& flow, const SiteSet& source) {
    const DiamondIndex& idx = flow.index();
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const Site s = idx.site(k);
        for (const Site t : {Site{s.x + 1, s.y}, Site{s.x, s.y + 1}}) {
            if (!idx.contains(t)) continue;
            const std::int64_t f = flow.at(s, t);
            const std::int64_t cap = field.capacity(Bond{s, t});
            if (f > cap || -f > cap) {
                return {false, "capacity exceeded on bond (" + std::to_string(s.x) + "," + std::to_string(s.y) + ")-(" +
                                   std::to_string(t.x) + "," + std::to_string(t.y) + "): |" + std::to_string(f) +
                                   "| > " + std::to_string(cap)};
            }
        }
    }
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const Site s = idx.site(k);
        if (idx.on_boundary(s) || source.contains(s)) continue;
        if (const std::int64_t div = flow.divergence(s); div != 0) {
            return {false, "nonzero divergence " + std::to_string(div) + " at (" + std::to_string(s.x) + "," +
                               std::to_string(s.y) + ")"};
        }
    }
    return {};
}

std::int64_t flow_value(const FlowAssignment& flow, const SiteSet& source) {
    std::int64_t total = 0;
    for (const Site& x : source.sites()) total += flow.divergence(x);
    return total;
}

DualCycle cutset_to_cycle(const Cutset& cut) {
    if (cut.bonds.empty()) throw Error(ErrorCode::NotACycle, "empty cutset");
    std::map<DualSite, std::vector<DualSite>> adjacency;
    for (const Bond& e : cut.bonds) {
        const DualBond d = dual_bond(e);
        adjacency[d.a].push_back(d.b);
        adjacency[d.b].push_back(d.a);
    }
    for (const auto& [site, nbrs] : adjacency) {
        if (nbrs.size() != 2) {
            throw Error(ErrorCode::NotACycle, "dual site (" + std::to_string(site.i) + "," + std::to_string(site.j) +
                                                  ") has degree " + std::to_string(nbrs.size()));
        }
    }
    DualCycle cycle;
    const DualSite start = adjacency.begin()->first;
    DualSite prev = start;
    DualSite cur = std::min(adjacency.begin()->second[0], adjacency.begin()->second[1]);
    cycle.sites.push_back(start);
    while (cur != start) {
        cycle.sites.push_back(cur);
        const auto& nbrs = adjacency.at(cur);
        const DualSite next = nbrs[0] == prev ? nbrs[1] : nbrs[0];
        prev = cur;
        cur = next;
        if (cycle.sites.size() > adjacency.size()) throw Error(ErrorCode::NotACycle, "walk does not close");
    }
    cycle.sites.push_back(start);
    if (cycle.sites.size() != adjacency.size() + 1) throw Error(ErrorCode::NotACycle, "dual image is disconnected");
    return cycle;
}

bool separates(const std::vector<Bond>& bonds, const SiteSet& source, std::int32_t radius) {
    const DiamondIndex idx(radius);
    std::vector<Bond> removed = bonds;
    std::sort(removed.begin(), removed.end());
    std::vector<char> seen(idx.size(), 0);
    std::vector<Site> stack;
    for (const Site& a : source.sites()) {
        if (idx.index(a) < 0) continue;
        if (idx.on_boundary(a)) return false;
        seen[idx.index(a)] = 1;
        stack.push_back(a);
    }
    while (!stack.empty()) {
        const Site s = stack.back();
        stack.pop_back();
        for (const Site& t : neighbors(s)) {
            const std::int64_t k = idx.index(t);
            if (k < 0 || seen[k]) continue;
            if (std::binary_search(removed.begin(), removed.end(), Bond::make(s, t))) continue;
            if (idx.on_boundary(t)) return false;
            seen[k] = 1;
            stack.push_back(t);
        }
    }
    return true;
}

namespace {

// Exhaustive search state for brute_force_min_cycle.
class CycleSearch {
public:
    CycleSearch(const CapacityField& field, const SiteSet& source, std::int32_t radius)
        : radius_(radius),
          width_(2 * radius + 2),
          source_(source.sites().begin(), source.sites().end()),
          bits_(std::min<std::size_t>(source_.size(), kTrackedSources)) {
        const std::size_t count = static_cast<std::size_t>(width_) * width_;
        adjacency_.resize(count);
        // dual sites (i, j) with i, j in [-radius - 1, radius]
        for (std::int32_t j = -radius - 1; j <= radius; ++j) {
            for (std::int32_t i = -radius - 1; i <= radius; ++i) {
                const DualSite d{i, j};
                for (const DualSite& nb : neighbors(d)) {
                    if (!in_range(nb)) continue;
                    const Bond e = primal_bond(DualBond::make(d, nb));
                    if (l1_norm(e.a) > radius || l1_norm(e.b) > radius) continue;
                    Arc arc{id(nb), field.capacity(e), crossing_row(d, nb), std::min(d.i, nb.i), 0};
                    for (std::size_t k = 0; k < bits_; ++k) {
                        if (source_[k].y == arc.row && source_[k].x <= arc.i) arc.flips |= 1u << k;
                    }
                    adjacency_[id(d)].push_back(arc);
                }
            }
        }
        // Edge boundaries of the inner balls are enclosing cycles.
        std::int64_t reach = 0;
        for (const Site& a : source_) reach = std::max(reach, l1_norm(a));
        for (auto k = static_cast<std::int32_t>(reach); k < radius; ++k) {
            std::int64_t weight = 0;
            for (std::int32_t y = -k; y <= k; ++y) {
                for (std::int32_t x = -k; x <= k; ++x) {
                    const Site p{x, y};
                    if (l1_norm(p) != k) continue;
                    for (const Site& q : neighbors(p)) {
                        if (l1_norm(q) == k + 1) weight += field.capacity(Bond::make(p, q));
                    }
                }
            }
            ring_ = std::min(ring_, weight);
        }
    }

    std::int64_t solve() {
        const Site a0 = source_.front();
        best_ = ring_;
        std::vector<std::pair<std::int32_t, std::int32_t>> excluded;  // earlier ray candidates
        for (std::int32_t x = a0.x; l1_norm(Site{x + 1, a0.y}) <= radius_; ++x) {
            const DualSite top{x, a0.y};
            const DualSite bottom{x, a0.y - 1};
            const std::int32_t t = id(top), b = id(bottom);
            const Arc* candidate = find_arc(t, b);
            if (candidate == nullptr) continue;

            target_ = b;
            visited_.assign(adjacency_.size(), 0);
            parity_.assign(source_.size(), 0);
            odd_ = 0;
            mask_ = 0;
            excluded.push_back({std::min(t, b), std::max(t, b)});
            excluded_ = &excluded;
            bound_ = distances_to(b);
            toggle(*candidate);
            seed_incumbent(t, *candidate);
            const std::int64_t rest = bound(t, mask_);
            if (rest != std::numeric_limits<std::int64_t>::max() && candidate->weight + rest < best_) {
                visited_[t] = 1;
                search(t, candidate->weight);
            }
            toggle(*candidate);
        }
        if (best_ == std::numeric_limits<std::int64_t>::max()) {
            throw Error(ErrorCode::Unreachable, "no dual cycle encloses the source inside the box");
        }
        return best_;
    }

private:
    struct Arc {
        std::int32_t to;
        std::int64_t weight;
        std::int32_t row;  // y of the crossed horizontal primal bond, or INT32_MIN for vertical ones
        std::int32_t i;    // dual column of a vertical dual bond
        std::uint32_t flips;
    };

    static constexpr std::size_t kTrackedSources = 10;

    bool in_range(DualSite d) const {
        return d.i >= -radius_ - 1 && d.i <= radius_ && d.j >= -radius_ - 1 && d.j <= radius_;
    }
    std::int32_t id(DualSite d) const { return (d.j + radius_ + 1) * width_ + (d.i + radius_ + 1); }

    // A vertical dual bond between (i, j) and (i, j + 1) crosses the horizontal
    // primal bond on row y = j + 1 at x = i + 1/2.
    static std::int32_t crossing_row(DualSite a, DualSite b) {
        if (a.i != b.i) return std::numeric_limits<std::int32_t>::min();
        return std::max(a.j, b.j);
    }

    const Arc* find_arc(std::int32_t from, std::int32_t to) const {
        for (const Arc& a : adjacency_[from]) {
            if (a.to == to) return &a;
        }
        return nullptr;
    }

    // Flip ray parities of the sources whose +x ray crosses this arc.
    void toggle(const Arc& arc) {
        if (arc.row == std::numeric_limits<std::int32_t>::min()) return;
        mask_ ^= arc.flips;
        for (std::size_t k = 0; k < source_.size(); ++k) {
            if (source_[k].y == arc.row && source_[k].x <= arc.i) {
                parity_[k] ^= 1;
                odd_ += parity_[k] ? 1 : -1;
            }
        }
    }

    // Shortest walk weight from (node, parity still owed) to the target over
    // the parity cover of the first bits_ sources, avoiding excluded arcs.
    // pred_ keeps the shortest-path tree towards the target.
    std::vector<std::int64_t> distances_to(std::int32_t target) {
        const std::size_t sheets = std::size_t{1} << bits_;
        std::vector<std::int64_t> dist(adjacency_.size() * sheets, std::numeric_limits<std::int64_t>::max());
        pred_.assign(dist.size(), {-1, nullptr});
        using Entry = std::pair<std::int64_t, std::size_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        dist[static_cast<std::size_t>(target) * sheets] = 0;
        queue.push({0, static_cast<std::size_t>(target) * sheets});
        while (!queue.empty()) {
            auto [d, state] = queue.top();
            queue.pop();
            if (d != dist[state]) continue;
            const std::size_t u = state / sheets, owed = state % sheets;
            for (const Arc& a : adjacency_[u]) {
                if (is_excluded(static_cast<std::int32_t>(u), a.to)) continue;
                const std::size_t next = static_cast<std::size_t>(a.to) * sheets + (owed ^ a.flips);
                if (d + a.weight < dist[next]) {
                    dist[next] = d + a.weight;
                    pred_[next] = {static_cast<std::int64_t>(state), &a};
                    queue.push({dist[next], next});
                }
            }
        }
        return dist;
    }

    // Splits the closed walk candidate + tree path back to the target into
    // simple cycles and keeps the lightest one enclosing every source.
    void seed_incumbent(std::int32_t start, const Arc& candidate) {
        const std::size_t sheets = std::size_t{1} << bits_;
        std::size_t state = static_cast<std::size_t>(start) * sheets + (mask_ ^ static_cast<std::uint32_t>(sheets - 1));
        if (bound_[state] == std::numeric_limits<std::int64_t>::max()) return;
        std::vector<std::int32_t> nodes{target_};
        std::vector<const Arc*> arcs{&candidate};
        nodes.push_back(start);
        while (pred_[state].second != nullptr) {
            const std::size_t prev = static_cast<std::size_t>(pred_[state].first);
            // tree arcs point away from the target; walk them backwards
            arcs.push_back(find_arc(static_cast<std::int32_t>(state / sheets), static_cast<std::int32_t>(prev / sheets)));
            nodes.push_back(static_cast<std::int32_t>(prev / sheets));
            state = prev;
        }
        std::vector<std::int32_t> stack_nodes;
        std::vector<const Arc*> stack_arcs;
        std::vector<std::int64_t> where(adjacency_.size(), -1);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const std::int32_t v = nodes[k];
            if (k > 0) stack_arcs.push_back(arcs[k - 1]);
            if (where[v] >= 0) {
                const auto from = static_cast<std::size_t>(where[v]);
                std::int64_t weight = 0;
                std::vector<char> parity(source_.size(), 0);
                for (std::size_t j = from; j < stack_arcs.size(); ++j) {
                    weight += stack_arcs[j]->weight;
                    for (std::size_t s = 0; s < source_.size(); ++s) {
                        if (source_[s].y == stack_arcs[j]->row && source_[s].x <= stack_arcs[j]->i) parity[s] ^= 1;
                    }
                }
                if (std::all_of(parity.begin(), parity.end(), [](char c) { return c != 0; })) {
                    best_ = std::min(best_, weight);
                }
                for (std::size_t j = from + 1; j < stack_nodes.size(); ++j) where[stack_nodes[j]] = -1;
                stack_nodes.resize(from + 1);
                stack_arcs.resize(from);
                continue;
            }
            where[v] = static_cast<std::int64_t>(stack_nodes.size());
            stack_nodes.push_back(v);
        }
    }

    std::int64_t bound(std::int32_t node, std::uint32_t mask) const {
        const std::size_t sheets = std::size_t{1} << bits_;
        const std::size_t owed = mask ^ static_cast<std::uint32_t>(sheets - 1);
        return bound_[static_cast<std::size_t>(node) * sheets + owed];
    }

    bool is_excluded(std::int32_t u, std::int32_t v) const {
        const std::pair<std::int32_t, std::int32_t> key{std::min(u, v), std::max(u, v)};
        return std::find(excluded_->begin(), excluded_->end(), key) != excluded_->end();
    }

    void search(std::int32_t u, std::int64_t weight) {
        if (u == target_) {
            if (odd_ == static_cast<std::int64_t>(source_.size()) && weight < best_) best_ = weight;
            return;
        }
        constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();
        std::vector<std::pair<std::int64_t, const Arc*>> moves;
        for (const Arc& a : adjacency_[u]) {
            if (visited_[a.to]) continue;
            const std::int64_t rest = bound(a.to, mask_ ^ a.flips);
            if (rest == kNone) continue;
            moves.push_back({weight + a.weight + rest, &a});
        }
        std::sort(moves.begin(), moves.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [estimate, arc] : moves) {
            if (estimate >= best_) break;
            if (is_excluded(u, arc->to)) continue;
            visited_[arc->to] = 1;
            toggle(*arc);
            search(arc->to, weight + arc->weight);
            toggle(*arc);
            visited_[arc->to] = 0;
        }
    }

    std::int32_t radius_;
    std::int32_t width_;
    std::vector<Site> source_;
    std::size_t bits_;
    std::uint32_t mask_ = 0;
    std::vector<std::vector<Arc>> adjacency_;
    std::vector<std::int64_t> bound_;
    std::vector<std::pair<std::int64_t, const Arc*>> pred_;
    std::vector<char> visited_;
    std::vector<char> parity_;
    std::int64_t odd_ = 0;
    std::int32_t target_ = 0;
    std::int64_t best_ = 0;
    std::int64_t ring_ = std::numeric_limits<std::int64_t>::max();
    const std::vector<std::pair<std::int32_t, std::int32_t>>* excluded_ = nullptr;
};

}  // namespace

std::int64_t brute_force_min_cycle(const CapacityField& field, const SiteSet& source, std::int32_t radius) {
    if (radius > kOracleMaxRadius) {
        throw Error(ErrorCode::BudgetExceeded, "oracle radius " + std::to_string(radius) + " exceeds " +
                                                   std::to_string(kOracleMaxRadius));
    }
    require_inside(source, radius);
    return CycleSearch(field, source, radius).solve();
}

CapacityField open_bond_field(const Rational& p_open, std::uint64_t seed) {
    return CapacityField(DistributionSpec::bernoulli(p_open), seed, 1);
}

std::vector<SitePath> decompose_paths(const FlowAssignment& flow, const SiteSet& source) {
    const DiamondIndex& idx = flow.index();
    // remaining[k][d]: unused units of positive flow out of site k towards neighbours(site)[d]
    std::vector<std::array<std::int64_t, 4>> remaining(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const Site s = idx.site(k);
        const auto nbrs = neighbors(s);
        for (int d = 0; d < 4; ++d) remaining[k][d] = std::max<std::int64_t>(0, flow.at(s, nbrs[d]));
    }
    std::vector<std::int64_t> position(idx.size(), -1);

    std::vector<SitePath> paths;
    auto next_arc = [&](Site s) -> int {
        const auto k = static_cast<std::size_t>(idx.index(s));
        for (int d = 0; d < 4; ++d) {
            if (remaining[k][d] > 0) return d;
        }
        return -1;
    };

    for (const Site& a : source.sites()) {
        if (idx.index(a) < 0) continue;
        while (next_arc(a) >= 0) {
            SitePath path{a};
            position[idx.index(a)] = 0;
            Site cur = a;
            bool complete = false;
            while (true) {
                if (idx.on_boundary(cur)) {
                    complete = true;
                    break;
                }
                const int d = next_arc(cur);
                if (d < 0) break;  // only possible at a source site: the walk returned into A
                --remaining[idx.index(cur)][d];
                const Site nxt = neighbors(cur)[d];
                if (source.contains(nxt)) break;  // circulation through the source
                const std::int64_t k = idx.index(nxt);
                if (position[k] >= 0) {
                    for (std::size_t p = static_cast<std::size_t>(position[k]) + 1; p < path.size(); ++p) {
                        position[idx.index(path[p])] = -1;
                    }
                    path.resize(static_cast<std::size_t>(position[k]) + 1);
                } else {
                    position[k] = static_cast<std::int64_t>(path.size());
                    path.push_back(nxt);
                }
                cur = nxt;
            }
            for (const Site& s : path) position[idx.index(s)] = -1;
            if (complete) paths.push_back(std::move(path));
        }
    }
    return paths;
}

namespace {

DisjointPaths paths_from(MaxFlowResult flow, const SiteSet& source) {
    DisjointPaths out;
    out.paths = decompose_paths(flow.flow, source);
    out.count = static_cast<std::int64_t>(out.paths.size());
    if (out.count != flow.value) throw std::logic_error("path decomposition lost flow");
    out.flow = std::move(flow);
    return out;
}

}  // namespace

DisjointPaths menger_disjoint_paths(const Rational& p_open, const SiteSet& source, std::int32_t n, std::uint64_t seed) {
    const CapacityField field = open_bond_field(p_open, seed);
    return paths_from(truncated_maxflow(field, source, n), source);
}

DisjointPaths disjoint_paths_to_infinity(const Rational& p_open, const SiteSet& source, std::uint64_t seed,
                                         const MincutOptions& options) {
    const CapacityField field = open_bond_field(p_open, seed);
    return paths_from(mincut_infinity(field, source, options), source);
}

}  // namespace capflow
