#include "capflow/maxflow.hpp"

#include <algorithm>
#include <limits>

#include "capflow/error.hpp"

namespace capflow {

FlowNetwork::FlowNetwork(std::int32_t nodes) : nodes_(nodes) {
    if (nodes < 2) throw Error(ErrorCode::InvalidArgument, "flow network needs at least two nodes");
}

std::int32_t FlowNetwork::add_edge(std::int32_t u, std::int32_t v, std::int64_t capacity) {
    if (built_) throw Error(ErrorCode::InvalidArgument, "edges must be added before solve()");
    if (u < 0 || v < 0 || u >= nodes_ || v >= nodes_ || u == v) throw Error(ErrorCode::InvalidArgument, "bad edge endpoints");
    if (capacity < 0) throw Error(ErrorCode::InvalidArgument, "negative capacity");
    from_.push_back(u);
    to_.push_back(v);
    capacity_.push_back(capacity);
    return static_cast<std::int32_t>(from_.size() - 1);
}

void FlowNetwork::build() {
    const std::size_t m = from_.size();
    residual_.resize(2 * m);
    first_.assign(static_cast<std::size_t>(nodes_) + 1, 0);
    for (std::size_t e = 0; e < m; ++e) {
        residual_[2 * e] = capacity_[e];
        residual_[2 * e + 1] = capacity_[e];
        ++first_[from_[e] + 1];
        ++first_[to_[e] + 1];
    }
    for (std::int32_t v = 0; v < nodes_; ++v) first_[v + 1] += first_[v];
    arcs_.resize(2 * m);
    std::vector<std::int32_t> fill(first_.begin(), first_.end() - 1);
    for (std::size_t e = 0; e < m; ++e) {
        arcs_[fill[from_[e]]++] = static_cast<std::int32_t>(2 * e);
        arcs_[fill[to_[e]]++] = static_cast<std::int32_t>(2 * e + 1);
    }
    level_.resize(nodes_);
    cursor_.resize(nodes_);
    built_ = true;
}

bool FlowNetwork::bfs_levels(std::int32_t s, std::int32_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::int32_t> queue;
    queue.reserve(nodes_);
    level_[s] = 0;
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::int32_t u = queue[head];
        if (u == t) continue;
        for (std::int32_t k = first_[u]; k < first_[u + 1]; ++k) {
            const std::int32_t a = arcs_[k];
            const std::int32_t v = (a & 1) ? from_[a >> 1] : to_[a >> 1];
            if (level_[v] < 0 && residual_[a] > 0) {
                level_[v] = level_[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return level_[t] >= 0;
}

std::int64_t FlowNetwork::blocking_flow(std::int32_t s, std::int32_t t) {
    std::copy(first_.begin(), first_.end() - 1, cursor_.begin());
    auto head_of = [&](std::int32_t a) { return (a & 1) ? from_[a >> 1] : to_[a >> 1]; };
    auto tail_of = [&](std::int32_t a) { return (a & 1) ? to_[a >> 1] : from_[a >> 1]; };
    const std::int32_t target_level = level_[t];

    std::int64_t total = 0;
    std::vector<std::int32_t> path;
    std::int32_t u = s;
    while (true) {
        if (u == t) {
            std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
            for (std::int32_t a : path) bottleneck = std::min(bottleneck, residual_[a]);
            std::size_t cut = path.size();
            for (std::size_t k = 0; k < path.size(); ++k) {
                residual_[path[k]] -= bottleneck;
                residual_[path[k] ^ 1] += bottleneck;
                if (residual_[path[k]] == 0 && cut == path.size()) cut = k;
            }
            total += bottleneck;
            u = tail_of(path[cut]);
            path.resize(cut);
            continue;
        }
        bool advanced = false;
        for (; cursor_[u] < first_[u + 1]; ++cursor_[u]) {
            const std::int32_t a = arcs_[cursor_[u]];
            const std::int32_t v = head_of(a);
            if (residual_[a] > 0 && level_[v] == level_[u] + 1 && (v == t || level_[v] < target_level)) {
                path.push_back(a);
                u = v;
                advanced = true;
                break;
            }
        }
        if (advanced) continue;
        if (u == s) break;
        level_[u] = -1;  // dead end for the rest of this phase
        const std::int32_t a = path.back();
        path.pop_back();
        u = tail_of(a);
        ++cursor_[u];
    }
    return total;
}

std::int64_t FlowNetwork::solve(std::int32_t s, std::int32_t t) {
    if (s == t) throw Error(ErrorCode::InvalidArgument, "source equals sink");
    if (!built_) build();
    std::int64_t total = 0;
    while (bfs_levels(s, t)) total += blocking_flow(s, t);
    return total;
}

std::int64_t FlowNetwork::flow(std::int32_t id) const noexcept {
    return (residual_[2 * id + 1] - residual_[2 * id]) / 2;
}

std::vector<char> FlowNetwork::residual_reachable(std::int32_t s) const {
    std::vector<char> seen(nodes_, 0);
    std::vector<std::int32_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
        const std::int32_t u = stack.back();
        stack.pop_back();
        for (std::int32_t k = first_[u]; k < first_[u + 1]; ++k) {
            const std::int32_t a = arcs_[k];
            const std::int32_t v = (a & 1) ? from_[a >> 1] : to_[a >> 1];
            if (!seen[v] && residual_[a] > 0) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

}  // namespace capflow
