#pragma once

#include <cstdint>
#include <vector>

namespace capflow {

/// Integer max-flow on an undirected capacitated multigraph (Dinic's blocking
/// flows on BFS level graphs). Arc order is the insertion order, so runs are
/// reproducible bit for bit.
class FlowNetwork {
public:
    explicit FlowNetwork(std::int32_t nodes);

    std::int32_t nodes() const noexcept { return nodes_; }
    std::size_t edges() const noexcept { return from_.size(); }

    /// Adds an undirected edge carrying at most `capacity` in either direction.
    /// Returns the edge id.
    std::int32_t add_edge(std::int32_t u, std::int32_t v, std::int64_t capacity);

    /// Maximum flow value from s to t. May be called once.
    std::int64_t solve(std::int32_t s, std::int32_t t);

    /// Net flow through edge `id` in its u -> v orientation (negative when it
    /// runs v -> u).
    std::int64_t flow(std::int32_t id) const noexcept;

    /// Nodes reachable from s in the residual graph after solve().
    std::vector<char> residual_reachable(std::int32_t s) const;

private:
    void build();
    bool bfs_levels(std::int32_t s, std::int32_t t);
    std::int64_t blocking_flow(std::int32_t s, std::int32_t t);

    std::int32_t nodes_;
    // edge e owns arcs 2e (u -> v) and 2e + 1 (v -> u)
    std::vector<std::int32_t> from_;
    std::vector<std::int32_t> to_;
    std::vector<std::int64_t> capacity_;
    std::vector<std::int64_t> residual_;  // per arc
    // CSR adjacency of arcs
    std::vector<std::int32_t> first_;
    std::vector<std::int32_t> arcs_;
    std::vector<std::int32_t> level_;
    std::vector<std::int32_t> cursor_;
    bool built_ = false;
};

}  // namespace capflow
