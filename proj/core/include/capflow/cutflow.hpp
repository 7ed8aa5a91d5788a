#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capflow/capacity.hpp"
#include "capflow/lattice.hpp"
#include "capflow/rational.hpp"

namespace capflow {

/// Antisymmetric flow on the bonds of the l1 ball V_radius. One signed value is
/// stored per bond in its east/north orientation; the reverse orientation
/// reads the negation, so f(x, y) = -f(y, x) holds by construction.
class FlowAssignment {
public:
    FlowAssignment() : FlowAssignment(0) {}
    explicit FlowAssignment(std::int32_t radius);

    std::int32_t radius() const noexcept { return index_.radius(); }
    const DiamondIndex& index() const noexcept { return index_; }

    /// f(from, to) for adjacent sites; 0 when the bond leaves the ball.
    std::int64_t at(Site from, Site to) const;
    void set(Site from, Site to, std::int64_t value);

    /// Div f(x) = sum over the four neighbours y of f(x, y).
    std::int64_t divergence(Site x) const;

    friend bool operator==(const FlowAssignment&, const FlowAssignment&) = default;

private:
    std::int64_t* slot(Site from, Site to, bool& flipped);
    const std::int64_t* slot(Site from, Site to, bool& flipped) const;

    DiamondIndex index_;
    std::vector<std::int64_t> east_;   // f(x, x + e1)
    std::vector<std::int64_t> north_;  // f(x, x + e2)
};

/// Bonds separating `source` from the boundary of the box they were computed in.
struct Cutset {
    std::vector<Bond> bonds;  // sorted
    SiteSet source;
};

/// Closed walk of dual sites; front() == back().
struct DualCycle {
    std::vector<DualSite> sites;
};

struct MaxFlowResult {
    std::int64_t value = 0;
    FlowAssignment flow;
    Cutset mincut;
    std::int32_t box_used = 0;
    bool stabilized = false;
    bool budget_exceeded = false;
};

/// Exact max flow from A to B_n, the boundary of V_n = {|x|_1 <= n}, with A
/// contracted to a super-source and B_n to a super-sink. The returned cut is
/// the edge boundary of the source side, where the source side is everything
/// not connected to B_n once the residual-reachable set of A is removed; it is
/// minimal for inclusion. Throws SourceTouchesBoundary unless every site of A
/// has |x|_1 < n.
MaxFlowResult truncated_maxflow(const CapacityField& field, const SiteSet& source, std::int32_t n);

struct MincutOptions {
    std::int64_t nmax_factor = 512;
    /// Hard ceiling on the box radius regardless of nmax_factor.
    std::int32_t max_box_radius = 2048;
};

/// Box doubling n0, 2 n0, 4 n0, ... with n0 = radius(A) + 8 until two
/// consecutive values agree and the larger box's cut lies strictly inside the
/// smaller box. Hitting the radius budget returns the best value with
/// stabilized = false and budget_exceeded = true.
MaxFlowResult mincut_infinity(const CapacityField& field, const SiteSet& source, const MincutOptions& options = {});

struct FlowCheck {
    bool ok = true;
    std::string violation;  // first violation found, empty when ok
};

/// Capacity bound on every bond and zero divergence at every site of the open
/// ball |x|_1 < radius outside A; bonds leaving the ball must carry nothing.
FlowCheck verify_flow(const CapacityField& field, const FlowAssignment& flow, const SiteSet& source);

/// sum over x in A of Div f(x).
std::int64_t flow_value(const FlowAssignment& flow, const SiteSet& source);

/// Orders the dual images of a minimal cutset into a simple closed walk,
/// starting at the smallest dual site. Throws NotACycle otherwise.
DualCycle cutset_to_cycle(const Cutset& cut);

/// Does removing `bonds` disconnect `source` from B_radius inside V_radius?
bool separates(const std::vector<Bond>& bonds, const SiteSet& source, std::int32_t radius);

/// Minimum weight of a simple closed dual path that encloses every site of A and
/// crosses only bonds of V_radius, by exhaustive depth-first enumeration
/// (pruned with the incumbent and an admissible distance bound). Enclosure is
/// decided by ray-crossing parity along +x. Throws BudgetExceeded for radius > 8.
std::int64_t brute_force_min_cycle(const CapacityField& field, const SiteSet& source, std::int32_t radius);

inline constexpr std::int32_t kOracleMaxRadius = 8;

using SitePath = std::vector<Site>;

struct DisjointPaths {
    std::int64_t count = 0;
    std::vector<SitePath> paths;
    MaxFlowResult flow;
};

/// Capacity field of the open bonds: Bernoulli(p_open) openness, capacity 1 when open.
CapacityField open_bond_field(const Rational& p_open, std::uint64_t seed);

/// Splits an integer flow out of A into edge-disjoint paths, each running from a
/// site of A to a site of B_radius along bonds with positive flow. Circulations
/// are discarded.
std::vector<SitePath> decompose_paths(const FlowAssignment& flow, const SiteSet& source);

/// Maximum number of edge-disjoint open paths from A to B_n.
DisjointPaths menger_disjoint_paths(const Rational& p_open, const SiteSet& source, std::int32_t n, std::uint64_t seed);

/// dis(A): the same count to infinity, through the doubling of mincut_infinity.
DisjointPaths disjoint_paths_to_infinity(const Rational& p_open, const SiteSet& source, std::uint64_t seed,
                                         const MincutOptions& options = {});

}  // namespace capflow
