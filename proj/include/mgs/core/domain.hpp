#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "mgs/core/types.hpp"

namespace mgs {

class OccupancyGrid;

/// Per-query information successor generation and attractor mapping may need.
/// Domains stay immutable and shareable; everything query-specific travels here.
struct QueryContext {
    Config start;
    GoalCondition goal;
};

/// Implicit-graph contract. Vertices and edges are generated on demand by
/// applying motion primitives; an edge exists only if the primitive motion is
/// collision-free. Implementations must be safe for concurrent read-only use
/// across planner instances; all mutation lives in planner-owned node stores.
class Domain {
public:
    virtual ~Domain() = default;

    virtual int dof() const = 0;

    /// Per-dimension discretization used by key_of.
    virtual const std::vector<double>& resolutions() const = 0;

    virtual bool in_bounds(const Config& q) const = 0;
    virtual bool is_collision_free(const Config& q) const = 0;

    /// Collision-checked successor transitions of (key, config).
    virtual void successors(const StateKey& key, const Config& config,
                            const QueryContext& ctx,
                            std::vector<Transition>& out) const = 0;

    /// Never exceeds true optimal cost-to-go on the induced graph. Domains
    /// return unscaled estimates; the search applies the weight externally.
    virtual double heuristic_admissible(const Config& q, const GoalCondition& goal) const = 0;

    /// Inadmissible focal guidance (task-space distance to the goal region).
    virtual double heuristic_focal(const Config& q, const GoalCondition& goal) const = 0;

    virtual bool is_goal(const StateKey& key, const Config& q, const GoalCondition& goal) const = 0;

    /// Projection into the low-dimensional workspace (end-effector position
    /// for arms, identity for grids).
    virtual std::vector<double> workspace_project(const Config& q) const = 0;

    /// Cost of a direct motion between two configurations in this domain's
    /// edge-cost metric. Used to price connecting-path segments.
    virtual double segment_cost(const Config& a, const Config& b) const = 0;

    virtual Config interpolate(const Config& a, const Config& b, double t) const {
        Config q(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) q[i] = a[i] + t * (b[i] - a[i]);
        return q;
    }

    /// Length measure driving interpolation sample density.
    virtual double interpolation_norm(const Config& a, const Config& b) const {
        return euclidean(a, b);
    }

    /// Map a workspace point to a nearby valid configuration, seeded for
    /// iterative solvers. Returns nullopt when the domain has no such mapping
    /// or it fails (non-convergence, collision, joint limits).
    virtual std::optional<Config> config_near_workspace_point(
        const std::vector<double>& /*point*/, const Config& /*seed*/,
        const QueryContext& /*ctx*/) const {
        return std::nullopt;
    }

    /// Discretized workspace for root selection; nullptr when the domain does
    /// not support workspace reasoning.
    virtual const OccupancyGrid* workspace_grid() const { return nullptr; }

    virtual StateKey key_of(const Config& q) const {
        if (!in_bounds(q)) throw std::out_of_range("key_of: configuration out of bounds");
        return quantize(q, resolutions());
    }

    /// Symmetric workspace distance between states; zero iff projections coincide.
    double pairwise_distance(const Config& a, const Config& b) const {
        return euclidean(workspace_project(a), workspace_project(b));
    }

    /// True iff every interpolated configuration at spacing <= step is
    /// collision-free. Endpoints are assumed individually valid.
    bool is_edge_collision_free(const Config& a, const Config& b, double step) const {
        double len = interpolation_norm(a, b);
        if (len <= 0.0) return true;
        int n = std::max(1, static_cast<int>(std::ceil(len / step)));
        for (int i = 1; i < n; ++i) {
            double t = static_cast<double>(i) / n;
            if (!is_collision_free(interpolate(a, b, t))) return false;
        }
        return true;
    }

    double min_resolution() const {
        const auto& r = resolutions();
        return *std::min_element(r.begin(), r.end());
    }
};

/// Path from the root to goal_node by following parent links.
/// Throws on a broken parent chain (internal-consistency error).
template <typename NodeMap>
std::vector<Config> reconstruct_path(const StateKey& goal_key, const NodeMap& nodes) {
    std::vector<Config> out;
    StateKey cur = goal_key;
    std::size_t guard = nodes.size() + 1;
    while (true) {
        auto it = nodes.find(cur);
        if (it == nodes.end()) throw std::logic_error("reconstruct_path: broken parent chain");
        out.push_back(it->second.config);
        if (!it->second.has_parent) break;
        if (out.size() > guard) throw std::logic_error("reconstruct_path: parent cycle");
        cur = it->second.parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace mgs
