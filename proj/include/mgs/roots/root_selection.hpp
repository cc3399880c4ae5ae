#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "mgs/core/domain.hpp"
#include "mgs/roots/attractors.hpp"
#include "mgs/roots/kmeans.hpp"

namespace mgs {

struct Attractor {
    std::vector<int> workspace_cell;
    Config config;
    enum class Origin { Backward, Forward } origin{Origin::Backward};
};

/// Map a workspace cell to a robot configuration via the domain hook
/// (identity for grids, differential IK for arms). Failures discard the
/// attractor rather than raising.
inline std::optional<Config> map_attractor_to_config(const Domain& domain,
                                                     const OccupancyGrid& grid,
                                                     const std::vector<int>& workspace_cell,
                                                     const Config& seed,
                                                     const QueryContext& ctx) {
    if (!domain.is_collision_free(seed)) return std::nullopt;
    return domain.config_near_workspace_point(grid.center_of(workspace_cell), seed, ctx);
}

/// Pick up to `budget` root configurations. The goal configuration, when
/// given, is always included first; remaining attractors are kept verbatim
/// when they fit, otherwise k-means clustering over workspace cell centers
/// selects the attractor nearest each cluster centroid.
inline std::vector<Config> select_roots(const std::vector<Attractor>& attractors,
                                        const OccupancyGrid& grid, int budget,
                                        const std::optional<Config>& goal_config) {
    std::vector<Config> roots;
    if (budget <= 0) return roots;
    if (goal_config) roots.push_back(*goal_config);
    const int remaining = budget - static_cast<int>(roots.size());
    if (remaining <= 0) return roots;

    if (static_cast<int>(attractors.size()) <= remaining) {
        for (const auto& a : attractors) roots.push_back(a.config);
        return roots;
    }

    std::vector<std::vector<double>> pts;
    pts.reserve(attractors.size());
    for (const auto& a : attractors) pts.push_back(grid.center_of(a.workspace_cell));
    const int k = remaining;
    auto assign = kmeans_assign(pts, k);
    auto centroids = kmeans_centroids(pts, assign, k);

    for (int c = 0; c < k; ++c) {
        if (centroids[c].empty()) continue;  // empty cluster
        int best = -1;
        double best_d = kInf;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (assign[i] != c) continue;
            double d = euclidean(pts[i], centroids[c]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        if (best >= 0) roots.push_back(attractors[best].config);
    }
    return roots;
}

struct RootSelectionResult {
    std::vector<Config> roots;
    std::vector<Attractor> attractors;       // mapped, validity-checked
    WavefrontField field;                    // full cost field for inspection
    bool start_reachable{false};
};

/// Workspace-aware root selection: backward BFS from the goal's workspace
/// position identifies attractors, the forward policy rollout from the start
/// adds the start-facing ones, IK-style mapping turns cells into
/// configurations (seeded along the rollout first, then by increasing g),
/// and clustering enforces the budget.
inline RootSelectionResult get_roots(const Domain& domain, const Config& start,
                                     const GoalCondition& goal, int budget) {
    RootSelectionResult out;
    const OccupancyGrid* grid = domain.workspace_grid();
    if (grid == nullptr || budget <= 0) return out;

    std::optional<Config> goal_config;
    std::vector<double> goal_point;
    if (goal.kind == GoalCondition::Kind::ExactConfig) {
        goal_config = goal.target;
        goal_point = domain.workspace_project(goal.target);
    } else {
        goal_point = goal.center;
    }
    const std::vector<int> goal_cell = grid->cell_of(goal_point);
    if (!grid->free_inflated(goal_cell)) {
        if (goal_config) out.roots.push_back(*goal_config);
        return out;
    }

    QueryContext ctx{start, goal};
    auto potential = euclidean_potential(*grid);
    out.field = backward_bfs_attractors(*grid, goal_cell, potential);

    const std::vector<int> start_cell = grid->cell_of(domain.workspace_project(start));
    ForwardRollout rollout;
    if (grid->in_grid(start_cell)) rollout = forward_attractors(out.field, *grid, start_cell);
    out.start_reachable = rollout.reachable;

    // Candidate cells: forward rollout order first, then backward attractors
    // by increasing g (discovery order as tie-break); this doubles as the IK
    // seeding order.
    std::vector<int> candidates = rollout.attractors;
    std::vector<int> backward = out.field.attractor_cells;
    std::stable_sort(backward.begin(), backward.end(), [&](int a, int b) {
        return out.field.g[a] < out.field.g[b];
    });
    for (int c : backward) {
        bool seen = false;
        for (int have : candidates) seen = seen || (have == c);
        if (!seen) candidates.push_back(c);
    }

    std::vector<bool> is_forward(candidates.size(), false);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (int f : rollout.attractors) is_forward[i] = is_forward[i] || (f == candidates[i]);
    }

    Config seed = start;
    StateKey goal_key;
    if (goal_config) goal_key = domain.key_of(*goal_config);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto cell = grid->cell_at(candidates[i]);
        auto cfg = map_attractor_to_config(domain, *grid, cell, seed, ctx);
        if (!cfg) continue;  // IK failure or collision: attractor discarded
        if (goal_config && domain.key_of(*cfg) == goal_key) continue;  // goal already a root
        bool dup = false;
        for (const auto& a : out.attractors) dup = dup || (domain.key_of(a.config) == domain.key_of(*cfg));
        if (dup) continue;
        Attractor a;
        a.workspace_cell = cell;
        a.config = *cfg;
        a.origin = is_forward[i] ? Attractor::Origin::Forward : Attractor::Origin::Backward;
        out.attractors.push_back(std::move(a));
        seed = out.attractors.back().config;
    }

    out.roots = select_roots(out.attractors, *grid, budget, goal_config);
    return out;
}

}  // namespace mgs
