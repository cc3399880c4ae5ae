#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mgs/roots/occupancy_grid.hpp"

namespace mgs {

/// Potential function over grid cells; defaults to Euclidean distance between
/// cell centers.
using CellPotential = std::function<double(const std::vector<int>&, const std::vector<int>&)>;

inline CellPotential euclidean_potential(const OccupancyGrid& grid) {
    return [&grid](const std::vector<int>& a, const std::vector<int>& b) {
        return euclidean(grid.center_of(a), grid.center_of(b));
    };
}

/// Output of the backward BFS: uniform-cost wavefront field, per-cell
/// attractor references and the parent policy toward the goal.
struct WavefrontField {
    std::vector<double> g;           // kInf where unreached
    std::vector<int> parent;         // linear index, -1 at the goal / unreached
    std::vector<int> attractor;      // linear index of the cell's attractor, -1 unreached
    std::vector<int> attractor_cells;  // unique attractors, discovery order, goal first
    std::vector<int> goal_cell;
};

/// Greedy predecessor of `cell` with respect to `target`: the free neighbor
/// minimizing the potential, ties broken by the lowest neighbor-enumeration
/// index. Returns nullopt when the cell has no free neighbor.
inline std::optional<std::vector<int>> greedy_predecessor(const OccupancyGrid& grid,
                                                          const std::vector<int>& cell,
                                                          const std::vector<int>& target,
                                                          const CellPotential& potential) {
    std::optional<std::vector<int>> best;
    double best_pot = kInf;
    std::vector<int> n(cell.size());
    for (const auto& off : grid.neighbor_offsets()) {
        for (std::size_t i = 0; i < cell.size(); ++i) n[i] = cell[i] + off[i];
        if (!grid.free_inflated(n)) continue;
        double p = potential(n, target);
        if (p < best_pot) {
            best_pot = p;
            best = n;
        }
    }
    return best;
}

/// Iteratively step to the greedy predecessor until the target is reached.
/// Fails (returns nullopt) at a local minimum: no neighbor strictly improves
/// the potential. Strict descent guarantees termination.
inline std::optional<std::vector<std::vector<int>>> greedy_trace(const OccupancyGrid& grid,
                                                                 const std::vector<int>& start,
                                                                 const std::vector<int>& target,
                                                                 const CellPotential& potential) {
    if (!grid.free_inflated(start) || !grid.free_inflated(target)) return std::nullopt;
    std::vector<std::vector<int>> path{start};
    std::vector<int> cur = start;
    const std::size_t guard = grid.cell_count() + 1;
    while (cur != target) {
        auto next = greedy_predecessor(grid, cur, target, potential);
        if (!next || !(potential(*next, target) < potential(cur, target))) return std::nullopt;
        cur = *next;
        path.push_back(cur);
        if (path.size() > guard) return std::nullopt;
    }
    return path;
}

/// Backward BFS from the goal cell over free cells with uniform step cost.
/// Attractors appear where the wavefront diverges around obstacles: a relaxed
/// neighbor inherits the parent's attractor only when its greedy predecessor
/// both strictly improves the potential toward that attractor and already
/// belongs to the attractor's region; otherwise the parent becomes a new
/// attractor. This keeps every recorded region sound under greedy tracing.
inline WavefrontField backward_bfs_attractors(const OccupancyGrid& grid,
                                              const std::vector<int>& goal_cell,
                                              const CellPotential& potential) {
    if (!grid.in_grid(goal_cell) || grid.occupied_inflated(goal_cell)) {
        throw std::invalid_argument("backward BFS: goal cell occupied or out of grid");
    }
    const std::size_t n = grid.cell_count();
    WavefrontField field;
    field.g.assign(n, kInf);
    field.parent.assign(n, -1);
    field.attractor.assign(n, -1);
    field.goal_cell = goal_cell;

    const int goal_idx = static_cast<int>(grid.index_of(goal_cell));
    field.g[goal_idx] = 0.0;
    field.attractor[goal_idx] = goal_idx;
    field.attractor_cells.push_back(goal_idx);  // the BFS start is the first attractor

    std::vector<std::uint8_t> closed(n, 0), in_open(n, 0);
    std::deque<int> fifo{goal_idx};
    in_open[goal_idx] = 1;

    std::vector<int> nb(goal_cell.size());
    while (!fifo.empty()) {
        const int wi = fifo.front();
        fifo.pop_front();
        closed[wi] = 1;
        const std::vector<int> w = grid.cell_at(wi);
        const std::vector<int> a_cell = grid.cell_at(field.attractor[wi]);

        for (const auto& off : grid.neighbor_offsets()) {
            for (std::size_t i = 0; i < w.size(); ++i) nb[i] = w[i] + off[i];
            if (!grid.free_inflated(nb)) continue;
            const int ni = static_cast<int>(grid.index_of(nb));
            if (closed[ni]) continue;
            if (field.g[ni] > field.g[wi] + 1.0) {  // uniform cost
                field.g[ni] = field.g[wi] + 1.0;
                field.parent[ni] = wi;
                auto gp = greedy_predecessor(grid, nb, a_cell, potential);
                bool inherit = false;
                if (gp) {
                    const int gpi = static_cast<int>(grid.index_of(*gp));
                    inherit = potential(*gp, a_cell) < potential(nb, a_cell) &&
                              field.attractor[gpi] == field.attractor[wi];
                }
                if (inherit) {
                    field.attractor[ni] = field.attractor[wi];
                } else {
                    // Branching point: the parent becomes a new attractor.
                    field.attractor[ni] = wi;
                    bool known = false;
                    for (int c : field.attractor_cells) known = known || (c == wi);
                    if (!known) field.attractor_cells.push_back(wi);
                }
            }
            if (!in_open[ni]) {
                fifo.push_back(ni);
                in_open[ni] = 1;
            }
        }
    }
    return field;
}

struct ForwardRollout {
    bool reachable{false};
    std::vector<int> attractors;  // linear indices, first-encounter order
};

/// Walk the parent policy from the start cell to the goal, emitting each
/// visited cell's attractor reference once in first-encounter order. Covers
/// obstacle sides facing the start that the backward pass leaves out.
inline ForwardRollout forward_attractors(const WavefrontField& field, const OccupancyGrid& grid,
                                         const std::vector<int>& start_cell) {
    ForwardRollout out;
    if (!grid.in_grid(start_cell)) return out;
    int cur = static_cast<int>(grid.index_of(start_cell));
    if (field.g[cur] == kInf) return out;
    out.reachable = true;
    const int goal_idx = static_cast<int>(grid.index_of(field.goal_cell));
    std::size_t guard = grid.cell_count() + 1;
    while (true) {
        const int a = field.attractor[cur];
        bool seen = false;
        for (int c : out.attractors) seen = seen || (c == a);
        if (!seen) out.attractors.push_back(a);
        if (cur == goal_idx) break;
        cur = field.parent[cur];
        if (cur < 0 || --guard == 0) throw std::logic_error("forward rollout: broken policy");
    }
    return out;
}

}  // namespace mgs
