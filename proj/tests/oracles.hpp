// Test-side oracles, kept independent of the library implementations they
// check: array-based Dijkstra over grids, exhaustive Dijkstra over implicit
// domain graphs, flood fill, a textbook A*, brute-force nearest neighbours
// and Def.-2 greedy tracing.
#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_map>
#include <vector>

#include "mgs/core/domain.hpp"
#include "mgs/roots/occupancy_grid.hpp"

namespace oracle {

using mgs::Config;
using mgs::StateKey;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dijkstra over a 2D grid, 8-connected, cardinal 1 / diagonal sqrt(2).
// Direct array implementation, no shared machinery with the library.
inline std::vector<double> grid_dijkstra(const mgs::OccupancyGrid& g,
                                         const std::vector<int>& start) {
    const auto& dims = g.dims();
    const int w = dims[0], h = dims[1];
    std::vector<double> dist(static_cast<std::size_t>(w) * h, kInf);
    auto idx = [&](int x, int y) { return static_cast<std::size_t>(x) * h + y; };
    auto occ = [&](int x, int y) { return g.occupied({x, y}); };
    if (occ(start[0], start[1])) return dist;
    using QE = std::pair<double, std::pair<int, int>>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    dist[idx(start[0], start[1])] = 0.0;
    pq.push({0.0, {start[0], start[1]}});
    while (!pq.empty()) {
        auto [d, xy] = pq.top();
        pq.pop();
        auto [x, y] = xy;
        if (d != dist[idx(x, y)]) continue;
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx == 0 && dy == 0) continue;
                int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h || occ(nx, ny)) continue;
                double nd = d + std::sqrt(static_cast<double>(dx * dx + dy * dy));
                if (nd < dist[idx(nx, ny)]) {
                    dist[idx(nx, ny)] = nd;
                    pq.push({nd, {nx, ny}});
                }
            }
        }
    }
    return dist;
}

inline double grid_dist_at(const mgs::OccupancyGrid& g, const std::vector<double>& dist,
                           const std::vector<int>& cell) {
    return dist[static_cast<std::size_t>(cell[0]) * g.dims()[1] + cell[1]];
}

// Flood fill reachability, 8-connected.
inline std::vector<char> reachable_cells(const mgs::OccupancyGrid& g,
                                         const std::vector<int>& start) {
    const auto& dims = g.dims();
    const int w = dims[0], h = dims[1];
    std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
    auto idx = [&](int x, int y) { return static_cast<std::size_t>(x) * h + y; };
    if (g.occupied(start)) return seen;
    std::deque<std::pair<int, int>> q{{start[0], start[1]}};
    seen[idx(start[0], start[1])] = 1;
    while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop_front();
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx == 0 && dy == 0) continue;
                int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                if (g.occupied({nx, ny}) || seen[idx(nx, ny)]) continue;
                seen[idx(nx, ny)] = 1;
                q.emplace_back(nx, ny);
            }
        }
    }
    return seen;
}

struct DomainDijkstra {
    std::unordered_map<StateKey, double, mgs::StateKeyHash> dist;
    std::unordered_map<StateKey, Config, mgs::StateKeyHash> configs;
    bool truncated{false};
};

// Exhaustive Dijkstra over the implicit graph induced by the domain's
// successor function (the graph under test), with an independent search.
inline DomainDijkstra domain_dijkstra(const mgs::Domain& dom, const Config& start,
                                      const mgs::QueryContext& ctx,
                                      std::size_t max_states = 2'000'000) {
    DomainDijkstra out;
    StateKey s0 = dom.key_of(start);
    out.dist[s0] = 0.0;
    out.configs[s0] = start;
    using QE = std::pair<double, StateKey>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    pq.push({0.0, s0});
    std::vector<mgs::Transition> succs;
    while (!pq.empty()) {
        auto [d, key] = pq.top();
        pq.pop();
        auto it = out.dist.find(key);
        if (it == out.dist.end() || d != it->second) continue;
        if (out.dist.size() > max_states) {
            out.truncated = true;
            break;
        }
        succs.clear();
        dom.successors(key, out.configs[key], ctx, succs);
        for (const auto& t : succs) {
            double nd = d + t.cost;
            auto dit = out.dist.find(t.to);
            if (dit == out.dist.end() || nd < dit->second) {
                out.dist[t.to] = nd;
                out.configs[t.to] = t.to_config;
                pq.push({nd, t.to});
            }
        }
    }
    return out;
}

// Optimal cost to the goal set over the induced graph; kInf if unreachable.
inline double optimal_goal_cost(const mgs::Domain& dom, const DomainDijkstra& dd,
                                const mgs::GoalCondition& goal) {
    double best = kInf;
    for (const auto& [key, d] : dd.dist) {
        if (dom.is_goal(key, dd.configs.at(key), goal) && d < best) best = d;
    }
    return best;
}

// Textbook A* with pop order (f, h, seq) and weighted heuristic; returns the
// pop trace for trace-equality checks.
struct AstarResult {
    bool solved{false};
    double cost{kInf};
    std::vector<StateKey> pops;
};

inline AstarResult ref_astar(const mgs::Domain& dom, const Config& start,
                             const mgs::GoalCondition& goal, double weight = 1.0) {
    AstarResult out;
    mgs::QueryContext ctx{start, goal};
    struct Rec {
        double g{kInf};
        double h{0.0};
        Config config;
        bool closed{false};
        std::uint64_t seq{0};
    };
    std::unordered_map<StateKey, Rec, mgs::StateKeyHash> recs;
    using QE = std::tuple<double, double, std::uint64_t, StateKey>;  // f, h, seq
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    std::uint64_t seq = 0;

    StateKey s0 = dom.key_of(start);
    Rec r0;
    r0.g = 0.0;
    r0.h = dom.heuristic_admissible(start, goal);
    r0.config = start;
    r0.seq = ++seq;
    recs[s0] = r0;
    pq.push({weight * r0.h, r0.h, r0.seq, s0});

    std::vector<mgs::Transition> succs;
    while (!pq.empty()) {
        auto [f, h, sq, key] = pq.top();
        pq.pop();
        Rec& r = recs[key];
        if (r.closed || f != r.g + weight * r.h || sq != r.seq) continue;
        r.closed = true;
        out.pops.push_back(key);
        if (dom.is_goal(key, r.config, goal)) {
            out.solved = true;
            out.cost = r.g;
            return out;
        }
        succs.clear();
        dom.successors(key, r.config, ctx, succs);
        for (const auto& t : succs) {
            double ng = r.g + t.cost;
            auto it = recs.find(t.to);
            if (it == recs.end()) {
                Rec nr;
                nr.g = ng;
                nr.h = dom.heuristic_admissible(t.to_config, goal);
                nr.config = t.to_config;
                nr.seq = ++seq;
                recs[t.to] = nr;
                pq.push({ng + weight * nr.h, nr.h, nr.seq, t.to});
            } else if (!it->second.closed && ng < it->second.g) {
                it->second.g = ng;
                pq.push({ng + weight * it->second.h, it->second.h, it->second.seq, t.to});
            }
        }
    }
    return out;
}

// Def.-2 greedy tracing with Euclidean potential, independent of the library
// tracer: step to the free neighbor minimizing distance-to-target (lowest
// enumeration index on ties), fail when no strict improvement exists.
inline bool greedy_trace_reaches(const mgs::OccupancyGrid& g, std::vector<int> cur,
                                 const std::vector<int>& target) {
    auto center = [&](const std::vector<int>& c) { return g.center_of(c); };
    auto pot = [&](const std::vector<int>& c) { return mgs::euclidean(center(c), center(target)); };
    std::size_t guard = g.cell_count() + 1;
    while (cur != target) {
        double cur_pot = pot(cur);
        std::vector<int> best;
        double best_pot = kInf;
        std::vector<int> nb(cur.size());
        for (const auto& off : g.neighbor_offsets()) {
            for (std::size_t i = 0; i < cur.size(); ++i) nb[i] = cur[i] + off[i];
            if (!g.free_inflated(nb)) continue;
            double p = pot(nb);
            if (p < best_pot) {
                best_pot = p;
                best = nb;
            }
        }
        if (best.empty() || !(best_pot < cur_pot)) return false;
        cur = best;
        if (--guard == 0) return false;
    }
    return true;
}

// Brute-force nearest neighbour over explicit (point, seq) pairs; ties by seq.
inline int brute_nn(const std::vector<std::vector<double>>& pts,
                    const std::vector<std::uint64_t>& seqs, const std::vector<double>& q) {
    int best = -1;
    double best_d = kInf;
    std::uint64_t best_seq = ~0ull;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double d = mgs::euclidean(pts[i], q);
        if (d < best_d || (d == best_d && seqs[i] < best_seq)) {
            best_d = d;
            best = static_cast<int>(i);
            best_seq = seqs[i];
        }
    }
    return best;
}

// Build a grid from ASCII rows ('#' occupied), row y = 0 first.
inline mgs::OccupancyGrid grid_from_rows(const std::vector<std::string>& rows,
                                         double inflation = 0.0) {
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows[0].size());
    mgs::OccupancyGrid g({w, h}, 1.0, inflation, {-0.5, -0.5});
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (rows[y][x] == '#') g.set_occupied({x, y});
        }
    }
    return g;
}

}  // namespace oracle
