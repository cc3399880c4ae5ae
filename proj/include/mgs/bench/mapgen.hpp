#pragma once

#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "mgs/domains/grid_domain.hpp"
#include "mgs/util/rng.hpp"

namespace mgs {

/// Uniform random obstacles at the given density. No border walls.
inline OccupancyGrid random_grid(int w, int h, double density, std::uint64_t seed) {
    OccupancyGrid g = GridDomain::make_grid({w, h});
    Rng rng(seed);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) {
            if (rng.uniform() < density) g.set_occupied({x, y});
        }
    }
    return g;
}

/// Reachable set from a start cell over the grid connectivity (raw occupancy).
inline std::vector<std::uint8_t> flood_fill(const OccupancyGrid& g, const std::vector<int>& start) {
    std::vector<std::uint8_t> seen(g.cell_count(), 0);
    if (!g.in_grid(start) || g.occupied(start)) return seen;
    std::deque<std::size_t> q{g.index_of(start)};
    seen[q.front()] = 1;
    std::vector<int> nb(start.size());
    while (!q.empty()) {
        auto idx = q.front();
        q.pop_front();
        auto c = g.cell_at(idx);
        for (const auto& off : g.neighbor_offsets()) {
            for (std::size_t i = 0; i < c.size(); ++i) nb[i] = c[i] + off[i];
            if (!g.in_grid(nb) || g.occupied(nb)) continue;
            auto ni = g.index_of(nb);
            if (!seen[ni]) {
                seen[ni] = 1;
                q.push_back(ni);
            }
        }
    }
    return seen;
}

/// Random free cell, or nullopt when none exists.
inline std::optional<std::vector<int>> random_free_cell(const OccupancyGrid& g, Rng& rng,
                                                        int tries = 1000) {
    const auto& dims = g.dims();
    for (int t = 0; t < tries; ++t) {
        std::vector<int> c(dims.size());
        for (std::size_t i = 0; i < dims.size(); ++i) {
            c[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(dims[i])));
        }
        if (!g.occupied(c)) return c;
    }
    return std::nullopt;
}

/// Random solvable (start, goal) cell pair; nullopt if sampling fails.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> sample_solvable_query(
    const OccupancyGrid& g, Rng& rng, int tries = 200) {
    for (int t = 0; t < tries; ++t) {
        auto s = random_free_cell(g, rng);
        auto e = random_free_cell(g, rng);
        if (!s || !e || *s == *e) continue;
        auto seen = flood_fill(g, *s);
        if (seen[g.index_of(*e)]) return std::make_pair(*s, *e);
    }
    return std::nullopt;
}

/// Multi-room grid: an rx-by-ry lattice of rooms separated by one-cell walls,
/// connected by single-cell doors along a random spanning tree plus a few
/// extra doors. Always fully connected.
inline OccupancyGrid multiroom_grid(int w, int h, int rx, int ry, std::uint64_t seed,
                                    int extra_doors = 2) {
    OccupancyGrid g = GridDomain::make_grid({w, h});
    Rng rng(seed);
    // Interior wall coordinates.
    std::vector<int> wall_x, wall_y;
    for (int i = 1; i < rx; ++i) wall_x.push_back(i * w / rx);
    for (int j = 1; j < ry; ++j) wall_y.push_back(j * h / ry);
    for (int x : wall_x) {
        for (int y = 0; y < h; ++y) g.set_occupied({x, y});
    }
    for (int y : wall_y) {
        for (int x = 0; x < w; ++x) g.set_occupied({x, y});
    }

    auto room_span_x = [&](int i) {
        int lo = i == 0 ? 0 : wall_x[i - 1] + 1;
        int hi = i == rx - 1 ? w - 1 : wall_x[i] - 1;
        return std::make_pair(lo, hi);
    };
    auto room_span_y = [&](int j) {
        int lo = j == 0 ? 0 : wall_y[j - 1] + 1;
        int hi = j == ry - 1 ? h - 1 : wall_y[j] - 1;
        return std::make_pair(lo, hi);
    };
    auto open_door = [&](int i0, int j0, int i1, int j1) {
        if (i0 != i1) {  // vertical wall between horizontally adjacent rooms
            int x = wall_x[std::min(i0, i1)];
            auto [lo, hi] = room_span_y(j0);
            int y = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
            g.set_occupied({x, y}, false);
        } else {
            int y = wall_y[std::min(j0, j1)];
            auto [lo, hi] = room_span_x(i0);
            int x = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
            g.set_occupied({x, y}, false);
        }
    };

    // Random DFS spanning tree over the room lattice.
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(rx * ry), 0);
    std::vector<std::pair<int, int>> stack{{0, 0}};
    visited[0] = 1;
    while (!stack.empty()) {
        auto [i, j] = stack.back();
        std::vector<std::pair<int, int>> nbrs;
        for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            int ni = i + di, nj = j + dj;
            if (ni < 0 || nj < 0 || ni >= rx || nj >= ry) continue;
            if (!visited[static_cast<std::size_t>(ni * ry + nj)]) nbrs.emplace_back(ni, nj);
        }
        if (nbrs.empty()) {
            stack.pop_back();
            continue;
        }
        auto [ni, nj] = nbrs[rng.below(nbrs.size())];
        visited[static_cast<std::size_t>(ni * ry + nj)] = 1;
        open_door(i, j, ni, nj);
        stack.emplace_back(ni, nj);
    }
    for (int e = 0; e < extra_doors; ++e) {
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(rx)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(ry)));
        bool horiz = rng.below(2) == 0;
        if (horiz && i + 1 < rx) open_door(i, j, i + 1, j);
        else if (!horiz && j + 1 < ry) open_door(i, j, i, j + 1);
    }
    return g;
}

/// Serpentine rooms: a boustrophedon chain of rooms with one door per
/// consecutive pair, door positions seeded. The greedy pull toward a goal in
/// the last room points through walls nearly everywhere, which makes the
/// family adversarial for weighted A* while attractor roots sit at the doors.
inline OccupancyGrid serpentine_rooms(int w, int h, int rooms, std::uint64_t seed) {
    OccupancyGrid g = GridDomain::make_grid({w, h});
    Rng rng(seed);
    std::vector<int> wall_x, wall_y;
    for (int i = 1; i < rooms; ++i) wall_x.push_back(i * w / rooms);
    for (int j = 1; j < rooms; ++j) wall_y.push_back(j * h / rooms);
    for (int x : wall_x) {
        for (int y = 0; y < h; ++y) g.set_occupied({x, y});
    }
    for (int y : wall_y) {
        for (int x = 0; x < w; ++x) g.set_occupied({x, y});
    }
    auto span_x = [&](int i) {
        int lo = i == 0 ? 0 : wall_x[i - 1] + 1;
        int hi = i == rooms - 1 ? w - 1 : wall_x[i] - 1;
        return std::make_pair(lo, hi);
    };
    auto span_y = [&](int j) {
        int lo = j == 0 ? 0 : wall_y[j - 1] + 1;
        int hi = j == rooms - 1 ? h - 1 : wall_y[j] - 1;
        return std::make_pair(lo, hi);
    };
    auto door = [&](int i0, int j0, int i1, int j1) {
        if (i0 != i1) {
            int x = wall_x[std::min(i0, i1)];
            auto [lo, hi] = span_y(j0);
            g.set_occupied({x, lo + int(rng.below(std::uint64_t(hi - lo + 1)))}, false);
        } else {
            int y = wall_y[std::min(j0, j1)];
            auto [lo, hi] = span_x(i0);
            g.set_occupied({lo + int(rng.below(std::uint64_t(hi - lo + 1))), y}, false);
        }
    };
    std::vector<std::pair<int, int>> chain;
    for (int i = 0; i < rooms; ++i) {
        for (int j = 0; j < rooms; ++j) {
            chain.emplace_back(i, (i % 2 == 0) ? j : rooms - 1 - j);
        }
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        door(chain[k].first, chain[k].second, chain[k + 1].first, chain[k + 1].second);
    }
    return g;
}

/// Wall in a cell with a closed box (radius in cells), leaving the interior
/// free: the goal stays locally valid but unreachable from outside.
inline void seal_cell(OccupancyGrid& g, const std::vector<int>& cell, int radius = 2) {
    const auto& dims = g.dims();
    for (int x = cell[0] - radius; x <= cell[0] + radius; ++x) {
        for (int y = cell[1] - radius; y <= cell[1] + radius; ++y) {
            if (x < 0 || y < 0 || x >= dims[0] || y >= dims[1]) continue;
            if (std::max(std::abs(x - cell[0]), std::abs(y - cell[1])) == radius) {
                g.set_occupied({x, y});
            }
        }
    }
}

}  // namespace mgs
