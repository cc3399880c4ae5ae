#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mgs/core/types.hpp"
#include "mgs/roots/attractors.hpp"
#include "mgs/roots/occupancy_grid.hpp"

namespace mgs {

/// Text overlay of a 2D grid run: '#' obstacle, lowercase letter = subgraph
/// that expanded the cell (a = anchor), '*' = path, 'S'/'G' endpoints.
inline std::string expansion_overlay(const OccupancyGrid& grid,
                                     const std::vector<std::pair<int, StateKey>>& trace,
                                     const std::vector<Config>& path, const StateKey& start,
                                     const StateKey& goal) {
    const auto& dims = grid.dims();
    std::vector<std::string> rows(dims[1], std::string(dims[0], '.'));
    for (int x = 0; x < dims[0]; ++x) {
        for (int y = 0; y < dims[1]; ++y) {
            if (grid.occupied({x, y})) rows[y][x] = '#';
        }
    }
    for (const auto& [gid, key] : trace) {
        char c = static_cast<char>('a' + std::min(gid - 1, 25));
        rows[key[1]][key[0]] = c;
    }
    for (const auto& q : path) {
        int x = static_cast<int>(std::llround(q[0])), y = static_cast<int>(std::llround(q[1]));
        if (x >= 0 && y >= 0 && x < dims[0] && y < dims[1]) rows[y][x] = '*';
    }
    rows[start[1]][start[0]] = 'S';
    rows[goal[1]][goal[0]] = 'G';
    std::ostringstream os;
    for (const auto& r : rows) os << r << "\n";
    return os.str();
}

/// Attractor overlay: 'A' attractor cells, 'G' the BFS goal, digits the cost
/// field modulo 10 elsewhere.
inline std::string attractor_overlay(const OccupancyGrid& grid, const WavefrontField& field) {
    const auto& dims = grid.dims();
    std::vector<std::string> rows(dims[1], std::string(dims[0], '.'));
    for (int x = 0; x < dims[0]; ++x) {
        for (int y = 0; y < dims[1]; ++y) {
            std::size_t idx = grid.index_of({x, y});
            if (grid.occupied_inflated({x, y})) {
                rows[y][x] = '#';
            } else if (field.g[idx] < kInf) {
                rows[y][x] = static_cast<char>('0' + static_cast<int>(field.g[idx]) % 10);
            }
        }
    }
    for (int a : field.attractor_cells) {
        auto c = grid.cell_at(static_cast<std::size_t>(a));
        rows[c[1]][c[0]] = 'A';
    }
    auto g = field.goal_cell;
    rows[g[1]][g[0]] = 'G';
    std::ostringstream os;
    for (const auto& r : rows) os << r << "\n";
    return os.str();
}

/// Binary PPM (P6) writer.
inline void write_ppm(const std::string& path, int w, int h,
                      const std::vector<std::array<unsigned char, 3>>& rgb) {
    std::ofstream out(path, std::ios::binary);
    out << "P6\n" << w << " " << h << "\n255\n";
    for (const auto& px : rgb) out.write(reinterpret_cast<const char*>(px.data()), 3);
}

inline void attractor_ppm(const std::string& path, const OccupancyGrid& grid,
                          const WavefrontField& field) {
    const auto& dims = grid.dims();
    std::vector<std::array<unsigned char, 3>> img(static_cast<std::size_t>(dims[0]) * dims[1],
                                                  {255, 255, 255});
    auto at = [&](int x, int y) -> std::array<unsigned char, 3>& {
        return img[static_cast<std::size_t>(y) * dims[0] + x];
    };
    double gmax = 1.0;
    for (double v : field.g) {
        if (v < kInf) gmax = std::max(gmax, v);
    }
    for (int x = 0; x < dims[0]; ++x) {
        for (int y = 0; y < dims[1]; ++y) {
            std::size_t idx = grid.index_of({x, y});
            if (grid.occupied_inflated({x, y})) {
                at(x, y) = {30, 30, 30};
            } else if (field.g[idx] < kInf) {
                auto shade = static_cast<unsigned char>(230.0 * (1.0 - field.g[idx] / gmax));
                at(x, y) = {shade, shade, 255};
            }
        }
    }
    for (int a : field.attractor_cells) {
        auto c = grid.cell_at(static_cast<std::size_t>(a));
        at(c[0], c[1]) = {220, 60, 60};
    }
    at(field.goal_cell[0], field.goal_cell[1]) = {40, 180, 40};
    write_ppm(path, dims[0], dims[1], img);
}

inline void expansion_ppm(const std::string& path, const OccupancyGrid& grid,
                          const std::vector<std::pair<int, StateKey>>& trace,
                          const std::vector<Config>& plan_path) {
    static const std::array<std::array<unsigned char, 3>, 10> palette{{{60, 120, 216},
                                                                       {216, 120, 60},
                                                                       {120, 196, 80},
                                                                       {196, 80, 160},
                                                                       {80, 196, 196},
                                                                       {230, 200, 60},
                                                                       {150, 90, 220},
                                                                       {90, 160, 90},
                                                                       {220, 120, 160},
                                                                       {120, 120, 120}}};
    const auto& dims = grid.dims();
    std::vector<std::array<unsigned char, 3>> img(static_cast<std::size_t>(dims[0]) * dims[1],
                                                  {255, 255, 255});
    auto at = [&](int x, int y) -> std::array<unsigned char, 3>& {
        return img[static_cast<std::size_t>(y) * dims[0] + x];
    };
    for (int x = 0; x < dims[0]; ++x) {
        for (int y = 0; y < dims[1]; ++y) {
            if (grid.occupied({x, y})) at(x, y) = {30, 30, 30};
        }
    }
    for (const auto& [gid, key] : trace) at(key[0], key[1]) = palette[(gid - 1) % 10];
    for (const auto& q : plan_path) {
        int x = static_cast<int>(std::llround(q[0])), y = static_cast<int>(std::llround(q[1]));
        if (x >= 0 && y >= 0 && x < dims[0] && y < dims[1]) at(x, y) = {220, 40, 40};
    }
    write_ppm(path, dims[0], dims[1], img);
}

}  // namespace mgs
