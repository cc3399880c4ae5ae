#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mgs/roots/occupancy_grid.hpp"

namespace mgs {

/// Plain-text grid maps, bit-exact round-trip through the canonical form:
///
///   mgsmap
///   dims W H [D]
///   cellsize 1
///   map
///   ....#...     <- row y = 0, characters x = 0..W-1; '.' free, '#' occupied
///   ...
///
/// 3D maps list D layers of H rows each, separated by a blank line.
/// Cell centers sit at integer coordinates (grid origin -0.5 per dimension).
inline OccupancyGrid load_map(std::istream& in) {
    std::string tok;
    if (!(in >> tok) || tok != "mgsmap") throw std::runtime_error("map: missing mgsmap header");
    if (!(in >> tok) || tok != "dims") throw std::runtime_error("map: missing dims");
    std::vector<int> dims;
    {
        std::string line;
        std::getline(in, line);
        std::istringstream ls(line);
        int v = 0;
        while (ls >> v) dims.push_back(v);
    }
    if (dims.size() != 2 && dims.size() != 3) throw std::runtime_error("map: dims must be 2 or 3");
    if (!(in >> tok) || tok != "cellsize") throw std::runtime_error("map: missing cellsize");
    double cell = 0.0;
    if (!(in >> cell) || !(cell > 0.0)) throw std::runtime_error("map: bad cellsize");
    if (!(in >> tok) || tok != "map") throw std::runtime_error("map: missing map section");
    in.ignore();

    const int w = dims[0], h = dims[1];
    const int d = dims.size() == 3 ? dims[2] : 1;
    std::vector<double> origin(dims.size(), -0.5);
    OccupancyGrid grid(dims, cell, 0.0, origin);

    std::string line;
    for (int z = 0; z < d; ++z) {
        int y = 0;
        while (y < h) {
            if (!std::getline(in, line)) throw std::runtime_error("map: truncated rows");
            if (line.empty()) continue;
            if (static_cast<int>(line.size()) != w) {
                throw std::runtime_error("map: row " + std::to_string(y) + " has wrong width");
            }
            for (int x = 0; x < w; ++x) {
                char c = line[x];
                if (c == '#') {
                    if (dims.size() == 3) {
                        grid.set_occupied({x, y, z});
                    } else {
                        grid.set_occupied({x, y});
                    }
                } else if (c != '.') {
                    throw std::runtime_error(std::string("map: bad cell character '") + c + "'");
                }
            }
            ++y;
        }
    }
    return grid;
}

inline void save_map(std::ostream& out, const OccupancyGrid& grid) {
    const auto& dims = grid.dims();
    out << "mgsmap\n";
    out << "dims";
    for (int d : dims) out << ' ' << d;
    out << "\n";
    {
        std::ostringstream cs;
        cs.precision(17);
        cs << grid.cell_size();
        out << "cellsize " << cs.str() << "\n";
    }
    out << "map\n";
    const int w = dims[0], h = dims[1];
    const int d = dims.size() == 3 ? dims[2] : 1;
    for (int z = 0; z < d; ++z) {
        if (z > 0) out << "\n";
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                bool occ = dims.size() == 3 ? grid.occupied({x, y, z}) : grid.occupied({x, y});
                out << (occ ? '#' : '.');
            }
            out << "\n";
        }
    }
}

inline OccupancyGrid load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file: " + path);
    return load_map(in);
}

inline void save_map_file(const std::string& path, const OccupancyGrid& grid) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write map file: " + path);
    save_map(out, grid);
}

inline std::string map_to_string(const OccupancyGrid& grid) {
    std::ostringstream os;
    save_map(os, grid);
    return os.str();
}

inline OccupancyGrid map_from_string(const std::string& text) {
    std::istringstream is(text);
    return load_map(is);
}

}  // namespace mgs
