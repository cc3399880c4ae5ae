#pragma once

#include <cmath>
#include <vector>

#include "mgs/core/domain.hpp"
#include "mgs/roots/occupancy_grid.hpp"

namespace mgs {

/// 2D (8-connected, cardinal cost 1 / diagonal sqrt(2)) or 3D (26-connected
/// analog) occupancy-grid domain. Configurations are in cell units: cell
/// (i, j) has configuration (i, j), so the workspace and configuration space
/// coincide and Euclidean distance is the admissible heuristic.
class GridDomain : public Domain {
public:
    explicit GridDomain(OccupancyGrid grid) : grid_(std::move(grid)) {
        res_.assign(grid_.ndims(), 1.0);
        const auto& offs = grid_.neighbor_offsets();
        offsets_ = offs;
        costs_.reserve(offsets_.size());
        for (const auto& o : offsets_) {
            double s = 0.0;
            for (int v : o) s += static_cast<double>(v) * v;
            costs_.push_back(std::sqrt(s));
        }
    }

    /// Grid with cell centers at integer coordinates.
    static OccupancyGrid make_grid(std::vector<int> dims, double inflation = 0.0) {
        std::vector<double> origin(dims.size(), -0.5);
        return OccupancyGrid(std::move(dims), 1.0, inflation, std::move(origin));
    }

    const OccupancyGrid& grid() const { return grid_; }
    OccupancyGrid& grid() { return grid_; }

    int dof() const override { return grid_.ndims(); }
    const std::vector<double>& resolutions() const override { return res_; }

    bool in_bounds(const Config& q) const override {
        return grid_.in_grid(quantize(q, res_));
    }

    bool is_collision_free(const Config& q) const override {
        StateKey k = quantize(q, res_);
        return grid_.in_grid(k) && !grid_.occupied(k);
    }

    void successors(const StateKey& key, const Config& /*config*/, const QueryContext& /*ctx*/,
                    std::vector<Transition>& out) const override {
        StateKey to(key.size());
        for (std::size_t i = 0; i < offsets_.size(); ++i) {
            for (std::size_t d = 0; d < key.size(); ++d) to[d] = key[d] + offsets_[i][d];
            if (!grid_.in_grid(to) || grid_.occupied(to)) continue;
            Transition t;
            t.from = key;
            t.to = to;
            t.to_config.assign(to.begin(), to.end());
            t.cost = costs_[i];
            out.push_back(std::move(t));
        }
    }

    double heuristic_admissible(const Config& q, const GoalCondition& goal) const override {
        if (goal.kind == GoalCondition::Kind::ExactConfig) return euclidean(q, goal.target);
        return std::max(0.0, euclidean(q, goal.center) - goal.radius);
    }

    double heuristic_focal(const Config& q, const GoalCondition& goal) const override {
        return goal.kind == GoalCondition::Kind::ExactConfig ? euclidean(q, goal.target)
                                                             : euclidean(q, goal.center);
    }

    bool is_goal(const StateKey& key, const Config& q, const GoalCondition& goal) const override {
        if (goal.kind == GoalCondition::Kind::ExactConfig) {
            return key == quantize(goal.target, res_);
        }
        return euclidean(q, goal.center) <= goal.radius;
    }

    std::vector<double> workspace_project(const Config& q) const override { return q; }

    double segment_cost(const Config& a, const Config& b) const override {
        return euclidean(a, b);
    }

    std::optional<Config> config_near_workspace_point(const std::vector<double>& point,
                                                      const Config& /*seed*/,
                                                      const QueryContext& /*ctx*/) const override {
        Config q(point.size());
        for (std::size_t i = 0; i < point.size(); ++i) q[i] = std::round(point[i]);
        if (!is_collision_free(q)) return std::nullopt;
        return q;
    }

    const OccupancyGrid* workspace_grid() const override { return &grid_; }

private:
    OccupancyGrid grid_;
    std::vector<double> res_;
    std::vector<std::vector<int>> offsets_;
    std::vector<double> costs_;
};

}  // namespace mgs
