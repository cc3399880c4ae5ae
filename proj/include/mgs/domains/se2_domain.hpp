#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "mgs/core/domain.hpp"
#include "mgs/roots/occupancy_grid.hpp"

namespace mgs {

/// x-y-theta navigation with a convex polygonal footprint over a 2D grid.
/// A pose is valid iff the rotated, translated footprint covers only free
/// cells. Motion primitives are single-component moves (+-1 cell in x or y,
/// +-1 theta bin) with uniform cost.
class Se2Domain : public Domain {
public:
    Se2Domain(OccupancyGrid grid, std::vector<std::array<double, 2>> footprint, int theta_bins)
        : grid_(std::move(grid)), footprint_(std::move(footprint)), bins_(theta_bins) {
        if (bins_ < 4) throw std::invalid_argument("se2: need at least 4 theta bins");
        if (footprint_.size() < 3) throw std::invalid_argument("se2: footprint needs >= 3 vertices");
        theta_res_ = 2.0 * M_PI / bins_;
        res_ = {1.0, 1.0, theta_res_};
    }

    static OccupancyGrid make_grid(std::vector<int> dims) {
        std::vector<double> origin(dims.size(), -0.5);
        return OccupancyGrid(std::move(dims), 1.0, 0.0, std::move(origin));
    }

    const OccupancyGrid& grid() const { return grid_; }
    int theta_bins() const { return bins_; }

    int dof() const override { return 3; }
    const std::vector<double>& resolutions() const override { return res_; }

    bool in_bounds(const Config& q) const override {
        StateKey k = quantize({q[0], q[1]}, {1.0, 1.0});
        return grid_.in_grid(k);
    }

    bool is_collision_free(const Config& q) const override {
        if (!in_bounds(q)) return false;
        const double c = std::cos(q[2]), s = std::sin(q[2]);
        std::vector<std::array<double, 2>> poly(footprint_.size());
        double lox = kInf, loy = kInf, hix = -kInf, hiy = -kInf;
        for (std::size_t i = 0; i < footprint_.size(); ++i) {
            poly[i] = {q[0] + c * footprint_[i][0] - s * footprint_[i][1],
                       q[1] + s * footprint_[i][0] + c * footprint_[i][1]};
            lox = std::min(lox, poly[i][0]);
            hix = std::max(hix, poly[i][0]);
            loy = std::min(loy, poly[i][1]);
            hiy = std::max(hiy, poly[i][1]);
        }
        // Cells whose center lies in the polygon must be free and in-grid.
        for (int x = static_cast<int>(std::floor(lox)); x <= static_cast<int>(std::ceil(hix)); ++x) {
            for (int y = static_cast<int>(std::floor(loy)); y <= static_cast<int>(std::ceil(hiy));
                 ++y) {
                if (!inside_convex(poly, x, y)) continue;
                if (!grid_.in_grid({x, y}) || grid_.occupied({x, y})) return false;
            }
        }
        // Boundary samples guard thin footprints spanning no cell center.
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const auto& a = poly[i];
            const auto& b = poly[(i + 1) % poly.size()];
            const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
            const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.5)));
            for (int t = 0; t <= steps; ++t) {
                const double u = static_cast<double>(t) / steps;
                const int x = static_cast<int>(std::llround(a[0] + u * (b[0] - a[0])));
                const int y = static_cast<int>(std::llround(a[1] + u * (b[1] - a[1])));
                if (!grid_.in_grid({x, y}) || grid_.occupied({x, y})) return false;
            }
        }
        return true;
    }

    void successors(const StateKey& key, const Config& config, const QueryContext& /*ctx*/,
                    std::vector<Transition>& out) const override {
        static const std::array<std::array<int, 3>, 6> moves{
            {{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}}};
        for (const auto& mv : moves) {
            Config to{config[0] + mv[0], config[1] + mv[1],
                      normalize_angle(config[2] + mv[2] * theta_res_)};
            if (!is_collision_free(to)) continue;
            if (mv[2] != 0 && !is_collision_free({config[0], config[1],
                                                  normalize_angle(config[2] + mv[2] * theta_res_ / 2)}))
                continue;
            Transition t;
            t.from = key;
            t.to = key_of(to);
            if (t.to == key) continue;
            t.to_config = to;
            t.cost = 1.0;
            out.push_back(std::move(t));
        }
    }

    double heuristic_admissible(const Config& q, const GoalCondition& goal) const override {
        if (goal.kind != GoalCondition::Kind::ExactConfig) return 0.0;
        // Discrete L1: every primitive changes exactly one component by one
        // unit, so the summed component gaps lower-bound the move count.
        StateKey a = key_of(q), b = key_of(goal.target);
        double d = std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]);
        int dt = std::abs(a[2] - b[2]);
        d += std::min(dt, bins_ - dt);
        return d;
    }

    double heuristic_focal(const Config& q, const GoalCondition& goal) const override {
        std::vector<double> p{q[0], q[1]};
        if (goal.kind == GoalCondition::Kind::ExactConfig) {
            return euclidean(p, {goal.target[0], goal.target[1]});
        }
        return euclidean(p, goal.center);
    }

    bool is_goal(const StateKey& key, const Config& q, const GoalCondition& goal) const override {
        if (goal.kind == GoalCondition::Kind::ExactConfig) return key == key_of(goal.target);
        return euclidean({q[0], q[1]}, goal.center) <= goal.radius;
    }

    std::vector<double> workspace_project(const Config& q) const override {
        return {q[0], q[1]};
    }

    double segment_cost(const Config& a, const Config& b) const override {
        return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) +
               std::abs(angle_diff(a[2], b[2])) / theta_res_;
    }

    Config interpolate(const Config& a, const Config& b, double t) const override {
        return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]),
                normalize_angle(a[2] + t * angle_diff(b[2], a[2]))};
    }

    double interpolation_norm(const Config& a, const Config& b) const override {
        const double dx = a[0] - b[0], dy = a[1] - b[1];
        return std::max(std::sqrt(dx * dx + dy * dy), std::abs(angle_diff(a[2], b[2])) / theta_res_);
    }

    /// Position from the cell; theta copied from whichever of start/goal is
    /// closer in the workspace.
    std::optional<Config> config_near_workspace_point(const std::vector<double>& point,
                                                      const Config& seed,
                                                      const QueryContext& ctx) const override {
        double theta = ctx.start[2];
        const std::vector<double> sp{ctx.start[0], ctx.start[1]};
        double ds = euclidean(point, sp);
        if (ctx.goal.kind == GoalCondition::Kind::ExactConfig) {
            const std::vector<double> gp{ctx.goal.target[0], ctx.goal.target[1]};
            if (euclidean(point, gp) < ds) theta = ctx.goal.target[2];
        } else if (euclidean(point, ctx.goal.center) < ds) {
            theta = seed.size() == 3 ? seed[2] : theta;
        }
        Config q{std::round(point[0]), std::round(point[1]), normalize_angle(theta)};
        if (!is_collision_free(q)) return std::nullopt;
        return q;
    }

    const OccupancyGrid* workspace_grid() const override { return &grid_; }

    /// Keys wrap theta into [0, bins).
    StateKey key_of(const Config& q) const override {
        if (!in_bounds(q)) throw std::out_of_range("key_of: configuration out of bounds");
        StateKey k(3);
        k[0] = static_cast<int>(std::llround(q[0]));
        k[1] = static_cast<int>(std::llround(q[1]));
        int tb = static_cast<int>(std::llround(normalize_angle(q[2]) / theta_res_)) % bins_;
        if (tb < 0) tb += bins_;
        k[2] = tb;
        return k;
    }

    static double normalize_angle(double a) {
        a = std::fmod(a, 2.0 * M_PI);
        if (a < 0.0) a += 2.0 * M_PI;
        return a;
    }

    /// Signed shortest angular difference a - b in (-pi, pi].
    static double angle_diff(double a, double b) {
        double d = std::fmod(a - b, 2.0 * M_PI);
        if (d > M_PI) d -= 2.0 * M_PI;
        if (d <= -M_PI) d += 2.0 * M_PI;
        return d;
    }

private:
    static bool inside_convex(const std::vector<std::array<double, 2>>& poly, double px,
                              double py) {
        int sign = 0;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const auto& a = poly[i];
            const auto& b = poly[(i + 1) % poly.size()];
            const double cr = (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]);
            if (cr > 0) {
                if (sign < 0) return false;
                sign = 1;
            } else if (cr < 0) {
                if (sign > 0) return false;
                sign = -1;
            }
        }
        return true;
    }

    OccupancyGrid grid_;
    std::vector<std::array<double, 2>> footprint_;
    int bins_;
    double theta_res_;
    std::vector<double> res_;
};

}  // namespace mgs
