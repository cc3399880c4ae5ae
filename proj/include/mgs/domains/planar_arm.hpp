#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "mgs/core/domain.hpp"
#include "mgs/roots/occupancy_grid.hpp"

namespace mgs {

struct Circle {
    double x{0.0}, y{0.0}, r{0.0};
};

/// Forward kinematics of a planar revolute chain: cumulative-angle joint
/// positions from the origin; the last entry is the end effector.
inline std::vector<std::array<double, 2>> arm_fk(const Config& q,
                                                 const std::vector<double>& links) {
    std::vector<std::array<double, 2>> pts;
    pts.reserve(links.size());
    double x = 0.0, y = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < links.size(); ++i) {
        theta += q[i];
        x += links[i] * std::cos(theta);
        y += links[i] * std::sin(theta);
        pts.push_back({x, y});
    }
    return pts;
}

inline double point_segment_dist(double px, double py, double ax, double ay, double bx,
                                 double by) {
    const double vx = bx - ax, vy = by - ay;
    const double len2 = vx * vx + vy * vy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((px - ax) * vx + (py - ay) * vy) / len2, 0.0, 1.0);
    const double dx = px - (ax + t * vx), dy = py - (ay + t * vy);
    return std::sqrt(dx * dx + dy * dy);
}

struct PlanarArmParams {
    std::vector<double> link_lengths;
    std::vector<std::array<double, 2>> joint_limits;  // [lo, hi] radians per joint
    std::vector<Circle> obstacles;
    double resolution_short{1.0 * M_PI / 180.0};  // radians
    int long_ratio{5};                            // long = ratio * short
    double near_threshold{10.0 * M_PI / 180.0};   // 0 disables short primitives
    double workspace_cell{0.0};                   // 0: reach / 32
    double workspace_inflation{-1.0};             // <0: one cell
};

/// Planar n-link arm over single-joint motion primitives with uniform edge
/// cost. Long primitives everywhere; short primitives additionally within
/// near_threshold (max-norm) of the start or goal. Collision model: link
/// segments against circular obstacles.
class PlanarArmDomain : public Domain {
public:
    explicit PlanarArmDomain(PlanarArmParams p) : p_(std::move(p)) {
        const int n = static_cast<int>(p_.link_lengths.size());
        if (n == 0 || p_.joint_limits.size() != p_.link_lengths.size())
            throw std::invalid_argument("arm: links and joint limits must match");
        if (p_.long_ratio < 1) throw std::invalid_argument("arm: long_ratio must be >= 1");
        res_short_.assign(n, p_.resolution_short);
        res_long_.assign(n, p_.resolution_short * p_.long_ratio);
        reach_ = 0.0;
        for (double l : p_.link_lengths) reach_ += l;
        build_workspace_grid();
    }

    int dof() const override { return static_cast<int>(p_.link_lengths.size()); }
    const std::vector<double>& resolutions() const override { return res_short_; }
    const std::vector<double>& long_resolutions() const { return res_long_; }
    const PlanarArmParams& params() const { return p_; }
    double reach() const { return reach_; }

    bool in_bounds(const Config& q) const override {
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] < p_.joint_limits[i][0] || q[i] > p_.joint_limits[i][1]) return false;
        }
        return q.size() == p_.link_lengths.size();
    }

    bool is_collision_free(const Config& q) const override {
        if (!in_bounds(q)) return false;
        auto pts = arm_fk(q, p_.link_lengths);
        double ax = 0.0, ay = 0.0;
        for (const auto& pt : pts) {
            for (const auto& c : p_.obstacles) {
                if (point_segment_dist(c.x, c.y, ax, ay, pt[0], pt[1]) <= c.r) return false;
            }
            ax = pt[0];
            ay = pt[1];
        }
        return true;
    }

    void successors(const StateKey& key, const Config& config, const QueryContext& ctx,
                    std::vector<Transition>& out) const override {
        const bool near = p_.near_threshold > 0.0 && near_start_or_goal(config, ctx);
        emit_moves(key, config, res_long_, out);
        if (near && p_.long_ratio > 1) emit_moves(key, config, res_short_, out);
    }

    double heuristic_admissible(const Config& q, const GoalCondition& goal) const override {
        // Max-norm joint distance: admissible under unit-cost single-joint
        // edges (each primitive moves one joint by well under a radian).
        if (goal.kind == GoalCondition::Kind::ExactConfig) return max_norm(q, goal.target);
        return 0.0;
    }

    double heuristic_focal(const Config& q, const GoalCondition& goal) const override {
        const auto ee = workspace_project(q);
        if (goal.kind == GoalCondition::Kind::ExactConfig) {
            return euclidean(ee, workspace_project(goal.target));
        }
        return euclidean(ee, goal.center);
    }

    bool is_goal(const StateKey& key, const Config& q, const GoalCondition& goal) const override {
        if (goal.kind == GoalCondition::Kind::ExactConfig) {
            return key == quantize(goal.target, res_short_);
        }
        return euclidean(workspace_project(q), goal.center) <= goal.radius;
    }

    std::vector<double> workspace_project(const Config& q) const override {
        auto pts = arm_fk(q, p_.link_lengths);
        return {pts.back()[0], pts.back()[1]};
    }

    double segment_cost(const Config& a, const Config& b) const override {
        // Long-move equivalents: the lattice cost of traversing the same
        // displacement with single-joint long primitives.
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]) / res_long_[i];
        return s;
    }

    /// Damped least-squares differential IK toward a workspace point.
    /// Fails on non-convergence, joint limits, or collision.
    std::optional<Config> config_near_workspace_point(const std::vector<double>& point,
                                                      const Config& seed,
                                                      const QueryContext& /*ctx*/) const override {
        constexpr double kDamping = 0.1;
        constexpr double kStepCap = 0.2;   // radians per joint per iteration
        constexpr double kTol = 1e-3;      // workspace units
        constexpr int kMaxIters = 200;

        Config q = seed;
        const int n = dof();
        for (int iter = 0; iter < kMaxIters; ++iter) {
            auto pts = arm_fk(q, p_.link_lengths);
            const double ex = point[0] - pts.back()[0];
            const double ey = point[1] - pts.back()[1];
            if (std::sqrt(ex * ex + ey * ey) <= kTol) {
                for (int j = 0; j < n; ++j) {
                    q[j] = std::clamp(q[j], p_.joint_limits[j][0], p_.joint_limits[j][1]);
                }
                if (!is_collision_free(q)) return std::nullopt;
                auto check = arm_fk(q, p_.link_lengths);
                const double cx = point[0] - check.back()[0];
                const double cy = point[1] - check.back()[1];
                if (std::sqrt(cx * cx + cy * cy) > kTol) return std::nullopt;
                return q;
            }
            // J is 2 x n; dq = J^T (J J^T + lambda^2 I)^{-1} e.
            std::vector<double> jx(n), jy(n);
            for (int j = 0; j < n; ++j) {
                double theta = 0.0, sx = 0.0, sy = 0.0;
                for (int i = 0; i < n; ++i) {
                    theta += q[i];
                    if (i >= j) {
                        sx += -p_.link_lengths[i] * std::sin(theta);
                        sy += p_.link_lengths[i] * std::cos(theta);
                    }
                }
                jx[j] = sx;
                jy[j] = sy;
            }
            double a11 = kDamping * kDamping, a12 = 0.0, a22 = kDamping * kDamping;
            for (int j = 0; j < n; ++j) {
                a11 += jx[j] * jx[j];
                a12 += jx[j] * jy[j];
                a22 += jy[j] * jy[j];
            }
            const double det = a11 * a22 - a12 * a12;
            if (std::abs(det) < 1e-12) return std::nullopt;
            const double wx = (a22 * ex - a12 * ey) / det;
            const double wy = (-a12 * ex + a11 * ey) / det;
            for (int j = 0; j < n; ++j) {
                double dq = jx[j] * wx + jy[j] * wy;
                q[j] += std::clamp(dq, -kStepCap, kStepCap);
            }
        }
        return std::nullopt;
    }

    const OccupancyGrid* workspace_grid() const override { return &ws_grid_; }

private:
    bool near_start_or_goal(const Config& q, const QueryContext& ctx) const {
        if (max_norm(q, ctx.start) <= p_.near_threshold) return true;
        if (ctx.goal.kind == GoalCondition::Kind::ExactConfig) {
            return max_norm(q, ctx.goal.target) <= p_.near_threshold;
        }
        return euclidean(workspace_project(q), ctx.goal.center) - ctx.goal.radius <=
               p_.near_threshold;
    }

    void emit_moves(const StateKey& key, const Config& config, const std::vector<double>& step,
                    std::vector<Transition>& out) const {
        Config to(config);
        for (std::size_t j = 0; j < config.size(); ++j) {
            for (double sgn : {+1.0, -1.0}) {
                to = config;
                to[j] = config[j] + sgn * step[j];
                if (!in_bounds(to)) continue;
                if (!is_collision_free(to)) continue;
                if (!sweep_free(config, to)) continue;
                Transition t;
                t.from = key;
                t.to = quantize(to, res_short_);
                if (t.to == key) continue;
                t.to_config = to;
                t.cost = 1.0;  // uniform cost
                out.push_back(std::move(t));
            }
        }
    }

    bool sweep_free(const Config& a, const Config& b) const {
        return is_edge_collision_free(a, b, p_.resolution_short);
    }

    void build_workspace_grid() {
        double cell = p_.workspace_cell > 0.0 ? p_.workspace_cell : std::max(reach_ / 32.0, 1e-6);
        double infl = p_.workspace_inflation >= 0.0 ? p_.workspace_inflation : cell;
        const double pad = 2.0 * cell;
        const double extent = reach_ + pad;
        const int n = std::max(4, static_cast<int>(std::ceil(2.0 * extent / cell)));
        ws_grid_ = OccupancyGrid({n, n}, cell, infl, {-extent, -extent});
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                auto c = ws_grid_.center_of({x, y});
                for (const auto& ob : p_.obstacles) {
                    // circle vs cell box overlap
                    const double hx = std::clamp(ob.x, c[0] - cell / 2, c[0] + cell / 2);
                    const double hy = std::clamp(ob.y, c[1] - cell / 2, c[1] + cell / 2);
                    const double dx = ob.x - hx, dy = ob.y - hy;
                    if (dx * dx + dy * dy <= ob.r * ob.r) {
                        ws_grid_.set_occupied({x, y});
                        break;
                    }
                }
            }
        }
    }

    PlanarArmParams p_;
    std::vector<double> res_short_, res_long_;
    double reach_{0.0};
    OccupancyGrid ws_grid_;
};

}  // namespace mgs
