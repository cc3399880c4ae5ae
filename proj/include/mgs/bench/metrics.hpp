#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgs/core/types.hpp"

namespace mgs {

/// Composite path cost: weighted sum of length, velocity and acceleration
/// magnitudes under a unit timestep,
///   cost = L + 0.1 * V + 0.01 * A
/// with L the summed joint-space step lengths, V the first-difference
/// magnitudes (equal to L at unit timestep) and A the second-difference
/// magnitudes.
inline double composite_cost(const std::vector<Config>& path) {
    if (path.empty()) throw std::invalid_argument("composite_cost: empty path");
    double length = 0.0, accel = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        length += euclidean(path[i + 1], path[i]);
    }
    for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        double s = 0.0;
        for (std::size_t d = 0; d < path[i].size(); ++d) {
            double a = path[i + 2][d] - 2.0 * path[i + 1][d] + path[i][d];
            s += a * a;
        }
        accel += std::sqrt(s);
    }
    const double velocity = length;
    return length + 0.1 * velocity + 0.01 * accel;
}

inline double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

/// Coefficient of variation in percent: population standard deviation over
/// mean. Zero for empty/singleton samples or zero mean.
inline double cv_percent(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    bool all_equal = true;
    for (double x : v) all_equal = all_equal && (x == v[0]);
    if (all_equal) return 0.0;  // identical samples: exactly zero, no fp noise
    const double mu = mean(v);
    if (mu == 0.0) return 0.0;
    double var = 0.0;
    for (double x : v) var += (x - mu) * (x - mu);
    var /= static_cast<double>(v.size());
    return std::sqrt(var) / mu * 100.0;
}

struct MetricsSummary {
    std::string planner;
    int runs{0};
    int successes{0};
    double success_rate_pct{0.0};
    double mean_cost_successful{0.0};
    double cost_cv_pct{0.0};  // mean over queries of the repeat-cost CV
    double mean_time_successful{0.0};
    double mean_time_all{0.0};  // includes timeouts
    /// Mean of (this planner's cost / other planner's cost) over queries
    /// where both succeeded.
    std::map<std::string, double> pairwise_relative_cost;
};

}  // namespace mgs
