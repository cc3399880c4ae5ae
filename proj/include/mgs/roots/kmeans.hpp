#pragma once

#include <vector>

#include "mgs/core/types.hpp"

namespace mgs {

/// Deterministic k-means: farthest-point initialization from the first input,
/// Lloyd iterations capped at 50, all ties broken by the lowest index.
/// Returns the cluster assignment per point; reproducible roots are required
/// by the consistency experiments, so no randomness is involved.
inline std::vector<int> kmeans_assign(const std::vector<std::vector<double>>& points, int k,
                                      int max_iters = 50) {
    const int n = static_cast<int>(points.size());
    std::vector<int> assign(n, 0);
    if (n == 0 || k <= 1) return assign;
    if (k >= n) {
        for (int i = 0; i < n; ++i) assign[i] = i;
        return assign;
    }

    auto d2 = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            double d = a[i] - b[i];
            s += d * d;
        }
        return s;
    };

    std::vector<std::vector<double>> centroids{points[0]};
    while (static_cast<int>(centroids.size()) < k) {
        int far = -1;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
            double nearest = kInf;
            for (const auto& c : centroids) nearest = std::min(nearest, d2(points[i], c));
            if (nearest > far_d) {
                far_d = nearest;
                far = i;
            }
        }
        centroids.push_back(points[far]);
    }

    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = d2(points[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                double d = d2(points[i], centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        if (!changed && iter > 0) break;
        std::vector<std::vector<double>> sums(k, std::vector<double>(points[0].size(), 0.0));
        std::vector<int> counts(k, 0);
        for (int i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < points[i].size(); ++d) sums[assign[i]][d] += points[i][d];
            ++counts[assign[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;  // empty cluster keeps its centroid
            for (auto& v : sums[c]) v /= counts[c];
            centroids[c] = sums[c];
        }
    }
    return assign;
}

/// Centroid of each cluster under an assignment (empty clusters get no entry
/// in the validity mask).
inline std::vector<std::vector<double>> kmeans_centroids(
    const std::vector<std::vector<double>>& points, const std::vector<int>& assign, int k) {
    std::vector<std::vector<double>> cent(k);
    std::vector<int> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        int c = assign[i];
        if (cent[c].empty()) cent[c].assign(points[i].size(), 0.0);
        for (std::size_t d = 0; d < points[i].size(); ++d) cent[c][d] += points[i][d];
        ++counts[c];
    }
    for (int c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        for (auto& v : cent[c]) v /= counts[c];
    }
    return cent;
}

}  // namespace mgs
