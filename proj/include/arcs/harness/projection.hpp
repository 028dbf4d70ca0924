#pragma once

// Euclidean projections onto the feasible regions; used only to polish reference optima.

#include "arcs/core.hpp"
#include "arcs/lmo.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <functional>
#include <vector>

namespace arcs::harness {

/// Projection of v onto {x : ||x||_1 <= radius} (sort-based thresholding).
inline Point project_l1(const Point& v, double radius) {
    if (v.lpNorm<1>() <= radius) return v;
    std::vector<double> mag(v.size());
    for (Index k = 0; k < v.size(); ++k) mag[static_cast<std::size_t>(k)] = std::abs(v[k]);
    std::sort(mag.begin(), mag.end(), std::greater<>());
    double cum = 0.0, theta = 0.0;
    for (std::size_t k = 0; k < mag.size(); ++k) {
        cum += mag[k];
        const double t = (cum - radius) / static_cast<double>(k + 1);
        if (mag[k] > t) theta = t;
    }
    Point x(v.size());
    for (Index k = 0; k < v.size(); ++k) {
        const double m = std::max(std::abs(v[k]) - theta, 0.0);
        x[k] = v[k] >= 0.0 ? m : -m;
    }
    return x;
}

inline Point project(const FeasibleRegion& region, const Point& v) {
    return std::visit(
        [&](const auto& r) -> Point {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, L1Ball>) {
                return project_l1(v, r.radius);
            } else if constexpr (std::is_same_v<R, Box>) {
                return v.cwiseMax(r.lo).cwiseMin(r.hi);
            } else {
                using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
                const Eigen::Map<const RowMat> X(v.data(), r.rows, r.cols);
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
                const Point s = project_l1(svd.singularValues(), r.radius);
                const RowMat P = svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
                return Eigen::Map<const Point>(P.data(), P.size());
            }
        },
        region.shape());
}

}  // namespace arcs::harness
