#pragma once

// Feasible regions with linear-minimization oracles: L1 ball, box, nuclear-norm ball.

#include "arcs/core.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <variant>

namespace arcs {

/// Block width of the nuclear-ball power iteration.
inline constexpr Index kPowerBlock = 8;

struct PowerIterConfig {
    int max_iters = 200;
    double tol = 1e-10;  // relative change of the Rayleigh quotient
    std::uint64_t seed = 0x5eedULL;
};

struct L1Ball {
    Index dim;
    double radius;
};

struct Box {
    Point lo;
    Point hi;
};

/// {X in R^{rows x cols} : ||X||_* <= radius}, X flattened row-major.
struct NuclearBall {
    Index rows;
    Index cols;
    double radius;
    PowerIterConfig power;
};

/// Raised when power iteration does not settle within max_iters.
class LmoError : public Error {
public:
    LmoError(const std::string& what, double residual) : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class FeasibleRegion {
public:
    using Variant = std::variant<L1Ball, Box, NuclearBall>;

    static FeasibleRegion l1_ball(Index dim, double radius) {
        require(dim >= 1, "l1 ball dimension must be >= 1");
        require(radius > 0.0 && std::isfinite(radius), "l1 ball radius must be > 0");
        return FeasibleRegion(L1Ball{dim, radius});
    }

    static FeasibleRegion box(Point lo, Point hi) {
        require(lo.size() >= 1 && lo.size() == hi.size(), "box bounds must share a positive dimension");
        require(lo.allFinite() && hi.allFinite() && (lo.array() <= hi.array()).all(), "box needs finite lo <= hi");
        return FeasibleRegion(Box{std::move(lo), std::move(hi)});
    }

    static FeasibleRegion box(Index dim, double lo, double hi) {
        return box(Point::Constant(dim, lo), Point::Constant(dim, hi));
    }

    static FeasibleRegion nuclear_ball(Index rows, Index cols, double radius, PowerIterConfig power = {}) {
        require(rows >= 1 && cols >= 1, "nuclear ball dims must be positive");
        require(radius > 0.0 && std::isfinite(radius), "nuclear ball radius must be > 0");
        require(power.max_iters >= 1 && power.tol > 0.0, "power iteration needs max_iters >= 1 and tol > 0");
        return FeasibleRegion(NuclearBall{rows, cols, radius, power});
    }

    Index dim() const {
        return std::visit(
            [](const auto& r) -> Index {
                using R = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<R, L1Ball>) return r.dim;
                else if constexpr (std::is_same_v<R, Box>) return r.lo.size();
                else return r.rows * r.cols;
            },
            shape_);
    }

    const Variant& shape() const { return shape_; }

    /// Vertex minimizing <g, v>; counters.lo += 1.
    Point lmo(const Point& g, OracleCounters& counters) const {
        require_dim(g.size(), dim(), "lmo");
        Point v = std::visit([&](const auto& r) { return solve(r, g); }, shape_);
        ++counters.lo;
        return v;
    }

    double diameter() const {
        return std::visit(
            [](const auto& r) -> double {
                using R = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<R, L1Ball>) return 2.0 * r.radius;
                else if constexpr (std::is_same_v<R, Box>) return (r.hi - r.lo).norm();
                else return 2.0 * r.radius;
            },
            shape_);
    }

    bool contains(const Point& x, double tol) const {
        require_dim(x.size(), dim(), "contains");
        if (!x.allFinite()) return false;
        return std::visit(
            [&](const auto& r) -> bool {
                using R = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<R, L1Ball>) {
                    return x.lpNorm<1>() <= r.radius + tol;
                } else if constexpr (std::is_same_v<R, Box>) {
                    return ((x - r.lo).array() >= -tol).all() && ((r.hi - x).array() >= -tol).all();
                } else {
                    return nuclear_norm(r, x) <= r.radius + tol;
                }
            },
            shape_);
    }

    /// A deterministic feasible starting point (the origin clipped into the region).
    Point center() const {
        return std::visit(
            [](const auto& r) -> Point {
                using R = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<R, L1Ball>) return Point::Zero(r.dim);
                else if constexpr (std::is_same_v<R, Box>) return r.lo.cwiseMax(Point::Zero(r.lo.size())).cwiseMin(r.hi);
                else return Point::Zero(r.rows * r.cols);
            },
            shape_);
    }

    static double nuclear_norm(const NuclearBall& r, const Point& x) {
        const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> X(x.data(), r.rows,
                                                                                                       r.cols);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
        return svd.singularValues().sum();
    }

private:
    explicit FeasibleRegion(Variant v) : shape_(std::move(v)) {}

    // v = -r sign(g_k) e_k, k = first argmax |g_k|, sign(0) = +1
    static Point solve(const L1Ball& r, const Point& g) {
        Index k = 0;
        double best = std::abs(g[0]);
        for (Index j = 1; j < g.size(); ++j) {
            if (std::abs(g[j]) > best) {
                best = std::abs(g[j]);
                k = j;
            }
        }
        Point v = Point::Zero(g.size());
        v[k] = g[k] >= 0.0 ? -r.radius : r.radius;
        return v;
    }

    // v_j = lo_j when g_j >= 0, else hi_j
    static Point solve(const Box& r, const Point& g) {
        Point v(g.size());
        for (Index j = 0; j < g.size(); ++j) v[j] = g[j] >= 0.0 ? r.lo[j] : r.hi[j];
        return v;
    }

    // v = -R u1 v1^T, top singular pair of G by block power iteration on G^T G with a
    // Rayleigh-Ritz step, so near-tied leading singular values do not stall convergence.
    static Point solve(const NuclearBall& r, const Point& g) {
        using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        const Eigen::Map<const RowMat> G(g.data(), r.rows, r.cols);
        const Index k = std::min<Index>({kPowerBlock, r.rows, r.cols});
        std::mt19937_64 rng(r.power.seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::MatrixXd Q(r.cols, k);
        for (Index j = 0; j < k; ++j)
            for (Index i = 0; i < r.cols; ++i) Q(i, j) = normal(rng);
        Eigen::VectorXd left(r.rows);
        for (Index i = 0; i < r.rows; ++i) left[i] = normal(rng);
        left.normalize();

        Point out(r.rows * r.cols);
        Eigen::Map<RowMat> V(out.data(), r.rows, r.cols);
        if (G.cwiseAbs().maxCoeff() == 0.0) {
            V = -r.radius * left * Q.col(0).normalized().transpose();
            return out;
        }

        const auto orthonormal = [k](const Eigen::MatrixXd& M) -> Eigen::MatrixXd {
            return Eigen::HouseholderQR<Eigen::MatrixXd>(M).householderQ() * Eigen::MatrixXd::Identity(M.rows(), k);
        };
        Q = orthonormal(Q);
        double rq = 0.0;
        double residual = std::numeric_limits<double>::infinity();
        bool converged = false;
        Eigen::MatrixXd B = G * Q;
        for (int it = 0; it < r.power.max_iters; ++it) {
            Q = orthonormal(G.transpose() * B);
            B = G * Q;
            Eigen::JacobiSVD<Eigen::MatrixXd> ritz(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const double next_rq = ritz.singularValues()[0] * ritz.singularValues()[0];
            residual = std::abs(next_rq - rq) / std::max(next_rq, std::numeric_limits<double>::min());
            rq = next_rq;
            if (residual <= r.power.tol) {
                converged = true;
                left = ritz.matrixU().col(0);
                V = -r.radius * left * (Q * ritz.matrixV().col(0)).transpose();
                break;
            }
        }
        if (!converged)
            throw LmoError("nuclear LO: power iteration did not converge in " + std::to_string(r.power.max_iters) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           residual);
        return out;
    }

    Variant shape_;
};

inline Point lmo(const FeasibleRegion& region, const Point& g, OracleCounters& counters) { return region.lmo(g, counters); }
inline double diameter(const FeasibleRegion& region) { return region.diameter(); }
inline bool contains(const FeasibleRegion& region, const Point& x, double tol) { return region.contains(x, tol); }

}  // namespace arcs
