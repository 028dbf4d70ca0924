#pragma once

// Frank-Wolfe on the prox subproblem
//   h(x) = gamma [<g, x> + tau/2 ||x - y||^2] + 1/2 ||x - u||^2
// with exact line search, stopped on the Frank-Wolfe gap.

#include "arcs/core.hpp"
#include "arcs/lmo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace arcs {

struct QuadSubproblem {
    Point g;  // linear term
    Point u;  // prox center
    Point y;  // strong-convexity center
    double gamma = 1.0;
    double tau = 0.0;

    Index dim() const { return g.size(); }

    void validate() const {
        require_dim(u.size(), g.size(), "QuadSubproblem u");
        require_dim(y.size(), g.size(), "QuadSubproblem y");
        require(gamma > 0.0 && std::isfinite(gamma), "QuadSubproblem: gamma must be > 0");
        require(tau >= 0.0 && std::isfinite(tau), "QuadSubproblem: tau must be >= 0");
    }

    /// Modulus of strong convexity of h.
    double modulus() const { return gamma * tau + 1.0; }
};

struct CondGResult {
    Point point;
    std::uint64_t lo_calls = 0;
    double final_gap = 0.0;
    std::uint64_t iterations = 0;  // Frank-Wolfe updates performed
};

/// Iteration budget ran out before the gap dropped below eta. Carries the last
/// (lowest-h) iterate so callers may continue with it.
class CondGNotConverged : public Error {
public:
    CondGNotConverged(CondGResult best, double eta)
        : Error("CondG: gap " + std::to_string(best.final_gap) + " > eta " + std::to_string(eta) + " after " +
                std::to_string(best.iterations) + " iterations"),
          best_(std::move(best)) {}
    const CondGResult& best() const { return best_; }

private:
    CondGResult best_;
};

inline double h_value(const QuadSubproblem& q, const Point& x) {
    require_dim(x.size(), q.dim(), "h_value");
    return q.gamma * (q.g.dot(x) + 0.5 * q.tau * (x - q.y).squaredNorm()) + 0.5 * (x - q.u).squaredNorm();
}

inline Point grad_h(const QuadSubproblem& q, const Point& x) {
    require_dim(x.size(), q.dim(), "grad_h");
    return q.gamma * (q.g + q.tau * (x - q.y)) + (x - q.u);
}

struct GapResult {
    double gap;
    Point vertex;
};

/// gap = <grad h(x), x - v> with v = lmo(grad h(x)).
inline GapResult fw_gap(const QuadSubproblem& q, const Point& x, const FeasibleRegion& region, OracleCounters& counters) {
    const Point grad = grad_h(q, x);
    Point v = region.lmo(grad, counters);
    const double gap = grad.dot(x - v);
    return {gap, std::move(v)};
}

/// Exact minimizer over [0, 1] of beta -> h((1 - beta) x + beta v).
inline double linesearch_beta(const QuadSubproblem& q, const Point& x, const Point& v) {
    require_dim(x.size(), q.dim(), "linesearch_beta");
    require_dim(v.size(), q.dim(), "linesearch_beta");
    const Point dir = x - v;
    const double sq = dir.squaredNorm();
    if (sq == 0.0) return 0.0;
    const double beta = grad_h(q, x).dot(dir) / (q.modulus() * sq);
    return std::clamp(beta, 0.0, 1.0);
}

/// Slack added to the eta comparison so exact-arithmetic terminations are not missed.
inline constexpr double kGapSlack = 1e-14;

/// 10 * ceil(gamma (1 + tau gamma) D^2 / eta), capped at 10^6.
inline std::uint64_t default_condg_max_iters(const QuadSubproblem& q, const FeasibleRegion& region, double eta) {
    const double D = region.diameter();
    const double bound = std::ceil(q.gamma * q.modulus() * D * D / eta);
    const double cap = 1e6;
    if (!(bound < cap / 10.0)) return static_cast<std::uint64_t>(cap);
    return std::max<std::uint64_t>(1, 10 * static_cast<std::uint64_t>(bound));
}

/// Runs Frank-Wolfe from u_1 = q.u until the gap is <= eta. `max_iters == 0` selects
/// the default budget. Throws CondGNotConverged when the budget is exhausted.
inline CondGResult condg_solve(const QuadSubproblem& q, const FeasibleRegion& region, double eta, std::uint64_t max_iters,
                               OracleCounters& counters) {
    q.validate();
    require_dim(q.dim(), region.dim(), "condg_solve");
    require(eta > 0.0 && std::isfinite(eta), "condg_solve: eta must be > 0");
    if (max_iters == 0) max_iters = default_condg_max_iters(q, region, eta);

    // grad h(x) = c x + r
    const double c = q.modulus();
    const Point r = q.gamma * (q.g - q.tau * q.y) - q.u;

    CondGResult res;
    res.point = q.u;
    Point grad = c * res.point + r;
    Point dir(q.dim());
    for (std::uint64_t t = 1;; ++t) {
        const Point v = region.lmo(grad, counters);
        ++res.lo_calls;
        dir = res.point - v;
        const double gap = grad.dot(dir);
        res.final_gap = gap;
        if (gap <= eta + kGapSlack) return res;
        if (t >= max_iters) throw CondGNotConverged(std::move(res), eta);
        const double sq = dir.squaredNorm();
        const double beta = sq > 0.0 ? std::clamp(gap / (c * sq), 0.0, 1.0) : 0.0;
        res.point -= beta * dir;
        grad = c * res.point + r;
        ++res.iterations;
    }
}

}  // namespace arcs
