#pragma once

// Reference optimum min_{x in C} f(x) used for the suboptimality column.

#include "arcs/baselines.hpp"
#include "arcs/harness/projection.hpp"

#include <cmath>
#include <limits>

namespace arcs::harness {

struct ReferencePolicy {
    std::uint64_t max_lo_calls = 1'000'000;
    double gap_tol = 1e-10;
    Index polish_iters = 20'000;  // accelerated projected-gradient iterations after CG; 0 disables

    friend bool operator==(const ReferencePolicy&, const ReferencePolicy&) = default;
};

struct ReferenceResult {
    double value = std::numeric_limits<double>::quiet_NaN();
    Point point;
    double gap = std::numeric_limits<double>::infinity();  // Frank-Wolfe gap at `point`
    std::uint64_t lo_calls = 0;
    bool converged = false;  // false: budget exhausted before gap <= gap_tol
};

inline double fw_gap_at(const FiniteSumProblem& p, const FeasibleRegion& region, const Point& x) {
    OracleCounters scratch;
    const Point g = p.gradient(x);
    return g.dot(x - region.lmo(g, scratch));
}

/// Accelerated projected gradient with step 1/L and gradient-based momentum restart;
/// stops once the Frank-Wolfe gap is <= gap_tol. Never compares objective values, so it
/// keeps converging below their rounding floor.
inline Point polish_projected(const FiniteSumProblem& p, const FeasibleRegion& region, Point x, Index iters,
                              double gap_tol) {
    constexpr Index kGapEvery = 25;
    const double L = p.smoothness();
    if (!(L > 0.0)) return x;  // linear objective: nothing to polish
    Point y = x;
    double t = 1.0;
    for (Index k = 0; k < iters; ++k) {
        if (k % kGapEvery == 0 && fw_gap_at(p, region, x) <= gap_tol) break;
        Point next = project(region, y - p.gradient(y) / L);
        if ((y - next).dot(next - x) > 0.0) {  // momentum points uphill: restart from x
            y = x;
            t = 1.0;
            continue;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        y = next + ((t - 1.0) / t_next) * (next - x);
        x = std::move(next);
        t = t_next;
    }
    return x;
}

/// Accelerated projected gradient from the region's center; when its Frank-Wolfe gap is
/// still above gap_tol, CG (exact line search for quadratics, adaptive otherwise) warm-started
/// there until the gap is <= gap_tol or the LO budget is spent, then another polish. Returns
/// the best point seen. Uses its own counters, never charged to solver runs.
inline ReferenceResult compute_reference_optimum(const FiniteSumProblem& p, const FeasibleRegion& region,
                                                 const ReferencePolicy& policy = {}) {
    require(policy.gap_tol > 0.0, "reference: gap_tol must be > 0");
    ReferenceResult out;
    out.point = region.center();
    out.value = p.value(out.point);
    const auto keep_best = [&](Point z) {
        if (!region.contains(z, 1e-9)) return;
        const double fz = p.value(z);
        if (fz < out.value) {
            out.value = fz;
            out.point = std::move(z);
        }
    };
    if (policy.polish_iters > 0) keep_best(polish_projected(p, region, out.point, policy.polish_iters, policy.gap_tol));
    out.gap = fw_gap_at(p, region, out.point);
    if (out.gap > policy.gap_tol) {
        CgOptions cg;
        cg.steps = static_cast<Index>(policy.max_lo_calls);
        cg.step_rule = p.is_quadratic() ? StepRule::exact : StepRule::adaptive;
        cg.gap_tol = policy.gap_tol;
        cg.record_every = 0;
        cg.label = "reference";
        BaselineResult run = cg_run(p, region, out.point, cg);
        out.lo_calls = run.counters.lo;
        keep_best(run.x);
        if (policy.polish_iters > 0) keep_best(polish_projected(p, region, out.point, policy.polish_iters, policy.gap_tol));
        out.gap = fw_gap_at(p, region, out.point);
    }
    out.converged = out.gap <= policy.gap_tol;
    return out;
}

}  // namespace arcs::harness
