#pragma once

// Baseline solvers: conditional gradient (CG), conditional gradient sliding (CGS),
// its stochastic variant (SCGS) and variance-reduced STORC.

#include "arcs/arcs_solver.hpp"
#include "arcs/condg.hpp"
#include "arcs/core.hpp"
#include "arcs/lmo.hpp"
#include "arcs/oracles.hpp"
#include "arcs/problems.hpp"
#include "arcs/record.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

namespace arcs {

struct BaselineResult {
    RunRecord record;
    Point x;
    OracleCounters counters;
    double final_gap = std::numeric_limits<double>::quiet_NaN();  // CG only
};

// ---------------------------------------------------------------- CG

enum class StepRule {
    open_loop,    // 2 / (k + 2)
    exact,        // exact line search; quadratic objectives only
    adaptive,     // backtracking on a local smoothness estimate
};

inline const char* to_string(StepRule r) {
    switch (r) {
        case StepRule::open_loop: return "open_loop";
        case StepRule::exact: return "exact";
        case StepRule::adaptive: return "adaptive";
    }
    return "?";
}

struct CgOptions {
    Index steps = 100;
    StepRule step_rule = StepRule::open_loop;
    double gap_tol = 0.0;  // stop once the Frank-Wolfe gap is <= gap_tol (0 disables)
    int record_every = 1;
    bool keep_iterates = false;
    bool record_wall_clock = false;
    std::string label = "cg";
};

/// Frank-Wolfe with full gradients. Each step costs n GQO and one LO call; the
/// adaptive rule additionally charges n FQO per objective evaluation.
inline BaselineResult cg_run(const FiniteSumProblem& p, const FeasibleRegion& region, const Point& x0, const CgOptions& opt) {
    require_dim(x0.size(), p.dim(), "cg_run x0");
    require_dim(region.dim(), p.dim(), "cg_run region");
    require(opt.steps >= 0, "cg_run: steps must be >= 0");
    require(opt.step_rule != StepRule::exact || p.is_quadratic(), "cg_run: exact line search needs a quadratic objective");

    BaselineResult out;
    out.record.solver = opt.label;
    out.x = x0;
    auto& counters = out.counters;
    detail::Recorder rec(out.record, p, opt.keep_iterates, opt.record_wall_clock);
    rec.push(0, 0, counters, x0);

    const auto n = static_cast<std::uint64_t>(p.n());
    double lip = p.smoothness();
    Point d(p.dim());
    for (Index k = 1; k <= opt.steps; ++k) {
        const Point g = full_gradient(p, out.x, counters);
        const Point v = region.lmo(g, counters);
        d = v - out.x;
        const double gap = -g.dot(d);
        out.final_gap = gap;
        if (opt.gap_tol > 0.0 && gap <= opt.gap_tol) {
            rec.push(static_cast<int>(k), 0, counters, out.x, "converged");
            return out;
        }

        const double sq = d.squaredNorm();
        double step = 0.0;
        switch (opt.step_rule) {
            case StepRule::open_loop:
                step = 2.0 / static_cast<double>(k + 2);
                break;
            case StepRule::exact: {
                const double curv = p.curvature(d);
                step = curv > 0.0 ? std::clamp(gap / curv, 0.0, 1.0) : (gap > 0.0 ? 1.0 : 0.0);
                break;
            }
            case StepRule::adaptive: {
                if (sq == 0.0) break;
                const double f0 = p.value(out.x);
                counters.fqo += n;
                double M = 0.9 * lip;
                for (;;) {
                    step = std::min(gap / (M * sq), 1.0);
                    const double f1 = p.value(out.x + step * d);
                    counters.fqo += n;
                    if (f1 <= f0 - step * gap + 0.5 * step * step * M * sq) break;
                    M *= 2.0;
                }
                lip = M;
                break;
            }
        }
        out.x += step * d;
        if ((opt.record_every > 0 && k % opt.record_every == 0) || k == opt.steps)
            rec.push(static_cast<int>(k), 0, counters, out.x);
    }
    return out;
}

// ---------------------------------------------------------------- CGS / SCGS

/// Step-k parameters of conditional gradient sliding in this library's CondG scaling:
/// alpha = 3/(k+2), gamma = (k+1)/(3L), eta = eta_scale * D^2 / (3k).
struct CgsOptions {
    Index steps = 50;
    std::optional<double> fixed_alpha;  // overrides 3/(k+2)
    double gamma_scale = 1.0;
    double eta_scale = 1.0;
    std::uint64_t condg_max_iters = 0;
    int record_every = 1;
    bool keep_iterates = false;
    bool record_wall_clock = false;
    std::string label = "cgs";
};

inline CgsOptions scgs_defaults() {
    CgsOptions o;
    o.label = "scgs";
    return o;
}

struct ScgsOptions {
    CgsOptions base = scgs_defaults();
    double batch_coeff = 1.0;            // m_k = ceil(c (k+1)^2)
    std::optional<Index> fixed_batch;    // overrides the growing batch
    std::uint64_t seed = 0;
};

/// m_k = ceil(c (k + 1)^2), k >= 1
inline Index scgs_batch(double c, Index k) {
    require(c > 0.0, "scgs batch coefficient must be > 0");
    const double kk = static_cast<double>(k + 1);
    return static_cast<Index>(std::ceil(c * kk * kk));
}

struct CgsStep {
    double alpha;
    double gamma;
    double eta;
};

inline CgsStep cgs_parameters(const CgsOptions& opt, Index k, double L, double D) {
    const auto kk = static_cast<double>(k);
    CgsStep st{};
    st.alpha = opt.fixed_alpha.value_or(3.0 / (kk + 2.0));
    st.gamma = opt.gamma_scale * (kk + 1.0) / (3.0 * L);
    st.eta = opt.eta_scale * D * D / (3.0 * kk);
    return st;
}

namespace detail {

/// Shared CGS recursion; `direction(z, k)` returns the gradient estimate at z.
template <class Direction>
BaselineResult cgs_loop(const FiniteSumProblem& p, const FeasibleRegion& region, const Point& x0, const CgsOptions& opt,
                        Direction&& direction, BaselineResult out) {
    require_dim(x0.size(), p.dim(), "cgs x0");
    require_dim(region.dim(), p.dim(), "cgs region");
    require(opt.steps >= 0, "cgs: steps must be >= 0");
    if (opt.fixed_alpha) require(*opt.fixed_alpha > 0.0 && *opt.fixed_alpha <= 1.0, "cgs: alpha must be in (0, 1]");
    out.record.solver = opt.label;
    Recorder rec(out.record, p, opt.keep_iterates, opt.record_wall_clock);
    rec.push(0, 0, out.counters, x0);

    const double D = std::max(region.diameter(), 1e-300);
    const Point zero = Point::Zero(p.dim());
    Point x = x0, y = x0, z(p.dim());
    for (Index k = 1; k <= opt.steps; ++k) {
        const CgsStep st = cgs_parameters(opt, k, p.smoothness(), D);
        z = (1.0 - st.alpha) * y + st.alpha * x;
        const Point g = direction(z, k, out.counters);
        const QuadSubproblem q{g, x, zero, st.gamma, 0.0};
        bool failed = false;
        x = condg_soft(q, region, st.eta, opt.condg_max_iters, out.counters, out.record, failed);
        y = (1.0 - st.alpha) * y + st.alpha * x;
        if ((opt.record_every > 0 && k % opt.record_every == 0) || k == opt.steps)
            rec.push(static_cast<int>(k), 0, out.counters, y, failed ? "condg_soft_fail" : "");
    }
    out.x = y;
    return out;
}

}  // namespace detail

inline BaselineResult cgs_run(const FiniteSumProblem& p, const FeasibleRegion& region, const Point& x0, const CgsOptions& opt) {
    auto grad = [&](const Point& z, Index, OracleCounters& c) { return full_gradient(p, z, c); };
    return detail::cgs_loop(p, region, x0, opt, grad, BaselineResult{});
}

/// CGS with a minibatch gradient of growing size, sampled with replacement. A batch
/// that reaches n is replaced by the full gradient.
inline BaselineResult scgs_run(const FiniteSumProblem& p, const FeasibleRegion& region, const Point& x0,
                               const ScgsOptions& opt) {
    if (opt.fixed_batch) require(*opt.fixed_batch >= 1, "scgs: batch must be >= 1");
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<Index> pick(0, p.n() - 1);
    auto grad = [&](const Point& z, Index k, OracleCounters& c) -> Point {
        const Index m = opt.fixed_batch ? *opt.fixed_batch : scgs_batch(opt.batch_coeff, k);
        if (m >= p.n()) return full_gradient(p, z, c);
        Point g = Point::Zero(p.dim());
        const double w = 1.0 / static_cast<double>(m);
        for (Index j = 0; j < m; ++j) p.add_component_gradient(pick(rng), z, w, g);
        c.gqo += static_cast<std::uint64_t>(m);
        return g;
    };
    return detail::cgs_loop(p, region, x0, opt.base, grad, BaselineResult{});
}

// ---------------------------------------------------------------- STORC

enum class StorcCase {
    smooth,           // T_s = ceil(2^{s/2+2}), m = 900 T_s, D_s = D
    strongly_convex,  // T_s = ceil(sqrt(32 L / tau)), m = 5600 T_s L / tau
};

struct StorcOptions {
    StorcCase variant = StorcCase::smooth;
    int epochs = 5;
    double batch_scale = 1.0;  // rho in (0, 1], multiplies m
    std::optional<double> tau;  // strongly convex case; default: problem's
    std::uint64_t seed = 0;
    std::uint64_t condg_max_iters = 0;
    int record_every = 0;
    bool keep_iterates = false;
    bool record_wall_clock = false;
    std::string label = "storc";
};

struct StorcEpoch {
    Index T;
    Index batch;
    double eta;
};

inline StorcEpoch storc_epoch(const StorcOptions& opt, int s, double L, double tau, double D) {
    require(opt.batch_scale > 0.0 && opt.batch_scale <= 1.0, "storc: batch_scale must be in (0, 1]");
    StorcEpoch e{};
    double m = 0.0, Ds2 = 0.0;
    if (opt.variant == StorcCase::smooth) {
        e.T = static_cast<Index>(std::ceil(std::pow(2.0, 0.5 * s + 2.0)));
        m = 900.0 * static_cast<double>(e.T);
        Ds2 = D * D;
    } else {
        require(tau > 0.0, "storc: strongly convex case needs tau > 0");
        e.T = static_cast<Index>(std::ceil(std::sqrt(32.0 * L / tau)));
        m = 5600.0 * static_cast<double>(e.T) * L / tau;
        Ds2 = L * D * D / (tau * std::pow(2.0, s - 1));
    }
    e.batch = std::max<Index>(1, static_cast<Index>(std::ceil(opt.batch_scale * m)));
    e.eta = 2.0 * Ds2 / (3.0 * static_cast<double>(e.T));
    return e;
}

/// Anchor component gradients at x~ come from the epoch's full pass, so each sampled
/// index costs one GQO: per epoch gqo = n + sum_t m_{s,t}.
inline BaselineResult storc_run(const FiniteSumProblem& p, const FeasibleRegion& region, const Point& x0,
                                const StorcOptions& opt) {
    require_dim(x0.size(), p.dim(), "storc_run x0");
    require_dim(region.dim(), p.dim(), "storc_run region");
    require(opt.epochs >= 1, "storc_run: epochs must be >= 1");
    const double tau = opt.variant == StorcCase::strongly_convex ? opt.tau.value_or(p.strong_convexity()) : 0.0;
    const double D = std::max(region.diameter(), 1e-300);
    const double L = p.smoothness();

    BaselineResult out;
    out.record.solver = opt.label;
    auto& counters = out.counters;
    detail::Recorder rec(out.record, p, opt.keep_iterates, opt.record_wall_clock);
    rec.push(0, 0, counters, x0);
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<Index> pick(0, p.n() - 1);
    const Point zero = Point::Zero(p.dim());

    Point x_tilde = x0, x_under(p.dim()), G(p.dim());
    for (int s = 1; s <= opt.epochs; ++s) {
        const StorcEpoch ep = storc_epoch(opt, s, L, tau, D);
        const Point g_tilde = full_gradient(p, x_tilde, counters);
        Point x = x_tilde, x_bar = x_tilde;
        const double wb = 1.0 / static_cast<double>(ep.batch);
        bool epoch_flag = false;
        for (Index t = 1; t <= ep.T; ++t) {
            const double a = 2.0 / static_cast<double>(t + 1);
            const double gam = static_cast<double>(t) / (3.0 * L);
            x_under = (1.0 - a) * x_bar + a * x;
            G = g_tilde;
            for (Index k = 0; k < ep.batch; ++k) {
                const Index i = pick(rng);
                p.add_component_gradient(i, x_under, wb, G);
                p.add_component_gradient(i, x_tilde, -wb, G);
            }
            counters.gqo += static_cast<std::uint64_t>(ep.batch);
            const QuadSubproblem q{G, x, zero, gam, 0.0};
            bool failed = false;
            x = detail::condg_soft(q, region, ep.eta, opt.condg_max_iters, counters, out.record, failed);
            epoch_flag = epoch_flag || failed;
            x_bar = (1.0 - a) * x_bar + a * x;
            if (opt.record_every > 0 && t < ep.T && t % opt.record_every == 0)
                rec.push(s, t, counters, x_bar, failed ? "condg_soft_fail" : "");
        }
        x_tilde = x_bar;
        rec.push(s, ep.T, counters, x_tilde, epoch_flag ? "condg_soft_fail" : "");
    }
    out.x = x_tilde;
    return out;
}

}  // namespace arcs
