#pragma once

// Accelerated variance-reduced conditional gradient sliding (ARCS), first- and
// zeroth-order.

#include "arcs/condg.hpp"
#include "arcs/core.hpp"
#include "arcs/lmo.hpp"
#include "arcs/oracles.hpp"
#include "arcs/problems.hpp"
#include "arcs/record.hpp"
#include "arcs/schedule.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <string>

namespace arcs {

struct RunOptions {
    OracleMode mode = OracleMode::first_order;
    /// Oracle mode the parameter schedule is built for; defaults to `mode`.
    std::optional<OracleMode> schedule_mode;
    Convexity convexity = Convexity::convex;
    int epochs = 10;
    Index batch = 256;  // capped at n
    std::uint64_t seed = 0;
    double D0 = 0.0;  // <= 0 selects default_D0()
    std::optional<SmoothingConfig> smoothing;  // default: default_smoothing(x0)
    std::optional<double> tau;                 // strong-convexity modulus; default: problem's
    ZoGammaRule zo_gamma = ZoGammaRule::scaled_by_dim;
    int record_every = 0;  // inner-iteration stride for extra rows; 0 = epoch boundaries only
    bool keep_iterates = false;
    bool record_wall_clock = false;
    std::uint64_t condg_max_iters = 0;  // 0 = CondG default
    std::string label = "arcs";
};

/// Epoch-boundary state of an ARCS run.
struct SolverState {
    Point x_epoch;  // x^s
    Point x_tilde;  // x~^s
    std::mt19937_64 rng;
    OracleCounters counters;
};

struct ArcsResult {
    SolverState state;
    RunRecord record;
    std::vector<EpochSchedule> schedules;
};

/// 4 (f(x0) - lower_bound) + 3 L D^2
inline double default_D0(const FiniteSumProblem& p, const FeasibleRegion& region, const Point& x0, double lower_bound = 0.0) {
    const double D = region.diameter();
    return 4.0 * std::max(p.value(x0) - lower_bound, 0.0) + 3.0 * p.smoothness() * D * D;
}

namespace detail {

class Recorder {
public:
    Recorder(RunRecord& rec, const FiniteSumProblem& p, bool keep_iterates, bool wall_clock)
        : rec_(rec), p_(p), keep_(keep_iterates), clock_(wall_clock) {}

    void push(int epoch, Index t, const OracleCounters& c, const Point& x, std::string flag = {}) {
        RecordRow row;
        row.solver = rec_.solver;
        row.epoch = epoch;
        row.t = t;
        row.gqo = c.gqo;
        row.fqo = c.fqo;
        row.lo = c.lo;
        row.elapsed_ns = clock_.elapsed_ns();
        row.objective = p_.value(x);
        row.flag = std::move(flag);
        rec_.rows.push_back(std::move(row));
        if (keep_) rec_.iterates.push_back(x);
    }

private:
    RunRecord& rec_;
    const FiniteSumProblem& p_;
    bool keep_;
    RunClock clock_;
};

/// CondG with the soft-failure policy: on budget exhaustion keep the best point and flag it.
inline Point condg_soft(const QuadSubproblem& q, const FeasibleRegion& region, double eta, std::uint64_t max_iters,
                        OracleCounters& counters, RunRecord& rec, bool& failed) {
    try {
        return condg_solve(q, region, eta, max_iters, counters).point;
    } catch (const CondGNotConverged& e) {
        failed = true;
        ++rec.condg_soft_failures;
        return e.best().point;
    }
}

}  // namespace detail

inline EpochSchedule arcs_schedule(const FiniteSumProblem& p, const RunOptions& opt, int s, double D0, double tau) {
    const OracleMode sm = opt.schedule_mode.value_or(opt.mode);
    if (opt.convexity == Convexity::convex) return schedule_convex(p.n(), p.smoothness(), s, D0, sm);
    return schedule_strongly_convex(p.n(), p.smoothness(), tau, s, D0, sm, p.dim(), opt.zo_gamma);
}

inline ArcsResult arcs_run(const FiniteSumProblem& p, const FeasibleRegion& region, const Point& x0, const RunOptions& opt) {
    require_dim(x0.size(), p.dim(), "arcs_run x0");
    require_dim(region.dim(), p.dim(), "arcs_run region");
    require(opt.epochs >= 1, "arcs_run: epochs must be >= 1");
    require(opt.batch >= 1, "arcs_run: batch must be >= 1");
    require(region.contains(x0, 1e-9), "arcs_run: x0 must be feasible");
    const double tau = opt.convexity == Convexity::convex ? 0.0 : opt.tau.value_or(p.strong_convexity());
    if (opt.convexity == Convexity::strongly_convex) require(tau > 0.0, "arcs_run: strongly convex run needs tau > 0");
    const SmoothingConfig smooth = opt.smoothing.value_or(default_smoothing(x0));
    if (opt.mode == OracleMode::zeroth_order) check_smoothing(smooth);
    const double D0 = opt.D0 > 0.0 ? opt.D0 : default_D0(p, region, x0);
    const Index b = std::min(opt.batch, p.n());
    const double wb = 1.0 / static_cast<double>(b);

    ArcsResult out;
    out.record.solver = opt.label;
    out.state.rng.seed(opt.seed);
    out.state.x_epoch = x0;
    out.state.x_tilde = x0;
    auto& counters = out.state.counters;
    detail::Recorder rec(out.record, p, opt.keep_iterates, opt.record_wall_clock);
    rec.push(0, 0, counters, x0);
    std::uniform_int_distribution<Index> pick(0, p.n() - 1);

    Point x_under(p.dim()), x_bar(p.dim()), G(p.dim()), probe(p.dim()), acc(p.dim());
    for (int s = 1; s <= opt.epochs; ++s) {
        const EpochSchedule sch = arcs_schedule(p, opt, s, D0, tau);
        const double a = sch.alpha, pp = sch.p, gam = sch.gamma;
        const double tg = tau * gam;
        const double rest = 1.0 - a - pp;

        Point x_tilde = out.state.x_tilde;
        const Point g_tilde = full_direction(p, x_tilde, opt.mode, smooth, counters);
        Point x_prev = out.state.x_epoch;
        x_bar = x_tilde;
        acc.setZero();
        double theta_sum = 0.0;
        bool epoch_flag = false;

        for (Index t = 1; t <= sch.T; ++t) {
            x_under = ((1.0 + tg) * rest * x_bar + a * x_prev + (1.0 + tg) * pp * x_tilde) / (1.0 + tg * (1.0 - a));

            // G_t = mean_batch [grad_i(x_under) - grad_i(x~)] + g~
            G = g_tilde;
            for (Index k = 0; k < b; ++k) {
                const Index i = pick(out.state.rng);
                probe = x_under;
                add_component_direction(p, i, probe, opt.mode, smooth, wb, G, counters);
                probe = x_tilde;
                add_component_direction(p, i, probe, opt.mode, smooth, -wb, G, counters);
            }

            const QuadSubproblem q{G, x_prev, x_under, gam, tau};
            bool failed = false;
            Point x_t = detail::condg_soft(q, region, sch.eta[static_cast<std::size_t>(t - 1)], opt.condg_max_iters,
                                           counters, out.record, failed);
            epoch_flag = epoch_flag || failed;

            x_bar = rest * x_bar + a * x_t + pp * x_tilde;
            const double th = sch.theta[static_cast<std::size_t>(t - 1)];
            acc += th * x_bar;
            theta_sum += th;
            x_prev = std::move(x_t);

            if (opt.record_every > 0 && t < sch.T && t % opt.record_every == 0)
                rec.push(s, t, counters, x_bar, failed ? "condg_soft_fail" : "");
        }
        out.state.x_epoch = x_prev;
        out.state.x_tilde = acc / theta_sum;
        rec.push(s, sch.T, counters, out.state.x_tilde, epoch_flag ? "condg_soft_fail" : "");
        out.schedules.push_back(sch);
    }
    return out;
}

}  // namespace arcs
