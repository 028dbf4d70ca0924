#pragma once

// Per-epoch parameter schedules for ARCS (convex and strongly convex, FO and ZO).

#include "arcs/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace arcs {

/// Step size used by the strongly convex zeroth-order schedule.
enum class ZoGammaRule {
    scaled_by_dim,  // gamma = 1 / (12 d L alpha)
    constant_five,  // gamma = 1 / (5 L alpha)
};

struct EpochSchedule {
    int s = 1;
    int s0 = 1;
    Index T = 1;
    double alpha = 0.5;
    double p = 0.5;
    double gamma = 1.0;
    double tau = 0.0;            // strong-convexity modulus the schedule was built for (0 when convex)
    std::vector<double> eta;     // eta[t-1] = eta_{s,t}
    std::vector<double> theta;   // theta[t-1] = theta_t
    std::vector<double> Gamma;   // Gamma[t] for t = 0..T (strongly convex only); may overflow to inf
    double varsigma = 0.0;       // strongly convex only
    Index dim = 1;               // problem dimension (enters the strongly convex ZO conditions)
    OracleMode mode = OracleMode::first_order;
    Convexity convexity = Convexity::convex;
};

/// Parameter inequalities the per-iteration descent lemma assumes.
struct ScheduleConditions {
    bool ranges = false;           // alpha, p in [0, 1], gamma > 0
    bool positive_curvature = false;  // 1 + tau gamma - L alpha gamma > 0
    bool momentum_budget = false;  // 1 - alpha - p >= 0
    double fo_margin = 0.0;        // p - L alpha gamma / (1 + tau gamma - L alpha gamma)
    double zo_margin = 0.0;        // p - 4 alpha gamma L / (1 + tau gamma - L alpha gamma), times d when strongly convex
    bool weights_ok = false;       // theta_t >= 0, sum > 0

    static constexpr double kTol = 1e-12;

    bool first_order_ok() const { return ranges && positive_curvature && momentum_budget && weights_ok && fo_margin >= -kTol; }
    bool zeroth_order_ok() const { return ranges && positive_curvature && momentum_budget && weights_ok && zo_margin > 0.0; }
    bool ok_for(OracleMode m) const { return m == OracleMode::first_order ? first_order_ok() : zeroth_order_ok(); }
};

inline ScheduleConditions check_conditions(const EpochSchedule& e, double L) {
    ScheduleConditions c;
    const double tol = ScheduleConditions::kTol;
    c.ranges = e.alpha >= 0.0 && e.alpha <= 1.0 && e.p >= 0.0 && e.p <= 1.0 && e.gamma > 0.0;
    const double denom = 1.0 + e.tau * e.gamma - L * e.alpha * e.gamma;
    c.positive_curvature = denom > 0.0;
    c.momentum_budget = 1.0 - e.alpha - e.p >= -tol;
    const double lag = L * e.alpha * e.gamma;
    c.fo_margin = e.p - lag / denom;
    const double dim_factor = e.convexity == Convexity::strongly_convex ? static_cast<double>(e.dim) : 1.0;
    c.zo_margin = e.p - 4.0 * dim_factor * lag / denom;
    double sum = 0.0;
    bool nonneg = !e.theta.empty();
    for (double th : e.theta) {
        nonneg = nonneg && th >= 0.0;
        sum += th;
    }
    c.weights_ok = nonneg && sum > 0.0;
    return c;
}

/// Construction-time sanity: ranges, curvature, momentum budget, nonnegative weights and
/// the first-order variance inequality. The stricter zeroth-order inequality is
/// reported by check_conditions() but not enforced.
inline void assert_schedule(const EpochSchedule& e, double L) {
    const auto c = check_conditions(e, L);
    if (!c.ranges || !c.positive_curvature || !c.momentum_budget || !c.weights_ok || c.fo_margin < -ScheduleConditions::kTol)
        throw InvalidArgument("schedule for epoch " + std::to_string(e.s) + " violates the descent-lemma parameter conditions");
    for (double v : e.eta)
        if (!(v > 0.0)) throw InvalidArgument("schedule eta must be > 0");
}

/// s0 = floor(log2 n) + 1
inline int epoch_threshold(Index n) {
    require(n >= 1, "n must be >= 1");
    int k = 0;
    while ((Index{1} << (k + 1)) <= n) ++k;
    return k + 1;
}

inline Index inner_iterations(int s, int s0) { return Index{1} << (std::min(s, s0) - 1); }

namespace detail {
inline void check_schedule_inputs(Index n, double L, int s, double D0) {
    require(n >= 1, "schedule: n must be >= 1");
    require(L > 0.0 && std::isfinite(L), "schedule: L must be > 0");
    require(s >= 1, "schedule: epoch index s must be >= 1");
    require(D0 > 0.0 && std::isfinite(D0), "schedule: D0 must be > 0");
}
}  // namespace detail

inline EpochSchedule schedule_convex(Index n, double L, int s, double D0, OracleMode mode) {
    detail::check_schedule_inputs(n, L, s, D0);
    EpochSchedule e;
    e.s = s;
    e.s0 = epoch_threshold(n);
    e.mode = mode;
    e.convexity = Convexity::convex;
    e.T = inner_iterations(s, e.s0);
    e.alpha = s <= e.s0 ? 0.5 : 2.0 / static_cast<double>(s - e.s0 + 4);
    e.p = 0.5;
    e.gamma = 1.0 / ((mode == OracleMode::first_order ? 3.0 : 5.0) * L * e.alpha);
    const double eta = D0 / (static_cast<double>(s) * static_cast<double>(e.T) * L);
    e.eta.assign(static_cast<std::size_t>(e.T), eta);
    e.theta.assign(static_cast<std::size_t>(e.T), e.gamma / e.alpha * (e.alpha + e.p));
    e.theta.back() = e.gamma / e.alpha;
    assert_schedule(e, L);
    return e;
}

/// `dim` is only used by ZoGammaRule::scaled_by_dim.
inline EpochSchedule schedule_strongly_convex(Index n, double L, double tau, int s, double D0, OracleMode mode,
                                              Index dim = 1, ZoGammaRule zo_gamma = ZoGammaRule::scaled_by_dim) {
    detail::check_schedule_inputs(n, L, s, D0);
    require(tau > 0.0 && std::isfinite(tau), "strongly convex schedule needs tau > 0");
    require(dim >= 1, "schedule: dim must be >= 1");
    const bool fo = mode == OracleMode::first_order;
    EpochSchedule e;
    e.s = s;
    e.s0 = epoch_threshold(n);
    e.mode = mode;
    e.convexity = Convexity::strongly_convex;
    e.tau = tau;
    e.dim = dim;
    e.T = inner_iterations(s, e.s0);
    e.varsigma = (fo ? 3.0 : 5.0) * L / (4.0 * tau);
    const auto nd = static_cast<double>(n);
    e.alpha = s <= e.s0 ? 0.5 : std::min(std::sqrt(nd / (4.0 * e.varsigma)), 0.5);
    e.p = 0.5;
    if (fo) {
        e.gamma = 1.0 / (3.0 * L * e.alpha);
    } else if (zo_gamma == ZoGammaRule::scaled_by_dim) {
        e.gamma = 1.0 / (12.0 * static_cast<double>(dim) * L * e.alpha);
    } else {
        e.gamma = 1.0 / (5.0 * L * e.alpha);
    }
    const double growth = 1.0 + (fo ? tau * e.gamma : 0.5 * tau * e.gamma);
    e.Gamma.resize(static_cast<std::size_t>(e.T) + 1);
    for (Index t = 0; t <= e.T; ++t) e.Gamma[static_cast<std::size_t>(t)] = std::pow(growth, static_cast<double>(t));

    const double rest = 1.0 - e.alpha - e.p;
    e.theta.resize(static_cast<std::size_t>(e.T));
    if (std::isfinite(e.Gamma.back())) {
        for (Index t = 1; t < e.T; ++t)
            e.theta[static_cast<std::size_t>(t - 1)] = e.Gamma[static_cast<std::size_t>(t - 1)] - rest * e.Gamma[static_cast<std::size_t>(t)];
        e.theta.back() = e.Gamma[static_cast<std::size_t>(e.T - 1)];
    } else {
        // Gamma overflows for long epochs; x~ only needs theta up to scale, so divide by Gamma_{T-1}
        for (Index t = 1; t < e.T; ++t)
            e.theta[static_cast<std::size_t>(t - 1)] = std::pow(growth, static_cast<double>(t - e.T)) * (1.0 - rest * growth);
        e.theta.back() = 1.0;
    }

    double eta = 0.0;
    const auto sd = static_cast<double>(s);
    if (s <= e.s0) {
        eta = D0 / (sd * static_cast<double>(e.T) * L);
    } else if (nd >= e.varsigma) {
        eta = std::pow(0.8, s - e.s0 - 1) * D0 / (sd * nd * L);
    } else {
        // T_{s0} == T for every s > s0
        eta = std::pow(e.Gamma.back(), -(s - e.s0 - 1)) * D0 / (sd * nd * L);
    }
    e.eta.assign(static_cast<std::size_t>(e.T), eta);
    assert_schedule(e, L);
    return e;
}

}  // namespace arcs
