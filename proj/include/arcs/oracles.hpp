#pragma once

// Counted access to a finite-sum problem: gradient queries (GQO), function
// queries (FQO) and the coordinate-wise zeroth-order gradient estimator.

#include "arcs/core.hpp"
#include "arcs/problems.hpp"

#include <cmath>

namespace arcs {

struct SmoothingConfig {
    double mu = 1e-5;
};

/// mu = 1e-5 * (1 + ||x0||_inf)
inline SmoothingConfig default_smoothing(const Point& x0) {
    return {1e-5 * (1.0 + (x0.size() ? x0.cwiseAbs().maxCoeff() : 0.0))};
}

inline void check_smoothing(const SmoothingConfig& cfg) {
    if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) throw InvalidArgument("smoothing parameter mu must be finite and > 0");
}

inline Point gqo(const FiniteSumProblem& p, Index i, const Point& x, OracleCounters& counters) {
    Point g = p.component_gradient(i, x);
    ++counters.gqo;
    return g;
}

inline double fqo(const FiniteSumProblem& p, Index i, const Point& x, OracleCounters& counters) {
    const double v = p.component_value(i, x);
    ++counters.fqo;
    return v;
}

/// out += scale * sum_k [f(x + mu e_k) - f(x - mu e_k)] / (2 mu) e_k for an arbitrary
/// scalar function `f`. Costs 2d evaluations, each counted as one FQO.
/// `x` is probed in place and restored bit-for-bit.
template <class Fn>
void add_coord_estimate(Fn&& f, Point& x, double mu, double scale, Point& out, OracleCounters& counters) {
    require_dim(out.size(), x.size(), "coord_estimate output");
    const double inv = scale / (2.0 * mu);
    for (Index k = 0; k < x.size(); ++k) {
        const double saved = x[k];
        x[k] = saved + mu;
        const double plus = f(static_cast<const Point&>(x));
        x[k] = saved - mu;
        const double minus = f(static_cast<const Point&>(x));
        x[k] = saved;
        out[k] += (plus - minus) * inv;
    }
    counters.fqo += 2 * static_cast<std::uint64_t>(x.size());
}

template <class Fn>
Point coord_estimate(Fn&& f, const Point& x, const SmoothingConfig& cfg, OracleCounters& counters) {
    check_smoothing(cfg);
    Point probe = x;
    Point out = Point::Zero(x.size());
    add_coord_estimate(f, probe, cfg.mu, 1.0, out, counters);
    return out;
}

inline Point coord_estimate(const FiniteSumProblem& p, Index i, const Point& x, const SmoothingConfig& cfg,
                            OracleCounters& counters) {
    check_smoothing(cfg);
    Point probe = x;
    p.component_value(i, probe);  // validates i and dimension before any probe is charged
    Point out = Point::Zero(x.size());
    add_coord_estimate([&](const Point& z) { return p.component_value(i, z); }, probe, cfg.mu, 1.0, out, counters);
    return out;
}

/// Mean of component gradients; gqo += n.
inline Point full_gradient(const FiniteSumProblem& p, const Point& x, OracleCounters& counters) {
    require_dim(x.size(), p.dim(), "full_gradient");
    Point g = Point::Zero(p.dim());
    const double w = 1.0 / static_cast<double>(p.n());
    for (Index i = 0; i < p.n(); ++i) p.add_component_gradient(i, x, w, g);
    counters.gqo += static_cast<std::uint64_t>(p.n());
    return g;
}

/// Mean of per-component coordinate estimates; fqo += 2 d n.
inline Point full_coord_estimate(const FiniteSumProblem& p, const Point& x, const SmoothingConfig& cfg,
                                 OracleCounters& counters) {
    check_smoothing(cfg);
    require_dim(x.size(), p.dim(), "full_coord_estimate");
    Point probe = x;
    Point g = Point::Zero(p.dim());
    const double w = 1.0 / static_cast<double>(p.n());
    for (Index i = 0; i < p.n(); ++i)
        add_coord_estimate([&](const Point& z) { return p.component_value(i, z); }, probe, cfg.mu, w, g, counters);
    return g;
}

/// Accumulates scale * (component estimate) in FO (GQO) or ZO (FQO) mode.
inline void add_component_direction(const FiniteSumProblem& p, Index i, Point& x, OracleMode mode,
                                    const SmoothingConfig& cfg, double scale, Point& out, OracleCounters& counters) {
    if (mode == OracleMode::first_order) {
        p.add_component_gradient(i, x, scale, out);
        ++counters.gqo;
    } else {
        add_coord_estimate([&](const Point& z) { return p.component_value(i, z); }, x, cfg.mu, scale, out, counters);
    }
}

inline Point full_direction(const FiniteSumProblem& p, const Point& x, OracleMode mode, const SmoothingConfig& cfg,
                            OracleCounters& counters) {
    return mode == OracleMode::first_order ? full_gradient(p, x, counters) : full_coord_estimate(p, x, cfg, counters);
}

}  // namespace arcs
