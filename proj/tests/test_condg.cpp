#include "arcs/condg.hpp"
#include "arcs/harness/projection.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace arcs;

namespace {

QuadSubproblem simple_q() {
    return {Eigen::Vector2d(1.0, 0.0), Point::Zero(2), Point::Zero(2), 1.0, 0.0};
}

Point random_point(std::mt19937_64& rng, Index d, double scale = 1.0) {
    std::normal_distribution<double> normal;
    Point x(d);
    for (Index k = 0; k < d; ++k) x[k] = scale * normal(rng);
    return x;
}

QuadSubproblem random_q(std::mt19937_64& rng, Index d) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    QuadSubproblem q;
    q.g = random_point(rng, d, 2.0);
    q.u = random_point(rng, d, 0.3);
    q.y = random_point(rng, d, 0.3);
    q.gamma = 0.1 + 2.0 * unit(rng);
    q.tau = unit(rng) < 0.5 ? 0.0 : unit(rng);
    return q;
}

// Dense QP oracle. h(x) = c/2 ||x||^2 + <r, x> + const with c = 1 + gamma tau and
// r = gamma (g - tau y) - u; the box case clamps, the L1 case soft-thresholds with a
// bisected multiplier.
double dense_min_h(const QuadSubproblem& q, const FeasibleRegion& region) {
    const double c = q.modulus();
    const Point r = q.gamma * (q.g - q.tau * q.y) - q.u;
    if (const auto* box = std::get_if<Box>(&region.shape())) return h_value(q, (-r / c).cwiseMax(box->lo).cwiseMin(box->hi));
    const double R = std::get<L1Ball>(region.shape()).radius;
    const auto shrink = [&](double lambda) {
        return Point((-r).cwiseSign().cwiseProduct((r.cwiseAbs().array() - lambda).max(0.0).matrix()) / c);
    };
    if (shrink(0.0).lpNorm<1>() <= R) return h_value(q, shrink(0.0));
    double lo = 0.0, hi = r.cwiseAbs().maxCoeff();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (shrink(mid).lpNorm<1>() > R ? lo : hi) = mid;
    }
    return h_value(q, shrink(hi));
}

}  // namespace

TEST(GradH, ProxTermVanishesAtU) {
    QuadSubproblem q = simple_q();
    q.gamma = 2.5;
    q.u = Eigen::Vector2d(0.3, -0.1);
    EXPECT_EQ(grad_h(q, q.u), Point(2.5 * q.g));
}

TEST(GradH, ModulusScaling) {
    const QuadSubproblem q{Point::Zero(2), Point::Zero(2), Point::Zero(2), 1.0, 1.0};
    EXPECT_EQ(grad_h(q, Eigen::Vector2d(1.0, 0.0)), Point(Eigen::Vector2d(2.0, 0.0)));
}

TEST(GradH, MatchesFiniteDifference) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = random_q(rng, 6);
        const Point x = random_point(rng, 6);
        const Point g = grad_h(q, x);
        for (Index k = 0; k < 6; ++k) {
            Point a = x, b = x;
            a[k] += 1e-6;
            b[k] -= 1e-6;
            const double fd = (h_value(q, a) - h_value(q, b)) / 2e-6;
            EXPECT_NEAR(fd, g[k], 1e-6 * std::max(1.0, std::abs(g[k])));
        }
    }
}

TEST(FwGap, HandExample) {
    const auto region = FeasibleRegion::l1_ball(2, 1.0);
    OracleCounters c;
    const auto res = fw_gap(simple_q(), Point::Zero(2), region, c);
    EXPECT_DOUBLE_EQ(res.gap, 1.0);
    EXPECT_EQ(res.vertex, Point(Eigen::Vector2d(-1.0, 0.0)));
    EXPECT_EQ(c.lo, 1u);
}

TEST(FwGap, ZeroAtInteriorStationaryPoint) {
    const QuadSubproblem q{Eigen::Vector2d(0.1, -0.2), Point::Zero(2), Point::Zero(2), 1.0, 0.0};
    const Point stationary = q.u - q.gamma * q.g;
    OracleCounters c;
    EXPECT_LE(std::abs(fw_gap(q, stationary, FeasibleRegion::l1_ball(2, 1.0), c).gap), 1e-12);
}

TEST(FwGap, InvariantToConstantShift) {
    // shifting y along a direction where tau = 0 changes h only by a constant
    QuadSubproblem a = simple_q(), b = simple_q();
    b.y = Eigen::Vector2d(5.0, 7.0);
    OracleCounters c;
    const auto region = FeasibleRegion::box(2, -1.0, 1.0);
    const Point x = Eigen::Vector2d(0.2, 0.4);
    EXPECT_EQ(fw_gap(a, x, region, c).gap, fw_gap(b, x, region, c).gap);
}

TEST(FwGap, NonnegativeForFeasiblePoints) {
    std::mt19937_64 rng(12);
    const auto region = FeasibleRegion::l1_ball(5, 1.0);
    OracleCounters c;
    for (int trial = 0; trial < 100; ++trial) {
        const auto q = random_q(rng, 5);
        Point x = random_point(rng, 5);
        x /= 2.0 * x.lpNorm<1>();
        EXPECT_GE(fw_gap(q, x, region, c).gap, -1e-12);
    }
}

TEST(LinesearchBeta, HandExample) {
    EXPECT_DOUBLE_EQ(linesearch_beta(simple_q(), Point::Zero(2), Eigen::Vector2d(-1.0, 0.0)), 1.0);
}

TEST(LinesearchBeta, ZeroGapAndCoincidentPoints) {
    const QuadSubproblem q{Point::Zero(2), Point::Zero(2), Point::Zero(2), 1.0, 0.0};
    EXPECT_EQ(linesearch_beta(q, Point::Zero(2), Eigen::Vector2d(1.0, 0.0)), 0.0);
    EXPECT_EQ(linesearch_beta(simple_q(), Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.5, 0.5)), 0.0);
}

TEST(LinesearchBeta, BeatsGridSearch) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto q = random_q(rng, 4);
        const Point x = random_point(rng, 4), v = random_point(rng, 4);
        const double beta = linesearch_beta(q, x, v);
        ASSERT_GE(beta, 0.0);
        ASSERT_LE(beta, 1.0);
        const double best = h_value(q, (1 - beta) * x + beta * v);
        for (int j = 0; j <= 100; ++j) {
            const double b = j / 100.0;
            EXPECT_LE(best, h_value(q, (1 - b) * x + b * v) + 1e-12);
        }
    }
}

TEST(CondgSolve, TwoCallHandTrace) {
    OracleCounters c;
    const auto res = condg_solve(simple_q(), FeasibleRegion::l1_ball(2, 1.0), 1e-9, 0, c);
    EXPECT_EQ(res.point, Point(Eigen::Vector2d(-1.0, 0.0)));
    EXPECT_EQ(res.lo_calls, 2u);
    EXPECT_EQ(c.lo, 2u);
    EXPECT_EQ(res.final_gap, 0.0);
    EXPECT_EQ(res.iterations, 1u);
}

TEST(CondgSolve, ImmediateReturnWhenEtaExceedsGap) {
    OracleCounters c;
    const auto res = condg_solve(simple_q(), FeasibleRegion::l1_ball(2, 1.0), 2.0, 0, c);
    EXPECT_EQ(res.point, Point::Zero(2));
    EXPECT_EQ(res.lo_calls, 1u);
}

TEST(CondgSolve, InteriorBoxMinimizer) {
    const QuadSubproblem q{Eigen::Vector3d(0.2, -0.1, 0.3), Eigen::Vector3d(0.1, 0.2, -0.3), Point::Zero(3), 1.0, 0.0};
    OracleCounters c;
    const auto res = condg_solve(q, FeasibleRegion::box(3, -1.0, 1.0), 1e-9, 0, c);
    EXPECT_LE((res.point - (q.u - q.gamma * q.g)).norm(), 1e-4);
}

TEST(CondgSolve, BudgetExhaustionCarriesBestPoint) {
    std::mt19937_64 rng(3);
    const auto q = random_q(rng, 10);
    OracleCounters c;
    try {
        condg_solve(q, FeasibleRegion::l1_ball(10, 1.0), 1e-12, 3, c);
        FAIL() << "expected CondGNotConverged";
    } catch (const CondGNotConverged& e) {
        EXPECT_EQ(e.best().lo_calls, 3u);
        EXPECT_GT(e.best().final_gap, 1e-12);
        EXPECT_TRUE(FeasibleRegion::l1_ball(10, 1.0).contains(e.best().point, 1e-9));
    }
}

TEST(CondgSolve, InputValidation) {
    OracleCounters c;
    const auto region = FeasibleRegion::l1_ball(2, 1.0);
    EXPECT_THROW(condg_solve(simple_q(), region, 0.0, 0, c), InvalidArgument);
    QuadSubproblem bad = simple_q();
    bad.gamma = 0.0;
    EXPECT_THROW(condg_solve(bad, region, 1e-3, 0, c), InvalidArgument);
    bad = simple_q();
    bad.u = Point::Zero(3);
    EXPECT_THROW(condg_solve(bad, region, 1e-3, 0, c), DimensionError);
}

TEST(CondgSolve, DefaultBudget) {
    const auto region = FeasibleRegion::l1_ball(2, 1.0);  // D = 2
    EXPECT_EQ(default_condg_max_iters(simple_q(), region, 0.5), 80u);
    EXPECT_EQ(default_condg_max_iters(simple_q(), region, 1e-9), 1000000u);
}

// Replays the FW iteration to observe every iterate.
TEST(CondgSolve, MonotoneDescentAndFeasibility) {
    std::mt19937_64 rng(44);
    const auto region = FeasibleRegion::l1_ball(8, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        auto q = random_q(rng, 8);
        q.u /= 2.0 * q.u.lpNorm<1>();
        OracleCounters c;
        Point x = q.u;
        double prev = h_value(q, x);
        for (int t = 0; t < 200; ++t) {
            const auto gr = fw_gap(q, x, region, c);
            const double beta = linesearch_beta(q, x, gr.vertex);
            x = (1 - beta) * x + beta * gr.vertex;
            const double now = h_value(q, x);
            ASSERT_LE(now, prev + 1e-12);
            ASSERT_TRUE(region.contains(x, 1e-9));
            prev = now;
        }
        const auto res = condg_solve(q, region, 1e-6, 0, c);
        EXPECT_TRUE(region.contains(res.point, 1e-9));
    }
}

TEST(CondgSolve, GapAndSuboptimalityCertificates) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Index> dim(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const Index d = dim(rng);
        auto q = random_q(rng, d);
        const FeasibleRegion region = trial % 2 ? FeasibleRegion::l1_ball(d, 1.0) : FeasibleRegion::box(d, -0.5, 0.5);
        q.u = harness::project(region, q.u);
        q.y = harness::project(region, q.y);
        for (double eta : {1e-3, 1e-6}) {
            OracleCounters c;
            // face-interior minimizers make plain FW sublinear; the default 1e6 cap is not enough here
            const auto res = condg_solve(q, region, eta, 50'000'000, c);
            EXPECT_LE(res.final_gap, eta + kGapSlack);
            OracleCounters scratch;
            EXPECT_NEAR(fw_gap(q, res.point, region, scratch).gap, res.final_gap, 1e-12);
            EXPECT_LE(h_value(q, res.point) - dense_min_h(q, region), eta + 1e-12);
        }
    }
}
