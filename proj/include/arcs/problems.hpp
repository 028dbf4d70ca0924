#pragma once

// Finite-sum objectives f(x) = (1/n) sum_i f_i(x): sparse logistic regression,
// per-entry matrix completion and synthetic quadratics.

#include "arcs/core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace arcs {

struct Feature {
    Index index;
    double value;
    friend bool operator==(const Feature&, const Feature&) = default;
};

/// One row of a binary classification dataset; label is 0 or 1.
struct LabeledExample {
    std::vector<Feature> features;  // strictly increasing indices
    int label = 0;
    friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

struct LogisticData {
    std::vector<LabeledExample> examples;
    Index dim = 0;
};

struct MatrixEntry {
    Index row;
    Index col;
    double value;
    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Partially observed matrix; each observed entry is one component of the finite sum.
struct MatrixCompletionData {
    Index rows = 0;
    Index cols = 0;
    std::vector<MatrixEntry> observed;
    double radius = 1.0;  // nuclear-norm bound R
};

/// f_i(x) = 1/2 x^T A x + b^T x
struct QuadraticComponent {
    Eigen::MatrixXd A;
    Point b;
};

enum class ProblemKind { logistic, matrix_completion, quadratic };

inline const char* to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::logistic: return "logistic";
        case ProblemKind::matrix_completion: return "matrix_completion";
        case ProblemKind::quadratic: return "quadratic";
    }
    return "?";
}

namespace detail {

/// log(1 + e^t) without overflow.
inline double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

inline double sigmoid(double t) {
    if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

inline double sparse_dot(const std::vector<Feature>& a, const Point& x) {
    double s = 0.0;
    for (const auto& f : a) s += f.value * x[f.index];
    return s;
}

}  // namespace detail

struct QuadraticStore {
    std::vector<QuadraticComponent> components;
    Eigen::MatrixXd mean_A;
    Point mean_b;
};

class FiniteSumProblem {
public:
    using Payload = std::variant<LogisticData, MatrixCompletionData, QuadraticStore>;

    static FiniteSumProblem logistic(LogisticData data) {
        require(!data.examples.empty(), "logistic problem needs at least one example");
        require(data.dim >= 1, "logistic problem needs d >= 1");
        double L = 0.0;
        for (std::size_t i = 0; i < data.examples.size(); ++i) {
            const auto& ex = data.examples[i];
            require(ex.label == 0 || ex.label == 1, "logistic labels must be 0 or 1");
            double sq = 0.0;
            Index prev = -1;
            for (const auto& f : ex.features) {
                if (f.index <= prev || f.index >= data.dim)
                    throw InvalidArgument("example " + std::to_string(i) +
                                          ": feature indices must be strictly increasing and < d");
                prev = f.index;
                sq += f.value * f.value;
            }
            L = std::max(L, sq / 4.0);
        }
        require(L > 0.0, "logistic problem has all-zero features (L = 0)");
        const auto n = static_cast<Index>(data.examples.size());
        const Index d = data.dim;
        return FiniteSumProblem(ProblemKind::logistic, n, d, L, 0.0, std::move(data));
    }

    static FiniteSumProblem matrix_completion(MatrixCompletionData data) {
        require(data.rows >= 1 && data.cols >= 1, "matrix dims must be positive");
        require(!data.observed.empty(), "matrix completion needs observed entries");
        require(data.radius > 0.0, "nuclear radius must be > 0");
        std::vector<char> seen(static_cast<std::size_t>(data.rows * data.cols), 0);
        for (const auto& e : data.observed) {
            if (e.row < 0 || e.row >= data.rows || e.col < 0 || e.col >= data.cols)
                throw IndexError("observed entry (" + std::to_string(e.row) + "," +
                                 std::to_string(e.col) + ") out of range");
            auto& s = seen[static_cast<std::size_t>(e.row * data.cols + e.col)];
            if (s) throw InvalidArgument("duplicate observed entry (" + std::to_string(e.row) + "," +
                                         std::to_string(e.col) + ")");
            s = 1;
        }
        const auto n = static_cast<Index>(data.observed.size());
        const Index d = data.rows * data.cols;
        // tau: f is strongly convex only when every entry is observed (Hessian = 2/n I).
        const double tau = (n == d) ? 2.0 / static_cast<double>(n) : 0.0;
        return FiniteSumProblem(ProblemKind::matrix_completion, n, d, 2.0, tau, std::move(data));
    }

    static FiniteSumProblem quadratic(std::vector<QuadraticComponent> comps) {
        require(!comps.empty(), "quadratic problem needs at least one component");
        const Index d = comps.front().b.size();
        require(d >= 1, "quadratic problem needs d >= 1");
        QuadraticStore store;
        store.mean_A = Eigen::MatrixXd::Zero(d, d);
        store.mean_b = Point::Zero(d);
        double L = 0.0;
        for (auto& c : comps) {
            require_dim(c.b.size(), d, "quadratic component b");
            require(c.A.rows() == d && c.A.cols() == d, "quadratic component A must be d x d");
            require((c.A - c.A.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + c.A.cwiseAbs().maxCoeff()),
                    "quadratic component A must be symmetric");
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.A, Eigen::EigenvaluesOnly);
            require(es.eigenvalues().minCoeff() >= -1e-12, "quadratic component A must be PSD");
            L = std::max(L, es.eigenvalues().maxCoeff());
            store.mean_A += c.A;
            store.mean_b += c.b;
        }
        const auto n = static_cast<Index>(comps.size());
        store.mean_A /= static_cast<double>(n);
        store.mean_b /= static_cast<double>(n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(store.mean_A, Eigen::EigenvaluesOnly);
        const double tau = std::max(0.0, es.eigenvalues().minCoeff());
        // A purely linear objective is 0-smooth; keep L strictly positive for the schedules.
        if (L <= 0.0) L = 1e-12;
        store.components = std::move(comps);
        return FiniteSumProblem(ProblemKind::quadratic, n, d, L, std::min(tau, L), std::move(store));
    }

    Index n() const { return n_; }
    Index dim() const { return d_; }
    ProblemKind kind() const { return kind_; }
    /// Per-component Lipschitz constant of the gradient.
    double smoothness() const { return L_; }
    double strong_convexity() const { return tau_; }
    bool is_quadratic() const { return kind_ != ProblemKind::logistic; }
    const Payload& payload() const { return data_; }

    double component_value(Index i, const Point& x) const {
        check(i, x, "component_value");
        return std::visit([&](const auto& data) { return value_impl(data, i, x); }, data_);
    }

    Point component_gradient(Index i, const Point& x) const {
        Point g = Point::Zero(d_);
        add_component_gradient(i, x, 1.0, g);
        return g;
    }

    /// out += scale * grad f_i(x)
    void add_component_gradient(Index i, const Point& x, double scale, Point& out) const {
        check(i, x, "component_gradient");
        require_dim(out.size(), d_, "component_gradient output");
        std::visit([&](const auto& data) { add_grad_impl(data, i, x, scale, out); }, data_);
    }

    /// Full objective (mean of components). Not charged to any oracle counter.
    double value(const Point& x) const {
        require_dim(x.size(), d_, "value");
        if (const auto* q = std::get_if<QuadraticStore>(&data_))
            return 0.5 * x.dot(q->mean_A * x) + q->mean_b.dot(x);
        double s = 0.0;
        for (Index i = 0; i < n_; ++i)
            s += std::visit([&](const auto& data) { return value_impl(data, i, x); }, data_);
        return s / static_cast<double>(n_);
    }

    /// Full gradient. Not charged to any oracle counter.
    Point gradient(const Point& x) const {
        require_dim(x.size(), d_, "gradient");
        if (const auto* q = std::get_if<QuadraticStore>(&data_)) return q->mean_A * x + q->mean_b;
        Point g = Point::Zero(d_);
        const double w = 1.0 / static_cast<double>(n_);
        for (Index i = 0; i < n_; ++i)
            std::visit([&](const auto& data) { add_grad_impl(data, i, x, w, g); }, data_);
        return g;
    }

    /// dir^T (Hessian of f) dir; only defined for the quadratic families.
    double curvature(const Point& dir) const {
        require_dim(dir.size(), d_, "curvature");
        if (const auto* q = std::get_if<QuadraticStore>(&data_)) return dir.dot(q->mean_A * dir);
        if (const auto* m = std::get_if<MatrixCompletionData>(&data_)) {
            double s = 0.0;
            for (const auto& e : m->observed) {
                const double v = dir[e.row * m->cols + e.col];
                s += 2.0 * v * v;
            }
            return s / static_cast<double>(n_);
        }
        throw InvalidArgument("curvature is only available for quadratic objectives");
    }

private:
    FiniteSumProblem(ProblemKind kind, Index n, Index d, double L, double tau, Payload data)
        : kind_(kind), n_(n), d_(d), L_(L), tau_(tau), data_(std::move(data)) {}

    void check(Index i, const Point& x, const char* where) const {
        if (i < 0 || i >= n_)
            throw IndexError(std::string(where) + ": component index " + std::to_string(i) +
                             " out of range [0, " + std::to_string(n_) + ")");
        require_dim(x.size(), d_, where);
    }

    // -(y log sigma(-z) + (1-y) log sigma(z)) = y softplus(z) + (1-y) softplus(-z)
    static double value_impl(const LogisticData& data, Index i, const Point& x) {
        const auto& ex = data.examples[static_cast<std::size_t>(i)];
        const double z = detail::sparse_dot(ex.features, x);
        return ex.label == 1 ? detail::softplus(z) : detail::softplus(-z);
    }
    static void add_grad_impl(const LogisticData& data, Index i, const Point& x, double scale, Point& out) {
        const auto& ex = data.examples[static_cast<std::size_t>(i)];
        const double z = detail::sparse_dot(ex.features, x);
        const double coef = ex.label == 1 ? detail::sigmoid(z) : -detail::sigmoid(-z);
        for (const auto& f : ex.features) out[f.index] += scale * coef * f.value;
    }

    static double value_impl(const MatrixCompletionData& data, Index i, const Point& x) {
        const auto& e = data.observed[static_cast<std::size_t>(i)];
        const double r = x[e.row * data.cols + e.col] - e.value;
        return r * r;
    }
    static void add_grad_impl(const MatrixCompletionData& data, Index i, const Point& x, double scale,
                              Point& out) {
        const auto& e = data.observed[static_cast<std::size_t>(i)];
        const Index k = e.row * data.cols + e.col;
        out[k] += scale * 2.0 * (x[k] - e.value);
    }

    static double value_impl(const QuadraticStore& data, Index i, const Point& x) {
        const auto& c = data.components[static_cast<std::size_t>(i)];
        return 0.5 * x.dot(c.A * x) + c.b.dot(x);
    }
    static void add_grad_impl(const QuadraticStore& data, Index i, const Point& x, double scale, Point& out) {
        const auto& c = data.components[static_cast<std::size_t>(i)];
        out.noalias() += scale * (c.A * x + c.b);
    }

    ProblemKind kind_;
    Index n_;
    Index d_;
    double L_;
    double tau_;
    Payload data_;
};

inline double component_value(const FiniteSumProblem& p, Index i, const Point& x) {
    return p.component_value(i, x);
}
inline Point component_gradient(const FiniteSumProblem& p, Index i, const Point& x) {
    return p.component_gradient(i, x);
}
inline double smoothness_constant(const FiniteSumProblem& p) { return p.smoothness(); }

/// Uniformly drawn observation mask without replacement; |mask| = round(fraction * rows * cols).
/// Returned entries are sorted row-major.
inline std::vector<std::pair<Index, Index>> make_mask(Index rows, Index cols, double fraction_observed,
                                                      std::uint64_t seed) {
    require(rows >= 1 && cols >= 1, "make_mask: dims must be positive");
    if (!(fraction_observed > 0.0 && fraction_observed <= 1.0))
        throw InvalidArgument("make_mask: fraction_observed must lie in (0, 1]");
    const Index total = rows * cols;
    const auto count = static_cast<Index>(std::llround(fraction_observed * static_cast<double>(total)));
    std::vector<Index> cells(static_cast<std::size_t>(total));
    for (Index k = 0; k < total; ++k) cells[static_cast<std::size_t>(k)] = k;
    std::mt19937_64 rng(seed);
    // partial Fisher-Yates; explicit so the draw does not depend on the std::shuffle implementation
    for (Index k = 0; k < count; ++k) {
        std::uniform_int_distribution<Index> pick(k, total - 1);
        std::swap(cells[static_cast<std::size_t>(k)], cells[static_cast<std::size_t>(pick(rng))]);
    }
    cells.resize(static_cast<std::size_t>(count));
    std::sort(cells.begin(), cells.end());
    std::vector<std::pair<Index, Index>> out;
    out.reserve(cells.size());
    for (Index c : cells) out.emplace_back(c / cols, c % cols);
    return out;
}

/// Builds matrix-completion data from a dense matrix and an observation mask.
inline MatrixCompletionData make_matrix_completion(const Eigen::MatrixXd& Y,
                                                   const std::vector<std::pair<Index, Index>>& mask,
                                                   double radius) {
    MatrixCompletionData data;
    data.rows = Y.rows();
    data.cols = Y.cols();
    data.radius = radius;
    data.observed.reserve(mask.size());
    for (const auto& [r, c] : mask) {
        if (r < 0 || r >= Y.rows() || c < 0 || c >= Y.cols()) throw IndexError("mask entry out of range");
        data.observed.push_back({r, c, Y(r, c)});
    }
    return data;
}

// ---------------------------------------------------------------------------
// Synthetic generators

struct SyntheticLogisticParams {
    Index n = 1000;
    Index d = 50;
    double density = 1.0;       // fraction of nonzero features per row
    Index support = 5;          // nonzeros of the planted weight vector
    double weight_scale = 2.0;
    std::uint64_t seed = 0;
};

inline LogisticData synthetic_logistic(const SyntheticLogisticParams& p) {
    require(p.n >= 1 && p.d >= 1, "synthetic_logistic: n, d must be >= 1");
    require(p.density > 0.0 && p.density <= 1.0, "synthetic_logistic: density must lie in (0, 1]");
    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Point w = Point::Zero(p.d);
    for (Index k = 0; k < std::min(p.support, p.d); ++k) w[(k * 7919) % p.d] = p.weight_scale * normal(rng);
    LogisticData data;
    data.dim = p.d;
    data.examples.reserve(static_cast<std::size_t>(p.n));
    const double scale = 1.0 / std::sqrt(p.density * static_cast<double>(p.d));
    for (Index i = 0; i < p.n; ++i) {
        LabeledExample ex;
        double z = 0.0;
        for (Index k = 0; k < p.d; ++k) {
            if (p.density < 1.0 && unit(rng) >= p.density) continue;
            const double v = scale * normal(rng);
            ex.features.push_back({k, v});
            z += v * w[k];
        }
        if (ex.features.empty()) {
            const auto k = static_cast<Index>(unit(rng) * static_cast<double>(p.d)) % p.d;
            ex.features.push_back({k, scale});
            z = scale * w[k];
        }
        // With f_i = -(y log sigma(-z) + (1-y) log sigma(z)), label 1 is the likely label when z < 0.
        ex.label = unit(rng) < detail::sigmoid(-z) ? 1 : 0;
        data.examples.push_back(std::move(ex));
    }
    return data;
}

struct SyntheticQuadraticParams {
    Index n = 100;
    Index d = 20;
    double L = 1.0;                // approximate largest component eigenvalue
    double tau_over_L = 0.1;       // approximate smallest eigenvalue of the mean Hessian over L
    double component_noise = 0.1;  // rank-one per-component perturbation size, relative to L
    double center_norm = 2.0;      // L1 norm of the unconstrained minimizer of the mean objective
    double linear_noise = 0.5;     // per-component spread of b_i
    std::uint64_t seed = 0;
};

/// Components f_i = 1/2 x^T (M + c_i c_i^T) x + b_i^T x with M = Q diag(lambda) Q^T.
inline std::vector<QuadraticComponent> synthetic_quadratic(const SyntheticQuadraticParams& p) {
    require(p.n >= 1 && p.d >= 1, "synthetic_quadratic: n, d must be >= 1");
    require(p.L > 0.0 && p.tau_over_L > 0.0 && p.tau_over_L <= 1.0,
            "synthetic_quadratic: need L > 0 and tau/L in (0, 1]");
    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd G(p.d, p.d);
    for (Index r = 0; r < p.d; ++r)
        for (Index c = 0; c < p.d; ++c) G(r, c) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    const Eigen::MatrixXd Q = qr.householderQ();
    const double top = p.L / (1.0 + p.component_noise);
    Point lambda(p.d);
    for (Index k = 0; k < p.d; ++k) {
        const double t = p.d == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(p.d - 1);
        lambda[k] = top * (p.tau_over_L + (1.0 - p.tau_over_L) * t);
    }
    const Eigen::MatrixXd M = Q * lambda.asDiagonal() * Q.transpose();
    Point center(p.d);
    for (Index k = 0; k < p.d; ++k) center[k] = normal(rng);
    center *= p.center_norm / center.lpNorm<1>();
    const Point mean_b = -(M * center);
    std::vector<QuadraticComponent> comps;
    comps.reserve(static_cast<std::size_t>(p.n));
    for (Index i = 0; i < p.n; ++i) {
        Point c(p.d);
        for (Index k = 0; k < p.d; ++k) c[k] = normal(rng);
        c *= std::sqrt(p.component_noise * top) / c.norm();
        Point b(p.d);
        for (Index k = 0; k < p.d; ++k) b[k] = mean_b[k] + p.linear_noise * top * normal(rng) / std::sqrt(static_cast<double>(p.d));
        comps.push_back({M + c * c.transpose(), std::move(b)});
    }
    return comps;
}

/// Low-rank matrix with entries in [0, 1] plus noise; a stand-in for a grayscale image.
inline Eigen::MatrixXd synthetic_low_rank(Index rows, Index cols, Index rank, double noise, std::uint64_t seed) {
    require(rows >= 1 && cols >= 1 && rank >= 1, "synthetic_low_rank: dims and rank must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd U(rows, rank), V(cols, rank);
    for (Index r = 0; r < rows; ++r)
        for (Index k = 0; k < rank; ++k) U(r, k) = unit(rng);
    for (Index c = 0; c < cols; ++c)
        for (Index k = 0; k < rank; ++k) V(c, k) = unit(rng);
    Eigen::MatrixXd Y = U * V.transpose() / static_cast<double>(rank);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) Y(r, c) += noise * normal(rng);
    return Y;
}

}  // namespace arcs
