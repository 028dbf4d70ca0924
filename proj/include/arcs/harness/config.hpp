#pragma once

// Experiment configuration: JSON schema, validation with field paths, canonical
// serialization.

#include "arcs/baselines.hpp"
#include "arcs/harness/reference.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace arcs::harness {

using Json = nlohmann::json;

/// Invalid configuration; `path()` names the offending field, e.g. "solvers[1].batch".
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& msg) : Error(path + ": " + msg), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct ProblemSpec {
    ProblemKind family = ProblemKind::logistic;
    std::string dataset;  // LIBSVM (logistic), PGM/CSV image (matrix completion) or JSON (quadratic); empty = synthetic
    // synthetic parameters per family
    SyntheticLogisticParams logistic{};
    SyntheticQuadraticParams quadratic{};
    Index rows = 16, cols = 16, rank = 3;
    double noise = 0.01;
    std::uint64_t synthetic_seed = 0;
    // matrix completion
    double observed_fraction = 0.7;
    std::uint64_t mask_seed = 0;
};

enum class RegionType { l1, box, nuclear };

inline PowerIterConfig harness_power_defaults() {
    PowerIterConfig p;
    p.max_iters = 5000;
    return p;
}

struct RegionSpec {
    RegionType type = RegionType::l1;
    double radius = 1.0;
    double lo = -1.0, hi = 1.0;
    PowerIterConfig power = harness_power_defaults();
};

using SolverOptions = std::variant<RunOptions, CgOptions, CgsOptions, ScgsOptions, StorcOptions>;

struct SolverSpec {
    std::string name;  // arcs | cg | cgs | scgs | storc
    SolverOptions options;
    const std::string& label() const;
};

struct ExperimentConfig {
    std::string name = "experiment";
    std::uint64_t seed = 0;
    int seeds = 1;
    std::string output_dir = "out";
    bool record_wall_clock = false;
    ProblemSpec problem;
    RegionSpec region;
    std::vector<SolverSpec> solvers;
    ReferencePolicy reference;
    bool cache_reference = true;
};

inline const std::vector<std::string>& solver_names() {
    static const std::vector<std::string> names{"arcs", "cg", "cgs", "scgs", "storc"};
    return names;
}

inline const std::string& SolverSpec::label() const {
    return std::visit(
        [](const auto& o) -> const std::string& {
            if constexpr (std::is_same_v<std::decay_t<decltype(o)>, ScgsOptions>) return o.base.label;
            else return o.label;
        },
        options);
}

// ---------------------------------------------------------------- reading

namespace detail {

class Reader {
public:
    Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        for (auto it = j_.begin(); it != j_.end(); ++it) unused_.insert(it.key());
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    bool has(const std::string& key) const { return j_.contains(key); }

    const Json& raw(const std::string& key) {
        unused_.erase(key);
        return j_.at(key);
    }

    template <class T>
    void get(const std::string& key, T& out) {
        if (!has(key)) return;
        const Json& v = raw(key);
        try {
            if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) throw ConfigError(field(key), "expected a boolean");
            } else if constexpr (std::is_integral_v<T>) {
                if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
                if constexpr (std::is_unsigned_v<T>)
                    if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
                        throw ConfigError(field(key), "must be >= 0");
            } else if constexpr (std::is_floating_point_v<T>) {
                if (!v.is_number()) throw ConfigError(field(key), "expected a number");
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) throw ConfigError(field(key), "expected a string");
            }
            out = v.get<T>();
        } catch (const Json::exception& e) {
            throw ConfigError(field(key), e.what());
        }
    }

    template <class T>
    void get(const std::string& key, std::optional<T>& out) {
        if (!has(key) || j_.at(key).is_null()) {
            if (has(key)) unused_.erase(key);
            return;
        }
        T v{};
        get(key, v);
        out = v;
    }

    std::string choice(const std::string& key, const std::vector<std::string>& allowed, const std::string& fallback) {
        std::string v = fallback;
        get(key, v);
        for (const auto& a : allowed)
            if (a == v) return v;
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw ConfigError(field(key), "unknown value '" + v + "' (expected one of: " + list + ")");
    }

    void check(bool ok, const std::string& key, const std::string& msg) const {
        if (!ok) throw ConfigError(field(key), msg);
    }

    /// Rejects keys that were never read.
    void finish() const {
        if (!unused_.empty()) throw ConfigError(field(*unused_.begin()), "unknown field");
    }

private:
    const Json& j_;
    std::string path_;
    std::set<std::string> unused_;
};

inline OracleMode parse_mode(Reader& r, const std::string& key, OracleMode fallback) {
    return r.choice(key, {"first_order", "zeroth_order"}, to_string(fallback)) == "first_order" ? OracleMode::first_order
                                                                                                  : OracleMode::zeroth_order;
}

inline RunOptions read_arcs(Reader& r) {
    RunOptions o;
    o.mode = parse_mode(r, "mode", o.mode);
    if (r.has("schedule_mode")) o.schedule_mode = parse_mode(r, "schedule_mode", o.mode);
    o.convexity = r.choice("convexity", {"convex", "strongly_convex"}, "convex") == "convex" ? Convexity::convex
                                                                                              : Convexity::strongly_convex;
    r.get("epochs", o.epochs);
    r.check(o.epochs >= 1, "epochs", "must be >= 1");
    r.get("batch", o.batch);
    r.check(o.batch >= 1, "batch", "must be >= 1");
    r.get("seed", o.seed);
    r.get("D0", o.D0);
    r.check(o.D0 >= 0.0, "D0", "must be >= 0 (0 selects the default)");
    if (r.has("mu")) {
        double mu = 0.0;
        r.get("mu", mu);
        r.check(mu > 0.0, "mu", "must be > 0");
        o.smoothing = SmoothingConfig{mu};
    }
    r.get("tau", o.tau);
    if (o.tau) r.check(*o.tau > 0.0, "tau", "must be > 0");
    o.zo_gamma = r.choice("zo_gamma", {"scaled_by_dim", "constant_five"}, "scaled_by_dim") == "scaled_by_dim"
                     ? ZoGammaRule::scaled_by_dim
                     : ZoGammaRule::constant_five;
    r.get("record_every", o.record_every);
    r.check(o.record_every >= 0, "record_every", "must be >= 0");
    r.get("condg_max_iters", o.condg_max_iters);
    r.get("label", o.label);
    return o;
}

inline CgOptions read_cg(Reader& r) {
    CgOptions o;
    r.get("steps", o.steps);
    r.check(o.steps >= 0, "steps", "must be >= 0");
    const auto rule = r.choice("step_rule", {"open_loop", "exact", "adaptive"}, "open_loop");
    o.step_rule = rule == "open_loop" ? StepRule::open_loop : rule == "exact" ? StepRule::exact : StepRule::adaptive;
    r.get("gap_tol", o.gap_tol);
    r.check(o.gap_tol >= 0.0, "gap_tol", "must be >= 0");
    r.get("record_every", o.record_every);
    r.check(o.record_every >= 0, "record_every", "must be >= 0");
    r.get("label", o.label);
    return o;
}

inline void read_cgs_fields(Reader& r, CgsOptions& o) {
    r.get("steps", o.steps);
    r.check(o.steps >= 0, "steps", "must be >= 0");
    r.get("alpha", o.fixed_alpha);
    if (o.fixed_alpha) r.check(*o.fixed_alpha > 0.0 && *o.fixed_alpha <= 1.0, "alpha", "must lie in (0, 1]");
    r.get("gamma_scale", o.gamma_scale);
    r.check(o.gamma_scale > 0.0, "gamma_scale", "must be > 0");
    r.get("eta_scale", o.eta_scale);
    r.check(o.eta_scale > 0.0, "eta_scale", "must be > 0");
    r.get("condg_max_iters", o.condg_max_iters);
    r.get("record_every", o.record_every);
    r.check(o.record_every >= 0, "record_every", "must be >= 0");
    r.get("label", o.label);
}

inline CgsOptions read_cgs(Reader& r) {
    CgsOptions o;
    read_cgs_fields(r, o);
    return o;
}

inline ScgsOptions read_scgs(Reader& r) {
    ScgsOptions o;
    read_cgs_fields(r, o.base);
    r.get("batch_coeff", o.batch_coeff);
    r.check(o.batch_coeff > 0.0, "batch_coeff", "must be > 0");
    r.get("batch", o.fixed_batch);
    if (o.fixed_batch) r.check(*o.fixed_batch >= 1, "batch", "must be >= 1");
    r.get("seed", o.seed);
    return o;
}

inline StorcOptions read_storc(Reader& r) {
    StorcOptions o;
    o.variant = r.choice("case", {"smooth", "strongly_convex"}, "smooth") == "smooth" ? StorcCase::smooth
                                                                                      : StorcCase::strongly_convex;
    r.get("epochs", o.epochs);
    r.check(o.epochs >= 1, "epochs", "must be >= 1");
    r.get("batch_scale", o.batch_scale);
    r.check(o.batch_scale > 0.0 && o.batch_scale <= 1.0, "batch_scale", "must lie in (0, 1]");
    r.get("tau", o.tau);
    if (o.tau) r.check(*o.tau > 0.0, "tau", "must be > 0");
    r.get("seed", o.seed);
    r.get("condg_max_iters", o.condg_max_iters);
    r.get("record_every", o.record_every);
    r.check(o.record_every >= 0, "record_every", "must be >= 0");
    r.get("label", o.label);
    return o;
}

inline SolverSpec read_solver(const Json& j, const std::string& path) {
    Reader r(j, path);
    r.check(r.has("name"), "name", "missing");
    SolverSpec s;
    s.name = r.choice("name", solver_names(), "");
    if (s.name == "arcs") s.options = read_arcs(r);
    else if (s.name == "cg") s.options = read_cg(r);
    else if (s.name == "cgs") s.options = read_cgs(r);
    else if (s.name == "scgs") s.options = read_scgs(r);
    else s.options = read_storc(r);
    if (!r.has("label")) {
        std::visit(
            [&](auto& o) {
                if constexpr (std::is_same_v<std::decay_t<decltype(o)>, ScgsOptions>) o.base.label = s.name;
                else o.label = s.name;
            },
            s.options);
    }
    r.check(!s.label().empty(), "label", "must not be empty");
    r.finish();
    return s;
}

inline ProblemSpec read_problem(const Json& j, const std::string& path, const std::filesystem::path& base_dir) {
    Reader r(j, path);
    ProblemSpec p;
    const auto fam = r.choice("family", {"logistic", "matrix_completion", "quadratic"}, "logistic");
    p.family = fam == "logistic" ? ProblemKind::logistic : fam == "quadratic" ? ProblemKind::quadratic : ProblemKind::matrix_completion;
    r.get("dataset", p.dataset);
    if (!p.dataset.empty()) {
        std::filesystem::path dp(p.dataset);
        if (dp.is_relative() && !base_dir.empty()) dp = base_dir / dp;
        if (!std::filesystem::exists(dp)) throw ConfigError(r.field("dataset"), "file not found: '" + dp.string() + "'");
        p.dataset = std::filesystem::absolute(dp).lexically_normal().string();
    }
    if (r.has("synthetic")) {
        const std::string sp = r.field("synthetic");
        Reader s(r.raw("synthetic"), sp);
        if (p.family == ProblemKind::logistic) {
            auto& q = p.logistic;
            s.get("n", q.n);
            s.check(q.n >= 1, "n", "must be >= 1");
            s.get("d", q.d);
            s.check(q.d >= 1, "d", "must be >= 1");
            s.get("density", q.density);
            s.check(q.density > 0.0 && q.density <= 1.0, "density", "must lie in (0, 1]");
            s.get("support", q.support);
            s.check(q.support >= 0, "support", "must be >= 0");
            s.get("weight_scale", q.weight_scale);
            s.get("seed", q.seed);
        } else if (p.family == ProblemKind::quadratic) {
            auto& q = p.quadratic;
            s.get("n", q.n);
            s.check(q.n >= 1, "n", "must be >= 1");
            s.get("d", q.d);
            s.check(q.d >= 1, "d", "must be >= 1");
            s.get("L", q.L);
            s.check(q.L > 0.0, "L", "must be > 0");
            s.get("tau_over_L", q.tau_over_L);
            s.check(q.tau_over_L > 0.0 && q.tau_over_L <= 1.0, "tau_over_L", "must lie in (0, 1]");
            s.get("component_noise", q.component_noise);
            s.check(q.component_noise >= 0.0, "component_noise", "must be >= 0");
            s.get("center_norm", q.center_norm);
            s.get("linear_noise", q.linear_noise);
            s.get("seed", q.seed);
        } else {
            s.get("rows", p.rows);
            s.check(p.rows >= 1, "rows", "must be >= 1");
            s.get("cols", p.cols);
            s.check(p.cols >= 1, "cols", "must be >= 1");
            s.get("rank", p.rank);
            s.check(p.rank >= 1, "rank", "must be >= 1");
            s.get("noise", p.noise);
            s.check(p.noise >= 0.0, "noise", "must be >= 0");
            s.get("seed", p.synthetic_seed);
        }
        s.finish();
    }
    if (p.family == ProblemKind::matrix_completion) {
        r.get("observed_fraction", p.observed_fraction);
        r.check(p.observed_fraction > 0.0 && p.observed_fraction <= 1.0, "observed_fraction", "must lie in (0, 1]");
        r.get("mask_seed", p.mask_seed);
    }
    r.finish();
    return p;
}

inline RegionSpec read_region(const Json& j, const std::string& path) {
    Reader r(j, path);
    RegionSpec g;
    const auto t = r.choice("type", {"l1", "box", "nuclear"}, "l1");
    g.type = t == "l1" ? RegionType::l1 : t == "box" ? RegionType::box : RegionType::nuclear;
    if (g.type == RegionType::box) {
        r.get("lo", g.lo);
        r.get("hi", g.hi);
        r.check(g.lo < g.hi, "hi", "must exceed lo");
    } else {
        r.get("radius", g.radius);
        r.check(g.radius > 0.0, "radius", "must be > 0");
    }
    if (g.type == RegionType::nuclear) {
        r.get("power_iters", g.power.max_iters);
        r.check(g.power.max_iters >= 1, "power_iters", "must be >= 1");
        r.get("power_tol", g.power.tol);
        r.check(g.power.tol > 0.0, "power_tol", "must be > 0");
        r.get("power_seed", g.power.seed);
    }
    r.finish();
    return g;
}

}  // namespace detail

/// Parses and validates a config document. Relative dataset paths resolve against `base_dir`.
inline ExperimentConfig parse_config(const Json& j, const std::filesystem::path& base_dir = {}) {
    detail::Reader r(j, "");
    ExperimentConfig c;
    r.get("name", c.name);
    r.get("seed", c.seed);
    r.get("seeds", c.seeds);
    r.check(c.seeds >= 1, "seeds", "must be >= 1");
    r.get("output_dir", c.output_dir);
    r.check(!c.output_dir.empty(), "output_dir", "must not be empty");
    r.get("record_wall_clock", c.record_wall_clock);
    r.check(r.has("problem"), "problem", "missing");
    c.problem = detail::read_problem(r.raw("problem"), "problem", base_dir);
    r.check(r.has("region"), "region", "missing");
    c.region = detail::read_region(r.raw("region"), "region");
    if (c.problem.family == ProblemKind::matrix_completion && c.region.type == RegionType::box)
        throw ConfigError("region.type", "matrix completion needs an l1 or nuclear region");
    r.check(r.has("solvers"), "solvers", "missing");
    const Json& sv = r.raw("solvers");
    if (!sv.is_array() || sv.empty()) throw ConfigError("solvers", "expected a non-empty array");
    std::set<std::string> labels;
    for (std::size_t k = 0; k < sv.size(); ++k) {
        const auto path = "solvers[" + std::to_string(k) + "]";
        c.solvers.push_back(detail::read_solver(sv[k], path));
        if (!labels.insert(c.solvers.back().label()).second)
            throw ConfigError(path + ".label", "duplicate label '" + c.solvers.back().label() + "'");
    }
    if (r.has("reference")) {
        detail::Reader ref(r.raw("reference"), "reference");
        ref.get("max_lo_calls", c.reference.max_lo_calls);
        ref.get("gap_tol", c.reference.gap_tol);
        ref.check(c.reference.gap_tol > 0.0, "gap_tol", "must be > 0");
        ref.get("polish_iters", c.reference.polish_iters);
        ref.check(c.reference.polish_iters >= 0, "polish_iters", "must be >= 0");
        ref.get("cache", c.cache_reference);
        ref.finish();
    }
    r.finish();
    return c;
}

inline ExperimentConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir = {}) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j, base_dir);
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), std::filesystem::path(path).parent_path());
}

// ---------------------------------------------------------------- writing

namespace detail {

inline Json write_solver(const SolverSpec& s) {
    Json j;
    j["name"] = s.name;
    std::visit(
        [&](const auto& o) {
            using O = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<O, RunOptions>) {
                j["label"] = o.label;
                j["mode"] = to_string(o.mode);
                if (o.schedule_mode) j["schedule_mode"] = to_string(*o.schedule_mode);
                j["convexity"] = to_string(o.convexity);
                j["epochs"] = o.epochs;
                j["batch"] = o.batch;
                j["seed"] = o.seed;
                j["D0"] = o.D0;
                if (o.smoothing) j["mu"] = o.smoothing->mu;
                if (o.tau) j["tau"] = *o.tau;
                j["zo_gamma"] = o.zo_gamma == ZoGammaRule::scaled_by_dim ? "scaled_by_dim" : "constant_five";
                j["record_every"] = o.record_every;
                j["condg_max_iters"] = o.condg_max_iters;
            } else if constexpr (std::is_same_v<O, CgOptions>) {
                j["label"] = o.label;
                j["steps"] = o.steps;
                j["step_rule"] = to_string(o.step_rule);
                j["gap_tol"] = o.gap_tol;
                j["record_every"] = o.record_every;
            } else if constexpr (std::is_same_v<O, StorcOptions>) {
                j["label"] = o.label;
                j["case"] = o.variant == StorcCase::smooth ? "smooth" : "strongly_convex";
                j["epochs"] = o.epochs;
                j["batch_scale"] = o.batch_scale;
                if (o.tau) j["tau"] = *o.tau;
                j["seed"] = o.seed;
                j["condg_max_iters"] = o.condg_max_iters;
                j["record_every"] = o.record_every;
            } else {
                const CgsOptions* base = nullptr;
                if constexpr (std::is_same_v<O, ScgsOptions>) {
                    base = &o.base;
                    j["batch_coeff"] = o.batch_coeff;
                    if (o.fixed_batch) j["batch"] = *o.fixed_batch;
                    j["seed"] = o.seed;
                } else {
                    base = &o;
                }
                j["label"] = base->label;
                j["steps"] = base->steps;
                if (base->fixed_alpha) j["alpha"] = *base->fixed_alpha;
                j["gamma_scale"] = base->gamma_scale;
                j["eta_scale"] = base->eta_scale;
                j["condg_max_iters"] = base->condg_max_iters;
                j["record_every"] = base->record_every;
            }
        },
        s.options);
    return j;
}

}  // namespace detail

/// Canonical JSON form (every field explicit).
inline Json to_json(const ExperimentConfig& c) {
    Json j;
    j["name"] = c.name;
    j["seed"] = c.seed;
    j["seeds"] = c.seeds;
    j["output_dir"] = c.output_dir;
    j["record_wall_clock"] = c.record_wall_clock;

    Json p;
    const auto& ps = c.problem;
    p["family"] = to_string(ps.family);
    if (!ps.dataset.empty()) p["dataset"] = ps.dataset;
    Json syn;
    if (ps.family == ProblemKind::logistic) {
        syn = {{"n", ps.logistic.n}, {"d", ps.logistic.d}, {"density", ps.logistic.density},
               {"support", ps.logistic.support}, {"weight_scale", ps.logistic.weight_scale}, {"seed", ps.logistic.seed}};
    } else if (ps.family == ProblemKind::quadratic) {
        const auto& q = ps.quadratic;
        syn = {{"n", q.n}, {"d", q.d}, {"L", q.L}, {"tau_over_L", q.tau_over_L}, {"component_noise", q.component_noise},
               {"center_norm", q.center_norm}, {"linear_noise", q.linear_noise}, {"seed", q.seed}};
    } else {
        syn = {{"rows", ps.rows}, {"cols", ps.cols}, {"rank", ps.rank}, {"noise", ps.noise}, {"seed", ps.synthetic_seed}};
        p["observed_fraction"] = ps.observed_fraction;
        p["mask_seed"] = ps.mask_seed;
    }
    p["synthetic"] = syn;
    j["problem"] = p;

    Json g;
    const auto& rs = c.region;
    g["type"] = rs.type == RegionType::l1 ? "l1" : rs.type == RegionType::box ? "box" : "nuclear";
    if (rs.type == RegionType::box) {
        g["lo"] = rs.lo;
        g["hi"] = rs.hi;
    } else {
        g["radius"] = rs.radius;
    }
    if (rs.type == RegionType::nuclear) {
        g["power_iters"] = rs.power.max_iters;
        g["power_tol"] = rs.power.tol;
        g["power_seed"] = rs.power.seed;
    }
    j["region"] = g;

    Json sv = Json::array();
    for (const auto& s : c.solvers) sv.push_back(detail::write_solver(s));
    j["solvers"] = sv;
    j["reference"] = {{"max_lo_calls", c.reference.max_lo_calls},
                      {"gap_tol", c.reference.gap_tol},
                      {"polish_iters", c.reference.polish_iters},
                      {"cache", c.cache_reference}};
    return j;
}

inline std::string serialize_config(const ExperimentConfig& c) { return to_json(c).dump(2) + "\n"; }

inline bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) { return to_json(a) == to_json(b); }

}  // namespace arcs::harness
