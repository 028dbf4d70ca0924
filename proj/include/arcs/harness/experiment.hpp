#pragma once

// Builds problems and regions from a config, runs every (solver, seed) pair and writes
// metrics.csv, per-run CSVs, plot.gp and meta.json into the output directory.

#include "arcs/dataset_io.hpp"
#include "arcs/harness/config.hpp"
#include "arcs/harness/csv.hpp"
#include "arcs/harness/reference.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

namespace arcs::harness {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- quadratic JSON files

inline Json quadratic_to_json(const std::vector<QuadraticComponent>& comps) {
    Json arr = Json::array();
    for (const auto& c : comps) {
        Json A = Json::array();
        for (Index r = 0; r < c.A.rows(); ++r) {
            Json row = Json::array();
            for (Index k = 0; k < c.A.cols(); ++k) row.push_back(c.A(r, k));
            A.push_back(row);
        }
        Json b = Json::array();
        for (Index k = 0; k < c.b.size(); ++k) b.push_back(c.b[k]);
        arr.push_back({{"A", A}, {"b", b}});
    }
    return {{"components", arr}};
}

inline std::vector<QuadraticComponent> load_quadratic(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open quadratic file '" + path + "'");
    try {
        const Json j = Json::parse(in);
        std::vector<QuadraticComponent> out;
        for (const auto& c : j.at("components")) {
            const auto& A = c.at("A");
            const auto& b = c.at("b");
            const auto d = static_cast<Index>(b.size());
            QuadraticComponent q{Eigen::MatrixXd(d, d), Point(d)};
            if (static_cast<Index>(A.size()) != d) throw ParseError("A must be d x d");
            for (Index r = 0; r < d; ++r) {
                const auto& row = A.at(static_cast<std::size_t>(r));
                if (static_cast<Index>(row.size()) != d) throw ParseError("A must be d x d");
                for (Index k = 0; k < d; ++k) q.A(r, k) = row.at(static_cast<std::size_t>(k)).get<double>();
                q.b[r] = b.at(static_cast<std::size_t>(r)).get<double>();
            }
            out.push_back(std::move(q));
        }
        return out;
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------- instance construction

struct Instance {
    FiniteSumProblem problem;
    FeasibleRegion region;
};

inline Instance build_instance(const ExperimentConfig& c) {
    const auto& ps = c.problem;
    const auto& rs = c.region;
    auto make_region = [&](Index dim, Index rows, Index cols) {
        switch (rs.type) {
            case RegionType::l1: return FeasibleRegion::l1_ball(dim, rs.radius);
            case RegionType::box: return FeasibleRegion::box(dim, rs.lo, rs.hi);
            case RegionType::nuclear: return FeasibleRegion::nuclear_ball(rows, cols, rs.radius, rs.power);
        }
        throw InvalidArgument("unknown region");
    };
    switch (ps.family) {
        case ProblemKind::logistic: {
            LogisticData data;
            if (ps.dataset.empty()) {
                data = synthetic_logistic(ps.logistic);
            } else {
                auto raw = load_libsvm(ps.dataset);
                data.examples = std::move(raw.examples);
                data.dim = raw.dim;
            }
            if (rs.type == RegionType::nuclear) throw ConfigError("region.type", "nuclear region needs matrix completion");
            auto p = FiniteSumProblem::logistic(std::move(data));
            auto g = make_region(p.dim(), 0, 0);
            return {std::move(p), std::move(g)};
        }
        case ProblemKind::quadratic: {
            auto comps = ps.dataset.empty() ? synthetic_quadratic(ps.quadratic) : load_quadratic(ps.dataset);
            if (rs.type == RegionType::nuclear) throw ConfigError("region.type", "nuclear region needs matrix completion");
            auto p = FiniteSumProblem::quadratic(std::move(comps));
            auto g = make_region(p.dim(), 0, 0);
            return {std::move(p), std::move(g)};
        }
        case ProblemKind::matrix_completion: {
            const Eigen::MatrixXd Y =
                ps.dataset.empty() ? synthetic_low_rank(ps.rows, ps.cols, ps.rank, ps.noise, ps.synthetic_seed) : load_matrix(ps.dataset);
            const auto mask = make_mask(Y.rows(), Y.cols(), ps.observed_fraction, ps.mask_seed);
            auto p = FiniteSumProblem::matrix_completion(make_matrix_completion(Y, mask, rs.radius));
            auto g = make_region(p.dim(), Y.rows(), Y.cols());
            return {std::move(p), std::move(g)};
        }
    }
    throw InvalidArgument("unknown problem family");
}

// ---------------------------------------------------------------- reference cache

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Content hash of everything the reference optimum depends on.
inline std::string reference_key(const ExperimentConfig& c) {
    const Json j = to_json(c);
    Json key = {{"problem", j["problem"]}, {"region", j["region"]}, {"reference", j["reference"]}};
    key["reference"].erase("cache");
    std::uint64_t h = fnv1a(key.dump());
    if (!c.problem.dataset.empty()) {
        std::ifstream in(c.problem.dataset, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        h = fnv1a(ss.str(), h);
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << h;
    return hex.str();
}

/// Writes via a temporary file and rename so concurrent readers never see a partial file.
inline void atomic_write(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(fnv1a(text) & 0xffff);
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << text;
        if (!out) throw Error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

inline Json reference_to_json(const ReferenceResult& r) {
    return {{"value", r.value}, {"gap", r.gap}, {"lo_calls", r.lo_calls}, {"converged", r.converged}};
}

inline ReferenceResult cached_reference(const ExperimentConfig& c, const Instance& inst) {
    const fs::path file = fs::path(c.output_dir) / ("reference-" + reference_key(c) + ".json");
    if (c.cache_reference && fs::exists(file)) {
        try {
            std::ifstream in(file);
            const Json j = Json::parse(in);
            ReferenceResult r;
            r.value = j.at("value").get<double>();
            r.gap = j.at("gap").get<double>();
            r.lo_calls = j.at("lo_calls").get<std::uint64_t>();
            r.converged = j.at("converged").get<bool>();
            return r;
        } catch (const Json::exception&) {
            // unreadable cache entry: recompute
        }
    }
    ReferenceResult r = compute_reference_optimum(inst.problem, inst.region, c.reference);
    if (c.cache_reference) atomic_write(file, reference_to_json(r).dump(2) + "\n");
    return r;
}

// ---------------------------------------------------------------- running

inline RunRecord run_solver(const SolverSpec& spec, const Instance& inst, const Point& x0, std::uint64_t seed,
                            const std::string& label, bool wall_clock) {
    return std::visit(
        [&](auto o) -> RunRecord {
            using O = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<O, RunOptions>) {
                o.seed += seed;
                o.label = label;
                o.record_wall_clock = wall_clock;
                return arcs_run(inst.problem, inst.region, x0, o).record;
            } else if constexpr (std::is_same_v<O, CgOptions>) {
                o.label = label;
                o.record_wall_clock = wall_clock;
                return cg_run(inst.problem, inst.region, x0, o).record;
            } else if constexpr (std::is_same_v<O, CgsOptions>) {
                o.label = label;
                o.record_wall_clock = wall_clock;
                return cgs_run(inst.problem, inst.region, x0, o).record;
            } else if constexpr (std::is_same_v<O, ScgsOptions>) {
                o.seed += seed;
                o.base.label = label;
                o.base.record_wall_clock = wall_clock;
                return scgs_run(inst.problem, inst.region, x0, o).record;
            } else {
                o.seed += seed;
                o.label = label;
                o.record_wall_clock = wall_clock;
                return storc_run(inst.problem, inst.region, x0, o).record;
            }
        },
        spec.options);
}

inline bool is_zeroth_order(const SolverSpec& s) {
    const auto* o = std::get_if<RunOptions>(&s.options);
    return o && o->mode == OracleMode::zeroth_order;
}

inline std::string file_stem(const std::string& label) {
    std::string out;
    for (char c : label) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out;
}

struct ExperimentResult {
    std::vector<RunRecord> records;
    ReferenceResult reference;
    double shared_reference = 0.0;  // min(reference, best recorded objective)
};

/// Runs every (solver, seed) pair, fills the suboptimality column from one shared
/// reference and writes outputs before returning.
inline ExperimentResult run_experiment(const ExperimentConfig& c) {
    const Instance inst = build_instance(c);
    fs::create_directories(fs::path(c.output_dir) / "runs");
    ExperimentResult res;
    res.reference = cached_reference(c, inst);

    const Point x0 = inst.region.center();
    struct Job {
        const SolverSpec* spec;
        std::uint64_t seed;
        std::string label;
    };
    std::vector<Job> jobs;
    for (int k = 0; k < c.seeds; ++k) {
        const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(k);
        for (const auto& s : c.solvers)
            jobs.push_back({&s, seed, c.seeds == 1 ? s.label() : s.label() + "@" + std::to_string(seed)});
    }
    std::vector<std::future<RunRecord>> futures;
    for (const auto& j : jobs)
        futures.push_back(std::async(std::launch::async, [&inst, &x0, &c, j] {
            return run_solver(*j.spec, inst, x0, j.seed, j.label, c.record_wall_clock);
        }));
    for (auto& f : futures) res.records.push_back(f.get());

    res.shared_reference = res.reference.value;
    for (const auto& r : res.records)
        for (const auto& row : r.rows) res.shared_reference = std::min(res.shared_reference, row.objective);
    for (auto& r : res.records) r.fill_suboptimality(res.shared_reference);

    const fs::path out(c.output_dir);
    atomic_write(out / "metrics.csv", csv_string(res.records));
    std::vector<std::pair<std::string, PlotAxis>> curves;
    Json runs = Json::array();
    for (std::size_t k = 0; k < res.records.size(); ++k) {
        const auto& r = res.records[k];
        const auto stem = file_stem(r.solver);
        atomic_write(out / "runs" / (stem + ".csv"), csv_string({r}));
        curves.emplace_back(r.solver, is_zeroth_order(*jobs[k].spec) ? PlotAxis::fqo : PlotAxis::gqo);
        const auto& last = r.rows.back();
        runs.push_back({{"solver", r.solver},
                        {"csv", "runs/" + stem + ".csv"},
                        {"gqo", last.gqo},
                        {"fqo", last.fqo},
                        {"lo", last.lo},
                        {"final_objective", last.objective},
                        {"condg_soft_failures", r.condg_soft_failures}});
    }
    atomic_write(out / "plot.gp", plot_script(curves, "metrics.csv", c.name));
    Json meta = {{"name", c.name},
                 {"reference", reference_to_json(res.reference)},
                 {"reference_warning", res.reference.converged ? "" : "budget exhausted before gap tolerance"},
                 {"shared_reference", res.shared_reference},
                 {"runs", runs},
                 {"config", to_json(c)}};
    atomic_write(out / "meta.json", meta.dump(2) + "\n");
    return res;
}

}  // namespace arcs::harness
