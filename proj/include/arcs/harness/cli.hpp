#pragma once

// Command-line front end. Exit codes: 0 success, 1 configuration or usage error,
// 2 runtime failure.

#include "arcs/harness/experiment.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>

namespace arcs::harness {

enum ExitCode : int { kOk = 0, kConfigError = 1, kRuntimeError = 2 };

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> epochs;
    std::optional<int> seeds;
};

/// --epochs sets the epoch budget of epoch-based solvers (arcs, storc) and the step
/// budget of cg, cgs and scgs.
inline void apply_overrides(ExperimentConfig& c, const Overrides& o) {
    if (o.seed) c.seed = *o.seed;
    if (o.out_dir) c.output_dir = *o.out_dir;
    if (o.seeds) {
        if (*o.seeds < 1) throw ConfigError("--seeds", "must be >= 1");
        c.seeds = *o.seeds;
    }
    if (o.epochs) {
        if (*o.epochs < 1) throw ConfigError("--epochs", "must be >= 1");
        for (auto& s : c.solvers)
            std::visit(
                [&](auto& opt) {
                    using O = std::decay_t<decltype(opt)>;
                    if constexpr (std::is_same_v<O, RunOptions> || std::is_same_v<O, StorcOptions>) opt.epochs = *o.epochs;
                    else if constexpr (std::is_same_v<O, ScgsOptions>) opt.base.steps = *o.epochs;
                    else opt.steps = *o.epochs;
                },
                s.options);
    }
}

inline void gen_synthetic(const std::string& family, Index n, Index d, std::uint64_t seed, const std::string& out) {
    if (n < 1 || d < 1) throw ConfigError("gen-synthetic", "n and d must be >= 1");
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot write '" + out + "'");
    if (family == "logistic") {
        SyntheticLogisticParams p;
        p.n = n;
        p.d = d;
        p.seed = seed;
        write_libsvm(synthetic_logistic(p).examples, f);
    } else if (family == "quadratic") {
        SyntheticQuadraticParams p;
        p.n = n;
        p.d = d;
        p.seed = seed;
        f << quadratic_to_json(synthetic_quadratic(p)).dump() << '\n';
    } else if (family == "matrix_completion") {
        // n x d low-rank matrix
        write_csv_grid(synthetic_low_rank(n, d, std::min<Index>(3, std::min(n, d)), 0.01, seed), f);
    } else {
        throw ConfigError("family", "unknown family '" + family + "' (expected logistic, quadratic or matrix_completion)");
    }
    if (!f) throw Error("write failed for '" + out + "'");
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Projection-free finite-sum optimization benchmarks"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_path;
    auto* run = app.add_subcommand("run", "Run an experiment config");
    run->add_option("config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--seed", ov.seed, "Base seed");
    run->add_option("--out-dir", ov.out_dir, "Output directory");
    run->add_option("--epochs", ov.epochs, "Epoch/step budget for every solver");
    run->add_option("--seeds", ov.seeds, "Number of consecutive seeds to sweep");

    auto* list = app.add_subcommand("list-solvers", "Print available solver names");

    std::string family, gen_out;
    Index gen_n = 0, gen_d = 0;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen-synthetic", "Write a synthetic dataset");
    gen->add_option("family", family, "logistic | quadratic | matrix_completion")->required();
    gen->add_option("n", gen_n, "Samples (rows for matrix_completion)")->required();
    gen->add_option("d", gen_d, "Dimension (cols for matrix_completion)")->required();
    gen->add_option("seed", gen_seed, "Seed")->required();
    gen->add_option("out", gen_out, "Output path")->required();

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a config and print its canonical form");
    validate->add_option("config", validate_path, "Experiment config (JSON)")->required();
    validate->add_option("--seed", ov.seed, "Base seed");
    validate->add_option("--out-dir", ov.out_dir, "Output directory");
    validate->add_option("--epochs", ov.epochs, "Epoch/step budget for every solver");
    validate->add_option("--seeds", ov.seeds, "Number of consecutive seeds to sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (*list) {
            for (const auto& s : solver_names()) out << s << '\n';
            return kOk;
        }
        if (*gen) {
            gen_synthetic(family, gen_n, gen_d, gen_seed, gen_out);
            return kOk;
        }
        const bool is_run = static_cast<bool>(*run);
        ExperimentConfig cfg = load_config(is_run ? config_path : validate_path);
        apply_overrides(cfg, ov);
        if (!is_run) {
            out << serialize_config(cfg);
            return kOk;
        }
        const auto res = run_experiment(cfg);
        out << "wrote " << res.records.size() << " run(s) to " << cfg.output_dir << '\n';
        if (!res.reference.converged) err << "warning: reference optimum budget exhausted (gap " << res.reference.gap << ")\n";
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

}  // namespace arcs::harness
