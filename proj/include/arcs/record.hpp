#pragma once

#include "arcs/core.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

namespace arcs {

struct RecordRow {
    std::string solver;
    int epoch = 0;
    Index t = 0;
    std::uint64_t gqo = 0;
    std::uint64_t fqo = 0;
    std::uint64_t lo = 0;
    std::int64_t elapsed_ns = 0;
    double objective = 0.0;
    double subopt = std::numeric_limits<double>::quiet_NaN();  // filled once a reference optimum is known
    std::string flag;                                           // empty, or e.g. "condg_soft_fail"

    // rows without a reference (NaN subopt) compare equal on that field
    friend bool operator==(const RecordRow& a, const RecordRow& b) {
        const bool same_subopt = a.subopt == b.subopt || (std::isnan(a.subopt) && std::isnan(b.subopt));
        return same_subopt && std::tie(a.solver, a.epoch, a.t, a.gqo, a.fqo, a.lo, a.elapsed_ns, a.objective, a.flag) ==
                                  std::tie(b.solver, b.epoch, b.t, b.gqo, b.fqo, b.lo, b.elapsed_ns, b.objective, b.flag);
    }
};

/// Time-stamped metric rows of one solver run.
struct RunRecord {
    std::string solver;
    std::vector<RecordRow> rows;
    std::vector<Point> iterates;  // parallel to rows when iterate capture is enabled
    std::uint64_t condg_soft_failures = 0;

    void fill_suboptimality(double reference) {
        for (auto& r : rows) r.subopt = r.objective - reference;
    }
};

/// Stopwatch whose readings are zero unless enabled; keeps records reproducible by default.
class RunClock {
public:
    explicit RunClock(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
    std::int64_t elapsed_ns() const {
        if (!enabled_) return 0;
        return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace arcs
