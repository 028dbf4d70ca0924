#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace arcs {

/// Dense iterate. Matrix-valued iterates are stored flattened row-major.
using Point = Eigen::VectorXd;
using Index = std::ptrdiff_t;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidArgument(what);
}

inline void require_dim(Index got, Index want, const char* where) {
    if (got != want)
        throw DimensionError(std::string(where) + ": dimension mismatch (got " +
                             std::to_string(got) + ", expected " + std::to_string(want) + ")");
}

inline bool all_finite(const Point& x) { return x.allFinite(); }

/// Monotone counts of gradient-query, function-query and linear-oracle calls.
struct OracleCounters {
    std::uint64_t gqo = 0;
    std::uint64_t fqo = 0;
    std::uint64_t lo = 0;

    OracleCounters& operator+=(const OracleCounters& o) {
        gqo += o.gqo;
        fqo += o.fqo;
        lo += o.lo;
        return *this;
    }
    friend OracleCounters operator+(OracleCounters a, const OracleCounters& b) { return a += b; }
    /// Delta between two snapshots of the same monotone counter set (`later - earlier`).
    friend OracleCounters operator-(const OracleCounters& later, const OracleCounters& earlier) {
        return {later.gqo - earlier.gqo, later.fqo - earlier.fqo, later.lo - earlier.lo};
    }
    friend bool operator==(const OracleCounters&, const OracleCounters&) = default;
};

enum class OracleMode { first_order, zeroth_order };
enum class Convexity { convex, strongly_convex };

inline const char* to_string(OracleMode m) {
    return m == OracleMode::first_order ? "first_order" : "zeroth_order";
}
inline const char* to_string(Convexity c) {
    return c == Convexity::convex ? "convex" : "strongly_convex";
}

}  // namespace arcs
