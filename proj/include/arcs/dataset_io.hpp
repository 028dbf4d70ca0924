#pragma once

// Readers and writers for LIBSVM text, PGM (P2/P5) images and plain CSV grids.

#include "arcs/core.hpp"
#include "arcs/problems.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace arcs {

class ParseError : public Error {
public:
    using Error::Error;
};

struct LibsvmData {
    std::vector<LabeledExample> examples;
    Index dim = 0;  // largest 1-based index seen on the wire
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n\v\f";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline bool parse_double(std::string_view tok, double& out) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    if (tok.empty()) return false;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

inline bool parse_index(std::string_view tok, Index& out) {
    if (tok.empty()) return false;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const auto b = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

}  // namespace detail

/// Parses "label idx:val idx:val ..." lines. Labels {0,1} or {-1,+1} (-1 maps to 0);
/// indices are 1-based on the wire and returned 0-based.
inline LibsvmData parse_libsvm(std::istream& in) {
    LibsvmData out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto at = " at line " + std::to_string(lineno);
        const auto toks = detail::split_ws(body);
        double label = 0.0;
        if (!detail::parse_double(toks[0], label)) throw ParseError("unknown label '" + std::string(toks[0]) + "'" + at);
        LabeledExample ex;
        if (label == 1.0) {
            ex.label = 1;
        } else if (label == 0.0 || label == -1.0) {
            ex.label = 0;
        } else {
            throw ParseError("unknown label '" + std::string(toks[0]) + "'" + at);
        }
        Index prev = 0;
        for (std::size_t k = 1; k < toks.size(); ++k) {
            const auto tok = toks[k];
            const auto colon = tok.find(':');
            if (colon == std::string_view::npos) throw ParseError("malformed pair '" + std::string(tok) + "'" + at);
            Index idx = 0;
            if (!detail::parse_index(tok.substr(0, colon), idx) || idx < 1)
                throw ParseError("invalid index in '" + std::string(tok) + "'" + at);
            double val = 0.0;
            if (!detail::parse_double(tok.substr(colon + 1), val))
                throw ParseError("non-numeric value in '" + std::string(tok) + "'" + at);
            if (idx <= prev) throw ParseError("non-increasing index" + at);
            prev = idx;
            ex.features.push_back({idx - 1, val});
            out.dim = std::max(out.dim, idx);
        }
        out.examples.push_back(std::move(ex));
    }
    return out;
}

inline LibsvmData parse_libsvm(const std::string& text) {
    std::istringstream in(text);
    return parse_libsvm(in);
}

inline LibsvmData load_libsvm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open LIBSVM file '" + path + "'");
    try {
        return parse_libsvm(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

/// Writes labels as 0/1 and values in shortest round-trip form.
inline void write_libsvm(const std::vector<LabeledExample>& examples, std::ostream& out) {
    for (const auto& ex : examples) {
        out << ex.label;
        for (const auto& f : ex.features) out << ' ' << (f.index + 1) << ':' << detail::format_double(f.value);
        out << '\n';
    }
}

inline std::string serialize_libsvm(const std::vector<LabeledExample>& examples) {
    std::ostringstream out;
    write_libsvm(examples, out);
    return out.str();
}

// ---------------------------------------------------------------------------
// Grayscale matrices

namespace detail {

inline std::string pgm_token(std::istream& in) {
    std::string tok;
    char c = 0;
    while (in.get(c)) {
        if (c == '#') {
            std::string skip;
            std::getline(in, skip);
            if (!tok.empty()) break;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(c);
    }
    return tok;
}

}  // namespace detail

/// Reads a P2 or P5 PGM image; pixels are scaled to [0, 1] by maxval.
inline Eigen::MatrixXd read_pgm(std::istream& in) {
    const auto magic = detail::pgm_token(in);
    if (magic != "P2" && magic != "P5") throw ParseError("PGM: unsupported magic '" + magic + "'");
    Index w = 0, h = 0, maxval = 0;
    if (!detail::parse_index(detail::pgm_token(in), w) || !detail::parse_index(detail::pgm_token(in), h) ||
        !detail::parse_index(detail::pgm_token(in), maxval) || w < 1 || h < 1 || maxval < 1 || maxval > 65535)
        throw ParseError("PGM: malformed header");
    Eigen::MatrixXd Y(h, w);
    if (magic == "P2") {
        for (Index r = 0; r < h; ++r)
            for (Index c = 0; c < w; ++c) {
                Index v = 0;
                if (!detail::parse_index(detail::pgm_token(in), v) || v < 0 || v > maxval)
                    throw ParseError("PGM: bad pixel at row " + std::to_string(r) + ", col " + std::to_string(c));
                Y(r, c) = static_cast<double>(v) / static_cast<double>(maxval);
            }
    } else {
        const int bytes = maxval < 256 ? 1 : 2;
        for (Index r = 0; r < h; ++r)
            for (Index c = 0; c < w; ++c) {
                unsigned v = 0;
                for (int b = 0; b < bytes; ++b) {
                    char ch = 0;
                    if (!in.get(ch)) throw ParseError("PGM: truncated raster");
                    v = (v << 8) | static_cast<unsigned char>(ch);
                }
                Y(r, c) = static_cast<double>(v) / static_cast<double>(maxval);
            }
    }
    return Y;
}

/// Plain CSV grid: one matrix row per line, comma-separated numbers, blank lines ignored.
inline Eigen::MatrixXd read_csv_grid(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = detail::trim(line);
        if (body.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            const auto cell = detail::trim(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start));
            double v = 0.0;
            if (!detail::parse_double(cell, v))
                throw ParseError("CSV grid: non-numeric cell '" + std::string(cell) + "' at line " + std::to_string(lineno));
            row.push_back(v);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("CSV grid: ragged row at line " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("CSV grid: empty input");
    Eigen::MatrixXd Y(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index r = 0; r < Y.rows(); ++r)
        for (Index c = 0; c < Y.cols(); ++c) Y(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return Y;
}

inline void write_csv_grid(const Eigen::MatrixXd& Y, std::ostream& out) {
    for (Index r = 0; r < Y.rows(); ++r) {
        for (Index c = 0; c < Y.cols(); ++c) {
            if (c) out << ',';
            out << detail::format_double(Y(r, c));
        }
        out << '\n';
    }
}

/// Loads a grayscale matrix; ".pgm" files are read as PGM, anything else as a CSV grid.
inline Eigen::MatrixXd load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open matrix file '" + path + "'");
    const bool pgm = path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0;
    try {
        return pgm ? read_pgm(in) : read_csv_grid(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace arcs
