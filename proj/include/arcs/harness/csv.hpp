#pragma once

// Metrics CSV (RFC 4180) and gnuplot script emission.

#include "arcs/dataset_io.hpp"
#include "arcs/record.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace arcs::harness {

inline constexpr const char* kCsvHeader = "solver,epoch,t,gqo,fqo,lo,elapsed_ns,objective,subopt,flag";

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return arcs::detail::format_double(v);
}

inline std::vector<RecordRow> sorted_rows(const std::vector<RunRecord>& records) {
    std::vector<RecordRow> rows;
    for (const auto& r : records) rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    std::stable_sort(rows.begin(), rows.end(), [](const RecordRow& a, const RecordRow& b) {
        if (a.solver != b.solver) return a.solver < b.solver;
        if (a.epoch != b.epoch) return a.epoch < b.epoch;
        return a.t < b.t;
    });
    return rows;
}

/// Rows of every record, sorted by (solver, epoch, t).
inline void write_csv(const std::vector<RunRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : sorted_rows(records)) {
        out << csv_field(r.solver) << ',' << r.epoch << ',' << r.t << ',' << r.gqo << ',' << r.fqo << ',' << r.lo << ','
            << r.elapsed_ns << ',' << csv_number(r.objective) << ',' << csv_number(r.subopt) << ',' << csv_field(r.flag)
            << '\n';
    }
}

inline std::string csv_string(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    write_csv(records, out);
    return out.str();
}

inline void emit_csv(const std::vector<RunRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    write_csv(records, out);
    if (!out) throw Error("write failed for '" + path + "'");
}

/// Splits RFC 4180 text into records of fields.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        any = true;
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else {
            field += c;
        }
    }
    if (quoted) throw ParseError("unterminated quoted CSV field");
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {
template <class T>
T parse_int_field(const std::string& s, const char* what) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(std::string("bad ") + what + " '" + s + "'");
    return v;
}

inline double parse_real_field(const std::string& s, const char* what) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(std::string("bad ") + what + " '" + s + "'");
    return v;
}
}  // namespace detail

/// Inverse of write_csv.
inline std::vector<RecordRow> read_metrics_csv(std::string_view text) {
    const auto table = parse_csv(text);
    if (table.empty()) throw ParseError("empty metrics CSV");
    std::string header;
    for (std::size_t k = 0; k < table[0].size(); ++k) header += (k ? "," : "") + table[0][k];
    if (header != kCsvHeader) throw ParseError("unexpected metrics header '" + header + "'");
    std::vector<RecordRow> rows;
    for (std::size_t i = 1; i < table.size(); ++i) {
        const auto& f = table[i];
        if (f.size() != 10) throw ParseError("metrics row " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
        RecordRow r;
        r.solver = f[0];
        r.epoch = detail::parse_int_field<int>(f[1], "epoch");
        r.t = detail::parse_int_field<Index>(f[2], "t");
        r.gqo = detail::parse_int_field<std::uint64_t>(f[3], "gqo");
        r.fqo = detail::parse_int_field<std::uint64_t>(f[4], "fqo");
        r.lo = detail::parse_int_field<std::uint64_t>(f[5], "lo");
        r.elapsed_ns = detail::parse_int_field<std::int64_t>(f[6], "elapsed_ns");
        r.objective = detail::parse_real_field(f[7], "objective");
        r.subopt = detail::parse_real_field(f[8], "subopt");
        r.flag = f[9];
        rows.push_back(std::move(r));
    }
    return rows;
}

inline constexpr const char* kSolverCol = "solver";

/// 1-based position of `name` in the metrics header.
inline int csv_column(std::string_view name) {
    std::string_view h = kCsvHeader;
    int col = 1;
    for (;;) {
        const auto comma = h.find(',');
        if (h.substr(0, comma) == name) return col;
        if (comma == std::string_view::npos) throw InvalidArgument("no metrics column '" + std::string(name) + "'");
        h.remove_prefix(comma + 1);
        ++col;
    }
}

/// Oracle axis a solver's curve is drawn against.
enum class PlotAxis { gqo, fqo };

/// gnuplot script drawing subopt (log scale) against the chosen oracle count, one curve
/// per solver, reading `csv_name` relative to the script's directory.
inline std::string plot_script(const std::vector<std::pair<std::string, PlotAxis>>& curves, const std::string& csv_name,
                               const std::string& title = "suboptimality") {
    std::ostringstream out;
    out << "# gnuplot script; run: gnuplot -p plot.gp\n"
        << "set datafile separator ','\n"
        << "set logscale y\n"
        << "set format y '%.0e'\n"
        << "set key outside right\n"
        << "set ylabel 'f(x) - f*'\n"
        << "set title '" << title << "'\n";
    bool any_fqo = false, any_gqo = false;
    for (const auto& [_, axis] : curves) (axis == PlotAxis::fqo ? any_fqo : any_gqo) = true;
    out << "set xlabel '" << (any_gqo && any_fqo ? "oracle queries (gqo or fqo)" : any_fqo ? "fqo" : "gqo") << "'\n";
    if (curves.empty()) {
        out << "# no curves\n";
        return out.str();
    }
    out << "plot ";
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const auto& [solver, axis] = curves[k];
        const char* xcol = axis == PlotAxis::gqo ? "gqo" : "fqo";
        if (k) out << ", \\\n     ";
        out << "'" << csv_name << "' every ::1 using (strcol(" << csv_column(kSolverCol) << ") eq \"" << solver
            << "\" ? column(" << csv_column(xcol) << ") : 1/0):(column(" << csv_column("subopt") << ") > 0 ? column("
            << csv_column("subopt") << ") : 1/0) with linespoints title \"" << solver << "\"";
    }
    out << '\n';
    return out.str();
}

inline void emit_plot_script(const std::vector<std::pair<std::string, PlotAxis>>& curves, const std::string& csv_name,
                             const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << plot_script(curves, csv_name);
}

}  // namespace arcs::harness
