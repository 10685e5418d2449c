#include "fopid/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

#include "fopid/error.hpp"

namespace fopid::csv {
namespace {

constexpr int kTraceDigits = 6;
constexpr int kResultDigits = 10;

[[noreturn]] void format_error(std::size_t line, const std::string& message) {
    throw Error(ErrorKind::Format, "trace CSV line " + std::to_string(line) + ": " + message);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string format(double value, int significant_digits) {
    char buffer[64];
    const int n = std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
    return std::string(buffer, static_cast<std::size_t>(n));
}

void write_trace(std::ostream& out, const SimulationTrace& trace) {
    out << "t,r,u,c,e\n";
    for (std::size_t k = 0; k < trace.size(); ++k) {
        out << format(static_cast<double>(k) * trace.step, kTraceDigits) << ','
            << format(trace.reference[k], kTraceDigits) << ','
            << format(trace.control[k], kTraceDigits) << ','
            << format(trace.output[k], kTraceDigits) << ','
            << format(trace.error[k], kTraceDigits) << '\n';
    }
    if (trace.diverged) out << "# diverged=true\n";
}

void write_open_loop(std::ostream& out, const SampledSignal& input, const SampledSignal& output) {
    out << "t,u,c\n";
    for (std::size_t k = 0; k < output.size(); ++k) {
        out << format(input.time(k), kTraceDigits) << ',' << format(input.samples[k], kTraceDigits)
            << ',' << format(output.samples[k], kTraceDigits) << '\n';
    }
    if (output.diverged) out << "# diverged=true\n";
}

void write_result(std::ostream& out, std::uint64_t seed, ControllerKind kind,
                  const TuneResult& result) {
    const auto& p = result.params;
    out << "seed,kind,kp,ti,td,lambda,delta,fitness\n";
    out << seed << ',' << to_string(kind) << ',' << format(p.kp, kResultDigits) << ','
        << format(p.ti, kResultDigits) << ',' << format(p.td, kResultDigits) << ','
        << format(p.lambda, kResultDigits) << ',' << format(p.delta, kResultDigits) << ','
        << format(result.fitness, kResultDigits) << '\n';
}

void write_history(std::ostream& out, const std::vector<double>& history) {
    out << "iteration,best_fitness\n";
    for (std::size_t i = 0; i < history.size(); ++i) {
        out << (i + 1) << ',' << format(history[i], kResultDigits) << '\n';
    }
}

double TraceTable::step() const { return t.size() >= 2 ? t[1] - t[0] : 1.0; }

TraceTable read_trace(std::istream& in) {
    TraceTable table;
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (line.find("diverged=true") != std::string_view::npos) table.diverged = true;
            continue;
        }
        const auto cells = split(line);
        if (!have_header) {
            if (cells.size() != 5 || trim(cells[0]) != "t" || trim(cells[1]) != "r" ||
                trim(cells[2]) != "u" || trim(cells[3]) != "c" || trim(cells[4]) != "e") {
                format_error(line_no, "expected header t,r,u,c,e");
            }
            have_header = true;
            continue;
        }
        if (cells.size() != 5) format_error(line_no, "expected 5 columns");
        double values[5];
        for (std::size_t i = 0; i < 5; ++i) {
            const std::string_view cell = trim(cells[i]);
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), values[i]);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
                format_error(line_no, "non-numeric cell '" + std::string(cell) + "'");
            }
        }
        table.t.push_back(values[0]);
        table.r.push_back(values[1]);
        table.u.push_back(values[2]);
        table.c.push_back(values[3]);
        table.e.push_back(values[4]);
    }
    if (!have_header) format_error(line_no, "missing header t,r,u,c,e");
    if (table.t.empty()) format_error(line_no, "no data rows");
    if (table.t.size() >= 2 && !(table.step() > 0.0)) format_error(3, "time column is not increasing");
    return table;
}

}  // namespace fopid::csv
