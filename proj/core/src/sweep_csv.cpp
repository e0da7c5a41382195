#include "keycap/sweep_csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

#include "keycap/errors.hpp"

namespace keycap {
namespace {

double parse_field(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw UsageError("sweep csv line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::string format_significant(double value, int digits) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, digits);
    if (ec != std::errc()) throw UsageError("format_significant: value does not fit");
    return std::string(buf.data(), ptr);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        for (double v : {r.eta, r.lower_rc, r.r_opt, r.eta_d_star, r.gamma_star}) {
            out << format_significant(v, kCsvDigits) << ',';
        }
        out << format_significant(r.upper_phi, kCsvDigits) << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader) throw UsageError("sweep csv: missing or wrong header");

    std::vector<SweepRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::array<double, 6> values{};
        std::size_t field = 0;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            if (field >= values.size()) throw UsageError("sweep csv line " + std::to_string(line_no) + ": too many fields");
            values[field++] = parse_field(rest.substr(0, comma), line_no);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (field != values.size()) throw UsageError("sweep csv line " + std::to_string(line_no) + ": expected 6 fields");
        rows.push_back({values[0], values[1], values[2], values[3], values[4], values[5]});
    }
    return rows;
}

}  // namespace keycap
