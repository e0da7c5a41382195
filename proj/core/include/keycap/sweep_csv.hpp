#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "keycap/optimizer.hpp"

namespace keycap {

inline constexpr std::string_view kSweepCsvHeader = "eta,lower_rc,rate_opt,eta_d_star,gamma_star,upper_phi";

/// Digits written per CSV field.
inline constexpr int kCsvDigits = 12;

/// Shortest-form decimal with the given significant digits; independent of the global locale.
std::string format_significant(double value, int digits = 9);

/// Header line then one line per row, each terminated by '\n'.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Parses what write_sweep_csv() produced. Throws UsageError on a bad header,
/// wrong field count, or unparseable number.
std::vector<SweepRow> read_sweep_csv(std::istream& in);

}  // namespace keycap
