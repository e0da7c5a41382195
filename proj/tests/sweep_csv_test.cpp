#include "keycap/sweep_csv.hpp"

#include <clocale>
#include <sstream>

#include <gtest/gtest.h>

#include "keycap/errors.hpp"

using namespace keycap;

TEST(FormatSignificant, NineDigits) {
    EXPECT_EQ(format_significant(1.0), "1");
    EXPECT_EQ(format_significant(0.1), "0.1");
    EXPECT_EQ(format_significant(1.3219280948873626), "1.32192809");
    EXPECT_EQ(format_significant(1234567891.0), "1.23456789e+09");
    EXPECT_EQ(format_significant(-7.540114865811631e-08), "-7.54011487e-08");
}

TEST(FormatSignificant, IgnoresGlobalLocale) {
    // de_DE may be missing from the image; only check when it can be installed.
    if (std::setlocale(LC_ALL, "de_DE.UTF-8") != nullptr) {
        EXPECT_EQ(format_significant(0.5), "0.5");
        std::setlocale(LC_ALL, "C");
    }
    EXPECT_EQ(format_significant(12345.5), "12345.5");
}

TEST(SweepCsv, HeaderAndRowCount) {
    std::vector<SweepRow> rows{{0.5, -1.0, 0.0, 1.0, 1.0, 0.0}, {0.9, 1.32192809, 1.32192809, 1.0, 1.0, 1.47393119}};
    std::ostringstream out;
    write_sweep_csv(out, rows);
    const std::string text = out.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "eta,lower_rc,rate_opt,eta_d_star,gamma_star,upper_phi");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_NE(text.find("0.9,1.32192809,1.32192809,1,1,1.47393119\n"), std::string::npos);
}

TEST(SweepCsv, ParseRoundTripWithinWrittenPrecision) {
    std::vector<SweepRow> rows;
    for (int k = 1; k < 40; ++k) {
        const double x = 0.0137 * k;
        rows.push_back({x, std::log(x), -x * x * 1e3, 1.0 / (1.0 + x), std::exp(5.0 * x), x / 3.0});
    }
    std::stringstream buf;
    write_sweep_csv(buf, rows);
    const auto parsed = read_sweep_csv(buf);
    ASSERT_EQ(parsed.size(), rows.size());
    auto close = [](double a, double b) { return std::abs(a - b) <= 5e-12 * std::abs(b); };
    for (std::size_t k = 0; k < rows.size(); ++k) {
        EXPECT_TRUE(close(parsed[k].eta, rows[k].eta));
        EXPECT_TRUE(close(parsed[k].lower_rc, rows[k].lower_rc));
        EXPECT_TRUE(close(parsed[k].r_opt, rows[k].r_opt));
        EXPECT_TRUE(close(parsed[k].eta_d_star, rows[k].eta_d_star));
        EXPECT_TRUE(close(parsed[k].gamma_star, rows[k].gamma_star));
        EXPECT_TRUE(close(parsed[k].upper_phi, rows[k].upper_phi));
    }
}

TEST(SweepCsv, RejectsMalformed) {
    std::istringstream bad_header("eta,lower\n0.5,1\n");
    EXPECT_THROW(read_sweep_csv(bad_header), UsageError);
    std::istringstream short_row(std::string(kSweepCsvHeader) + "\n0.5,1,2\n");
    EXPECT_THROW(read_sweep_csv(short_row), UsageError);
    std::istringstream junk(std::string(kSweepCsvHeader) + "\n0.5,1,2,x,4,5\n");
    EXPECT_THROW(read_sweep_csv(junk), UsageError);
}
