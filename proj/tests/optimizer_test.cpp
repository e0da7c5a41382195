#include "keycap/optimizer.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "keycap/errors.hpp"
#include "test_support.hpp"

using namespace keycap;

namespace {

ChannelParams channel(double eta, double omega) { return ChannelParams::from_omega(eta, omega); }

}  // namespace

TEST(SearchConfig, Validation) {
    EXPECT_NO_THROW(SearchConfig{}.validate());
    SearchConfig c;
    c.gamma_max = 0.5;
    EXPECT_THROW(c.validate(), UsageError);
    c = {};
    c.eta_d_min = 0.0;
    EXPECT_THROW(c.validate(), UsageError);
    c = {};
    c.eta_d_points = 1;
    EXPECT_THROW(c.validate(), UsageError);
    c = {};
    c.tolerance = 0.0;
    EXPECT_THROW(c.validate(), UsageError);
    EXPECT_THROW(maximize_rate(channel(0.5, 2.0), c), UsageError);
}

TEST(MaximizeRate, PureLossIsTight) {
    const auto r = maximize_rate(channel(0.9, 1.0));
    EXPECT_NEAR(r.r_max, std::log2(10.0), 1e-4);
    EXPECT_NEAR(r.r_max, 3.3219, 1e-4);
    EXPECT_EQ(r.eta_d_star, 1.0);
    EXPECT_EQ(r.gamma_star, 1.0);
    EXPECT_TRUE(r.eta_d_on_boundary);
}

TEST(MaximizeRate, ZeroBelowFluxThreshold) {
    const auto r = maximize_rate(channel(0.5, 3.0));
    EXPECT_LE(r.r_max_raw, 0.0);
    EXPECT_EQ(r.r_max, 0.0);
}

TEST(MaximizeRate, StrictImprovementInsideInsetRegion) {
    // Regression constants produced by this optimizer (omega = 3).
    const auto ch = channel(0.8, 3.0);
    const auto r = maximize_rate(ch);
    const double lower = reverse_coherent_lb(ch);
    EXPECT_GT(r.r_max - lower, 3.8e-3);
    EXPECT_NEAR(r.r_max, 0.325818409, 1e-8);
    EXPECT_LE(r.r_max, entanglement_flux_ub(ch));
    EXPECT_LT(r.eta_d_star, 1.0);
}

TEST(MaximizeRate, NoImprovementAtHighTransmissivity) {
    // For omega = 3 the trusted-noise optimum returns to eta_d = 1 once eta is
    // large; the reverse coherent information is then reproduced exactly.
    const auto ch = channel(0.95, 3.0);
    const auto r = maximize_rate(ch);
    EXPECT_NEAR(r.r_max, reverse_coherent_lb(ch), 1e-12);
    EXPECT_NEAR(r.r_max, 2.321928, 1e-6);
    EXPECT_EQ(r.eta_d_star, 1.0);
    EXPECT_EQ(r.gamma_star, 1.0);
}

TEST(MaximizeRate, AtLeastBruteForce) {
    for (double eta : {0.3, 0.6, 0.76, 0.8, 0.85, 0.9}) {
        for (double omega : {1.0, 2.0, 3.0, 6.0}) {
            const auto r = maximize_rate(channel(eta, omega));
            const double oracle = keycap::testing::brute_force_max_rate(eta, omega, 200, 200);
            EXPECT_GE(r.r_max_raw, oracle - 1e-9) << eta << " " << omega;
        }
    }
}

TEST(MaximizeRate, DominatesReferenceDetectors) {
    for (int i = 1; i <= 10; ++i) {
        for (double omega : {1.0, 3.0, 6.0}) {
            const auto ch = channel(0.095 * i, omega);
            const auto r = maximize_rate(ch);
            EXPECT_GE(r.r_max_raw, rate_asymptotic(ch, DetectorParams(1.0, 1.0)) - 1e-9);
            EXPECT_GE(r.r_max_raw, rate_asymptotic(ch, DetectorParams(0.5, 1.0)) - 1e-9);
        }
    }
}

TEST(MaximizeRate, RefinementNeverLosesToCoarseGrid) {
    for (double eta : {0.55, 0.78, 0.82}) {
        const auto ch = channel(eta, 3.0);
        SearchConfig coarse_only;
        coarse_only.max_sweeps = 0;
        const auto coarse = maximize_rate(ch, coarse_only);
        const auto refined = maximize_rate(ch);
        EXPECT_GE(refined.r_max_raw, coarse.r_max_raw);
    }
}

TEST(MaximizeRate, Deterministic) {
    const auto ch = channel(0.79, 3.0);
    const auto a = maximize_rate(ch);
    const auto b = maximize_rate(ch);
    EXPECT_EQ(a.r_max_raw, b.r_max_raw);
    EXPECT_EQ(a.eta_d_star, b.eta_d_star);
    EXPECT_EQ(a.gamma_star, b.gamma_star);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(MaximizeRate, ResultRecomputes) {
    const auto ch = channel(0.78, 3.0);
    const auto r = maximize_rate(ch);
    EXPECT_EQ(r.r_max_raw, rate_asymptotic(ch, DetectorParams(r.eta_d_star, r.gamma_star)));
    EXPECT_GT(r.evaluations, 64 * 64);
}

TEST(MaximizeRate, SandwichOnGrid) {
    for (int i = 1; i < 50; ++i) {
        for (double omega : {1.5, 3.0}) {
            const auto ch = channel(0.02 * i, omega);
            const auto r = maximize_rate(ch);
            EXPECT_LE(std::max(0.0, r.r_max_raw), entanglement_flux_ub(ch) + 1e-6) << ch.eta();
            EXPECT_GE(r.r_max, std::max(0.0, reverse_coherent_lb(ch)) - 1e-9);
        }
    }
}

TEST(LinearGrid, EndpointsAndErrors) {
    const auto g = linear_grid(0.01, 0.99, 99);
    ASSERT_EQ(g.size(), 99u);
    EXPECT_EQ(g.front(), 0.01);
    EXPECT_EQ(g.back(), 0.99);
    EXPECT_NEAR(g[49], 0.5, 1e-15);
    EXPECT_THROW(linear_grid(0.1, 0.2, 1), UsageError);
    EXPECT_THROW(linear_grid(0.2, 0.1, 5), UsageError);
}

TEST(Sweep, RowsInInputOrderAndFixedMode) {
    const auto etas = linear_grid(0.1, 0.9, 9);
    const auto rows = sweep(etas, 3.0, DetectorParams(1.0, 1.0));
    ASSERT_EQ(rows.size(), etas.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        EXPECT_EQ(rows[k].eta, etas[k]);
        EXPECT_NEAR(rows[k].r_opt, rows[k].lower_rc, 1e-12);
        EXPECT_EQ(rows[k].eta_d_star, 1.0);
    }
}

TEST(Sweep, ParallelMatchesSerial) {
    const auto etas = linear_grid(0.5, 0.95, 10);
    const auto serial = sweep(etas, 3.0, std::nullopt, {}, 1);
    const auto parallel = sweep(etas, 3.0, std::nullopt, {}, 4);
    for (std::size_t k = 0; k < etas.size(); ++k) {
        EXPECT_EQ(serial[k].r_opt, parallel[k].r_opt);
        EXPECT_EQ(serial[k].eta_d_star, parallel[k].eta_d_star);
        EXPECT_EQ(serial[k].gamma_star, parallel[k].gamma_star);
    }
}

TEST(Sweep, ThresholdAndSeparationAtOmegaThree) {
    const auto rows = sweep(linear_grid(0.5, 0.99, 50), 3.0, std::nullopt);
    bool separated = false;
    for (const auto& row : rows) {
        if (row.eta <= 0.5) EXPECT_EQ(row.upper_phi, 0.0);
        if (row.eta > 0.5) EXPECT_GT(row.upper_phi, 0.0);
        EXPECT_LE(std::max(0.0, row.lower_rc), std::max(0.0, row.r_opt) + 1e-9);
        EXPECT_LE(std::max(0.0, row.r_opt), row.upper_phi + 1e-6);
        if (row.eta > 0.75 && row.r_opt > row.lower_rc + 1e-4) separated = true;
    }
    EXPECT_TRUE(separated);
}

TEST(Sweep, PureLossColumnsCoincide) {
    for (const auto& row : sweep(linear_grid(0.05, 0.95, 19), 1.0, std::nullopt)) {
        EXPECT_NEAR(row.lower_rc, row.r_opt, 1e-4);
        EXPECT_NEAR(row.upper_phi, row.r_opt, 1e-4);
    }
}

TEST(Sweep, Errors) {
    const std::vector<double> unsorted{0.5, 0.3};
    EXPECT_THROW(sweep(unsorted, 3.0, std::nullopt), UsageError);
    const std::vector<double> out_of_range{0.5, 1.0};
    EXPECT_THROW(sweep(out_of_range, 3.0, std::nullopt), DomainError);
}
