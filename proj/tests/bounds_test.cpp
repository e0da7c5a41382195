#include "keycap/bounds.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "keycap/errors.hpp"
#include "keycap/gaussian.hpp"

using namespace keycap;

TEST(ChannelParams, OmegaAndNbarAgree) {
    const auto a = ChannelParams::from_nbar(0.7, 1.0);
    EXPECT_EQ(a.omega(), 3.0);
    EXPECT_EQ(a.nbar(), 1.0);
    const auto b = ChannelParams::from_omega(0.7, 4.0);
    EXPECT_EQ(b.nbar(), 1.5);
}

TEST(ChannelParams, DomainChecks) {
    EXPECT_THROW(ChannelParams::from_omega(0.0, 3.0), DomainError);
    EXPECT_THROW(ChannelParams::from_omega(1.0, 3.0), DomainError);
    EXPECT_THROW(ChannelParams::from_omega(1.2, 3.0), DomainError);
    EXPECT_THROW(ChannelParams::from_omega(0.5, 0.9), DomainError);
    EXPECT_THROW(ChannelParams::from_nbar(0.5, -0.1), DomainError);
}

TEST(LossyCapacity, Values) {
    EXPECT_DOUBLE_EQ(lossy_capacity(0.5), 1.0);
    EXPECT_DOUBLE_EQ(lossy_capacity(0.75), 2.0);
    EXPECT_THROW(lossy_capacity(0.0), DomainError);
    EXPECT_THROW(lossy_capacity(1.0), DomainError);
}

TEST(LossyCapacity, HighLossScaling) {
    // -log2(1 - eta) ~ eta log2(e), about 1.44 eta.
    for (double eta : {1e-3, 1e-5, 1e-7}) {
        EXPECT_NEAR(lossy_capacity(eta) / eta, std::log2(std::exp(1.0)), 1e-2 * eta / 1e-3);
        EXPECT_GT(lossy_capacity(eta), 0.0);
    }
    EXPECT_NEAR(std::log2(std::exp(1.0)), 1.44, 0.005);
}

TEST(ReverseCoherent, Values) {
    EXPECT_DOUBLE_EQ(reverse_coherent_lb(ChannelParams::from_omega(0.5, 1.0)), 1.0);
    EXPECT_NEAR(reverse_coherent_lb(ChannelParams::from_omega(0.75, 3.0)), 0.0, 1e-15);
    EXPECT_NEAR(reverse_coherent_lb(ChannelParams::from_omega(0.9, 3.0)), std::log2(10.0) - 2.0, 1e-14);
    EXPECT_NEAR(reverse_coherent_lb(ChannelParams::from_omega(0.9, 3.0)), 1.3219, 1e-4);
}

TEST(ReverseCoherent, MonotoneInEtaAndOmega) {
    for (double omega : {1.0, 1.5, 3.0, 9.0}) {
        double prev = -1e300;
        for (int k = 1; k < 100; ++k) {
            const double v = reverse_coherent_lb(ChannelParams::from_omega(0.01 * k, omega));
            ASSERT_GT(v, prev);
            prev = v;
        }
    }
    for (double eta : {0.1, 0.5, 0.9}) {
        double prev = 1e300;
        for (int k = 0; k < 100; ++k) {
            const double v = reverse_coherent_lb(ChannelParams::from_omega(eta, 1.0 + 0.1 * k));
            ASSERT_LT(v, prev);
            prev = v;
        }
    }
}

TEST(EntanglementFlux, Values) {
    EXPECT_EQ(entanglement_flux_ub(ChannelParams::from_omega(0.5, 3.0)), 0.0);
    EXPECT_NEAR(entanglement_flux_ub(ChannelParams::from_omega(0.8, 3.0)), -std::log2(0.16) - 2.0, 1e-14);
    EXPECT_NEAR(entanglement_flux_ub(ChannelParams::from_omega(0.8, 3.0)), 0.6439, 1e-4);
    EXPECT_NEAR(entanglement_flux_ub(ChannelParams::from_omega(0.9, 3.0)), 1.4739, 1e-4);
    EXPECT_EQ(entanglement_flux_ub(ChannelParams::from_omega(0.3, 3.0)), 0.0);
}

TEST(EntanglementFlux, ContinuousAtThreshold) {
    // nbar = eta / (1 - eta)  <=>  eta = nbar / (1 + nbar).
    for (double nbar : {0.25, 1.0, 3.0}) {
        const double eta_star = nbar / (1.0 + nbar);
        for (double offset : {1e-6, 1e-8, 1e-10}) {
            const double above = entanglement_flux_ub(ChannelParams::from_nbar(eta_star + offset, nbar));
            const double below = entanglement_flux_ub(ChannelParams::from_nbar(eta_star - offset, nbar));
            EXPECT_EQ(below, 0.0);
            EXPECT_GE(above, 0.0);
            EXPECT_LT(above, 1e-9 + 1e3 * offset);
        }
        EXPECT_LT(entanglement_flux_ub(ChannelParams::from_nbar(eta_star, nbar)), 1e-9);
    }
}

TEST(Bounds, PureLossCollapse) {
    for (int k = 1; k < 100; ++k) {
        const double eta = 0.01 * k;
        const auto b = bound_set(ChannelParams::from_omega(eta, 1.0));
        ASSERT_TRUE(b.lossy_capacity.has_value());
        EXPECT_NEAR(b.lower_rc, *b.lossy_capacity, 1e-12);
        EXPECT_NEAR(b.upper_phi, *b.lossy_capacity, 1e-12);
    }
}

TEST(Bounds, SandwichOnDenseGrid) {
    for (int i = 1; i < 200; ++i) {
        for (int j = 0; j < 60; ++j) {
            const auto ch = ChannelParams::from_omega(0.005 * i, 1.0 + 0.25 * j);
            const auto b = bound_set(ch);
            ASSERT_LE(std::max(0.0, b.lower_rc), b.upper_phi + 1e-9) << ch.eta() << " " << ch.omega();
            ASSERT_GE(b.upper_phi, 0.0);
        }
    }
}

TEST(Bounds, SetExamples) {
    const auto b = bound_set(ChannelParams::from_omega(0.9, 3.0));
    EXPECT_NEAR(b.lower_rc, 1.3219, 1e-4);
    EXPECT_NEAR(b.upper_phi, 1.4739, 1e-4);
    EXPECT_FALSE(b.lossy_capacity.has_value());

    const auto pure = bound_set(ChannelParams::from_omega(0.5, 1.0));
    EXPECT_EQ(pure.lower_rc, 1.0);
    EXPECT_EQ(pure.upper_phi, 1.0);
    EXPECT_EQ(*pure.lossy_capacity, 1.0);

    const auto lossy = bound_set(ChannelParams::from_omega(0.3, 3.0));
    EXPECT_LT(lossy.lower_rc, 0.0);
    EXPECT_EQ(lossy.upper_phi, 0.0);
}
