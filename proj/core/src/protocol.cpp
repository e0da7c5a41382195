#include "keycap/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "keycap/errors.hpp"

namespace keycap {
namespace {

void check_modulation(double mu, bool strict) {
    const bool ok = strict ? mu > 1.0 : mu >= 1.0;
    if (!ok || !std::isfinite(mu)) {
        throw DomainError(std::string("modulation variance mu must be ") + (strict ? "> 1" : ">= 1"));
    }
    if (mu > kMaxModulation) throw DomainError("modulation variance mu exceeds the supported maximum of 1e8");
}

// eta_d omega + (1 - eta_d)(1 - eta) gamma; shared by the asymptotic formulas.
double detector_mixture(const ChannelParams& ch, const DetectorParams& det) {
    return det.eta_d() * ch.omega() + (1.0 - det.eta_d()) * (1.0 - ch.eta()) * det.gamma();
}

}  // namespace

DetectorParams::DetectorParams(double eta_d, double gamma) : eta_d_(eta_d), gamma_(gamma) {
    if (!(eta_d > 0.0 && eta_d <= 1.0)) throw DomainError("detector transmissivity eta_d must lie in (0, 1]");
    if (!std::isfinite(gamma) || gamma < 1.0) throw DomainError("trusted noise variance gamma must be >= 1");
}

CovarianceMatrix build_output_cm(double mu, const ChannelParams& ch, const DetectorParams& det) {
    check_modulation(mu, /*strict=*/false);

    // Input slots: a, A | e, E | v.
    const auto input = direct_sum({tmsv_cm(mu), tmsv_cm(ch.omega()), thermal_cm(det.gamma())});
    // Rearranged to a, e, E, A, v.
    const auto rearranged = reorder_modes(input, {0, 2, 3, 1, 4});

    // Channel: slot 3 (A) becomes Bob's B, slot 2 (E) becomes Eve's E'.
    // Detector: slot 3 (B) becomes +, slot 4 (v) becomes -.
    const auto channel = beam_splitter(ch.eta(), 3, 2, 5);
    const auto detector = beam_splitter(det.eta_d(), 3, 4, 5);
    return apply_symplectic(detector * channel, rearranged);
}

double v_bob(double mu, const ChannelParams& ch, const DetectorParams& det) {
    return det.eta_d() * (ch.eta() * mu + (1.0 - ch.eta()) * ch.omega()) + (1.0 - det.eta_d()) * det.gamma();
}

double mutual_information_finite(double mu, const ChannelParams& ch, const DetectorParams& det) {
    check_modulation(mu, /*strict=*/true);
    return 0.5 * std::log2(v_bob(mu, ch, det) / v_bob(1.0 / mu, ch, det));
}

HolevoTerms holevo_finite(double mu, const ChannelParams& ch, const DetectorParams& det, Quadrature quadrature) {
    check_modulation(mu, /*strict=*/true);
    const auto output = build_output_cm(mu, ch, det);

    const auto eve = partial_trace(output, {kEveIdler, kEveOutput});
    const auto eve_bob = partial_trace(output, {kEveIdler, kEveOutput, kBobPlus});
    const auto eve_given_bob = homodyne_condition(eve_bob, 2, quadrature);

    HolevoTerms out;
    out.spectrum_total = symplectic_eigenvalues(eve);
    out.spectrum_cond = symplectic_eigenvalues(eve_given_bob);
    out.s_total = von_neumann_entropy(out.spectrum_total);
    out.s_cond = von_neumann_entropy(out.spectrum_cond);
    out.chi = out.s_total - out.s_cond;
    return out;
}

RateReport rate_finite(double mu, const ChannelParams& ch, const DetectorParams& det, Quadrature quadrature) {
    auto holevo = holevo_finite(mu, ch, det, quadrature);

    RateReport report;
    report.v_b = v_bob(mu, ch, det);
    report.v_b_given_a = v_bob(1.0 / mu, ch, det);
    report.i_ab = mutual_information_finite(mu, ch, det);
    report.chi_eb = holevo.chi;
    report.rate = report.i_ab - report.chi_eb;
    report.s_total = holevo.s_total;
    report.s_cond = holevo.s_cond;
    report.spectrum_total = std::move(holevo.spectrum_total);
    report.spectrum_cond = std::move(holevo.spectrum_cond);
    return report;
}

double conditional_nu2_asymptotic(const ChannelParams& ch, const DetectorParams& det) {
    const double eta = ch.eta();
    const double omega = ch.omega();
    const double eta_d = det.eta_d();
    const double gamma = det.gamma();
    const double num = omega * (eta_d + (1.0 - eta) * (1.0 - eta_d) * omega * gamma);
    const double den = eta_d * omega + (1.0 - eta) * (1.0 - eta_d) * gamma;
    // num - den = (1 - eta)(1 - eta_d) gamma (omega^2 - 1) >= 0; clamp rounding.
    return std::max(1.0, std::sqrt(num / den));
}

ConditionalSpectrum conditional_spectrum_asymptotic(const ChannelParams& ch, const DetectorParams& det, double mu) {
    check_modulation(mu, /*strict=*/true);
    const double eta = ch.eta();
    const double nu1 = std::sqrt((1.0 - eta) * detector_mixture(ch, det) * mu / (eta * det.eta_d()));
    return {nu1, conditional_nu2_asymptotic(ch, det)};
}

double rate_asymptotic(const ChannelParams& ch, const DetectorParams& det) {
    const double eta = ch.eta();
    const double omega = ch.omega();
    const double eta_d = det.eta_d();
    const double gamma = det.gamma();
    const double num = detector_mixture(ch, det);
    const double den = (1.0 - eta) * (eta_d * (1.0 - eta) * omega + (1.0 - eta_d) * gamma);
    return 0.5 * std::log2(num / den) + entropy_h(conditional_nu2_asymptotic(ch, det)) - entropy_h(omega);
}

double holevo_asymptotic(const ChannelParams& ch, const DetectorParams& det, double mu) {
    check_modulation(mu, /*strict=*/true);
    const double eta = ch.eta();
    const double log_term = 0.5 * std::log2((1.0 - eta) * eta * det.eta_d() * mu / detector_mixture(ch, det));
    return entropy_h(ch.omega()) - entropy_h(conditional_nu2_asymptotic(ch, det)) + log_term;
}

double mutual_information_asymptotic(const ChannelParams& ch, const DetectorParams& det, double mu) {
    check_modulation(mu, /*strict=*/true);
    const double eta = ch.eta();
    const double eta_d = det.eta_d();
    return 0.5 * std::log2(eta_d * eta * mu /
                           (eta_d * (1.0 - eta) * ch.omega() + (1.0 - eta_d) * det.gamma()));
}

}  // namespace keycap
