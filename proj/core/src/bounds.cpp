#include "keycap/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "keycap/errors.hpp"
#include "keycap/gaussian.hpp"

namespace keycap {
namespace {

constexpr double kThresholdBand = 1e-12;

void check_eta(double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("transmissivity eta must lie in (0, 1)");
}

}  // namespace

ChannelParams ChannelParams::from_omega(double eta, double omega) {
    check_eta(eta);
    if (!std::isfinite(omega) || omega < 1.0) throw DomainError("thermal variance omega must be >= 1");
    return ChannelParams(eta, omega);
}

ChannelParams ChannelParams::from_nbar(double eta, double nbar) {
    if (!std::isfinite(nbar) || nbar < 0.0) throw DomainError("mean thermal photon number must be >= 0");
    return from_omega(eta, 2.0 * nbar + 1.0);
}

double lossy_capacity(double eta) {
    check_eta(eta);
    return -std::log2(1.0 - eta);
}

double reverse_coherent_lb(const ChannelParams& ch) {
    return -std::log2(1.0 - ch.eta()) - entropy_h(ch.omega());
}

double entanglement_flux_ub(const ChannelParams& ch) {
    const double eta = ch.eta();
    const double nbar = ch.nbar();
    // nbar < eta / (1 - eta), rearranged to avoid the division.
    if (!(nbar * (1.0 - eta) < eta - kThresholdBand)) return 0.0;
    return std::max(0.0, -std::log2(1.0 - eta) - nbar * std::log2(eta) - entropy_h(ch.omega()));
}

BoundSet bound_set(const ChannelParams& ch) {
    BoundSet out{reverse_coherent_lb(ch), entanglement_flux_ub(ch), std::nullopt};
    if (ch.omega() == 1.0) out.lossy_capacity = lossy_capacity(ch.eta());
    return out;
}

}  // namespace keycap
