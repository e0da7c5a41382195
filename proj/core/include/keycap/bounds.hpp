#pragma once

#include <optional>

namespace keycap {

/// Thermal-loss channel: a beam splitter of transmissivity eta mixing the
/// signal with an environmental thermal mode of variance omega = 2 nbar + 1.
class ChannelParams {
public:
    /// Throws DomainError unless 0 < eta < 1 and omega >= 1.
    static ChannelParams from_omega(double eta, double omega);
    /// Throws DomainError unless 0 < eta < 1 and nbar >= 0.
    static ChannelParams from_nbar(double eta, double nbar);

    double eta() const { return eta_; }
    double omega() const { return omega_; }
    double nbar() const { return 0.5 * (omega_ - 1.0); }

private:
    ChannelParams(double eta, double omega) : eta_(eta), omega_(omega) {}

    double eta_;
    double omega_;
};

struct BoundSet {
    double lower_rc;                        // reverse coherent information (raw, may be < 0)
    double upper_phi;                       // entanglement flux, >= 0
    std::optional<double> lossy_capacity;   // only for the pure-loss channel, omega == 1
};

/// -log2(1 - eta), the secret key capacity of the pure-loss channel.
double lossy_capacity(double eta);

/// -log2(1 - eta) - h(omega). Not clamped; negative values are returned as is.
double reverse_coherent_lb(const ChannelParams& ch);

/// -log2[(1 - eta) eta^nbar] - h(omega) when nbar < eta / (1 - eta), else 0.
/// Inputs within 1e-12 of the threshold take the zero branch.
double entanglement_flux_ub(const ChannelParams& ch);

BoundSet bound_set(const ChannelParams& ch);

}  // namespace keycap
