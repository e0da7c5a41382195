#pragma once

// Trusted-noise Gaussian key distribution over a thermal-loss channel.
//
// Alice keeps mode a of a TMSV(mu) and sends mode A through the channel.
// The channel is dilated into an entangling cloner: Eve holds a TMSV(omega)
// on modes (e, E), and a beam splitter of transmissivity eta mixes A with E,
// producing Bob's mode B and Eve's output E'. Bob mixes B with a trusted
// thermal mode v (variance gamma) on a beam splitter of transmissivity eta_d
// and homodynes output "+"; output "-" is discarded.
//
// Two routes to the key rate are provided: a finite-mu simulation of the
// five-mode covariance matrix, and the closed-form mu -> infinity rate.
// All logarithms are base 2.

#include <utility>

#include "keycap/bounds.hpp"
#include "keycap/gaussian.hpp"

namespace keycap {

/// Largest modulation variance accepted by the finite-mu simulation; above
/// this the Schur complements lose too many digits in double precision.
inline constexpr double kMaxModulation = 1e8;

/// Bob's detector: beam splitter transmissivity eta_d and trusted thermal
/// noise variance gamma.
class DetectorParams {
public:
    /// Throws DomainError unless 0 < eta_d <= 1 and gamma >= 1.
    DetectorParams(double eta_d, double gamma);

    double eta_d() const { return eta_d_; }
    double gamma() const { return gamma_; }

private:
    double eta_d_;
    double gamma_;
};

/// Mode slots of the five-mode output state returned by build_output_cm().
enum OutputMode : int {
    kAliceMemory = 0,   // a
    kEveIdler = 1,      // e
    kEveOutput = 2,     // E'
    kBobPlus = 3,       // +, homodyned
    kBobMinus = 4,      // -, discarded
};

struct RateReport {
    double i_ab = 0.0;
    double chi_eb = 0.0;
    double rate = 0.0;                     // i_ab - chi_eb
    double s_total = 0.0;                  // entropy of Eve's (e, E')
    double s_cond = 0.0;                   // entropy of (e, E') conditioned on Bob's homodyne
    SymplecticSpectrum spectrum_total;     // {nu1, nu2}
    SymplecticSpectrum spectrum_cond;      // {nu_bar_1, nu_bar_2}, ascending
    double v_b = 0.0;
    double v_b_given_a = 0.0;
};

struct HolevoTerms {
    double chi = 0.0;
    double s_total = 0.0;
    double s_cond = 0.0;
    SymplecticSpectrum spectrum_total;
    SymplecticSpectrum spectrum_cond;
};

/// Asymptotic conditional spectrum. nu_bar_1 grows like sqrt(mu); nu_bar_2
/// does not depend on mu.
struct ConditionalSpectrum {
    double nu_bar_1 = 0.0;
    double nu_bar_2 = 0.0;
};

/// Five-mode covariance matrix in slot order (a, e, E', +, -).
CovarianceMatrix build_output_cm(double mu, const ChannelParams& ch, const DetectorParams& det);

/// Variance of Bob's homodyned mode: eta_d [eta mu + (1 - eta) omega] + (1 - eta_d) gamma.
double v_bob(double mu, const ChannelParams& ch, const DetectorParams& det);

/// I_AB = 1/2 log2[V(mu) / V(1/mu)], with V = v_bob. Requires mu > 1.
double mutual_information_finite(double mu, const ChannelParams& ch, const DetectorParams& det);

/// Eve's Holevo information on Bob's outcomes from the finite-mu state.
HolevoTerms holevo_finite(double mu, const ChannelParams& ch, const DetectorParams& det,
                          Quadrature quadrature = Quadrature::q);

RateReport rate_finite(double mu, const ChannelParams& ch, const DetectorParams& det,
                       Quadrature quadrature = Quadrature::q);

/// Closed-form asymptotic key rate R(eta, omega, eta_d, gamma).
double rate_asymptotic(const ChannelParams& ch, const DetectorParams& det);

/// nu_bar_2 of the asymptotic conditional spectrum (independent of mu).
double conditional_nu2_asymptotic(const ChannelParams& ch, const DetectorParams& det);

ConditionalSpectrum conditional_spectrum_asymptotic(const ChannelParams& ch, const DetectorParams& det,
                                                    double mu);

/// Large-mu form of Eve's Holevo information.
double holevo_asymptotic(const ChannelParams& ch, const DetectorParams& det, double mu);

/// Large-mu form of I_AB: 1/2 log2[eta_d eta mu / (eta_d (1 - eta) omega + (1 - eta_d) gamma)].
double mutual_information_asymptotic(const ChannelParams& ch, const DetectorParams& det, double mu);

}  // namespace keycap
