#pragma once

#include <optional>
#include <span>
#include <vector>

#include "keycap/bounds.hpp"
#include "keycap/protocol.hpp"

namespace keycap {

/// Search box and stopping rules for maximize_rate().
///
/// Defaults: 64 linearly spaced eta_d values on [1e-4, 1], 64 log-spaced gamma
/// values on [1, 1e3], golden-section refinement to a parameter tolerance of
/// 1e-8 (eta_d directly, gamma in natural-log units).
struct SearchConfig {
    int eta_d_points = 64;
    int gamma_points = 64;
    double eta_d_min = 1e-4;
    double eta_d_max = 1.0;
    double gamma_min = 1.0;
    double gamma_max = 1e3;
    double tolerance = 1e-8;
    int max_sweeps = 500;

    /// Throws UsageError on an empty or inverted box, too few grid points, or
    /// a non-positive tolerance.
    void validate() const;
};

struct OptimizationResult {
    double r_max = 0.0;       // max(0, r_max_raw)
    double r_max_raw = 0.0;
    double eta_d_star = 1.0;
    double gamma_star = 1.0;
    bool eta_d_on_boundary = false;
    bool gamma_on_boundary = false;
    int evaluations = 0;
};

/// Maximizes rate_asymptotic over the detector parameters (eta_d, gamma).
///
/// Stage one scans the coarse grid plus the two reference detectors
/// (1, 1) and (1/2, 1). Stage two runs cyclic golden-section line searches
/// along eta_d, along log gamma, and along the net displacement of each
/// cycle, accepting only moves that improve the objective.
///
/// Points whose objectives agree to within 1e-12 are ranked by larger eta_d,
/// then smaller gamma. The search is deterministic.
OptimizationResult maximize_rate(const ChannelParams& ch, const SearchConfig& config = {});

struct SweepRow {
    double eta = 0.0;
    double lower_rc = 0.0;     // raw reverse coherent information
    double r_opt = 0.0;        // raw rate: optimized, or at the fixed detector
    double eta_d_star = 1.0;
    double gamma_star = 1.0;
    double upper_phi = 0.0;
};

/// `steps` points evenly spaced on [lo, hi], endpoints included exactly.
std::vector<double> linear_grid(double lo, double hi, int steps);

/// One row per eta, in input order. With `fixed` set, r_opt is the rate at
/// that detector; otherwise it is maximize_rate(...).r_max_raw.
/// Rows are evaluated on up to `threads` worker threads (0 = hardware concurrency).
std::vector<SweepRow> sweep(std::span<const double> etas, double omega, const std::optional<DetectorParams>& fixed,
                            const SearchConfig& config = {}, unsigned threads = 0);

}  // namespace keycap
