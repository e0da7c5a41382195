#include "keycap/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "keycap/errors.hpp"

namespace keycap {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kPatternReach = 4.0;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

// A candidate in search coordinates: x = eta_d, y = ln(gamma).
struct Point {
    double x = 0.0;
    double y = 0.0;
    double f = 0.0;
};

// a ranks above b: higher objective; ties go to larger eta_d, then smaller gamma.
bool ranks_above(const Point& a, const Point& b) {
    if (a.f > b.f + kTieTolerance) return true;
    if (a.f < b.f - kTieTolerance) return false;
    if (a.x != b.x) return a.x > b.x;
    return a.y < b.y;
}

class Objective {
public:
    Objective(const ChannelParams& ch, const SearchConfig& config)
        : ch_(ch), x_lo_(config.eta_d_min), x_hi_(config.eta_d_max),
          y_lo_(std::log(config.gamma_min)), y_hi_(std::log(config.gamma_max)) {}

    Point at(double x, double y) {
        x = std::clamp(x, x_lo_, x_hi_);
        y = std::clamp(y, y_lo_, y_hi_);
        ++evaluations_;
        // Keep the box corners exact so that eta_d = 1 and gamma = 1 are reachable.
        const double gamma = (y == y_lo_) ? std::exp(y_lo_) : std::exp(y);
        return {x, y, rate_asymptotic(ch_, DetectorParams(x, gamma))};
    }

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    double y_lo() const { return y_lo_; }
    double y_hi() const { return y_hi_; }
    int evaluations() const { return evaluations_; }

private:
    ChannelParams ch_;
    double x_lo_, x_hi_, y_lo_, y_hi_;
    int evaluations_ = 0;
};

// Golden-section maximization of f(base + t * dir) over t in [t_lo, t_hi].
// Returns the best of the final interior points and the two segment ends.
Point golden_line_search(Objective& obj, const Point& base, double dx, double dy, double t_lo, double t_hi,
                         double t_tol) {
    auto eval = [&](double t) { return obj.at(base.x + t * dx, base.y + t * dy); };

    Point best = eval(t_lo);
    if (const Point hi = eval(t_hi); ranks_above(hi, best)) best = hi;
    if (!(t_hi - t_lo > t_tol)) return best;

    double a = t_lo;
    double b = t_hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    Point fc = eval(c);
    Point fd = eval(d);
    while (b - a > t_tol) {
        if (fc.f > fd.f) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval(d);
        }
    }
    if (ranks_above(fc, best)) best = fc;
    if (ranks_above(fd, best)) best = fd;
    return best;
}

// Largest t in [0, reach] with base + t * (dx, dy) inside the box.
double max_step_in_box(const Objective& obj, const Point& base, double dx, double dy, double reach) {
    double t = reach;
    auto limit = [&t](double pos, double step, double lo, double hi) {
        if (step > 0.0) t = std::min(t, (hi - pos) / step);
        if (step < 0.0) t = std::min(t, (lo - pos) / step);
    };
    limit(base.x, dx, obj.x_lo(), obj.x_hi());
    limit(base.y, dy, obj.y_lo(), obj.y_hi());
    return std::max(0.0, t);
}

}  // namespace

void SearchConfig::validate() const {
    if (eta_d_points < 2 || gamma_points < 2) throw UsageError("search grid needs at least 2 points per axis");
    if (!(eta_d_min > 0.0 && eta_d_min < eta_d_max && eta_d_max <= 1.0)) {
        throw UsageError("eta_d search box must satisfy 0 < eta_d_min < eta_d_max <= 1");
    }
    if (!(gamma_min >= 1.0 && gamma_min < gamma_max && std::isfinite(gamma_max))) {
        throw UsageError("gamma search box must satisfy 1 <= gamma_min < gamma_max < inf");
    }
    if (!(tolerance > 0.0)) throw UsageError("search tolerance must be positive");
    if (max_sweeps < 0) throw UsageError("max_sweeps must be non-negative");
}

OptimizationResult maximize_rate(const ChannelParams& ch, const SearchConfig& config) {
    config.validate();
    Objective obj(ch, config);

    // Stage one: coarse grid plus the reference detectors.
    const double hx = (obj.x_hi() - obj.x_lo()) / (config.eta_d_points - 1);
    const double hy = (obj.y_hi() - obj.y_lo()) / (config.gamma_points - 1);
    Point best = obj.at(obj.x_hi(), obj.y_lo());
    for (int i = 0; i < config.eta_d_points; ++i) {
        const double x = (i == config.eta_d_points - 1) ? obj.x_hi() : obj.x_lo() + i * hx;
        for (int j = 0; j < config.gamma_points; ++j) {
            const double y = (j == config.gamma_points - 1) ? obj.y_hi() : obj.y_lo() + j * hy;
            const Point p = obj.at(x, y);
            if (ranks_above(p, best)) best = p;
        }
    }
    for (double seed_eta_d : {1.0, 0.5}) {
        if (seed_eta_d < obj.x_lo() || seed_eta_d > obj.x_hi()) continue;
        const Point p = obj.at(seed_eta_d, obj.y_lo());
        if (ranks_above(p, best)) best = p;
    }

    // Stage two: cyclic coordinate golden sections with a pattern move.
    const Point anchor = best;
    auto accept = [&](const Point& p) {
        if (ranks_above(p, best) && p.f >= anchor.f) best = p;
    };
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
        const Point start = best;

        accept(golden_line_search(obj, best, 1.0, 0.0, std::max(obj.x_lo(), best.x - hx) - best.x,
                                  std::min(obj.x_hi(), best.x + hx) - best.x, config.tolerance));
        accept(golden_line_search(obj, best, 0.0, 1.0, std::max(obj.y_lo(), best.y - hy) - best.y,
                                  std::min(obj.y_hi(), best.y + hy) - best.y, config.tolerance));

        const double dx = best.x - start.x;
        const double dy = best.y - start.y;
        const double move = std::max(std::abs(dx), std::abs(dy));
        if (move < config.tolerance) break;

        const double reach = max_step_in_box(obj, best, dx, dy, kPatternReach);
        if (reach > 0.0) accept(golden_line_search(obj, best, dx, dy, 0.0, reach, config.tolerance / move));
    }

    OptimizationResult result;
    result.r_max_raw = best.f;
    result.r_max = std::max(0.0, best.f);
    result.eta_d_star = best.x;
    result.gamma_star = (best.y == obj.y_lo()) ? config.gamma_min : std::exp(best.y);
    result.eta_d_on_boundary = best.x - obj.x_lo() <= config.tolerance || obj.x_hi() - best.x <= config.tolerance;
    result.gamma_on_boundary = best.y - obj.y_lo() <= config.tolerance || obj.y_hi() - best.y <= config.tolerance;
    result.evaluations = obj.evaluations();
    return result;
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
    if (steps < 2) throw UsageError("grid needs at least 2 steps");
    if (!(lo < hi)) throw UsageError("grid bounds must satisfy lo < hi");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double h = (hi - lo) / (steps - 1);
    for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = lo + i * h;
    grid.back() = hi;
    return grid;
}

std::vector<SweepRow> sweep(std::span<const double> etas, double omega, const std::optional<DetectorParams>& fixed,
                            const SearchConfig& config, unsigned threads) {
    std::vector<ChannelParams> channels;
    channels.reserve(etas.size());
    for (double eta : etas) channels.push_back(ChannelParams::from_omega(eta, omega));
    if (!std::is_sorted(etas.begin(), etas.end())) throw UsageError("sweep: eta values must be sorted");
    if (!fixed) config.validate();

    std::vector<SweepRow> rows(etas.size());
    auto compute = [&](std::size_t k) {
        const auto& ch = channels[k];
        SweepRow& row = rows[k];
        row.eta = ch.eta();
        row.lower_rc = reverse_coherent_lb(ch);
        row.upper_phi = entanglement_flux_ub(ch);
        if (fixed) {
            row.r_opt = rate_asymptotic(ch, *fixed);
            row.eta_d_star = fixed->eta_d();
            row.gamma_star = fixed->gamma();
        } else {
            const auto opt = maximize_rate(ch, config);
            row.r_opt = opt.r_max_raw;
            row.eta_d_star = opt.eta_d_star;
            row.gamma_star = opt.gamma_star;
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, rows.size())));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < rows.size(); k = next++) {
            try {
                compute(k);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace keycap
