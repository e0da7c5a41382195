#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "keycap/bounds.hpp"
#include "keycap/errors.hpp"
#include "keycap/gaussian.hpp"
#include "keycap/optimizer.hpp"
#include "keycap/protocol.hpp"
#include "keycap/sweep_csv.hpp"

namespace keycap::cli {
namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thermal noise given either as variance or as mean photon number.
struct NoiseOptions {
    std::optional<double> omega;
    std::optional<double> nbar;

    void add_to(CLI::App& app) {
        auto* o = app.add_option("--omega", omega, "Thermal noise variance omega >= 1");
        auto* n = app.add_option("--nbar", nbar, "Mean thermal photon number (omega = 2 nbar + 1)");
        o->excludes(n);
    }

    double resolve() const {
        if (omega.has_value() == nbar.has_value()) throw UsageError("exactly one of --omega or --nbar is required");
        if (nbar) {
            if (!(*nbar >= 0.0)) throw DomainError("--nbar must be >= 0");
            return 2.0 * *nbar + 1.0;
        }
        return *omega;
    }
};

std::string num(double v) { return format_significant(v); }
const char* flag(bool b) { return b ? "true" : "false"; }

void line(std::ostream& out, const char* key, const std::string& value) { out << key << ": " << value << '\n'; }

void print_bounds(std::ostream& out, const ChannelParams& ch) {
    const auto b = bound_set(ch);
    line(out, "eta", num(ch.eta()));
    line(out, "omega", num(ch.omega()));
    line(out, "nbar", num(ch.nbar()));
    line(out, "lower_rc", num(b.lower_rc));
    line(out, "upper_phi", num(b.upper_phi));
    if (b.lossy_capacity) line(out, "capacity", num(*b.lossy_capacity));
}

void print_rate(std::ostream& out, const ChannelParams& ch, const DetectorParams& det, std::optional<double> mu,
                Quadrature quadrature, bool verbose) {
    if (!mu) {
        line(out, "mode", "asymptotic");
        line(out, "rate", num(rate_asymptotic(ch, det)));
        if (verbose) line(out, "nu_bar_2", num(conditional_nu2_asymptotic(ch, det)));
        return;
    }
    const auto r = rate_finite(*mu, ch, det, quadrature);
    line(out, "mode", "finite");
    line(out, "mu", num(*mu));
    line(out, "i_ab", num(r.i_ab));
    line(out, "chi_eb", num(r.chi_eb));
    line(out, "rate", num(r.rate));
    if (verbose) {
        line(out, "v_b", num(r.v_b));
        line(out, "v_b_given_a", num(r.v_b_given_a));
        line(out, "s_total", num(r.s_total));
        line(out, "s_cond", num(r.s_cond));
        line(out, "nu_1", num(r.spectrum_total[0]));
        line(out, "nu_2", num(r.spectrum_total[1]));
        line(out, "nu_bar_low", num(r.spectrum_cond[0]));
        line(out, "nu_bar_high", num(r.spectrum_cond[1]));
        line(out, "rate_asymptotic", num(rate_asymptotic(ch, det)));
    }
}

void print_optimum(std::ostream& out, std::ostream& err, const OptimizationResult& r, const SearchConfig& config) {
    line(out, "r_max", num(r.r_max));
    line(out, "r_max_raw", num(r.r_max_raw));
    line(out, "eta_d_star", num(r.eta_d_star));
    line(out, "gamma_star", num(r.gamma_star));
    line(out, "eta_d_on_boundary", flag(r.eta_d_on_boundary));
    line(out, "gamma_on_boundary", flag(r.gamma_on_boundary));
    line(out, "evaluations", std::to_string(r.evaluations));
    if (r.gamma_on_boundary && r.gamma_star > config.gamma_min) {
        err << "warning: optimum sits on the upper gamma edge (" << num(config.gamma_max)
            << "); a larger --gamma-max may raise the rate\n";
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Secret-key-capacity bounds and trusted-noise Gaussian key rates for the thermal-loss channel",
                 "keycap"};
    app.require_subcommand(1);

    double eta = 0.0;
    NoiseOptions noise;

    auto* bounds = app.add_subcommand("bounds", "Reverse-coherent lower bound and entanglement-flux upper bound");
    bounds->add_option("--eta", eta, "Channel transmissivity in (0, 1)")->required();
    noise.add_to(*bounds);

    double eta_d = 1.0;
    double gamma = 1.0;
    std::optional<double> mu;
    std::string quadrature = "q";
    bool verbose = false;
    auto* rate = app.add_subcommand("rate", "Key rate of the trusted-noise protocol at a fixed detector");
    rate->add_option("--eta", eta, "Channel transmissivity in (0, 1)")->required();
    noise.add_to(*rate);
    rate->add_option("--eta-d", eta_d, "Detector beam-splitter transmissivity in (0, 1]")->required();
    rate->add_option("--gamma", gamma, "Trusted thermal noise variance >= 1")->required();
    rate->add_option("--mu", mu, "Finite modulation variance; omit for the asymptotic rate");
    rate->add_option("--quadrature", quadrature, "Homodyned quadrature for the finite simulation")
        ->check(CLI::IsMember({"q", "p"}));
    rate->add_flag("--verbose,-v", verbose, "Print intermediate variances, entropies and spectra");

    SearchConfig config;
    auto add_search_options = [&config](CLI::App& sub) {
        sub.add_option("--gamma-max", config.gamma_max, "Upper edge of the gamma search box")->capture_default_str();
        sub.add_option("--grid", config.eta_d_points, "Coarse grid points for eta_d")->capture_default_str();
        sub.add_option("--gamma-grid", config.gamma_points, "Coarse grid points for gamma")->capture_default_str();
        sub.add_option("--tolerance", config.tolerance, "Refinement parameter tolerance")->capture_default_str();
    };
    auto* optimize = app.add_subcommand("optimize", "Maximize the key rate over the detector parameters");
    optimize->add_option("--eta", eta, "Channel transmissivity in (0, 1)")->required();
    noise.add_to(*optimize);
    add_search_options(*optimize);

    double eta_min = 0.0;
    double eta_max = 0.0;
    int steps = 0;
    std::string out_path;
    std::vector<double> fixed;
    unsigned threads = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate bounds and rates over a transmissivity grid as CSV");
    sweep_cmd->add_option("--eta-min", eta_min, "First transmissivity")->required();
    sweep_cmd->add_option("--eta-max", eta_max, "Last transmissivity")->required();
    sweep_cmd->add_option("--steps", steps, "Number of grid points (>= 2)")->required();
    noise.add_to(*sweep_cmd);
    sweep_cmd->add_option("--out", out_path, "Output CSV path")->required();
    sweep_cmd->add_option("--fixed", fixed, "Use a fixed detector ETA_D GAMMA instead of optimizing")
        ->expected(2)
        ->allow_extra_args(false);
    sweep_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    add_search_options(*sweep_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*bounds) {
            print_bounds(out, ChannelParams::from_omega(eta, noise.resolve()));
        } else if (*rate) {
            const auto ch = ChannelParams::from_omega(eta, noise.resolve());
            print_rate(out, ch, DetectorParams(eta_d, gamma), mu, quadrature == "p" ? Quadrature::p : Quadrature::q,
                       verbose);
        } else if (*optimize) {
            const auto ch = ChannelParams::from_omega(eta, noise.resolve());
            print_optimum(out, err, maximize_rate(ch, config), config);
        } else if (*sweep_cmd) {
            const double omega = noise.resolve();
            if (!(eta_min > 0.0 && eta_min < eta_max && eta_max < 1.0)) {
                throw UsageError("sweep requires 0 < --eta-min < --eta-max < 1");
            }
            std::optional<DetectorParams> detector;
            if (!fixed.empty()) detector.emplace(fixed[0], fixed[1]);
            const auto grid = linear_grid(eta_min, eta_max, steps);
            const auto rows = sweep(grid, omega, detector, config, threads);

            std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
            if (!file) throw IoError("cannot open '" + out_path + "' for writing");
            write_sweep_csv(file, rows);
            file.flush();
            if (!file) throw IoError("failed writing '" + out_path + "'");
            line(out, "rows", std::to_string(rows.size()));
            line(out, "out", out_path);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}

}  // namespace keycap::cli
