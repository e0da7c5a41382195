#include "keycap/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "keycap/errors.hpp"

namespace keycap {
namespace {

// Pairing tolerance for the +/- eigenvalues of i Omega V.
constexpr double kPairingTolerance = 1e-8;

void check_mode(int mode, int n_modes, const char* what) {
    if (mode < 0 || mode >= n_modes) {
        throw UsageError(std::string(what) + ": mode index " + std::to_string(mode) +
                         " out of range for " + std::to_string(n_modes) + " modes");
    }
}

// Distinct, in-range mode list.
void check_mode_list(std::span<const int> modes, int n_modes, const char* what) {
    std::vector<bool> seen(static_cast<std::size_t>(n_modes), false);
    for (int m : modes) {
        check_mode(m, n_modes, what);
        if (seen[static_cast<std::size_t>(m)]) {
            throw UsageError(std::string(what) + ": mode " + std::to_string(m) + " listed twice");
        }
        seen[static_cast<std::size_t>(m)] = true;
    }
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

Eigen::MatrixXd select_modes(const Eigen::MatrixXd& m, std::span<const int> modes) {
    const auto k = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXd out(2 * k, 2 * k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index c = 0; c < k; ++c) {
            out.block<2, 2>(2 * r, 2 * c) = m.block<2, 2>(2 * modes[r], 2 * modes[c]);
        }
    }
    return out;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols() || entries_.rows() % 2 != 0) {
        throw UsageError("covariance matrix must be square with even, nonzero dimension");
    }
    if (!entries_.allFinite()) {
        throw DomainError("covariance matrix has non-finite entries");
    }
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
        throw DomainError("covariance matrix is not symmetric");
    }
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
    if (n_modes <= 0) throw UsageError("vacuum: n_modes must be positive");
    return CovarianceMatrix(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

Eigen::Matrix2d CovarianceMatrix::block(int i, int j) const {
    check_mode(i, n_modes(), "block");
    check_mode(j, n_modes(), "block");
    return entries_.block<2, 2>(2 * i, 2 * j);
}

SymplecticMap::SymplecticMap(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols() || entries_.rows() % 2 != 0) {
        throw UsageError("symplectic map must be square with even, nonzero dimension");
    }
    const Eigen::MatrixXd omega = symplectic_form(n_modes());
    const double err = (entries_ * omega * entries_.transpose() - omega).cwiseAbs().maxCoeff();
    if (!(err < kSymplecticTolerance)) {
        throw DomainError("matrix is not symplectic (max |S Omega S^T - Omega| = " + std::to_string(err) + ")");
    }
}

SymplecticMap SymplecticMap::identity(int n_modes) {
    if (n_modes <= 0) throw UsageError("identity: n_modes must be positive");
    return SymplecticMap(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes), Trusted{});
}

SymplecticMap operator*(const SymplecticMap& a, const SymplecticMap& b) {
    if (a.n_modes() != b.n_modes()) throw UsageError("composing symplectic maps of different size");
    return SymplecticMap(a.entries_ * b.entries_, SymplecticMap::Trusted{});
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

double entropy_h(double x) {
    if (!std::isfinite(x) || x < 1.0) {
        throw DomainError("entropy_h: argument must be a finite value >= 1, got " + std::to_string(x));
    }
    // a log2 a - b log2 b with a = b + 1, written without the cancellation.
    const double a = 0.5 * (x + 1.0);
    const double b = 0.5 * (x - 1.0);
    return b > 0.0 ? std::log2(a) + b * std::log1p(1.0 / b) / std::numbers::ln2 : 0.0;
}

CovarianceMatrix tmsv_cm(double mu) {
    if (!std::isfinite(mu) || mu < 1.0) throw DomainError("tmsv_cm: mu must be >= 1");
    const double c = std::sqrt(mu * mu - 1.0);
    Eigen::MatrixXd v = mu * Eigen::MatrixXd::Identity(4, 4);
    v(0, 2) = v(2, 0) = c;
    v(1, 3) = v(3, 1) = -c;
    return CovarianceMatrix(std::move(v));
}

CovarianceMatrix thermal_cm(double gamma) {
    if (!std::isfinite(gamma) || gamma < 1.0) throw DomainError("thermal_cm: gamma must be >= 1");
    return CovarianceMatrix(gamma * Eigen::MatrixXd::Identity(2, 2));
}

CovarianceMatrix direct_sum(std::span<const CovarianceMatrix> cms) {
    if (cms.empty()) throw UsageError("direct_sum: empty list");
    Eigen::Index dim = 0;
    for (const auto& cm : cms) dim += cm.matrix().rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::Index offset = 0;
    for (const auto& cm : cms) {
        const auto d = cm.matrix().rows();
        out.block(offset, offset, d, d) = cm.matrix();
        offset += d;
    }
    return CovarianceMatrix(std::move(out));
}

CovarianceMatrix direct_sum(std::initializer_list<CovarianceMatrix> cms) {
    return direct_sum(std::span<const CovarianceMatrix>(cms.begin(), cms.size()));
}

CovarianceMatrix reorder_modes(const CovarianceMatrix& v, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != v.n_modes()) {
        throw UsageError("reorder_modes: permutation length does not match mode count");
    }
    check_mode_list(perm, v.n_modes(), "reorder_modes");
    return CovarianceMatrix(select_modes(v.matrix(), perm));
}

CovarianceMatrix reorder_modes(const CovarianceMatrix& v, std::initializer_list<int> perm) {
    return reorder_modes(v, std::span<const int>(perm.begin(), perm.size()));
}

SymplecticMap beam_splitter(double eta, int mode_i, int mode_j, int n_modes) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("beam_splitter: eta must lie in [0, 1]");
    if (n_modes <= 0) throw UsageError("beam_splitter: n_modes must be positive");
    check_mode(mode_i, n_modes, "beam_splitter");
    check_mode(mode_j, n_modes, "beam_splitter");
    if (mode_i == mode_j) throw UsageError("beam_splitter: modes must differ");

    const double t = std::sqrt(eta);
    const double r = std::sqrt(1.0 - eta);
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < 2; ++k) {
        const int i = 2 * mode_i + k;
        const int j = 2 * mode_j + k;
        s(i, i) = t;
        s(i, j) = r;
        s(j, i) = -r;
        s(j, j) = t;
    }
    return SymplecticMap(std::move(s));
}

CovarianceMatrix apply_symplectic(const SymplecticMap& s, const CovarianceMatrix& v) {
    if (s.n_modes() != v.n_modes()) throw UsageError("apply_symplectic: dimension mismatch");
    return CovarianceMatrix(symmetrized(s.matrix() * v.matrix() * s.matrix().transpose()));
}

CovarianceMatrix partial_trace(const CovarianceMatrix& v, std::span<const int> keep) {
    if (keep.empty()) throw UsageError("partial_trace: keep set is empty");
    check_mode_list(keep, v.n_modes(), "partial_trace");
    return CovarianceMatrix(select_modes(v.matrix(), keep));
}

CovarianceMatrix partial_trace(const CovarianceMatrix& v, std::initializer_list<int> keep) {
    return partial_trace(v, std::span<const int>(keep.begin(), keep.size()));
}

CovarianceMatrix homodyne_condition(const CovarianceMatrix& v, int measured_mode, Quadrature quadrature) {
    const int n = v.n_modes();
    check_mode(measured_mode, n, "homodyne_condition");
    if (n < 2) throw UsageError("homodyne_condition: nothing left after measuring the only mode");

    const Eigen::Index row = 2 * measured_mode + (quadrature == Quadrature::q ? 0 : 1);
    const double b = v(row, row);
    if (!(b > 0.0)) throw SingularityError("homodyne_condition: measured quadrature has zero variance");

    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n - 1));
    for (int m = 0; m < n; ++m) {
        if (m != measured_mode) rest.push_back(m);
    }
    const Eigen::MatrixXd a = select_modes(v.matrix(), rest);
    Eigen::VectorXd c(a.rows());
    for (std::size_t k = 0; k < rest.size(); ++k) {
        c(2 * k) = v(2 * rest[k], row);
        c(2 * k + 1) = v(2 * rest[k] + 1, row);
    }
    return CovarianceMatrix(symmetrized(a - c * c.transpose() / b));
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& v) {
    // With V = L L^T, i Omega V is similar to the Hermitian matrix i L^T Omega L.
    const Eigen::LLT<Eigen::MatrixXd> llt(v.matrix());
    if (llt.info() != Eigen::Success) {
        throw DomainError("symplectic_eigenvalues: covariance matrix is not positive definite");
    }
    const Eigen::MatrixXd l = llt.matrixL();
    const int n = v.n_modes();
    const Eigen::MatrixXd antisym = l.transpose() * symplectic_form(n) * l;
    const Eigen::MatrixXcd herm = std::complex<double>(0.0, 1.0) * antisym.cast<std::complex<double>>();

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw DomainError("symplectic_eigenvalues: eigen decomposition failed");
    }
    std::vector<double> moduli(static_cast<std::size_t>(2 * n));
    for (Eigen::Index k = 0; k < 2 * n; ++k) moduli[static_cast<std::size_t>(k)] = std::abs(solver.eigenvalues()(k));
    std::sort(moduli.begin(), moduli.end());

    SymplecticSpectrum spectrum;
    spectrum.eigenvalues.reserve(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < moduli.size(); k += 2) {
        const double lo = moduli[k];
        const double hi = moduli[k + 1];
        if (hi - lo > kPairingTolerance * std::max(1.0, hi)) {
            throw DomainError("symplectic_eigenvalues: eigenvalues of i Omega V do not pair");
        }
        const double nu = 0.5 * (lo + hi);
        if (nu < 1.0 - kPhysicalityTolerance) {
            throw DomainError("symplectic_eigenvalues: unphysical covariance matrix (nu = " + std::to_string(nu) + ")");
        }
        spectrum.eigenvalues.push_back(nu);
    }
    return spectrum;
}

SymplecticSpectrum two_mode_symplectic_eigenvalues(const CovarianceMatrix& v) {
    if (v.n_modes() != 2) throw UsageError("two_mode_symplectic_eigenvalues: need a two-mode CM");
    const double delta = v.block(0, 0).determinant() + v.block(1, 1).determinant() + 2.0 * v.block(0, 1).determinant();
    const double det = v.matrix().determinant();
    if (!(det > 0.0)) throw DomainError("two_mode_symplectic_eigenvalues: non-positive determinant");
    const double disc = std::max(0.0, delta * delta - 4.0 * det);
    const double nu_plus_sq = 0.5 * (delta + std::sqrt(disc));
    // det V = nu_-^2 nu_+^2; avoids cancellation in (delta - sqrt(disc)) / 2.
    const double nu_minus_sq = det / nu_plus_sq;
    return SymplecticSpectrum{{std::sqrt(nu_minus_sq), std::sqrt(nu_plus_sq)}};
}

bool is_physical(const CovarianceMatrix& v) {
    try {
        (void)symplectic_eigenvalues(v);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

double von_neumann_entropy(const SymplecticSpectrum& spectrum) {
    double s = 0.0;
    for (double nu : spectrum.eigenvalues) {
        // Spectra may sit up to kPhysicalityTolerance below 1 from rounding.
        s += entropy_h(std::max(nu, 1.0));
    }
    return s;
}

double von_neumann_entropy(const CovarianceMatrix& v) { return von_neumann_entropy(symplectic_eigenvalues(v)); }

}  // namespace keycap
