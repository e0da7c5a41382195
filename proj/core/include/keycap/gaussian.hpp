#pragma once

// Covariance-matrix algebra for multimode bosonic Gaussian states.
//
// Conventions used throughout keycap:
//   * quadratures are interleaved, (q1, p1, q2, p2, ..., qN, pN);
//   * the vacuum has variance 1, so a thermal mode with mean photon number n
//     has variance 2n + 1;
//   * the symplectic form is Omega = diag([[0, 1], [-1, 0]], ...).
// Modes are addressed by zero-based index.

#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace keycap {

/// Rounding slack below 1 tolerated in a symplectic eigenvalue before the
/// covariance matrix is rejected as unphysical.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Tolerance on max|S Omega S^T - Omega| for a matrix to count as symplectic.
inline constexpr double kSymplecticTolerance = 1e-10;

/// Relative tolerance on max|V - V^T| accepted by CovarianceMatrix.
inline constexpr double kSymmetryTolerance = 1e-12;

enum class Quadrature { q, p };

/// Real symmetric 2N x 2N covariance matrix of an N-mode Gaussian state.
///
/// The constructor checks shape and symmetry. Physicality (uncertainty
/// principle) is not checked on construction because it needs a spectral
/// decomposition; see is_physical() and symplectic_eigenvalues().
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(Eigen::MatrixXd entries);

    static CovarianceMatrix vacuum(int n_modes);

    int n_modes() const { return static_cast<int>(entries_.rows() / 2); }
    const Eigen::MatrixXd& matrix() const { return entries_; }
    double operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

    /// 2x2 block coupling mode i (rows) with mode j (columns).
    Eigen::Matrix2d block(int i, int j) const;

private:
    Eigen::MatrixXd entries_;
};

/// Real 2N x 2N matrix S with S Omega S^T = Omega.
class SymplecticMap {
public:
    /// Throws DomainError if the matrix is not symplectic within kSymplecticTolerance.
    explicit SymplecticMap(Eigen::MatrixXd entries);

    static SymplecticMap identity(int n_modes);

    int n_modes() const { return static_cast<int>(entries_.rows() / 2); }
    const Eigen::MatrixXd& matrix() const { return entries_; }

    /// Composition: (a * b) acts as b first, then a.
    friend SymplecticMap operator*(const SymplecticMap& a, const SymplecticMap& b);

private:
    struct Trusted {};
    SymplecticMap(Eigen::MatrixXd entries, Trusted) : entries_(std::move(entries)) {}

    Eigen::MatrixXd entries_;
};

/// Symplectic eigenvalues, one per mode, ascending.
struct SymplecticSpectrum {
    std::vector<double> eigenvalues;

    int n_modes() const { return static_cast<int>(eigenvalues.size()); }
    double operator[](std::size_t k) const { return eigenvalues[k]; }
};

/// Direct sum of n copies of [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n_modes);

/// Von Neumann entropy (bits) of a thermal mode with variance x:
///   h(x) = (x+1)/2 log2((x+1)/2) - (x-1)/2 log2((x-1)/2),
/// with h(1) = 0. Throws DomainError for x < 1 or non-finite x.
double entropy_h(double x);

/// Two-mode squeezed vacuum with local variance mu >= 1.
CovarianceMatrix tmsv_cm(double mu);

/// Single-mode thermal state gamma * I, gamma >= 1.
CovarianceMatrix thermal_cm(double gamma);

/// Block-diagonal direct sum; mode order follows the input order.
CovarianceMatrix direct_sum(std::span<const CovarianceMatrix> cms);
CovarianceMatrix direct_sum(std::initializer_list<CovarianceMatrix> cms);

/// Reorders modes so that output mode k is input mode perm[k].
CovarianceMatrix reorder_modes(const CovarianceMatrix& v, std::span<const int> perm);
CovarianceMatrix reorder_modes(const CovarianceMatrix& v, std::initializer_list<int> perm);

/// Beam splitter of transmissivity eta acting on modes (i, j) of an n-mode system.
///
/// On the (i, j) pair it is T(eta) = [[sqrt(eta) I, sqrt(1-eta) I], [-sqrt(1-eta) I, sqrt(eta) I]]:
/// the output in slot i is sqrt(eta) x_i + sqrt(1-eta) x_j, the output in
/// slot j is -sqrt(1-eta) x_i + sqrt(eta) x_j.
SymplecticMap beam_splitter(double eta, int mode_i, int mode_j, int n_modes);

/// S V S^T.
CovarianceMatrix apply_symplectic(const SymplecticMap& s, const CovarianceMatrix& v);

/// Reduced state on the kept modes, in the order given.
CovarianceMatrix partial_trace(const CovarianceMatrix& v, std::span<const int> keep);
CovarianceMatrix partial_trace(const CovarianceMatrix& v, std::initializer_list<int> keep);

/// State of the remaining modes after homodyne detection of one quadrature of
/// `measured_mode`:  A - c c^T / b, where b is the measured quadrature's
/// variance and c its covariance column with the remaining modes.
/// The measured mode is removed from the output; other modes keep their order.
CovarianceMatrix homodyne_condition(const CovarianceMatrix& v, int measured_mode, Quadrature quadrature);

/// Moduli of the eigenvalues of i Omega V, one per mode, sorted ascending.
///
/// Throws DomainError if V is not positive definite or if any eigenvalue
/// falls below 1 - kPhysicalityTolerance.
SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& v);

/// Closed-form spectrum of a two-mode CM [[A, C], [C^T, B]]:
///   nu^2 = (D -+ sqrt(D^2 - 4 det V)) / 2,  D = det A + det B + 2 det C.
/// Used as an independent cross-check of symplectic_eigenvalues().
SymplecticSpectrum two_mode_symplectic_eigenvalues(const CovarianceMatrix& v);

/// True if every symplectic eigenvalue is >= 1 - kPhysicalityTolerance.
bool is_physical(const CovarianceMatrix& v);

/// Sum of entropy_h over the symplectic spectrum, in bits.
double von_neumann_entropy(const CovarianceMatrix& v);
double von_neumann_entropy(const SymplecticSpectrum& spectrum);

}  // namespace keycap
