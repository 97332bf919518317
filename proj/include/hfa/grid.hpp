#pragma once

// Periodic discretization of L^2(R) and the dense linear algebra used by every
// other module.
//
// The carrier space is modelled by n_points samples on [-L, L). Translations
// are realized as phase ramps in the discrete Fourier basis, so they are
// exactly unitary and compose exactly; errors in representation identities
// come only from aliasing of the vectors they are applied to. Test vectors
// must therefore be numerically supported well inside both the position box
// [-L, L) and the frequency box [-N/(4L), N/(4L)); a Gaussian whose tails at
// both edges are below eps contributes an error of order eps.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace hfa {

using Complex = std::complex<double>;
using LinOp = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// exp(2 pi i u), with u reduced to [-1/2, 1/2] first so large arguments keep
/// full relative accuracy in the phase.
Complex unit_phase(double u);

/// Uniform periodic grid w_i = -L + i h, h = 2L / n, i = 0..n-1.
class GridSpec1D {
public:
    GridSpec1D(std::size_t n_points, double half_width);

    std::size_t n_points() const { return n_; }
    double half_width() const { return half_width_; }
    double spacing() const { return spacing_; }
    double node(std::size_t i) const { return -half_width_ + static_cast<double>(i) * spacing_; }
    std::vector<double> nodes() const;
    /// Discrete frequency m / (2L) for the DFT index m in [-N/2, N/2).
    double frequency(long m) const { return static_cast<double>(m) / (2.0 * half_width_); }
    double nyquist() const { return static_cast<double>(n_) / (4.0 * half_width_); }

    bool operator==(const GridSpec1D&) const = default;

private:
    std::size_t n_;
    double half_width_;
    double spacing_;
};

/// First column of the circulant translation by x: T_x[i, j] = kernel[(i - j) mod N].
/// kernel[n] = (1/N) sum_m exp(2 pi i xi_m (n h - x)), xi_m = m / (2L).
std::vector<Complex> shift_kernel(const GridSpec1D& grid, double x);

/// Translation f(w) -> f(w - x), diagonal in the DFT basis with phases exp(-2 pi i xi_m x).
LinOp fractional_shift_op(const GridSpec1D& grid, double x);

/// Diagonal entries exp(-2 pi i beta w_i) of the modulation operator.
CVector modulation_diagonal(const GridSpec1D& grid, double beta);

/// Multiplication by exp(-2 pi i beta w).
LinOp modulation_op(const GridSpec1D& grid, double beta);

enum class Schatten { One, Two, Infinity };

/// Schatten p-norm from the full singular value decomposition.
double schatten_norm(const LinOp& a, Schatten p);

/// All singular values, descending.
Eigen::VectorXd singular_values(const LinOp& a);

inline constexpr std::size_t kDefaultKronCap = 4096;

/// Kronecker product; row index (i, j) -> i * dim(B) + j.
LinOp kron(const LinOp& a, const LinOp& b, std::size_t max_dim = kDefaultKronCap);

/// Throws std::invalid_argument unless `a` is square with finite entries.
void require_valid(const LinOp& a, const char* what);

/// Largest absolute entry.
double max_abs(const LinOp& a);

}  // namespace hfa
