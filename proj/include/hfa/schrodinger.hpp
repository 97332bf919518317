#pragma once

// Schrodinger representations pi_t of H on the discretized L^2(R), and the
// operator-valued Fourier transform of sampled functions.

#include <span>
#include <vector>

#include "hfa/field.hpp"
#include "hfa/grid.hpp"
#include "hfa/group.hpp"

namespace hfa {

/// pi_t(x,y,z) = e^{2 pi i t z + pi i t y x} M_{t y} T_x. The translation acts
/// first; the two unitaries do not commute, so this order is fixed.
LinOp rep_matrix(double t, const GroupElement& g, const GridSpec1D& grid);

/// Rectangle-rule pi_t(f) = sum_v f(v) pi_t(v) dV. Uses the factorized sum
/// (transform along z, then along y, then a circulant contraction in x).
LinOp fourier_coefficient(const SampledFunction3D& f, double t, const GridSpec1D& grid);

/// Same quantity, one fourier_coefficient per frequency, sharing the z-transform
/// and the shift kernels across frequencies.
std::vector<LinOp> fourier_coefficients(const SampledFunction3D& f, std::span<const double> ts,
                                        const GridSpec1D& grid);

/// Reference implementation: literally sums rep_matrix over every sample.
/// O(n_x n_y n_z N^2); only for small grids.
LinOp fourier_coefficient_direct(const SampledFunction3D& f, double t, const GridSpec1D& grid);

/// F(t_k) = |t_k| pi_{t_k}(f) on every lattice node.
OperatorField forward_field(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid);

}  // namespace hfa
