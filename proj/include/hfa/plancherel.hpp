#pragma once

// Inverse Fourier transform of operator fields, and the field norms.
//
// Convention: fields carry the Plancherel weight, F(t) = |t| pi_t(f), so the
// inverse transform integrates against plain dt.

#include <vector>

#include "hfa/field.hpp"
#include "hfa/grid.hpp"
#include "hfa/group.hpp"

namespace hfa {

/// sum_k delta * Tr[F(t_k) pi_{t_k}(g)^*].
Complex inverse_transform(const OperatorField& F, const GroupElement& g, const GridSpec1D& grid);

/// inverse_transform at every node of `box` (x-fastest), factorized the same
/// way as fourier_coefficients.
std::vector<Complex> inverse_transform_grid(const OperatorField& F, const BoxGrid3D& box,
                                            const GridSpec1D& grid);

/// sum_k delta * ||F(t_k)||_1.
double a_norm(const OperatorField& F);
/// max_k ||F(t_k)||_1.
double m_norm(const OperatorField& F);
/// sum_k delta * ||F(t_k)||_inf (no |t| weight is added).
double w_norm_field(const OperatorField& F);
/// sum_k delta * ||pi_{t_k}(f)||_inf.
double w_norm(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid);

/// sum_k delta * Tr(A(t_k) B(t_k)).
Complex field_pairing(const OperatorField& A, const OperatorField& B);

/// |sum_k delta |t_k| ||pi_{t_k}(f)||_2^2 - ||f||_2^2| / ||f||_2^2.
/// Throws UndefinedRelativeError for f == 0.
double plancherel_defect(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid);
/// Same, from F = forward_field(f): |t| ||pi_t(f)||_2^2 = ||F(t)||_2^2 / |t|.
double plancherel_defect(const SampledFunction3D& f, const OperatorField& F);

struct AdjointPairing {
    Complex lhs;      // sum_v g(v) Psi(F)(v) dV
    Complex rhs;      // sum_k delta Tr(pi_{t_k}(g check) F(t_k))
    double defect;    // |lhs - rhs|
};

AdjointPairing adjoint_pairing(const SampledFunction3D& g, const OperatorField& F, const GridSpec1D& grid);
double adjoint_pairing_defect(const SampledFunction3D& g, const OperatorField& F, const GridSpec1D& grid);

}  // namespace hfa
