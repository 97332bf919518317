#pragma once

// The normalized z-derivative D f = -(1/2 pi i) df/dz, its Fourier multiplier
// pi_t(D f) = t pi_t(f), and the norm inequalities around it.

#include <vector>

#include "hfa/field.hpp"
#include "hfa/grid.hpp"
#include "hfa/group.hpp"

namespace hfa {

enum class DzMethod { Analytic, Spectral };

const char* to_string(DzMethod m);

struct Derivative {
    SampledFunction3D f;
    DzMethod method;
};

/// Analytic when f carries a closed form, otherwise DFT differentiation along z
/// (Nyquist mode dropped). Throws ResolutionError on the spectral path when n_z < 8.
Derivative d_z(const SampledFunction3D& f);
/// Always the spectral path, for comparison against the analytic one.
SampledFunction3D d_z_spectral(const SampledFunction3D& f);

/// Boundary values above this break the integration by parts behind the multiplier identity.
inline constexpr double kSupportThreshold = 1e-12;

struct MultiplierResult {
    double defect = 0;
    /// Set when max |f| on the box boundary exceeds kSupportThreshold.
    bool precondition_warning = false;
    double boundary_max = 0;
    DzMethod method = DzMethod::Analytic;
};

/// max_k ||pi(D f) - t_k pi(f)||_inf / max(1, |t_k| ||pi(f)||_inf).
MultiplierResult multiplier_defect(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid);

/// sup |D(fg) - f D g - g D f| with D(fg) from the closed-form product. Both
/// inputs need a closed form; throws std::invalid_argument on grid mismatch.
double leibniz_defect(const SampledFunction3D& f, const SampledFunction3D& g);

struct NormInequality {
    double lhs = 0;
    double rhs = 0;
    bool pass = false;
    /// Node-wise terms when the inequality is checked per node.
    std::vector<double> node_lhs;
    std::vector<double> node_rhs;
    /// max_k node_lhs[k] - node_rhs[k]; 0 when the check is not node-wise.
    double max_node_excess = 0;
};

/// w_norm(D f) <= a_norm(forward_field(f)) + slack, plus the node-wise chain
/// ||t pi_t(f)||_inf <= |t| ||pi_t(f)||_1 through the computed pi_t(D f).
NormInequality boundedness_check(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid,
                                 double slack = 1e-9);

/// w_norm(f h) <= a_norm(forward_field(f)) w_norm(h) (1 + tol_rel) + tol_abs.
NormInequality module_norm_check(const SampledFunction3D& f, const SampledFunction3D& h, const TGrid& tgrid,
                                 const GridSpec1D& grid, double tol_rel = 5e-2, double tol_abs = 1e-9);

/// z * Gaussian: odd in z, so its z-derivative cannot vanish.
ClosedForm nonvanishing_witness(std::array<double, 3> sigma);

}  // namespace hfa
