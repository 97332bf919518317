#pragma once

// Fusion of Schrodinger representations, pi_r (x) pi_s ~ pi_{r+s} (x) I, and the
// dual convolution of operator fields built on it.
//
// Tensor index convention: (i, j) -> i * N + j; the first factor carries the
// variable h and the second the variable k of F(h, k).
//
// The fusion operator is the composition F -> F o gamma(r,s)^{-1}. Since
//   gamma^{-1} = [[1, -b], [1, 1 - b]] = [[1, 0], [1, 1]] [[1, -b], [0, 1]],  b = s/(r+s),
// it is realized as two shears, each a family of DFT translations along one
// axis. Every factor is exactly unitary on the periodic grid, so no
// re-unitarization is needed; the one-stage sampled composition with a polar
// correction is kept for comparison.

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "hfa/field.hpp"
#include "hfa/grid.hpp"
#include "hfa/group.hpp"

namespace hfa {

/// (r, s) lies in the fusion domain iff r, s and r + s are all nonzero.
bool in_fusion_domain(double r, double s);

/// [[r/(r+s), s/(r+s)], [-1, 1]]; throws DomainError outside the domain.
Eigen::Matrix2d gamma(double r, double s);

struct Intertwiner {
    LinOp w;
    double unitarity_defect = 0;  // max |(W^* W - I)_{ij}| of the operator before any correction
    bool near_singular = false;   // |r + s| below the configured cutoff
};

/// Shear-factorized W_{r,s}: (W F)(h, k) = F(h - k s/(r+s), h + k - k s/(r+s)).
/// Entry W[(i,j),(i',j')] = T_{b w_j}[i,i'] T_{-w_{i'}}[j,j'].
Intertwiner intertwiner(double r, double s, const GridSpec1D& grid, double near_singular_cutoff = 0.0);

/// One-stage sampled composition with 2-D band-limited interpolation. Not unitary
/// for non-integer gamma: frequencies along compressed directions alias.
LinOp sampled_composition(double r, double s, const GridSpec1D& grid);

/// Polar factor U V^* of sampled_composition; unitarity_defect reports the
/// composition before correction.
Intertwiner polar_intertwiner(double r, double s, const GridSpec1D& grid, double near_singular_cutoff = 0.0);

/// (1/N) sum_m exp(2 pi i xi_m u): the band-limited interpolation kernel.
Complex dirichlet(const GridSpec1D& grid, double u);

/// S[i, i'] = sum_j R[(i, j), (i', j)].
LinOp partial_trace_second(const LinOp& r, std::size_t n);

/// Max |(pi_r(g) (x) pi_s(g)) v - W^*(pi_{r+s}(g) (x) I) W v| over components.
double intertwining_residual(const Intertwiner& w, double r, double s, const GroupElement& g,
                             const GridSpec1D& grid, const CVector& v);

/// Translation matrices used by the shear factors, cached per grid (lower
/// shear) and per ratio s/(r+s) (upper shear).
class FusionCache {
public:
    explicit FusionCache(GridSpec1D grid);

    const GridSpec1D& grid() const { return grid_; }
    /// T_{-w_p} for p = 0..N-1.
    const std::vector<LinOp>& lower() const { return lower_; }
    /// T_{b w_j} for j = 0..N-1, b = ks / (kr + ks).
    const std::vector<LinOp>& upper(int kr, int ks);
    std::size_t ratios() const { return upper_.size(); }

private:
    GridSpec1D grid_;
    std::vector<LinOp> lower_;
    std::map<std::pair<long, long>, std::vector<LinOp>> upper_;
};

/// theta1 at lattice indices (kr, ks): (I (x) Tr)[W (F(r) (x) G(s)) W^*], or zero
/// when (r, s) is outside the domain or off the lattice. Evaluated through the
/// shear factors in O(N^4).
LinOp theta1(const OperatorField& F, const OperatorField& G, int kr, int ks, FusionCache& cache);
LinOp theta1(const OperatorField& F, const OperatorField& G, int kr, int ks, const GridSpec1D& grid);

/// Reference theta1: forms W, the Kronecker product and the partial trace explicitly.
LinOp theta1_dense(const OperatorField& F, const OperatorField& G, int kr, int ks, const GridSpec1D& grid);

struct DualConvolutionOptions {
    /// Pairs with ||F(r)||_1 ||G(s)||_1 at or below this fraction of the largest
    /// such product are skipped. 0 skips only exact zeros.
    double pair_tolerance = 0.0;
    /// |r + s| below this is excluded as near-singular; negative means delta / 2.
    double near_singular_cutoff = -1.0;
};

struct DualConvolutionResult {
    OperatorField field;
    /// sum_j delta ||theta1(t_j, t_k - t_j)||_1 per node: the theta2 bound.
    std::vector<double> theta2_bound;
    std::size_t pairs_evaluated = 0;
    std::size_t pairs_skipped = 0;
    std::vector<std::pair<int, int>> near_singular_excluded;
    std::size_t ratios_used = 0;
    /// Largest ||theta1||_1 - ||F(r)||_1 ||G(s)||_1 over evaluated pairs.
    double max_theta1_bound_excess = -1.0;
};

/// (F # G)(t_k) = sum_j delta * theta1(F, G, t_j, t_k - t_j).
DualConvolutionResult dual_convolution(const OperatorField& F, const OperatorField& G,
                                       const GridSpec1D& grid, const DualConvolutionOptions& opt = {});

/// max_k ||F_{f1 f2}(t_k) - (F_{f1} # F_{f2})(t_k)||_1 / max_k ||F_{f1 f2}(t_k)||_1.
/// Both sides zero gives exactly 0; a zero left side with nonzero right side
/// throws UndefinedRelativeError.
/// The same ratio for precomputed fields: left = forward_field(f1 f2), right = F1 # F2.
double coefficient_defect(const OperatorField& left, const OperatorField& right);
double product_coefficient_defect(const SampledFunction3D& f1, const SampledFunction3D& f2, const TGrid& tgrid,
                                  const GridSpec1D& grid, const DualConvolutionOptions& opt = {});

}  // namespace hfa
