#pragma once

// Run configuration: defaults, `key = value` files and HFA_* environment overrides.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfa/field.hpp"
#include "hfa/grid.hpp"
#include "hfa/group.hpp"

namespace hfa {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Transform discretization: representation grid, function box, frequency lattice.
struct TransformScale {
    std::size_t n_points = 64;
    double L = 3.0;
    std::array<double, 3> box{3.1, 3.1, 4.6};
    std::array<std::size_t, 3> counts{64, 96, 64};
    double delta = 0.125;
    int k_max = 32;

    GridSpec1D grid() const { return GridSpec1D(n_points, L); }
    BoxGrid3D box_grid() const { return BoxGrid3D(box, counts); }
    TGrid tgrid() const { return TGrid(delta, k_max); }
};

struct RunConfig {
    TransformScale transform;
    /// The dual convolution is O(K^2 N^4); it runs on its own, coarser scale.
    TransformScale dualconv{16, 1.5, {3.1, 3.1, 4.6}, {32, 64, 96}, 0.25, 16};
    double pair_tolerance = 1e-10;
    /// Factors of the dual-convolution product; wider in x than the canonical
    /// Gaussian so that N = 16 resolves them.
    std::array<double, 3> dc_sigma1{0.564, 0.564, 0.6};
    double dc_carrier1 = 1.0;
    std::array<double, 3> dc_sigma2{0.5, 0.6, 0.7};
    std::array<double, 3> dc_center2{0.1, -0.1, 0.05};
    double dc_carrier2 = 0.9;

    std::size_t fusion_n_points = 16;
    double fusion_L = 2.0;
    /// Largest n_points of the homomorphism ladder, which starts at 16.
    std::size_t rep_n_points = 256;

    /// Canonical Gaussian: widths and z-carrier.
    std::array<double, 3> sigma{0.4, 0.4, 0.6};
    double carrier = 1.0;
    /// Second factor for products, derivations and the module inequality.
    std::array<double, 3> sigma2{0.5, 0.45, 0.7};
    double carrier2 = 0.8;
    /// Coefficient of x z in the second factor's polynomial prefactor.
    double poly2_xz = 0.5;

    /// Refinement caps; convergence tables stop with a CapacityError beyond them.
    /// The tensor cap covers fusion and dual convolution, which work on N^2 x N^2 operators.
    std::size_t max_n_points = 256;
    std::size_t max_tensor_n_points = 32;

    std::uint64_t seed = 20261016;
    /// Directory of bundled structure files; defaults to the source tree copy.
    std::string lie_corpus;
    /// Optional extra structure file for the lie suite.
    std::string lie_file;

    /// tol.<name> entries; see default_tolerances().
    std::map<std::string, double> tol;

    RunConfig();
    double tolerance(const std::string& name) const;
};

std::map<std::string, double> default_tolerances();

/// Documented keys, in the order `dump` writes them.
std::vector<std::string> config_keys();

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
/// `key = value` lines; '#' comments. Throws ConfigError with the line number.
void load_config_file(RunConfig& cfg, const std::string& path);
/// HFA_<KEY> with '.' mapped to '_' and upper-cased, e.g. HFA_DUALCONV_N_POINTS.
void apply_environment(RunConfig& cfg, const char* const* envp);
/// Throws ConfigError when a value is out of range.
void validate(const RunConfig& cfg);

/// Flattened key -> value strings, for report echoes.
std::map<std::string, std::string> dump(const RunConfig& cfg);

/// Level l: n_points * 2^l, L * 2^{l/2}, delta / 2^l, k_max * 2^l and the x/y
/// sample counts scaled by (2 + l) / 2; n_z is kept. Negative levels coarsen.
TransformScale refine(const TransformScale& s, int level);

}  // namespace hfa
