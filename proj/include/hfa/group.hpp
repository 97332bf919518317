#pragma once

// Heisenberg group arithmetic and functions sampled on a box in H = R^3.

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hfa/grid.hpp"

namespace hfa {

/// A point (x, y, z) of H with (a1,b1,c1)(a2,b2,c2) = (a1+a2, b1+b2, (a1 b2 - a2 b1)/2 + c1 + c2).
struct GroupElement {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const GroupElement&) const = default;
};

GroupElement mul(const GroupElement& g1, const GroupElement& g2);
GroupElement inv(const GroupElement& g);
bool is_finite(const GroupElement& g);

/// Cell-centred box grid: node_d(a) = (a + 1/2 - n_d/2) * (2 X_d / n_d).
/// The half-integer factor makes node(n-1-a) == -node(a) bit-exactly.
class BoxGrid3D {
public:
    BoxGrid3D(std::array<double, 3> half_widths, std::array<std::size_t, 3> counts);

    const std::array<double, 3>& half_widths() const { return half_widths_; }
    const std::array<std::size_t, 3>& counts() const { return counts_; }
    double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
    double node(int axis, std::size_t i) const;
    double cell_volume() const { return spacing_[0] * spacing_[1] * spacing_[2]; }
    std::size_t size() const { return counts_[0] * counts_[1] * counts_[2]; }
    /// x-fastest linear index.
    std::size_t index(std::size_t a, std::size_t b, std::size_t c) const {
        return a + counts_[0] * (b + counts_[1] * c);
    }

    bool operator==(const BoxGrid3D&) const = default;

private:
    std::array<double, 3> half_widths_;
    std::array<std::size_t, 3> counts_;
    std::array<double, 3> spacing_;
};

/// Polynomial in (x, y, z) with complex coefficients, keyed by exponents.
using Polynomial = std::map<std::array<int, 3>, Complex>;

/// Closed-form test function
///   f(v) = p(v) * exp(-sum_d alpha_d (v_d - mu_d)^2) * exp(2 pi i sum_d kappa_d v_d).
/// The family is closed under pointwise products and under d/dz, which is what
/// the derivation checks need.
class ClosedForm {
public:
    ClosedForm() = default;
    ClosedForm(Polynomial p, std::array<double, 3> alpha, std::array<double, 3> mu,
               std::array<double, 3> kappa);

    /// p * exp(-|v - mu|^2 / (2 sigma^2)) (per axis) with carrier exp(-2 pi i a z), whose
    /// z-spectrum int f e^{2 pi i t z} dz is centred at t = a.
    static ClosedForm gaussian(std::array<double, 3> sigma, std::array<double, 3> center = {},
                               double z_carrier = 0.0, Polynomial p = {{{0, 0, 0}, 1.0}});
    static ClosedForm constant(Complex value);

    Complex operator()(double x, double y, double z) const;
    /// Exact d/dz of the closed form.
    ClosedForm dz() const;
    ClosedForm scaled(Complex c) const;

    friend ClosedForm operator*(const ClosedForm& a, const ClosedForm& b);

    const Polynomial& polynomial() const { return poly_; }
    const std::array<double, 3>& alpha() const { return alpha_; }
    const std::array<double, 3>& mu() const { return mu_; }
    const std::array<double, 3>& kappa() const { return kappa_; }

private:
    Polynomial poly_{{{0, 0, 0}, 1.0}};
    std::array<double, 3> alpha_{};
    std::array<double, 3> mu_{};
    std::array<double, 3> kappa_{};
};

/// Samples of f on a BoxGrid3D, optionally remembering the closed form they came from
/// (which supplies the analytic z-derivative).
class SampledFunction3D {
public:
    SampledFunction3D(BoxGrid3D grid, std::vector<Complex> samples,
                      std::optional<ClosedForm> source = std::nullopt);

    static SampledFunction3D sample(const BoxGrid3D& grid, const ClosedForm& f);
    static SampledFunction3D zeros(const BoxGrid3D& grid);

    const BoxGrid3D& grid() const { return grid_; }
    const std::vector<Complex>& samples() const { return samples_; }
    Complex at(std::size_t a, std::size_t b, std::size_t c) const { return samples_[grid_.index(a, b, c)]; }
    double cell_volume() const { return grid_.cell_volume(); }

    const std::optional<ClosedForm>& source() const { return source_; }
    bool has_analytic_dz() const { return source_.has_value(); }
    /// Closed-form df/dz on the grid; throws std::logic_error without a source.
    std::vector<Complex> analytic_dz_samples() const;

    /// Rectangle-rule integrals.
    double l1_norm() const;
    double l2_norm_squared() const;
    double max_abs() const;
    /// Largest |f| over the outermost layer of cells.
    double boundary_max_abs() const;

    SampledFunction3D scaled(Complex c) const;
    /// Pointwise product; the closed form is kept when both factors have one.
    friend SampledFunction3D operator*(const SampledFunction3D& a, const SampledFunction3D& b);
    friend SampledFunction3D operator+(const SampledFunction3D& a, const SampledFunction3D& b);

private:
    BoxGrid3D grid_;
    std::vector<Complex> samples_;
    std::optional<ClosedForm> source_;
};

/// f -> f(g^{-1}) = f(-v), as an exact index reflection on the symmetric grid.
SampledFunction3D check_map(const SampledFunction3D& f);

/// Columnar text format:
///   box X Y Z
///   counts nx ny nz
///   <re> <im>            (one line per sample, x fastest)
void write_sampled(std::ostream& os, const SampledFunction3D& f);
SampledFunction3D read_sampled(std::istream& is);

}  // namespace hfa
