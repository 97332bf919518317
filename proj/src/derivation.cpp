#include "hfa/derivation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

#include "hfa/errors.hpp"
#include "hfa/plancherel.hpp"
#include "hfa/schrodinger.hpp"

namespace hfa {

namespace {

// -1/(2 pi i) = i/(2 pi)
const Complex kNormalization{0.0, 0.5 / std::numbers::pi};

}  // namespace

const char* to_string(DzMethod m) {
    return m == DzMethod::Analytic ? "analytic" : "spectral";
}

SampledFunction3D d_z_spectral(const SampledFunction3D& f) {
    const auto& box = f.grid();
    const auto [nx, ny, nz] = box.counts();
    if (nz < 8) throw ResolutionError("d_z: spectral path needs n_z >= 8, got " + std::to_string(nz));
    const double period = static_cast<double>(nz) * box.spacing(2);

    Eigen::FFT<double> fft;
    std::vector<Complex> line(nz), spec(nz);
    std::vector<Complex> out(f.samples().size());
    for (std::size_t b = 0; b < ny; ++b)
        for (std::size_t a = 0; a < nx; ++a) {
            for (std::size_t c = 0; c < nz; ++c) line[c] = f.at(a, b, c);
            fft.fwd(spec, line);
            // D multiplies mode m by -xi_m; the unpaired Nyquist mode is dropped.
            for (std::size_t m = 0; m < nz; ++m) {
                const auto sm = static_cast<double>(m);
                if (2 * m == nz) spec[m] = 0.0;
                else spec[m] *= -(2 * m < nz ? sm : sm - static_cast<double>(nz)) / period;
            }
            fft.inv(line, spec);
            for (std::size_t c = 0; c < nz; ++c) out[box.index(a, b, c)] = line[c];
        }
    return SampledFunction3D(box, std::move(out));
}

Derivative d_z(const SampledFunction3D& f) {
    if (!f.has_analytic_dz()) return {d_z_spectral(f), DzMethod::Spectral};
    const ClosedForm d = f.source()->dz().scaled(kNormalization);
    return {SampledFunction3D::sample(f.grid(), d), DzMethod::Analytic};
}

MultiplierResult multiplier_defect(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid) {
    MultiplierResult res;
    res.boundary_max = f.boundary_max_abs();
    res.precondition_warning = res.boundary_max > kSupportThreshold;
    const auto d = d_z(f);
    res.method = d.method;

    const auto ts = tgrid.nodes();
    const auto pd = fourier_coefficients(d.f, ts, grid);
    const auto pf = fourier_coefficients(f, ts, grid);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double num = schatten_norm(pd[k] - ts[k] * pf[k], Schatten::Infinity);
        const double den = std::max(1.0, std::abs(ts[k]) * schatten_norm(pf[k], Schatten::Infinity));
        res.defect = std::max(res.defect, num / den);
    }
    return res;
}

double leibniz_defect(const SampledFunction3D& f, const SampledFunction3D& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("leibniz_defect: grid mismatch");
    if (!f.has_analytic_dz() || !g.has_analytic_dz())
        throw std::invalid_argument("leibniz_defect: both factors need a closed form");
    const auto fg = d_z(f * g).f;
    const auto df = d_z(f).f, dg = d_z(g).f;
    double worst = 0.0;
    for (std::size_t i = 0; i < fg.samples().size(); ++i) {
        const Complex rule = f.samples()[i] * dg.samples()[i] + g.samples()[i] * df.samples()[i];
        worst = std::max(worst, std::abs(fg.samples()[i] - rule));
    }
    return worst;
}

NormInequality boundedness_check(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid,
                                 double slack) {
    const auto ts = tgrid.nodes();
    const auto pd = fourier_coefficients(d_z(f).f, ts, grid);
    const auto pf = fourier_coefficients(f, ts, grid);
    NormInequality res;
    res.max_node_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < ts.size(); ++k) {
        res.node_lhs.push_back(schatten_norm(pd[k], Schatten::Infinity));
        res.node_rhs.push_back(std::abs(ts[k]) * schatten_norm(pf[k], Schatten::One));
        res.lhs += res.node_lhs.back();
        res.rhs += res.node_rhs.back();
        res.max_node_excess = std::max(res.max_node_excess, res.node_lhs.back() - res.node_rhs.back());
    }
    res.lhs *= tgrid.delta();
    res.rhs *= tgrid.delta();
    res.pass = res.lhs <= res.rhs + slack;
    return res;
}

NormInequality module_norm_check(const SampledFunction3D& f, const SampledFunction3D& h, const TGrid& tgrid,
                                 const GridSpec1D& grid, double tol_rel, double tol_abs) {
    if (!(f.grid() == h.grid())) throw std::invalid_argument("module_norm_check: grid mismatch");
    NormInequality res;
    res.lhs = w_norm(f * h, tgrid, grid);
    res.rhs = a_norm(forward_field(f, tgrid, grid)) * w_norm(h, tgrid, grid);
    res.pass = res.lhs <= res.rhs * (1.0 + tol_rel) + tol_abs;
    return res;
}

ClosedForm nonvanishing_witness(std::array<double, 3> sigma) {
    return ClosedForm::gaussian(sigma, {}, 0.0, Polynomial{{{0, 0, 1}, 1.0}});
}

}  // namespace hfa
