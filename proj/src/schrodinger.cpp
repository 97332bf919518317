#include "hfa/schrodinger.hpp"

#include <cmath>
#include <stdexcept>

#include "hfa/errors.hpp"

namespace hfa {

namespace {

void require_frequency(double t) {
    if (t == 0.0) throw DomainError("pi_t is only defined for t != 0");
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite frequency");
}

}  // namespace

LinOp rep_matrix(double t, const GroupElement& g, const GridSpec1D& grid) {
    require_frequency(t);
    if (!is_finite(g)) throw std::invalid_argument("rep_matrix: non-finite group element");
    const auto n = grid.n_points();
    const auto kernel = shift_kernel(grid, g.x);
    const CVector m = modulation_diagonal(grid, t * g.y);
    const Complex phase = unit_phase(t * g.z + 0.5 * t * g.y * g.x);
    LinOp r(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) r(i, j) = phase * m(i) * kernel[(i + n - j) % n];
    return r;
}

std::vector<LinOp> fourier_coefficients(const SampledFunction3D& f, std::span<const double> ts,
                                        const GridSpec1D& grid) {
    for (double t : ts) require_frequency(t);
    const auto& box = f.grid();
    const auto [nx, ny, nz] = box.counts();
    const auto n = grid.n_points();
    const auto nt = ts.size();
    const auto sx = static_cast<Eigen::Index>(nx), sy = static_cast<Eigen::Index>(ny);
    const auto sz = static_cast<Eigen::Index>(nz), sn = static_cast<Eigen::Index>(n);

    // Transform along z: zt(a + nx b, k) = sum_c f(a,b,c) e^{2 pi i t_k z_c} dz.
    const Eigen::Map<const LinOp> samples(f.samples().data(), sx * sy, sz);
    LinOp ez(sz, static_cast<Eigen::Index>(nt));
    for (std::size_t c = 0; c < nz; ++c)
        for (std::size_t k = 0; k < nt; ++k)
            ez(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k)) =
                unit_phase(ts[k] * box.node(2, c)) * box.spacing(2);
    const LinOp zt = samples * ez;

    // Circulant kernels of T_{x_a}, one row per x-node.
    LinOp shifts(sx, sn);
    for (std::size_t a = 0; a < nx; ++a) {
        const auto kernel = shift_kernel(grid, box.node(0, a));
        for (std::size_t m = 0; m < n; ++m) shifts(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(m)) = kernel[m];
    }

    std::vector<LinOp> out;
    out.reserve(nt);
    LinOp zy(sx, sy), v(sy, sn);
    for (std::size_t k = 0; k < nt; ++k) {
        const double t = ts[k];
        for (std::size_t b = 0; b < ny; ++b) {
            const double ty = t * box.node(1, b);
            for (std::size_t i = 0; i < n; ++i)
                v(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(i)) = unit_phase(-ty * grid.node(i));
            for (std::size_t a = 0; a < nx; ++a)
                zy(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    zt(static_cast<Eigen::Index>(a + nx * b), static_cast<Eigen::Index>(k)) *
                    unit_phase(0.5 * ty * box.node(0, a)) * box.spacing(1);
        }
        // d(a, i) = sum_b zy(a,b) e^{-2 pi i t y_b w_i};  p(i, m) = sum_a d(a,i) kernel_a(m) dx
        const LinOp d = zy * v;
        const LinOp p = d.transpose() * shifts * box.spacing(0);
        LinOp coeff(sn, sn);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>((i + n - j) % n));
        out.push_back(std::move(coeff));
    }
    return out;
}

LinOp fourier_coefficient(const SampledFunction3D& f, double t, const GridSpec1D& grid) {
    const double ts[] = {t};
    return std::move(fourier_coefficients(f, ts, grid).front());
}

LinOp fourier_coefficient_direct(const SampledFunction3D& f, double t, const GridSpec1D& grid) {
    require_frequency(t);
    const auto& box = f.grid();
    const auto [nx, ny, nz] = box.counts();
    const auto n = static_cast<Eigen::Index>(grid.n_points());
    LinOp acc = LinOp::Zero(n, n);
    for (std::size_t c = 0; c < nz; ++c)
        for (std::size_t b = 0; b < ny; ++b)
            for (std::size_t a = 0; a < nx; ++a) {
                const GroupElement g{box.node(0, a), box.node(1, b), box.node(2, c)};
                acc += f.at(a, b, c) * rep_matrix(t, g, grid);
            }
    return acc * box.cell_volume();
}

OperatorField forward_field(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid) {
    const auto ts = tgrid.nodes();
    auto mats = fourier_coefficients(f, ts, grid);
    for (std::size_t s = 0; s < mats.size(); ++s) mats[s] *= std::abs(ts[s]);
    return OperatorField(tgrid, std::move(mats));
}

}  // namespace hfa
