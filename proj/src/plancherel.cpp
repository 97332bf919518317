#include "hfa/plancherel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hfa/errors.hpp"
#include "hfa/schrodinger.hpp"

namespace hfa {

namespace {

void require_dim(const OperatorField& F, const GridSpec1D& grid) {
    if (F.dim() != grid.n_points()) throw std::invalid_argument("operator field dimension does not match grid");
}

}  // namespace

Complex inverse_transform(const OperatorField& F, const GroupElement& g, const GridSpec1D& grid) {
    require_dim(F, grid);
    const auto& tg = F.tgrid();
    Complex acc{0.0, 0.0};
    for (std::size_t s = 0; s < F.size(); ++s) {
        const LinOp r = rep_matrix(tg.node(s), g, grid);
        // Tr(F R^*) = sum_ij F_ij conj(R_ij)
        acc += F[s].cwiseProduct(r.conjugate()).sum();
    }
    return acc * tg.delta();
}

std::vector<Complex> inverse_transform_grid(const OperatorField& F, const BoxGrid3D& box,
                                            const GridSpec1D& grid) {
    require_dim(F, grid);
    const auto& tg = F.tgrid();
    const auto [nx, ny, nz] = box.counts();
    const auto n = grid.n_points();
    const auto nt = F.size();
    const auto sx = static_cast<Eigen::Index>(nx), sy = static_cast<Eigen::Index>(ny);
    const auto sz = static_cast<Eigen::Index>(nz), sn = static_cast<Eigen::Index>(n);

    LinOp shifts_conj(sx, sn);
    for (std::size_t a = 0; a < nx; ++a) {
        const auto kernel = shift_kernel(grid, box.node(0, a));
        for (std::size_t m = 0; m < n; ++m)
            shifts_conj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(m)) = std::conj(kernel[m]);
    }

    LinOp q_all(sx * sy, static_cast<Eigen::Index>(nt));
    LinOp diag(sn, sn), v(sy, sn);
    for (std::size_t k = 0; k < nt; ++k) {
        const double t = tg.node(k);
        // diag(i, m) = F[i, (i - m) mod N], so h(a, i) = sum_j F[i, j] conj(kernel_a((i - j) mod N)).
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t i = 0; i < n; ++i)
                diag(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) =
                    F[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>((i + n - m) % n));
        const LinOp h = shifts_conj * diag.transpose();
        for (std::size_t b = 0; b < ny; ++b) {
            const double ty = t * box.node(1, b);
            for (std::size_t i = 0; i < n; ++i)
                v(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(i)) = unit_phase(-ty * grid.node(i));
        }
        const LinOp q = h * v.adjoint();
        for (std::size_t b = 0; b < ny; ++b) {
            const double ty = t * box.node(1, b);
            for (std::size_t a = 0; a < nx; ++a)
                q_all(static_cast<Eigen::Index>(a + nx * b), static_cast<Eigen::Index>(k)) =
                    q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
                    unit_phase(-0.5 * ty * box.node(0, a));
        }
    }
    LinOp ez(static_cast<Eigen::Index>(nt), sz);
    for (std::size_t c = 0; c < nz; ++c)
        for (std::size_t k = 0; k < nt; ++k)
            ez(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) =
                unit_phase(-tg.node(k) * box.node(2, c)) * tg.delta();
    const LinOp values = q_all * ez;  // rows a + nx b, columns c: x-fastest when flattened
    return {values.data(), values.data() + values.size()};
}

double a_norm(const OperatorField& F) {
    double s = 0.0;
    for (const auto& m : F.mats()) s += schatten_norm(m, Schatten::One);
    return s * F.tgrid().delta();
}

double m_norm(const OperatorField& F) {
    double s = 0.0;
    for (const auto& m : F.mats()) s = std::max(s, schatten_norm(m, Schatten::One));
    return s;
}

double w_norm_field(const OperatorField& F) {
    double s = 0.0;
    for (const auto& m : F.mats()) s += schatten_norm(m, Schatten::Infinity);
    return s * F.tgrid().delta();
}

double w_norm(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid) {
    const auto ts = tgrid.nodes();
    return w_norm_field(OperatorField(tgrid, fourier_coefficients(f, ts, grid)));
}

Complex field_pairing(const OperatorField& A, const OperatorField& B) {
    if (!(A.tgrid() == B.tgrid()) || A.dim() != B.dim())
        throw std::invalid_argument("field_pairing: mismatched fields");
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < A.size(); ++k) s += A[k].cwiseProduct(B[k].transpose()).sum();
    return s * A.tgrid().delta();
}

double plancherel_defect(const SampledFunction3D& f, const TGrid& tgrid, const GridSpec1D& grid) {
    const double l2 = f.l2_norm_squared();
    if (l2 == 0.0) throw UndefinedRelativeError("plancherel_defect: f is identically zero");
    const auto ts = tgrid.nodes();
    const auto coeffs = fourier_coefficients(f, ts, grid);
    double s = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double hs = schatten_norm(coeffs[k], Schatten::Two);
        s += std::abs(ts[k]) * hs * hs;
    }
    s *= tgrid.delta();
    return std::abs(s - l2) / l2;
}

double plancherel_defect(const SampledFunction3D& f, const OperatorField& F) {
    const double l2 = f.l2_norm_squared();
    if (l2 == 0.0) throw UndefinedRelativeError("plancherel_defect: f is identically zero");
    const auto& tg = F.tgrid();
    double s = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double hs = schatten_norm(F[k], Schatten::Two);
        s += hs * hs / std::abs(tg.node(k));
    }
    s *= tg.delta();
    return std::abs(s - l2) / l2;
}

AdjointPairing adjoint_pairing(const SampledFunction3D& g, const OperatorField& F, const GridSpec1D& grid) {
    require_dim(F, grid);
    const auto psi = inverse_transform_grid(F, g.grid(), grid);
    Complex lhs{0.0, 0.0};
    for (std::size_t i = 0; i < psi.size(); ++i) lhs += g.samples()[i] * psi[i];
    lhs *= g.cell_volume();

    const auto ts = F.tgrid().nodes();
    const auto coeffs = fourier_coefficients(check_map(g), ts, grid);
    Complex rhs{0.0, 0.0};
    for (std::size_t k = 0; k < ts.size(); ++k) rhs += coeffs[k].cwiseProduct(F[k].transpose()).sum();
    rhs *= F.tgrid().delta();
    return {lhs, rhs, std::abs(lhs - rhs)};
}

double adjoint_pairing_defect(const SampledFunction3D& g, const OperatorField& F, const GridSpec1D& grid) {
    return adjoint_pairing(g, F, grid).defect;
}

}  // namespace hfa
