#include "hfa/fusion.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hfa/errors.hpp"
#include "hfa/schrodinger.hpp"

namespace hfa {

bool in_fusion_domain(double r, double s) {
    return std::isfinite(r) && std::isfinite(s) && r != 0.0 && s != 0.0 && r + s != 0.0;
}

Eigen::Matrix2d gamma(double r, double s) {
    if (!in_fusion_domain(r, s))
        throw DomainError("gamma: (" + std::to_string(r) + ", " + std::to_string(s) + ") is outside the fusion domain");
    Eigen::Matrix2d g;
    g << r / (r + s), s / (r + s), -1.0, 1.0;
    return g;
}

namespace {

void require_domain(double r, double s, const char* what) {
    if (!in_fusion_domain(r, s)) throw DomainError(std::string(what) + ": (r, s) outside the fusion domain");
}

double unitarity_defect(const LinOp& w) {
    return max_abs(w.adjoint() * w - LinOp::Identity(w.rows(), w.cols()));
}

std::vector<LinOp> shifts(const GridSpec1D& grid, double scale) {
    std::vector<LinOp> t(grid.n_points());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = fractional_shift_op(grid, scale * grid.node(i));
    return t;
}

LinOp assemble_shears(const std::vector<LinOp>& upper, const std::vector<LinOp>& lower) {
    const auto n = static_cast<Eigen::Index>(upper.size());
    LinOp w(n * n, n * n);
    for (Eigen::Index ip = 0; ip < n; ++ip)
        for (Eigen::Index jp = 0; jp < n; ++jp)
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    w(i * n + j, ip * n + jp) = upper[static_cast<std::size_t>(j)](i, ip) *
                                                lower[static_cast<std::size_t>(ip)](j, jp);
    return w;
}

}  // namespace

Intertwiner intertwiner(double r, double s, const GridSpec1D& grid, double near_singular_cutoff) {
    require_domain(r, s, "intertwiner");
    Intertwiner out;
    out.w = assemble_shears(shifts(grid, s / (r + s)), shifts(grid, -1.0));
    out.unitarity_defect = unitarity_defect(out.w);
    out.near_singular = std::abs(r + s) < near_singular_cutoff;
    return out;
}

Complex dirichlet(const GridSpec1D& grid, double u) {
    const auto n = static_cast<long>(grid.n_points());
    const double cycles = u / (2.0 * grid.half_width());
    Complex acc{0.0, 0.0};
    for (long m = -n / 2; m < n / 2; ++m) acc += unit_phase(static_cast<double>(m) * cycles);
    return acc / static_cast<double>(n);
}

LinOp sampled_composition(double r, double s, const GridSpec1D& grid) {
    require_domain(r, s, "sampled_composition");
    const auto n = grid.n_points();
    const double beta = s / (r + s);
    const auto nn = static_cast<Eigen::Index>(n * n);
    const auto sn = static_cast<Eigen::Index>(n);
    // Interpolation weights of the source point (P, Q) = gamma^{-1}(w_i, w_j).
    LinOp dp(nn, sn), dq(nn, sn);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto row = static_cast<Eigen::Index>(i * n + j);
            const double p = grid.node(i) - beta * grid.node(j);
            const double q = grid.node(i) + (1.0 - beta) * grid.node(j);
            for (std::size_t m = 0; m < n; ++m) {
                dp(row, static_cast<Eigen::Index>(m)) = dirichlet(grid, p - grid.node(m));
                dq(row, static_cast<Eigen::Index>(m)) = dirichlet(grid, q - grid.node(m));
            }
        }
    LinOp w(nn, nn);
    for (Eigen::Index p = 0; p < sn; ++p)
        for (Eigen::Index q = 0; q < sn; ++q) w.col(p * sn + q) = dp.col(p).cwiseProduct(dq.col(q));
    return w;
}

Intertwiner polar_intertwiner(double r, double s, const GridSpec1D& grid, double near_singular_cutoff) {
    const LinOp w = sampled_composition(r, s, grid);
    Intertwiner out;
    out.near_singular = std::abs(r + s) < near_singular_cutoff;
    out.unitarity_defect = unitarity_defect(w);
    Eigen::BDCSVD<LinOp> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.w = svd.matrixU() * svd.matrixV().adjoint();
    return out;
}

LinOp partial_trace_second(const LinOp& r, std::size_t n) {
    if (n == 0 || r.rows() != r.cols() || static_cast<std::size_t>(r.rows()) != n * n)
        throw std::invalid_argument("partial_trace_second: operator dimension must be N^2");
    const auto sn = static_cast<Eigen::Index>(n);
    LinOp s(sn, sn);
    for (Eigen::Index ip = 0; ip < sn; ++ip)
        for (Eigen::Index i = 0; i < sn; ++i) {
            Complex acc{0.0, 0.0};
            for (Eigen::Index j = 0; j < sn; ++j) acc += r(i * sn + j, ip * sn + j);
            s(i, ip) = acc;
        }
    return s;
}

double intertwining_residual(const Intertwiner& w, double r, double s, const GroupElement& g,
                             const GridSpec1D& grid, const CVector& v) {
    require_domain(r, s, "intertwining_residual");
    const auto n = static_cast<Eigen::Index>(grid.n_points());
    if (v.size() != n * n) throw std::invalid_argument("intertwining_residual: vector must have dimension N^2");
    const LinOp lhs_op = kron(rep_matrix(r, g, grid), rep_matrix(s, g, grid));
    const LinOp fused = kron(rep_matrix(r + s, g, grid), LinOp::Identity(n, n));
    const CVector lhs = lhs_op * v;
    const CVector rhs = w.w.adjoint() * (fused * (w.w * v));
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

FusionCache::FusionCache(GridSpec1D grid) : grid_(grid), lower_(shifts(grid, -1.0)) {}

const std::vector<LinOp>& FusionCache::upper(int kr, int ks) {
    if (kr == 0 || ks == 0 || kr + ks == 0) throw DomainError("FusionCache: lattice pair outside the fusion domain");
    long num = ks, den = kr + ks;
    const long g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    auto it = upper_.find({num, den});
    if (it == upper_.end())
        it = upper_.emplace(std::make_pair(num, den), shifts(grid_, static_cast<double>(num) / static_cast<double>(den)))
                 .first;
    return it->second;
}

namespace {

void require_compatible(const OperatorField& F, const OperatorField& G, const GridSpec1D& grid) {
    if (!(F.tgrid() == G.tgrid())) throw std::invalid_argument("fusion: fields live on different lattices");
    if (F.dim() != grid.n_points() || G.dim() != grid.n_points())
        throw std::invalid_argument("fusion: field dimension does not match grid");
}

// With W = S_U S_L, S_L = blockdiag_p(T_{-w_p}) on the second factor and
// S_U = T_{b w_j} on the first factor for each j:
//   Tr_2[W (A (x) B) W^*] = sum_j U_j (A o C_j) U_j^*,
//   C_j[p, p'] = (T_{-w_p} B T_{-w_p'}^*)[j, j].
LinOp shear_partial_trace(const std::vector<LinOp>& upper, const std::vector<LinOp>& lower, const LinOp& a,
                          const LinOp& b) {
    const Eigen::Index n = a.rows();
    std::vector<LinOp> x(lower.size());
    for (std::size_t p = 0; p < lower.size(); ++p) x[p].noalias() = lower[p] * b;
    LinOp s = LinOp::Zero(n, n);
    LinOp xj(n, n), tj(n, n), m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index p = 0; p < n; ++p) {
            xj.row(p) = x[static_cast<std::size_t>(p)].row(j);
            tj.row(p) = lower[static_cast<std::size_t>(p)].row(j);
        }
        m.noalias() = xj * tj.adjoint();
        m = m.cwiseProduct(a);
        const LinOp& u = upper[static_cast<std::size_t>(j)];
        s.noalias() += u * m * u.adjoint();
    }
    return s;
}

}  // namespace

LinOp theta1(const OperatorField& F, const OperatorField& G, int kr, int ks, FusionCache& cache) {
    require_compatible(F, G, cache.grid());
    const auto n = static_cast<Eigen::Index>(F.dim());
    if (!F.tgrid().has(kr) || !G.tgrid().has(ks) || kr + ks == 0) return LinOp::Zero(n, n);
    const LinOp& a = F[F.tgrid().slot_of(kr)];
    const LinOp& b = G[G.tgrid().slot_of(ks)];
    if (a.isZero(0.0) || b.isZero(0.0)) return LinOp::Zero(n, n);
    return shear_partial_trace(cache.upper(kr, ks), cache.lower(), a, b);
}

LinOp theta1(const OperatorField& F, const OperatorField& G, int kr, int ks, const GridSpec1D& grid) {
    FusionCache cache(grid);
    return theta1(F, G, kr, ks, cache);
}

LinOp theta1_dense(const OperatorField& F, const OperatorField& G, int kr, int ks, const GridSpec1D& grid) {
    require_compatible(F, G, grid);
    const auto n = static_cast<Eigen::Index>(F.dim());
    if (!F.tgrid().has(kr) || !G.tgrid().has(ks) || kr + ks == 0) return LinOp::Zero(n, n);
    const double delta = F.tgrid().delta();
    const LinOp w = intertwiner(kr * delta, ks * delta, grid).w;
    const LinOp r = w * kron(F.at_k(kr), G.at_k(ks)) * w.adjoint();
    return partial_trace_second(r, F.dim());
}

DualConvolutionResult dual_convolution(const OperatorField& F, const OperatorField& G, const GridSpec1D& grid,
                                       const DualConvolutionOptions& opt) {
    require_compatible(F, G, grid);
    const TGrid& tg = F.tgrid();
    const double delta = tg.delta();
    const double cutoff = opt.near_singular_cutoff < 0.0 ? 0.5 * delta : opt.near_singular_cutoff;
    FusionCache cache(grid);

    std::vector<double> norm_f(tg.size()), norm_g(tg.size());
    double max_f = 0.0, max_g = 0.0;
    for (std::size_t k = 0; k < tg.size(); ++k) {
        norm_f[k] = schatten_norm(F[k], Schatten::One);
        norm_g[k] = schatten_norm(G[k], Schatten::One);
        max_f = std::max(max_f, norm_f[k]);
        max_g = std::max(max_g, norm_g[k]);
    }
    const double pair_floor = opt.pair_tolerance * max_f * max_g;

    const auto n = static_cast<Eigen::Index>(F.dim());
    std::vector<LinOp> out(tg.size(), LinOp::Zero(n, n));
    DualConvolutionResult res{OperatorField::zeros(tg, F.dim()), {}, 0, 0, {}, 0, -1.0};
    res.theta2_bound.assign(tg.size(), 0.0);
    for (std::size_t kt = 0; kt < tg.size(); ++kt) {
        const int t_index = tg.k_at(kt);
        for (std::size_t j = 0; j < tg.size(); ++j) {
            const int r_index = tg.k_at(j);
            const int s_index = t_index - r_index;
            if (!tg.has(s_index)) continue;  // s = 0 or off the lattice: zero by convention
            if (std::abs(t_index * delta) < cutoff) {
                res.near_singular_excluded.emplace_back(r_index, s_index);
                continue;
            }
            const double weight = norm_f[j] * norm_g[tg.slot_of(s_index)];
            if (weight == 0.0 || weight <= pair_floor) {
                ++res.pairs_skipped;
                continue;
            }
            const LinOp th = theta1(F, G, r_index, s_index, cache);
            const double th_norm = schatten_norm(th, Schatten::One);
            res.max_theta1_bound_excess = std::max(res.max_theta1_bound_excess, th_norm - weight);
            res.theta2_bound[kt] += delta * th_norm;
            out[kt] += delta * th;
            ++res.pairs_evaluated;
        }
    }
    res.field = OperatorField(tg, std::move(out));
    res.ratios_used = cache.ratios();
    return res;
}

double coefficient_defect(const OperatorField& left, const OperatorField& right) {
    if (!(left.tgrid() == right.tgrid()) || left.dim() != right.dim())
        throw std::invalid_argument("coefficient_defect: mismatched fields");
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < left.size(); ++k) {
        num = std::max(num, schatten_norm(left[k] - right[k], Schatten::One));
        den = std::max(den, schatten_norm(left[k], Schatten::One));
    }
    if (den == 0.0) {
        if (num == 0.0) return 0.0;
        throw UndefinedRelativeError("product_coefficient_defect: left side vanishes identically");
    }
    return num / den;
}

double product_coefficient_defect(const SampledFunction3D& f1, const SampledFunction3D& f2, const TGrid& tgrid,
                                  const GridSpec1D& grid, const DualConvolutionOptions& opt) {
    const OperatorField left = forward_field(f1 * f2, tgrid, grid);
    const OperatorField right =
        dual_convolution(forward_field(f1, tgrid, grid), forward_field(f2, tgrid, grid), grid, opt).field;
    return coefficient_defect(left, right);
}

}  // namespace hfa
