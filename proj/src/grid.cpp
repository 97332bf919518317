#include "hfa/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hfa/errors.hpp"

namespace hfa {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec1D::GridSpec1D(std::size_t n_points, double half_width)
    : n_(n_points), half_width_(half_width), spacing_(0.0) {
    if (n_points < 8 || !is_power_of_two(n_points))
        throw std::invalid_argument("GridSpec1D: n_points must be a power of two >= 8, got " +
                                    std::to_string(n_points));
    if (!std::isfinite(half_width) || half_width <= 0.0)
        throw std::invalid_argument("GridSpec1D: half_width must be positive and finite");
    spacing_ = 2.0 * half_width / static_cast<double>(n_points);
}

Complex unit_phase(double u) {
    const double r = u - std::round(u);
    return std::polar(1.0, kTwoPi * r);
}

std::vector<double> GridSpec1D::nodes() const {
    std::vector<double> w(n_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = node(i);
    return w;
}

std::vector<Complex> shift_kernel(const GridSpec1D& grid, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("fractional_shift_op: non-finite shift");
    const auto n = static_cast<long>(grid.n_points());
    const double shift_cycles = x / (2.0 * grid.half_width());  // x * xi_1
    std::vector<Complex> kernel(static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (long m = -n / 2; m < n / 2; ++m) {
            // xi_m (k h - x) = m k / N - m x / (2L); each part reduced separately.
            const double a = static_cast<double>((m * k) % n) / static_cast<double>(n);
            acc += unit_phase(a - static_cast<double>(m) * shift_cycles);
        }
        kernel[static_cast<std::size_t>(k)] = acc / static_cast<double>(n);
    }
    return kernel;
}

LinOp fractional_shift_op(const GridSpec1D& grid, double x) {
    const auto kernel = shift_kernel(grid, x);
    const auto n = grid.n_points();
    LinOp t(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) t(i, j) = kernel[(i + n - j) % n];
    return t;
}

CVector modulation_diagonal(const GridSpec1D& grid, double beta) {
    if (!std::isfinite(beta)) throw std::invalid_argument("modulation_op: non-finite beta");
    const auto n = grid.n_points();
    CVector d(n);
    for (std::size_t i = 0; i < n; ++i) d(i) = unit_phase(-beta * grid.node(i));
    return d;
}

LinOp modulation_op(const GridSpec1D& grid, double beta) {
    return modulation_diagonal(grid, beta).asDiagonal();
}

Eigen::VectorXd singular_values(const LinOp& a) {
    if (a.size() == 0) return Eigen::VectorXd{};
    if (a.rows() <= 32) {
        Eigen::JacobiSVD<LinOp> svd(a);
        return svd.singularValues();
    }
    Eigen::BDCSVD<LinOp> svd(a);
    return svd.singularValues();
}

double schatten_norm(const LinOp& a, Schatten p) {
    require_valid(a, "schatten_norm");
    const Eigen::VectorXd s = singular_values(a);
    if (s.size() == 0) return 0.0;
    switch (p) {
        case Schatten::One: return s.sum();
        case Schatten::Two: return s.norm();
        case Schatten::Infinity: return s(0);
    }
    return 0.0;
}

LinOp kron(const LinOp& a, const LinOp& b, std::size_t max_dim) {
    const auto ra = static_cast<std::size_t>(a.rows()), ca = static_cast<std::size_t>(a.cols());
    const auto rb = static_cast<std::size_t>(b.rows()), cb = static_cast<std::size_t>(b.cols());
    if (ra * rb > max_dim || ca * cb > max_dim)
        throw CapacityError("kron: result dimension " + std::to_string(ra * rb) +
                            " exceeds cap " + std::to_string(max_dim));
    LinOp out(ra * rb, ca * cb);
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t k = 0; k < ca; ++k)
            out.block(i * rb, k * cb, rb, cb) = a(i, k) * b;
    return out;
}

void require_valid(const LinOp& a, const char* what) {
    if (a.rows() != a.cols())
        throw std::invalid_argument(std::string(what) + ": operator is not square");
    if (!a.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

double max_abs(const LinOp& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace hfa
