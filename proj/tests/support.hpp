#pragma once

// Generators and oracles shared by the unit tests.

#include <random>

#include "hfa/grid.hpp"
#include "hfa/group.hpp"

namespace hfa::test {

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(0x5eed);
    return r;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline GroupElement random_element(double bound = 1.0) {
    return {uniform(-bound, bound), uniform(-bound, bound), uniform(-bound, bound)};
}

inline LinOp random_op(Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> nd;
    LinOp m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(nd(rng()), nd(rng()));
    return m;
}

/// Frequency in [0.25, 3] with random sign.
inline double random_frequency() { return (uniform(0, 1) < 0.5 ? -1.0 : 1.0) * uniform(0.25, 3.0); }

/// Explicit unitary DFT matrix with frequencies m/(2L), m in [-N/2, N/2), built from
/// the defining formula; used as an independent oracle for translations.
inline LinOp dft_oracle_shift(const GridSpec1D& g, double x) {
    const auto n = static_cast<Eigen::Index>(g.n_points());
    LinOp f(n, n), d = LinOp::Zero(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        const double xi = g.frequency(static_cast<long>(m) - n / 2);
        d(m, m) = std::polar(1.0, -kTwoPi * xi * x);
        for (Eigen::Index i = 0; i < n; ++i)
            f(m, i) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), -kTwoPi * xi * (g.node(static_cast<std::size_t>(i)) + g.half_width()));
    }
    return f.adjoint() * d * f;
}

inline CVector gaussian_vector(const GridSpec1D& g, double sigma, double centre = 0.0) {
    CVector v(static_cast<Eigen::Index>(g.n_points()));
    for (std::size_t i = 0; i < g.n_points(); ++i) {
        const double u = (g.node(i) - centre) / sigma;
        v(static_cast<Eigen::Index>(i)) = std::exp(-0.5 * u * u);
    }
    return v.normalized();
}

}  // namespace hfa::test
