#include <doctest.h>

#include "hfa/errors.hpp"
#include "hfa/fusion.hpp"
#include "hfa/plancherel.hpp"
#include "hfa/schrodinger.hpp"
#include "support.hpp"

using namespace hfa;

namespace {

OperatorField random_field(const TGrid& tg, Eigen::Index dim) {
    std::vector<LinOp> mats;
    for (std::size_t s = 0; s < tg.size(); ++s) mats.push_back(test::random_op(dim, dim));
    return OperatorField(tg, std::move(mats));
}

// Shear along the second axis by -w_i in row block i, then along the first axis
// by b w_j in column j, each assembled as an explicit N^2 x N^2 matrix.
LinOp shear_oracle(double r, double s, const GridSpec1D& g) {
    const auto n = static_cast<Eigen::Index>(g.n_points());
    const double b = s / (r + s);
    LinOp lower = LinOp::Zero(n * n, n * n), upper = LinOp::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const LinOp t = test::dft_oracle_shift(g, -g.node(static_cast<std::size_t>(i)));
        lower.block(i * n, i * n, n, n) = t;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        const LinOp t = test::dft_oracle_shift(g, b * g.node(static_cast<std::size_t>(j)));
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index i2 = 0; i2 < n; ++i2) upper(i * n + j, i2 * n + j) = t(i, i2);
    }
    return upper * lower;
}

}  // namespace

TEST_CASE("fusion domain") {
    CHECK(in_fusion_domain(1, 2));
    CHECK_FALSE(in_fusion_domain(0, 2));
    CHECK_FALSE(in_fusion_domain(1, -1));
    CHECK_THROWS_AS(gamma(1, -1), DomainError);
    CHECK_THROWS_AS(intertwiner(0, 1, GridSpec1D(8, 1)), DomainError);
    const Eigen::Matrix2d m = gamma(1.0, 3.0);
    CHECK(m(0, 0) == 0.25);
    CHECK(m(0, 1) == 0.75);
    CHECK(m(1, 0) == -1.0);
    CHECK(m(1, 1) == 1.0);
}

TEST_CASE("intertwiner equals the explicit product of shears") {
    const GridSpec1D g(8, 1.5);
    for (auto [r, s] : {std::pair{1.0, 2.0}, {-0.5, 1.75}, {2.0, -0.25}, {-1.0, -3.0}}) {
        const auto w = intertwiner(r, s, g);
        CHECK(max_abs(w.w - shear_oracle(r, s, g)) < 1e-12);
        CHECK(w.unitarity_defect < 1e-12);
        CHECK(max_abs(w.w.adjoint() * w.w - LinOp::Identity(64, 64)) < 1e-12);
    }
    CHECK(intertwiner(1.0, -0.95, g, 0.1).near_singular);
    CHECK_FALSE(intertwiner(1.0, 1.0, g, 0.1).near_singular);
}

TEST_CASE("sampled composition is not unitary but its polar factor is") {
    const GridSpec1D g(8, 1.5);
    const auto p = polar_intertwiner(1.0, 0.7, g);
    CHECK(p.unitarity_defect > 1e-3);
    CHECK(max_abs(p.w.adjoint() * p.w - LinOp::Identity(64, 64)) < 1e-12);
    CHECK(std::abs(dirichlet(g, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(dirichlet(g, g.spacing())) < 1e-14);
}

TEST_CASE("intertwining residual is small on resolved vectors") {
    const GridSpec1D g(32, 2.83);
    const CVector v1 = test::gaussian_vector(g, 0.5);
    const CVector v = kron(v1, v1.transpose()).reshaped();  // product of Gaussians
    const auto w = intertwiner(1.0, 0.5, g);
    CHECK(intertwining_residual(w, 1.0, 0.5, {0.1, -0.2, 0.3}, g, v) < 5e-2);
}

TEST_CASE("partial trace identities") {
    const Eigen::Index n = 5;
    for (int rep = 0; rep < 10; ++rep) {
        const LinOp a = test::random_op(n, n), b = test::random_op(n, n);
        CHECK(max_abs(partial_trace_second(kron(a, b), n) - a * b.trace()) < 1e-12);
        const LinOp r = test::random_op(n * n, n * n);
        CHECK(std::abs(partial_trace_second(r, n).trace() - r.trace()) < 1e-12);
        // (I (x) Tr)[(X (x) I) R (Y (x) I)] = X (I (x) Tr)[R] Y.
        const LinOp x = test::random_op(n, n), y = test::random_op(n, n);
        const LinOp id = LinOp::Identity(n, n);
        CHECK(max_abs(partial_trace_second(kron(x, id) * r * kron(y, id), n) - x * partial_trace_second(r, n) * y) < 1e-11);
    }
    CHECK_THROWS_AS(partial_trace_second(LinOp::Zero(6, 6), 4), std::invalid_argument);
}

TEST_CASE("fast theta1 agrees with the dense oracle") {
    const GridSpec1D g(8, 1.5);
    const TGrid tg(0.5, 3);
    const auto F = random_field(tg, 8), G = random_field(tg, 8);
    FusionCache cache(g);
    for (auto [kr, ks] : {std::pair{1, 2}, {-3, 1}, {2, 2}, {3, -2}, {-1, -2}}) {
        const LinOp dense = theta1_dense(F, G, kr, ks, g);
        CHECK(max_abs(theta1(F, G, kr, ks, cache) - dense) < 1e-11 * std::max(1.0, max_abs(dense)));
        CHECK(max_abs(theta1(F, G, kr, ks, g) - dense) < 1e-11 * std::max(1.0, max_abs(dense)));
    }
    CHECK(theta1(F, G, 1, -1, cache).isZero());
    CHECK(theta1(F, G, 0, 2, cache).isZero());
    CHECK(theta1(F, G, 4, 1, cache).isZero());
}

TEST_CASE("theta1 trace-norm bound") {
    const GridSpec1D g(8, 1.5);
    const TGrid tg(0.5, 2);
    const auto F = random_field(tg, 8), G = random_field(tg, 8);
    FusionCache cache(g);
    for (int kr : {-2, -1, 1, 2})
        for (int ks : {-2, -1, 1, 2}) {
            if (kr + ks == 0) continue;
            const double bound = schatten_norm(F.at_k(kr), Schatten::One) * schatten_norm(G.at_k(ks), Schatten::One);
            CHECK(schatten_norm(theta1(F, G, kr, ks, cache), Schatten::One) <= bound * (1 + 1e-12));
        }
}

TEST_CASE("fusion cache shares equal ratios") {
    FusionCache cache(GridSpec1D(8, 1.5));
    cache.upper(1, 2);
    cache.upper(2, 4);
    cache.upper(-1, -2);
    CHECK(cache.ratios() == 1);
    cache.upper(1, 3);
    CHECK(cache.ratios() == 2);
    CHECK(cache.lower().size() == 8);
    CHECK_THROWS_AS(cache.upper(1, -1), DomainError);
}

TEST_CASE("dual convolution bookkeeping") {
    const GridSpec1D g(8, 1.5);
    const TGrid tg(0.5, 2);
    const auto F = random_field(tg, 8), G = random_field(tg, 8);
    const auto res = dual_convolution(F, G, g);
    CHECK(res.pairs_evaluated > 0);
    CHECK(res.max_theta1_bound_excess <= 1e-9);
    // Node k sums theta1(j, k - j) over j; check one node by hand.
    FusionCache cache(g);
    LinOp expect = LinOp::Zero(8, 8);
    for (int j = -2; j <= 2; ++j)
        if (j != 0 && tg.has(1 - j)) expect += tg.delta() * theta1(F, G, j, 1 - j, cache);
    CHECK(max_abs(res.field.at_k(1) - expect) < 1e-11 * max_abs(expect));
    for (std::size_t s = 0; s < tg.size(); ++s)
        CHECK(schatten_norm(res.field[s], Schatten::One) <= res.theta2_bound[s] * (1 + 1e-12));
}

TEST_CASE("coefficient defect edge cases") {
    const TGrid tg(0.5, 1);
    const auto z = OperatorField::zeros(tg, 2);
    CHECK(coefficient_defect(z, z) == 0.0);
    const auto F = random_field(tg, 2);
    CHECK_THROWS_AS(coefficient_defect(z, F), UndefinedRelativeError);
    CHECK(coefficient_defect(F, F) == 0.0);
    CHECK(coefficient_defect(F, z) == doctest::Approx(1.0));
    CHECK_THROWS_AS(coefficient_defect(F, random_field(tg, 3)), std::invalid_argument);
}

TEST_CASE("gamma values") {
    CHECK(gamma(1.5, 1.5) == (Eigen::Matrix2d() << 0.5, 0.5, -1, 1).finished());
    CHECK(gamma(2, -1) == (Eigen::Matrix2d() << 2, -1, -1, 1).finished());
    for (int rep = 0; rep < 20; ++rep) {
        const double r = test::random_frequency(), s = test::random_frequency();
        if (!in_fusion_domain(r, s)) continue;
        CHECK(std::abs(gamma(r, s).determinant() - 1.0) < 1e-14);
    }
}

TEST_CASE("theta1 preserves trace and vanishes with a factor") {
    const GridSpec1D g(8, 1.5);
    const TGrid tg(0.5, 2);
    auto F = random_field(tg, 8);
    const auto G = random_field(tg, 8);
    FusionCache cache(g);
    for (auto [kr, ks] : {std::pair{1, 1}, {-2, 1}, {2, -1}}) {
        const LinOp th = theta1(F, G, kr, ks, cache);
        CHECK(std::abs(th.trace() - F.at_k(kr).trace() * G.at_k(ks).trace()) < 1e-10 * std::max(1.0, std::abs(th.trace())));
    }
    F[tg.slot_of(1)].setZero();
    CHECK(max_abs(theta1(F, G, 1, 1, cache)) < 1e-14);
    CHECK(dual_convolution(OperatorField::zeros(tg, 8), G, g).field.mats() == OperatorField::zeros(tg, 8).mats());
}

TEST_CASE("partial trace is trace-norm contractive") {
    for (int rep = 0; rep < 20; ++rep) {
        const LinOp r = test::random_op(16, 16);
        CHECK(schatten_norm(partial_trace_second(r, 4), Schatten::One) <= schatten_norm(r, Schatten::One) + 1e-9);
    }
}

TEST_CASE("product coefficient defect with a zero factor") {
    const GridSpec1D g(8, 1.5);
    const TGrid tg(0.5, 2);
    const BoxGrid3D box({2, 2, 2}, {8, 8, 16});
    const auto f = SampledFunction3D::sample(box, ClosedForm::gaussian({0.5, 0.5, 0.5}, {}, 0.5));
    CHECK(product_coefficient_defect(f, SampledFunction3D::zeros(box), tg, g) == 0.0);
}
