#include <doctest.h>

#include "hfa/errors.hpp"
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

}  // namespace

TEST_CASE("grid inverse agrees with the pointwise inverse") {
    const GridSpec1D g(8, 1.5);
    const TGrid tg(0.5, 3);
    const auto F = random_field(tg, 8);
    const BoxGrid3D box({1.0, 1.2, 1.4}, {4, 6, 4});
    const auto grid_vals = inverse_transform_grid(F, box, g);
    REQUIRE(grid_vals.size() == box.size());
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t b = 0; b < 6; ++b)
            for (std::size_t a = 0; a < 4; ++a) {
                const GroupElement e{box.node(0, a), box.node(1, b), box.node(2, c)};
                Complex direct = 0;
                for (std::size_t s = 0; s < tg.size(); ++s)
                    direct += tg.delta() * (F[s] * rep_matrix(tg.node(s), e, g).adjoint()).trace();
                CHECK(std::abs(grid_vals[box.index(a, b, c)] - direct) < 1e-12);
                CHECK(std::abs(inverse_transform(F, e, g) - direct) < 1e-12);
            }
}

TEST_CASE("field norms on a hand-built field") {
    const TGrid tg(0.5, 1);
    std::vector<LinOp> mats{LinOp::Identity(2, 2) * 3.0, LinOp::Zero(2, 2)};
    mats[1](0, 1) = 4.0;
    const OperatorField F(tg, mats);
    CHECK(a_norm(F) == doctest::Approx(0.5 * (6.0 + 4.0)));
    CHECK(m_norm(F) == doctest::Approx(6.0));
    CHECK(w_norm_field(F) == doctest::Approx(0.5 * (3.0 + 4.0)));
    CHECK(std::abs(field_pairing(F, F) - 0.5 * 18.0) < 1e-14);
}

TEST_CASE("norm relations on random fields") {
    const TGrid tg(0.25, 4);
    for (int rep = 0; rep < 10; ++rep) {
        const auto F = random_field(tg, 6), G = random_field(tg, 6);
        CHECK(w_norm_field(F) <= a_norm(F) + 1e-12);
        CHECK(a_norm(F + G) <= a_norm(F) + a_norm(G) + 1e-12);
        CHECK(a_norm(F) <= 2 * tg.k_max() * tg.delta() * m_norm(F) + 1e-12);
        CHECK(std::abs(field_pairing(F, G) - field_pairing(G, F)) < 1e-10);
    }
}

TEST_CASE("plancherel defect from the field equals the direct computation") {
    const GridSpec1D g(16, 2.0);
    const TGrid tg(0.25, 8);
    const auto f = SampledFunction3D::sample(BoxGrid3D({2.5, 2.5, 3.0}, {16, 16, 16}),
                                             ClosedForm::gaussian({0.4, 0.4, 0.6}, {}, 1.0));
    const auto F = forward_field(f, tg, g);
    CHECK(plancherel_defect(f, F) == doctest::Approx(plancherel_defect(f, tg, g)).epsilon(1e-10));
}

TEST_CASE("zero input has no relative plancherel defect") {
    const GridSpec1D g(8, 1.5);
    const auto z = SampledFunction3D::zeros(BoxGrid3D({1, 1, 1}, {4, 4, 4}));
    CHECK_THROWS_AS(plancherel_defect(z, TGrid(0.5, 2), g), UndefinedRelativeError);
}

TEST_CASE("adjoint pairing sides agree with explicit sums") {
    const GridSpec1D g(8, 1.5);
    const TGrid tg(0.5, 2);
    const BoxGrid3D box({1.5, 1.5, 2.0}, {4, 4, 6});
    const auto h = SampledFunction3D::sample(box, ClosedForm::gaussian({0.5, 0.6, 0.7}, {0.1, 0.2, 0}, 0.3));
    const auto F = random_field(tg, 8);
    Complex lhs = 0, rhs = 0;
    for (std::size_t c = 0; c < 6; ++c)
        for (std::size_t b = 0; b < 4; ++b)
            for (std::size_t a = 0; a < 4; ++a) {
                const GroupElement e{box.node(0, a), box.node(1, b), box.node(2, c)};
                for (std::size_t s = 0; s < tg.size(); ++s) {
                    const LinOp u = rep_matrix(tg.node(s), e, g);
                    lhs += h.at(a, b, c) * (F[s] * u.adjoint()).trace();
                    rhs += h.at(3 - a, 3 - b, 5 - c) * (u * F[s]).trace();
                }
            }
    lhs *= tg.delta() * box.cell_volume();
    rhs *= tg.delta() * box.cell_volume();
    const auto p = adjoint_pairing(h, F, g);
    CHECK(std::abs(p.lhs - lhs) < 1e-12 * std::abs(lhs));
    CHECK(std::abs(p.rhs - rhs) < 1e-12 * std::abs(rhs));
    CHECK(p.defect == std::abs(p.lhs - p.rhs));
    CHECK(adjoint_pairing_defect(h, F, g) == p.defect);
}

TEST_CASE("trivial fields") {
    const GridSpec1D g(8, 1.5);
    const TGrid tg(0.5, 2);
    const auto z = OperatorField::zeros(tg, 8);
    CHECK(inverse_transform(z, {0.1, 0.2, 0.3}, g) == Complex(0));
    CHECK(a_norm(z) == 0);
    CHECK(m_norm(z) == 0);
    auto one = z;
    const LinOp a = test::random_op(8, 8);
    one[tg.slot_of(1)] = a;
    CHECK(std::abs(inverse_transform(one, {}, g) - tg.delta() * a.trace()) < 1e-13);
    CHECK(a_norm(one) == doctest::Approx(tg.delta() * schatten_norm(a, Schatten::One)));
    CHECK(m_norm(one) == doctest::Approx(schatten_norm(a, Schatten::One)));
    const auto F = random_field(tg, 8);
    CHECK(a_norm(F.scaled(Complex(0, -3))) == doctest::Approx(3 * a_norm(F)).epsilon(1e-12));
}

TEST_CASE("function-side norms and defects under scaling") {
    const GridSpec1D g(16, 2.0);
    const TGrid tg(0.25, 8);
    const BoxGrid3D box({2.5, 2.5, 3.0}, {16, 16, 16});
    const auto f = SampledFunction3D::sample(box, ClosedForm::gaussian({0.4, 0.4, 0.6}, {}, 1.0));
    CHECK(w_norm(SampledFunction3D::zeros(box), tg, g) == 0);
    CHECK(w_norm(f.scaled(-2.5), tg, g) == doctest::Approx(2.5 * w_norm(f, tg, g)).epsilon(1e-12));
    CHECK(plancherel_defect(f.scaled(7.0), tg, g) == doctest::Approx(plancherel_defect(f, tg, g)).epsilon(1e-12));
    const auto F = forward_field(f, tg, g);
    CHECK(adjoint_pairing(SampledFunction3D::zeros(box), F, g).defect == 0);
    CHECK(adjoint_pairing(f, OperatorField::zeros(tg, 16), g).defect == 0);
}
