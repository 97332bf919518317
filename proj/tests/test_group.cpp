#include <doctest.h>

#include <sstream>

#include "hfa/group.hpp"
#include "support.hpp"

using namespace hfa;
using hfa::test::random_element;

namespace {

double dist(const GroupElement& a, const GroupElement& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

}  // namespace

TEST_CASE("group law on explicit elements") {
    const GroupElement g = mul({1, 2, 3}, {4, 5, 6});
    CHECK(g == GroupElement{5, 7, 0.5 * (1 * 5 - 4 * 2) + 9});
    CHECK(inv({1, 2, 3}) == GroupElement{-1, -2, -3});
    CHECK(mul({0, 0, 0}, {1, 2, 3}) == GroupElement{1, 2, 3});
}

TEST_CASE("group axioms on random elements") {
    for (int rep = 0; rep < 200; ++rep) {
        const auto a = random_element(3), b = random_element(3), c = random_element(3);
        CHECK(dist(mul(mul(a, b), c), mul(a, mul(b, c))) < 1e-13);
        CHECK(dist(mul(a, inv(a)), {}) < 1e-15);
        CHECK(dist(mul(inv(a), a), {}) < 1e-15);
        // Central elements commute with everything.
        const GroupElement z{0, 0, c.z};
        CHECK(dist(mul(a, z), mul(z, a)) < 1e-15);
        // The commutator is (0, 0, a.x b.y - b.x a.y).
        const auto comm = mul(mul(a, b), mul(inv(a), inv(b)));
        CHECK(std::abs(comm.x) < 1e-14);
        CHECK(std::abs(comm.y) < 1e-14);
        CHECK(comm.z == doctest::Approx(a.x * b.y - b.x * a.y).epsilon(1e-12));
    }
    CHECK_FALSE(is_finite({0, NAN, 0}));
    CHECK(is_finite({1, 2, 3}));
}

TEST_CASE("box grid is cell centred and symmetric") {
    const BoxGrid3D b({1.0, 2.0, 3.0}, {4, 6, 8});
    CHECK(b.node(0, 0) == doctest::Approx(-0.75));
    CHECK(b.spacing(2) == doctest::Approx(0.75));
    for (int axis = 0; axis < 3; ++axis) {
        const std::size_t n = b.counts()[static_cast<std::size_t>(axis)];
        for (std::size_t i = 0; i < n; ++i) CHECK(b.node(axis, n - 1 - i) == -b.node(axis, i));
    }
    CHECK(b.size() == 192);
    CHECK(b.index(1, 2, 3) == 1 + 4 * (2 + 6 * 3));
    CHECK_THROWS_AS(BoxGrid3D({1, 1, 1}, {3, 4, 4}), std::invalid_argument);
    CHECK_THROWS_AS(BoxGrid3D({0, 1, 1}, {4, 4, 4}), std::invalid_argument);
}

TEST_CASE("closed-form derivative matches a central difference") {
    const ClosedForm f = ClosedForm::gaussian({0.5, 0.6, 0.7}, {0.1, -0.2, 0.3}, 0.9,
                                              Polynomial{{{0, 0, 0}, 1.0}, {{1, 0, 1}, Complex(0.5, 0.2)}, {{0, 2, 3}, 0.3}});
    const ClosedForm d = f.dz();
    const double h = 1e-5;
    for (int rep = 0; rep < 20; ++rep) {
        const auto v = random_element(1.0);
        const Complex fd = (f(v.x, v.y, v.z + h) - f(v.x, v.y, v.z - h)) / (2 * h);
        CHECK(std::abs(fd - d(v.x, v.y, v.z)) < 1e-7);
    }
}

TEST_CASE("closed-form products and scaling are pointwise") {
    const ClosedForm a = ClosedForm::gaussian({0.5, 0.6, 0.7}, {0.1, 0, 0}, 0.4, Polynomial{{{1, 0, 0}, 1.0}});
    const ClosedForm b = ClosedForm::gaussian({0.8, 0.3, 0.9}, {0, 0.2, -0.1}, -1.1, Polynomial{{{0, 1, 1}, 2.0}});
    const ClosedForm ab = a * b;
    const ClosedForm c = a.scaled(Complex(0, 2));
    for (int rep = 0; rep < 20; ++rep) {
        const auto v = random_element(1.0);
        CHECK(std::abs(ab(v.x, v.y, v.z) - a(v.x, v.y, v.z) * b(v.x, v.y, v.z)) < 1e-13);
        CHECK(std::abs(c(v.x, v.y, v.z) - Complex(0, 2) * a(v.x, v.y, v.z)) < 1e-14);
    }
    CHECK(std::abs(ClosedForm::constant(3.0)(1, 2, 3) - 3.0) < 1e-15);
    CHECK(std::abs(ClosedForm::constant(3.0).dz()(1, 2, 3)) < 1e-15);
}

TEST_CASE("gaussian carrier sign") {
    // exp(-2 pi i a z): the phase at z = 1/(4a) is -i.
    const ClosedForm g = ClosedForm::gaussian({1e6, 1e6, 1e6}, {}, 2.0);
    CHECK(std::abs(g(0, 0, 0.125) - Complex(0, -1)) < 1e-9);
}

TEST_CASE("sampled functions") {
    const BoxGrid3D box({2, 2, 2}, {8, 8, 8});
    const ClosedForm f = ClosedForm::gaussian({0.5, 0.5, 0.5});
    const auto s = SampledFunction3D::sample(box, f);
    CHECK(s.has_analytic_dz());
    CHECK(s.at(2, 3, 4) == f(box.node(0, 2), box.node(1, 3), box.node(2, 4)));
    // Rectangle rule on a well-resolved Gaussian: integral (2 pi)^{3/2} sigma^3.
    const auto fine = SampledFunction3D::sample(BoxGrid3D({4, 4, 4}, {32, 32, 32}), f);
    CHECK(fine.l1_norm() == doctest::Approx(std::pow(kTwoPi, 1.5) * 0.125).epsilon(1e-10));
    CHECK(fine.boundary_max_abs() < 1e-12);
    CHECK(s.max_abs() <= 1.0);
    const auto sum = s + s.scaled(2.0);
    CHECK(std::abs(sum.at(1, 1, 1) - 3.0 * s.at(1, 1, 1)) < 1e-15);
    const auto sq = s * s;
    REQUIRE(sq.source().has_value());
    CHECK(std::abs(sq.at(1, 2, 3) - s.at(1, 2, 3) * s.at(1, 2, 3)) < 1e-15);
    CHECK_THROWS_AS(s + fine, std::invalid_argument);
    CHECK_THROWS_AS(SampledFunction3D(box, std::vector<Complex>(3)), std::invalid_argument);
    CHECK_THROWS_AS(SampledFunction3D(box, s.samples()).analytic_dz_samples(), std::logic_error);
}

TEST_CASE("check map is an exact reflection") {
    const BoxGrid3D box({2, 2, 2}, {8, 6, 4});
    const ClosedForm f = ClosedForm::gaussian({0.5, 0.7, 0.9}, {0.3, -0.2, 0.1}, 0.7);
    const auto s = SampledFunction3D::sample(box, f);
    const auto c = check_map(s);
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 6; ++b)
            for (std::size_t k = 0; k < 4; ++k)
                CHECK(c.at(a, b, k) == f(-box.node(0, a), -box.node(1, b), -box.node(2, k)));
    const auto cc = check_map(c);
    CHECK(cc.samples() == s.samples());
}

TEST_CASE("sampled text format round trips bit-exactly") {
    const BoxGrid3D box({1.3, 2.1, 0.7}, {4, 6, 8});
    const auto s = SampledFunction3D::sample(box, ClosedForm::gaussian({0.3, 0.7, 0.2}, {}, 1.3));
    std::stringstream ss;
    write_sampled(ss, s);
    const auto r = read_sampled(ss);
    CHECK(r.grid() == s.grid());
    CHECK(r.samples() == s.samples());
    CHECK_FALSE(r.has_analytic_dz());
}

TEST_CASE("malformed sampled files are rejected") {
    std::istringstream bad1("box 1 1 1\ncounts 2 2 2\n1 0\n");
    CHECK_THROWS_AS(read_sampled(bad1), std::invalid_argument);
    std::istringstream bad2("counts 2 2 2\n");
    CHECK_THROWS_AS(read_sampled(bad2), std::invalid_argument);
    std::istringstream bad3("box 1 1 1\ncounts 2 2 2\n" + std::string(8, 'x'));
    CHECK_THROWS_AS(read_sampled(bad3), std::invalid_argument);
}

TEST_CASE("worked products and inverses") {
    CHECK(mul({1, 0, 0}, {0, 1, 0}) == GroupElement{1, 1, 0.5});
    CHECK(mul({0, 1, 0}, {1, 0, 0}) == GroupElement{1, 1, -0.5});
    CHECK(inv({}) == GroupElement{});
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = random_element(5);
        CHECK(inv(inv(g)) == g);
        CHECK(mul(g, {}) == g);
    }
}

TEST_CASE("check map on even and odd functions") {
    const BoxGrid3D box({2, 2, 2}, {8, 8, 8});
    const auto even = SampledFunction3D::sample(box, ClosedForm::gaussian({0.5, 0.6, 0.7}));
    CHECK(check_map(even).samples() == even.samples());
    const auto odd = SampledFunction3D::sample(box, ClosedForm::gaussian({0.5, 0.6, 0.7}, {}, 0, Polynomial{{{0, 0, 1}, 1.0}}));
    const auto c = check_map(odd);
    for (std::size_t i = 0; i < c.samples().size(); ++i) CHECK(c.samples()[i] == -odd.samples()[i]);
}
