#include "hfa/group.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hfa {

GroupElement mul(const GroupElement& g1, const GroupElement& g2) {
    return {g1.x + g2.x, g1.y + g2.y, 0.5 * (g1.x * g2.y - g2.x * g1.y) + g1.z + g2.z};
}

GroupElement inv(const GroupElement& g) { return {-g.x, -g.y, -g.z}; }

bool is_finite(const GroupElement& g) {
    return std::isfinite(g.x) && std::isfinite(g.y) && std::isfinite(g.z);
}

// ---------------------------------------------------------------------------

BoxGrid3D::BoxGrid3D(std::array<double, 3> half_widths, std::array<std::size_t, 3> counts)
    : half_widths_(half_widths), counts_(counts), spacing_{} {
    for (std::size_t d = 0; d < 3; ++d) {
        if (!std::isfinite(half_widths[d]) || half_widths[d] <= 0.0)
            throw std::invalid_argument("BoxGrid3D: half-widths must be positive and finite");
        if (counts[d] == 0 || counts[d] % 2 != 0)
            throw std::invalid_argument("BoxGrid3D: counts must be positive and even");
        spacing_[d] = 2.0 * half_widths[d] / static_cast<double>(counts[d]);
    }
}

double BoxGrid3D::node(int axis, std::size_t i) const {
    const auto d = static_cast<std::size_t>(axis);
    const double offset = static_cast<double>(i) + 0.5 - 0.5 * static_cast<double>(counts_[d]);
    return offset * spacing_[d];
}

// ---------------------------------------------------------------------------

ClosedForm::ClosedForm(Polynomial p, std::array<double, 3> alpha, std::array<double, 3> mu,
                       std::array<double, 3> kappa)
    : poly_(std::move(p)), alpha_(alpha), mu_(mu), kappa_(kappa) {
    for (std::size_t d = 0; d < 3; ++d) {
        if (!(alpha_[d] >= 0.0) || !std::isfinite(alpha_[d]))
            throw std::invalid_argument("ClosedForm: alpha must be finite and >= 0");
        if (alpha_[d] == 0.0) mu_[d] = 0.0;
    }
    std::erase_if(poly_, [](const auto& kv) { return kv.second == Complex{0.0, 0.0}; });
}

ClosedForm ClosedForm::gaussian(std::array<double, 3> sigma, std::array<double, 3> center,
                                double z_carrier, Polynomial p) {
    std::array<double, 3> alpha{};
    for (std::size_t d = 0; d < 3; ++d) {
        if (!(sigma[d] > 0.0)) throw std::invalid_argument("ClosedForm::gaussian: sigma must be > 0");
        alpha[d] = 1.0 / (2.0 * sigma[d] * sigma[d]);
    }
    return ClosedForm(std::move(p), alpha, center, {0.0, 0.0, -z_carrier});
}

ClosedForm ClosedForm::constant(Complex value) {
    return ClosedForm({{{0, 0, 0}, value}}, {}, {}, {});
}

Complex ClosedForm::operator()(double x, double y, double z) const {
    const std::array<double, 3> v{x, y, z};
    Complex p{0.0, 0.0};
    for (const auto& [e, c] : poly_)
        p += c * std::pow(x, e[0]) * std::pow(y, e[1]) * std::pow(z, e[2]);
    double quad = 0.0;
    double cycles = 0.0;
    for (std::size_t d = 0; d < 3; ++d) {
        const double u = v[d] - mu_[d];
        quad += alpha_[d] * u * u;
        cycles += kappa_[d] * v[d];
    }
    cycles -= std::round(cycles);
    return p * std::exp(-quad) * std::polar(1.0, kTwoPi * cycles);
}

ClosedForm ClosedForm::dz() const {
    // d/dz [p E] = (dp/dz + p * (-2 alpha_z (z - mu_z) + 2 pi i kappa_z)) E
    Polynomial out;
    const Complex linear_const{2.0 * alpha_[2] * mu_[2], kTwoPi * kappa_[2]};
    for (const auto& [e, c] : poly_) {
        if (e[2] > 0) out[{e[0], e[1], e[2] - 1}] += c * static_cast<double>(e[2]);
        out[{e[0], e[1], e[2] + 1}] += -2.0 * alpha_[2] * c;
        out[e] += linear_const * c;
    }
    return ClosedForm(std::move(out), alpha_, mu_, kappa_);
}

ClosedForm ClosedForm::scaled(Complex c) const {
    Polynomial p = poly_;
    for (auto& kv : p) kv.second *= c;
    return ClosedForm(std::move(p), alpha_, mu_, kappa_);
}

ClosedForm operator*(const ClosedForm& a, const ClosedForm& b) {
    std::array<double, 3> alpha{}, mu{}, kappa{};
    double log_scale = 0.0;
    for (std::size_t d = 0; d < 3; ++d) {
        alpha[d] = a.alpha_[d] + b.alpha_[d];
        kappa[d] = a.kappa_[d] + b.kappa_[d];
        if (alpha[d] > 0.0) {
            mu[d] = (a.alpha_[d] * a.mu_[d] + b.alpha_[d] * b.mu_[d]) / alpha[d];
            const double gap = a.mu_[d] - b.mu_[d];
            log_scale -= a.alpha_[d] * b.alpha_[d] / alpha[d] * gap * gap;
        }
    }
    const double scale = std::exp(log_scale);
    Polynomial p;
    for (const auto& [ea, ca] : a.poly_)
        for (const auto& [eb, cb] : b.poly_)
            p[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += scale * ca * cb;
    return ClosedForm(std::move(p), alpha, mu, kappa);
}

// ---------------------------------------------------------------------------

SampledFunction3D::SampledFunction3D(BoxGrid3D grid, std::vector<Complex> samples,
                                     std::optional<ClosedForm> source)
    : grid_(std::move(grid)), samples_(std::move(samples)), source_(std::move(source)) {
    if (samples_.size() != grid_.size())
        throw std::invalid_argument("SampledFunction3D: sample count does not match grid");
    for (const auto& s : samples_)
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw std::invalid_argument("SampledFunction3D: non-finite sample");
}

namespace {

std::vector<Complex> sample_closed_form(const BoxGrid3D& grid, const ClosedForm& f) {
    const auto [nx, ny, nz] = grid.counts();
    std::vector<Complex> s(grid.size());
    for (std::size_t c = 0; c < nz; ++c)
        for (std::size_t b = 0; b < ny; ++b)
            for (std::size_t a = 0; a < nx; ++a)
                s[grid.index(a, b, c)] = f(grid.node(0, a), grid.node(1, b), grid.node(2, c));
    return s;
}

}  // namespace

SampledFunction3D SampledFunction3D::sample(const BoxGrid3D& grid, const ClosedForm& f) {
    return SampledFunction3D(grid, sample_closed_form(grid, f), f);
}

SampledFunction3D SampledFunction3D::zeros(const BoxGrid3D& grid) {
    return SampledFunction3D(grid, std::vector<Complex>(grid.size()), ClosedForm::constant(0.0));
}

std::vector<Complex> SampledFunction3D::analytic_dz_samples() const {
    if (!source_) throw std::logic_error("SampledFunction3D: no closed form for analytic d/dz");
    return sample_closed_form(grid_, source_->dz());
}

double SampledFunction3D::l1_norm() const {
    double s = 0.0;
    for (const auto& v : samples_) s += std::abs(v);
    return s * cell_volume();
}

double SampledFunction3D::l2_norm_squared() const {
    double s = 0.0;
    for (const auto& v : samples_) s += std::norm(v);
    return s * cell_volume();
}

double SampledFunction3D::max_abs() const {
    double m = 0.0;
    for (const auto& v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double SampledFunction3D::boundary_max_abs() const {
    const auto [nx, ny, nz] = grid_.counts();
    double m = 0.0;
    for (std::size_t c = 0; c < nz; ++c)
        for (std::size_t b = 0; b < ny; ++b)
            for (std::size_t a = 0; a < nx; ++a) {
                const bool edge = a == 0 || b == 0 || c == 0 || a + 1 == nx || b + 1 == ny || c + 1 == nz;
                if (edge) m = std::max(m, std::abs(at(a, b, c)));
            }
    return m;
}

SampledFunction3D SampledFunction3D::scaled(Complex c) const {
    std::vector<Complex> s = samples_;
    for (auto& v : s) v *= c;
    std::optional<ClosedForm> src;
    if (source_) src = source_->scaled(c);
    return SampledFunction3D(grid_, std::move(s), std::move(src));
}

SampledFunction3D operator*(const SampledFunction3D& a, const SampledFunction3D& b) {
    if (!(a.grid_ == b.grid_)) throw std::invalid_argument("pointwise product: grid mismatch");
    std::vector<Complex> s(a.samples_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.samples_[i] * b.samples_[i];
    std::optional<ClosedForm> src;
    if (a.source_ && b.source_) src = *a.source_ * *b.source_;
    return SampledFunction3D(a.grid_, std::move(s), std::move(src));
}

SampledFunction3D operator+(const SampledFunction3D& a, const SampledFunction3D& b) {
    if (!(a.grid_ == b.grid_)) throw std::invalid_argument("sum: grid mismatch");
    std::vector<Complex> s(a.samples_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.samples_[i] + b.samples_[i];
    // The closed-form family is not closed under sums.
    return SampledFunction3D(a.grid_, std::move(s));
}

SampledFunction3D check_map(const SampledFunction3D& f) {
    const auto& grid = f.grid();
    const auto [nx, ny, nz] = grid.counts();
    std::vector<Complex> s(grid.size());
    for (std::size_t c = 0; c < nz; ++c)
        for (std::size_t b = 0; b < ny; ++b)
            for (std::size_t a = 0; a < nx; ++a)
                s[grid.index(a, b, c)] = f.at(nx - 1 - a, ny - 1 - b, nz - 1 - c);
    // f(-v) of a closed form is not in the family (odd carriers flip sign), so drop it.
    return SampledFunction3D(grid, std::move(s));
}

void write_sampled(std::ostream& os, const SampledFunction3D& f) {
    const auto& g = f.grid();
    const auto& h = g.half_widths();
    const auto& n = g.counts();
    os << std::setprecision(17);
    os << "box " << h[0] << ' ' << h[1] << ' ' << h[2] << '\n';
    os << "counts " << n[0] << ' ' << n[1] << ' ' << n[2] << '\n';
    for (const auto& v : f.samples()) os << v.real() << ' ' << v.imag() << '\n';
}

SampledFunction3D read_sampled(std::istream& is) {
    auto expect = [&](const char* key) {
        std::string word;
        if (!(is >> word) || word != key)
            throw std::invalid_argument(std::string("read_sampled: expected '") + key + "'");
    };
    std::array<double, 3> h{};
    std::array<std::size_t, 3> n{};
    expect("box");
    is >> h[0] >> h[1] >> h[2];
    expect("counts");
    is >> n[0] >> n[1] >> n[2];
    if (!is) throw std::invalid_argument("read_sampled: malformed header");
    BoxGrid3D grid(h, n);
    std::vector<Complex> s(grid.size());
    for (auto& v : s) {
        double re = 0.0, im = 0.0;
        if (!(is >> re >> im)) throw std::invalid_argument("read_sampled: truncated sample body");
        v = {re, im};
    }
    return SampledFunction3D(grid, std::move(s));
}

}  // namespace hfa
