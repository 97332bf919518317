#include "hfa/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>

#include "hfa/derivation.hpp"
#include "hfa/fusion.hpp"
#include "hfa/liealg.hpp"
#include "hfa/plancherel.hpp"
#include "hfa/schrodinger.hpp"

namespace hfa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Product identity is compared on this central box: inside the periodicity cell
// (|x| < L, |z| < 1/(2 delta)) of every configured dual-convolution scale.
const BoxGrid3D kProductEvalBox({1.0, 1.0, 1.0}, {8, 8, 8});

ClosedForm canonical(const RunConfig& c) { return ClosedForm::gaussian(c.sigma, {}, c.carrier); }

ClosedForm second_factor(const RunConfig& c) {
    return ClosedForm::gaussian(c.sigma2, {}, c.carrier2, Polynomial{{{0, 0, 0}, 1.0}, {{1, 0, 1}, c.poly2_xz}});
}

// Test function for the adjoint pairing; its reflection has spectrum near t = carrier2.
ClosedForm adjoint_partner(const RunConfig& c) {
    return ClosedForm::gaussian(c.sigma2, {0.2, -0.1, 0.1}, -c.carrier2);
}

struct TransformLevel {
    TransformScale scale;
    SampledFunction3D f;
    OperatorField F;
};

struct DualLevel {
    TransformScale scale;
    SampledFunction3D f1, f2;
    OperatorField F, G;
    DualConvolutionResult fg;
    double conv_seconds = 0;
};

// Results shared between suites of one run_suite call, keyed by refinement level.
class Context {
public:
    explicit Context(const RunConfig& cfg) : cfg_(cfg) {}

    const RunConfig& cfg() const { return cfg_; }

    const TransformLevel& transform(int level) {
        auto& slot = transforms_[level];
        if (!slot) {
            const auto scale = refine(cfg_.transform, level);
            auto f = SampledFunction3D::sample(scale.box_grid(), canonical(cfg_));
            auto F = forward_field(f, scale.tgrid(), scale.grid());
            slot = std::make_unique<TransformLevel>(TransformLevel{scale, std::move(f), std::move(F)});
        }
        return *slot;
    }

    const DualLevel& dual(int level) {
        auto& slot = duals_[level];
        if (!slot) {
            const auto scale = refine(cfg_.dualconv, level);
            const auto box = scale.box_grid();
            auto f1 = SampledFunction3D::sample(box, ClosedForm::gaussian(cfg_.dc_sigma1, {}, cfg_.dc_carrier1));
            auto f2 = SampledFunction3D::sample(
                box, ClosedForm::gaussian(cfg_.dc_sigma2, cfg_.dc_center2, cfg_.dc_carrier2));
            auto F = forward_field(f1, scale.tgrid(), scale.grid());
            auto G = forward_field(f2, scale.tgrid(), scale.grid());
            const auto t0 = Clock::now();
            auto fg = dual_convolution(F, G, scale.grid(), options());
            const double secs = seconds_since(t0);
            slot = std::make_unique<DualLevel>(
                DualLevel{scale, std::move(f1), std::move(f2), std::move(F), std::move(G), std::move(fg), secs});
        }
        return *slot;
    }

    DualConvolutionOptions options() const {
        DualConvolutionOptions o;
        o.pair_tolerance = cfg_.pair_tolerance;
        return o;
    }

private:
    RunConfig cfg_;
    std::map<int, std::unique_ptr<TransformLevel>> transforms_;
    std::map<int, std::unique_ptr<DualLevel>> duals_;
};

// Adds a timed check; `fn` fills value and diagnostics.
void timed(Report& rep, const std::string& suite, const std::string& check, Relation rel, double tol,
           const std::function<void(CheckRecord&)>& fn) {
    CheckRecord r;
    r.suite = suite;
    r.check = check;
    r.relation = rel;
    r.tolerance = tol;
    const auto t0 = Clock::now();
    fn(r);
    r.wall_seconds = seconds_since(t0);
    rep.add(std::move(r));
}

// Largest ratio value[l] / value[l-1] over steps whose coarser value is above the
// float floor; steps already at the floor cannot improve and are counted as saturated.
void record_decrease(CheckRecord& r, const std::vector<double>& values, double floor) {
    double worst = 0.0;
    int saturated = 0;
    for (std::size_t l = 0; l < values.size(); ++l) r.numbers["level_" + std::to_string(l)] = values[l];
    for (std::size_t l = 1; l < values.size(); ++l) {
        if (values[l - 1] <= floor && values[l] <= floor) {
            ++saturated;
            continue;
        }
        const double ratio = values[l - 1] > 0 ? values[l] / values[l - 1] : std::numeric_limits<double>::infinity();
        r.numbers["ratio_" + std::to_string(l)] = ratio;
        worst = std::max(worst, ratio);
    }
    r.numbers["saturated_steps"] = saturated;
    r.value = worst;
}

double sup_relative(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(b[i]));
    }
    return den > 0 ? num / den : num;
}

// ---------------------------------------------------------------- group

// Coordinates on the 1/64 lattice in [-2, 2]: every product and half-difference in
// the group law is then exactly representable, so exact equality is meaningful.
GroupElement dyadic(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> k(-128, 128);
    return {k(rng) / 64.0, k(rng) / 64.0, k(rng) / 64.0};
}

double element_gap(const GroupElement& a, const GroupElement& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

Report suite_group(Context& ctx, const SuiteOptions&) {
    const std::string S = "group";
    Report rep;
    std::mt19937_64 rng(ctx.cfg().seed);
    std::vector<GroupElement> gs;
    for (int i = 0; i < 200; ++i) gs.push_back(dyadic(rng));

    timed(rep, S, "associativity", Relation::Equal, 0.0, [&](CheckRecord& r) {
        for (std::size_t i = 0; i + 2 < gs.size(); ++i)
            r.value = std::max(r.value, element_gap(mul(mul(gs[i], gs[i + 1]), gs[i + 2]),
                                                    mul(gs[i], mul(gs[i + 1], gs[i + 2]))));
        r.numbers["triples"] = static_cast<double>(gs.size() - 2);
    });
    timed(rep, S, "center", Relation::Equal, 0.0, [&](CheckRecord& r) {
        for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
            const GroupElement c{0.0, 0.0, gs[i + 1].z};
            const auto& g = gs[i];
            r.value = std::max({r.value, element_gap(mul(c, g), mul(g, c)),
                                element_gap(mul(c, g), GroupElement{g.x, g.y, g.z + c.z})});
        }
    });
    timed(rep, S, "inversion", Relation::Equal, 0.0, [&](CheckRecord& r) {
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (const auto& g : gs) {
            const GroupElement w{u(rng), u(rng), u(rng)};  // inversion is exact for any double
            for (const auto& x : {g, w}) {
                r.value = std::max({r.value, element_gap(mul(x, inv(x)), {}), element_gap(mul(inv(x), x), {}),
                                    element_gap(inv(inv(x)), x), element_gap(mul(x, {}), x)});
            }
        }
    });
    timed(rep, S, "commutator_is_central", Relation::Equal, 0.0, [&](CheckRecord& r) {
        // g h g^-1 h^-1 = (0, 0, xy' - x'y)
        for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
            const auto& g = gs[i];
            const auto& h = gs[i + 1];
            const auto c = mul(mul(g, h), mul(inv(g), inv(h)));
            r.value = std::max(r.value, element_gap(c, {0.0, 0.0, g.x * h.y - h.x * g.y}));
        }
    });
    return rep;
}

// ---------------------------------------------------------------- representation

double homomorphism_defect(std::size_t n, std::uint64_t seed) {
    const GridSpec1D grid(n, std::sqrt(static_cast<double>(n) / 4.0));
    CVector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = std::exp(-grid.node(i) * grid.node(i) / 0.5);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const GroupElement a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
        for (double t : {-2.0, -0.5, 0.5, 1.0, 2.0}) {
            const CVector lhs = rep_matrix(t, a, grid) * (rep_matrix(t, b, grid) * v);
            const CVector rhs = rep_matrix(t, mul(a, b), grid) * v;
            worst = std::max(worst, (lhs - rhs).norm() / v.norm());
        }
    }
    return worst;
}

Report suite_representation(Context& ctx, const SuiteOptions& opt) {
    const std::string S = "representation";
    const auto& cfg = ctx.cfg();
    Report rep;
    timed(rep, S, "unitarity", Relation::Below, cfg.tolerance("unitarity"), [&](CheckRecord& r) {
        std::mt19937_64 rng(cfg.seed + 1);
        std::uniform_real_distribution<double> u(-2.0, 2.0), ut(0.25, 4.0);
        std::vector<std::size_t> sizes{cfg.fusion_n_points, cfg.transform.n_points, cfg.rep_n_points};
        std::sort(sizes.begin(), sizes.end());
        sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
        for (auto n : sizes) {
            const GridSpec1D grid(n, std::sqrt(static_cast<double>(n) / 4.0));
            double worst = 0.0;
            for (int i = 0; i < 6; ++i) {
                const double t = (i % 2 ? -1.0 : 1.0) * ut(rng);
                const LinOp m = rep_matrix(t, {u(rng), u(rng), u(rng)}, grid);
                worst = std::max(worst, max_abs(m.adjoint() * m - LinOp::Identity(m.rows(), m.cols())));
            }
            r.numbers["n_" + std::to_string(n)] = worst;
            r.value = std::max(r.value, worst);
        }
    });

    std::vector<std::size_t> ladder;
    for (std::size_t n = opt.refinement ? 16 : cfg.rep_n_points; n <= cfg.rep_n_points; n *= 2) ladder.push_back(n);
    std::vector<double> defects;
    timed(rep, S, "homomorphism", Relation::Below, cfg.tolerance("homomorphism"), [&](CheckRecord& r) {
        for (auto n : ladder) {
            defects.push_back(homomorphism_defect(n, cfg.seed + 2));
            r.numbers["n_" + std::to_string(n)] = defects.back();
        }
        r.value = defects.back();
    });
    if (opt.refinement) {
        // At least 4x per doubling while above the float floor.
        timed(rep, S, "homomorphism_improvement", Relation::AtLeast, 4.0, [&](CheckRecord& r) {
            double worst = std::numeric_limits<double>::infinity();
            int saturated = 0;
            for (std::size_t l = 1; l < defects.size(); ++l) {
                if (defects[l - 1] <= cfg.tolerance("float_floor")) {
                    ++saturated;
                    continue;
                }
                const double gain = defects[l - 1] / std::max(defects[l], std::numeric_limits<double>::min());
                r.numbers["gain_n_" + std::to_string(ladder[l])] = gain;
                worst = std::min(worst, gain);
            }
            r.numbers["saturated_steps"] = saturated;
            r.value = worst;
        });
    }
    return rep;
}

// ---------------------------------------------------------------- plancherel / adjoint

std::vector<int> ladder_levels(const SuiteOptions& opt) {
    return opt.refinement ? std::vector<int>{0, 1, 2} : std::vector<int>{0};
}

Report suite_plancherel(Context& ctx, const SuiteOptions& opt) {
    const std::string S = "plancherel";
    const auto& cfg = ctx.cfg();
    Report rep;
    std::vector<double> iso, adj;
    for (int level : ladder_levels(opt)) {
        const auto& T = ctx.transform(level);
        iso.push_back(plancherel_defect(T.f, T.F));
        const auto g = SampledFunction3D::sample(T.scale.box_grid(), adjoint_partner(cfg));
        const auto p = adjoint_pairing(g, T.F, T.scale.grid());
        adj.push_back(p.defect / std::max(std::abs(p.lhs), std::abs(p.rhs)));
    }
    timed(rep, S, "isometry", Relation::Below, cfg.tolerance("plancherel"), [&](CheckRecord& r) {
        r.value = iso.front();
        const auto& T = ctx.transform(0);
        r.numbers["l2_norm_squared"] = T.f.l2_norm_squared();
        r.numbers["boundary_max"] = T.f.boundary_max_abs();
    });
    timed(rep, S, "adjoint", Relation::Below, cfg.tolerance("adjoint"), [&](CheckRecord& r) { r.value = adj.front(); });
    if (opt.refinement) {
        const double floor = cfg.tolerance("float_floor");
        timed(rep, S, "isometry_refinement", Relation::Below, 1.0,
              [&](CheckRecord& r) { record_decrease(r, iso, floor); });
        timed(rep, S, "adjoint_refinement", Relation::Below, 1.0,
              [&](CheckRecord& r) { record_decrease(r, adj, floor); });
    }
    return rep;
}

// ---------------------------------------------------------------- inversion

Report suite_inversion(Context& ctx, const SuiteOptions& opt) {
    const std::string S = "inversion";
    const auto& cfg = ctx.cfg();
    Report rep;
    std::vector<double> rt;
    for (int level : ladder_levels(opt)) {
        const auto& T = ctx.transform(level);
        rt.push_back(sup_relative(inverse_transform_grid(T.F, T.scale.box_grid(), T.scale.grid()), T.f.samples()));
    }
    timed(rep, S, "round_trip", Relation::Below, cfg.tolerance("inversion"), [&](CheckRecord& r) { r.value = rt.front(); });
    if (opt.refinement)
        timed(rep, S, "round_trip_refinement", Relation::Below, 1.0,
              [&](CheckRecord& r) { record_decrease(r, rt, cfg.tolerance("float_floor")); });
    timed(rep, S, "a_norm_convention", Relation::AtMost, cfg.tolerance("float_floor"), [&](CheckRecord& r) {
        // a_norm(F) against sum delta |t| ||pi_t(f)||_1 from unweighted coefficients.
        const auto& T = ctx.transform(0);
        const auto ts = T.scale.tgrid().nodes();
        const auto pis = fourier_coefficients(T.f, ts, T.scale.grid());
        double direct = 0.0;
        for (std::size_t k = 0; k < ts.size(); ++k) direct += std::abs(ts[k]) * schatten_norm(pis[k], Schatten::One);
        direct *= T.scale.delta;
        const double a = a_norm(T.F);
        r.numbers["a_norm"] = a;
        r.value = std::abs(a - direct) / a;
    });
    return rep;
}

// ---------------------------------------------------------------- fusion

const std::vector<std::pair<double, double>> kFusionPairs{{0.25, 0.25},  {0.5, 0.25},    {0.25, 0.5},
                                                          {0.75, -0.25}, {-0.5, -0.25}, {0.125, 0.375}};
const std::vector<GroupElement> kBoundedElements{{1, 0, 0}, {0, 1, 0},         {0, 0, 1},
                                                 {1, 1, 1}, {-1, 0.5, -0.7}, {0.6, -1, 0.3}};

double worst_intertwining(const GridSpec1D& grid, double& unitarity) {
    const auto n = grid.n_points();
    CVector phi(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        phi(static_cast<Eigen::Index>(i)) = std::exp(-grid.node(i) * grid.node(i) / (2 * 0.4 * 0.4));
    phi.normalize();
    CVector v(static_cast<Eigen::Index>(n * n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            v(static_cast<Eigen::Index>(i * n + j)) = phi(static_cast<Eigen::Index>(i)) * phi(static_cast<Eigen::Index>(j));
    double worst = 0.0;
    for (const auto& [r, s] : kFusionPairs) {
        const auto w = intertwiner(r, s, grid);
        unitarity = std::max(unitarity, w.unitarity_defect);
        for (const auto& g : kBoundedElements) worst = std::max(worst, intertwining_residual(w, r, s, g, grid, v));
    }
    return worst;
}

LinOp random_op(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> nd;
    LinOp m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(nd(rng), nd(rng));
    return m;
}

Report suite_fusion(Context& ctx, const SuiteOptions& opt) {
    const std::string S = "fusion";
    const auto& cfg = ctx.cfg();
    Report rep;
    const GridSpec1D coarse(cfg.fusion_n_points, cfg.fusion_L);
    double unit = 0.0;
    double resid0 = 0.0, resid1 = 0.0;
    timed(rep, S, "intertwining", Relation::Below, cfg.tolerance("intertwining"), [&](CheckRecord& r) {
        resid0 = worst_intertwining(coarse, unit);
        r.value = resid0;
        r.numbers["n_points"] = static_cast<double>(cfg.fusion_n_points);
    });
    if (opt.refinement) {
        timed(rep, S, "intertwining_refinement", Relation::Below, 1.0, [&](CheckRecord& r) {
            const GridSpec1D fine(cfg.fusion_n_points * 2, cfg.fusion_L * std::sqrt(2.0));
            resid1 = worst_intertwining(fine, unit);
            record_decrease(r, {resid0, resid1}, cfg.tolerance("float_floor"));
        });
    }
    timed(rep, S, "unitarity", Relation::Below, cfg.tolerance("unitarity"), [&](CheckRecord& r) {
        // Large shears and near-singular pairs are unitary too.
        for (auto [a, b] : {std::pair{1.0, -2.0}, {-1.0, 2.0}, {0.5, -0.49}, {3.0, 0.25}}) {
            const auto w = intertwiner(a, b, coarse, cfg.dualconv.delta / 2);
            unit = std::max(unit, w.unitarity_defect);
            if (w.near_singular) r.numbers["near_singular_pairs"] += 1;
        }
        r.value = unit;
    });

    std::mt19937_64 rng(cfg.seed + 3);
    const Eigen::Index n = 8;
    std::vector<LinOp> rs, cs;
    for (int i = 0; i < 20; ++i) {
        rs.push_back(random_op(rng, n * n, n * n));
        cs.push_back(random_op(rng, n, n));
    }
    timed(rep, S, "partial_trace_preserves_trace", Relation::AtMost, cfg.tolerance("trace"), [&](CheckRecord& r) {
        for (const auto& R : rs) {
            const Complex a = partial_trace_second(R, n).trace(), b = R.trace();
            r.value = std::max(r.value, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
    });
    timed(rep, S, "partial_trace_contraction", Relation::AtMost, cfg.tolerance("contraction"), [&](CheckRecord& r) {
        r.value = -std::numeric_limits<double>::infinity();
        for (const auto& R : rs)
            r.value = std::max(r.value, schatten_norm(partial_trace_second(R, n), Schatten::One) -
                                            schatten_norm(R, Schatten::One));
    });
    timed(rep, S, "partial_trace_adjoint", Relation::AtMost, cfg.tolerance("adjoint_trace"), [&](CheckRecord& r) {
        for (std::size_t i = 0; i < rs.size(); ++i) {
            const Complex a = (cs[i] * partial_trace_second(rs[i], n)).trace();
            const Complex b = (kron(cs[i], LinOp::Identity(n, n)) * rs[i]).trace();
            r.value = std::max(r.value, std::abs(a - b));
        }
    });
    return rep;
}

// ---------------------------------------------------------------- dual convolution

void dual_diagnostics(CheckRecord& r, const DualLevel& D) {
    r.numbers["n_points"] = static_cast<double>(D.scale.n_points);
    r.numbers["k_max"] = D.scale.k_max;
    r.numbers["pairs_evaluated"] = static_cast<double>(D.fg.pairs_evaluated);
    r.numbers["pairs_skipped"] = static_cast<double>(D.fg.pairs_skipped);
    r.numbers["ratios_used"] = static_cast<double>(D.fg.ratios_used);
    r.numbers["near_singular_excluded"] = static_cast<double>(D.fg.near_singular_excluded.size());
    r.numbers["convolution_seconds"] = D.conv_seconds;
}

double product_identity_defect(const DualLevel& D) {
    const auto grid = D.scale.grid();
    const auto a = inverse_transform_grid(D.F, kProductEvalBox, grid);
    const auto b = inverse_transform_grid(D.G, kProductEvalBox, grid);
    const auto c = inverse_transform_grid(D.fg.field, kProductEvalBox, grid);
    std::vector<Complex> ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] * b[i];
    return sup_relative(c, ab);
}

Report suite_dualconv(Context& ctx, const SuiteOptions& opt) {
    const std::string S = "dualconv";
    const auto& cfg = ctx.cfg();
    const double tol = cfg.tolerance("dualconv");
    Report rep;
    std::vector<double> prod;
    timed(rep, S, "product_identity", Relation::Below, tol, [&](CheckRecord& r) {
        const auto& D = ctx.dual(0);
        prod.push_back(product_identity_defect(D));
        r.value = prod.back();
        dual_diagnostics(r, D);
    });
    if (opt.refinement) {
        timed(rep, S, "product_identity_refinement", Relation::Below, 1.0, [&](CheckRecord& r) {
            prod.push_back(product_identity_defect(ctx.dual(1)));
            record_decrease(r, prod, cfg.tolerance("float_floor"));
        });
    }
    timed(rep, S, "commutativity", Relation::Below, tol, [&](CheckRecord& r) {
        const auto& D = ctx.dual(0);
        const auto gf = dual_convolution(D.G, D.F, D.scale.grid(), ctx.options());
        r.value = a_norm(D.fg.field - gf.field) / a_norm(D.fg.field);
    });
    timed(rep, S, "product_coefficients", Relation::Below, tol, [&](CheckRecord& r) {
        const auto& D = ctx.dual(0);
        const auto left = forward_field(D.f1 * D.f2, D.scale.tgrid(), D.scale.grid());
        r.value = coefficient_defect(left, D.fg.field);
    });
    return rep;
}

// ---------------------------------------------------------------- inequalities

Report suite_inequalities(Context& ctx, const SuiteOptions&) {
    const std::string S = "inequalities";
    const auto& cfg = ctx.cfg();
    const double slack = cfg.tolerance("slack");
    Report rep;
    const auto& D = ctx.dual(0);
    timed(rep, S, "theta2_bound", Relation::AtMost, slack, [&](CheckRecord& r) {
        r.value = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < D.fg.field.size(); ++k)
            r.value = std::max(r.value, schatten_norm(D.fg.field[k], Schatten::One) - D.fg.theta2_bound[k]);
    });
    timed(rep, S, "theta1_bound", Relation::AtMost, slack,
          [&](CheckRecord& r) { r.value = D.fg.max_theta1_bound_excess; });
    timed(rep, S, "m_norm_bound", Relation::AtMost, slack, [&](CheckRecord& r) {
        const double lhs = m_norm(D.fg.field), rhs = a_norm(D.F) * m_norm(D.G);
        r.numbers["lhs"] = lhs;
        r.numbers["rhs"] = rhs;
        r.value = lhs - rhs;
    });
    timed(rep, S, "a_norm_submultiplicative", Relation::AtMost, slack, [&](CheckRecord& r) {
        const double lhs = a_norm(D.fg.field), rhs = a_norm(D.F) * a_norm(D.G);
        r.numbers["lhs"] = lhs;
        r.numbers["rhs"] = rhs;
        r.value = lhs - rhs;
    });
    // The derivation inequalities on the same configuration.
    timed(rep, S, "derivation_bound", Relation::AtMost, slack, [&](CheckRecord& r) {
        const auto b = boundedness_check(D.f1, D.scale.tgrid(), D.scale.grid(), slack);
        r.numbers["lhs"] = b.lhs;
        r.numbers["rhs"] = b.rhs;
        r.value = b.lhs - b.rhs;
    });
    timed(rep, S, "module_bound", Relation::AtMost, cfg.tolerance("module_rel"), [&](CheckRecord& r) {
        const auto m = module_norm_check(D.f1, D.f2, D.scale.tgrid(), D.scale.grid(), cfg.tolerance("module_rel"),
                                         cfg.tolerance("module_abs"));
        r.numbers["lhs"] = m.lhs;
        r.numbers["rhs"] = m.rhs;
        r.value = (m.lhs - cfg.tolerance("module_abs")) / m.rhs - 1.0;
    });
    return rep;
}

// ---------------------------------------------------------------- derivation

double module_ratio(const RunConfig& cfg, int level) {
    const auto scale = refine(cfg.transform, level);
    const auto box = scale.box_grid();
    const auto m = module_norm_check(SampledFunction3D::sample(box, canonical(cfg)),
                                     SampledFunction3D::sample(box, second_factor(cfg)), scale.tgrid(), scale.grid());
    return m.lhs / m.rhs;
}

Report suite_derivation(Context& ctx, const SuiteOptions& opt) {
    const std::string S = "derivation";
    const auto& cfg = ctx.cfg();
    const auto& T = ctx.transform(0);
    const auto box = T.scale.box_grid();
    const auto tg = T.scale.tgrid();
    const auto grid = T.scale.grid();
    const auto f = T.f;
    const auto h = SampledFunction3D::sample(box, second_factor(cfg));
    Report rep;

    MultiplierResult mult;
    timed(rep, S, "multiplier", Relation::Below, cfg.tolerance("multiplier"), [&](CheckRecord& r) {
        mult = multiplier_defect(f, tg, grid);
        const auto mh = multiplier_defect(h, tg, grid);
        r.value = std::max(mult.defect, mh.defect);
        r.numbers["boundary_max"] = std::max(mult.boundary_max, mh.boundary_max);
        r.notes["method"] = to_string(mult.method);
        if (mult.precondition_warning || mh.precondition_warning)
            r.notes["warning"] = "boundary values exceed the compact-support threshold";
    });
    timed(rep, S, "spectral_vs_analytic", Relation::Below, cfg.tolerance("spectral"), [&](CheckRecord& r) {
        r.value = sup_relative(d_z_spectral(f).samples(), d_z(f).f.samples());
    });
    timed(rep, S, "leibniz", Relation::Below, cfg.tolerance("leibniz"), [&](CheckRecord& r) {
        const auto one = SampledFunction3D::sample(box, ClosedForm::constant(1.0));
        const auto w = SampledFunction3D::sample(box, nonvanishing_witness(cfg.sigma));
        r.value = std::max({leibniz_defect(f, h), leibniz_defect(h, h), leibniz_defect(f, one), leibniz_defect(f, w)});
    });
    NormInequality bound;
    timed(rep, S, "derivation_bound", Relation::AtMost, cfg.tolerance("slack"), [&](CheckRecord& r) {
        bound = boundedness_check(f, tg, grid, cfg.tolerance("slack"));
        r.numbers["w_norm_dz"] = bound.lhs;
        r.numbers["a_norm"] = bound.rhs;
        r.value = bound.lhs - bound.rhs;
    });
    {
        const double top = std::max(1.0, *std::max_element(bound.node_rhs.begin(), bound.node_rhs.end()));
        timed(rep, S, "derivation_bound_nodewise", Relation::AtMost, cfg.tolerance("slack") + mult.defect * top,
              [&](CheckRecord& r) { r.value = bound.max_node_excess; });
    }
    timed(rep, S, "module_bound", Relation::AtMost, cfg.tolerance("module_rel"), [&](CheckRecord& r) {
        const auto m = module_norm_check(f, h, tg, grid, cfg.tolerance("module_rel"), cfg.tolerance("module_abs"));
        r.numbers["lhs"] = m.lhs;
        r.numbers["rhs"] = m.rhs;
        r.value = (m.lhs - cfg.tolerance("module_abs")) / m.rhs - 1.0;
    });
    if (opt.refinement) {
        // The discrete ratio lhs/rhs converges: successive changes shrink.
        timed(rep, S, "module_refinement", Relation::Below, 1.0, [&](CheckRecord& r) {
            const double q0 = module_ratio(cfg, -1), q1 = module_ratio(cfg, 0), q2 = module_ratio(cfg, 1);
            r.numbers["ratio_coarse"] = q0;
            r.numbers["ratio_default"] = q1;
            r.numbers["ratio_fine"] = q2;
            record_decrease(r, {std::abs(q1 - q0), std::abs(q2 - q1)}, cfg.tolerance("float_floor"));
        });
    }
    timed(rep, S, "nonvanishing_witness", Relation::AtLeast, cfg.tolerance("witness"), [&](CheckRecord& r) {
        const auto w = SampledFunction3D::sample(box, nonvanishing_witness(cfg.sigma));
        r.value = w_norm(d_z(w).f, tg, grid);
    });
    return rep;
}

// ---------------------------------------------------------------- lie

struct CorpusEntry {
    std::string file;
    std::vector<std::size_t> series_dims;
    std::optional<int> degree;
    // Expected embedding as (basis index, sign) triples; empty for abelian.
    std::vector<std::pair<std::size_t, int>> embedding;
};

// Expected data frozen from an exhaustive search over basis pairs.
const std::vector<CorpusEntry> kCorpus{
    {"abelian2.txt", {2, 0}, 1, {}},
    {"h3.txt", {3, 1, 0}, 2, {{0, 1}, {1, 1}, {2, 1}}},
    {"n4.txt", {4, 2, 1, 0}, 3, {{2, 1}, {0, 1}, {3, -1}}},
    {"ut4.txt", {6, 3, 1, 0}, 3, {{1, 1}, {5, 1}, {2, 1}}},
    {"h5.txt", {5, 1, 0}, 2, {{0, 1}, {1, 1}, {4, 1}}},
};

lie::RVector signed_unit(std::size_t n, std::pair<std::size_t, int> e) {
    lie::RVector v(n);
    v.at(e.first) = e.second;
    return v;
}

// Exhaustive search: every pair of basis indices (i, j) whose bracket z is
// nonzero and commutes with e_i and e_j, evaluated straight from the structure constants.
std::vector<std::pair<std::size_t, std::size_t>> oracle_pairs(const lie::LieAlgebra& L) {
    const auto n = L.dim();
    std::vector<std::pair<std::size_t, std::size_t>> found;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool nonzero = false, central = true;
            for (std::size_t k = 0; k < n; ++k) nonzero = nonzero || L.c(i, j, k) != 0;
            for (std::size_t m = 0; m < n && central; ++m) {
                lie::Rational xz = 0, yz = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    xz += L.c(i, j, k) * L.c(i, k, m);
                    yz += L.c(i, j, k) * L.c(j, k, m);
                }
                central = xz == 0 && yz == 0;
            }
            if (nonzero && central) found.emplace_back(i, j);
        }
    return found;
}

// Index of a standard basis vector, if v is one.
std::optional<std::size_t> unit_index(const lie::RVector& v) {
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (v[i] != 1 || idx) return std::nullopt;
        idx = i;
    }
    return idx;
}

Report suite_lie(Context& ctx, const SuiteOptions&) {
    const std::string S = "lie";
    const auto& cfg = ctx.cfg();
    Report rep;
    const std::filesystem::path dir(cfg.lie_corpus);
    for (const auto& entry : kCorpus) {
        const std::string name = std::filesystem::path(entry.file).stem().string();
        std::optional<lie::LieAlgebra> L;
        timed(rep, S, name + ".load", Relation::Equal, 1.0, [&](CheckRecord& r) {
            try {
                L = lie::load_structure((dir / entry.file).string());
                r.value = 1.0;
            } catch (const std::exception& e) {
                r.notes["error"] = e.what();
            }
        });
        if (!L) continue;
        timed(rep, S, name + ".series", Relation::Equal, 1.0, [&](CheckRecord& r) {
            const auto flag = lie::lower_central_series(*L);
            std::vector<std::size_t> dims;
            bool monotone = true;
            for (std::size_t j = 0; j < flag.terms.size(); ++j) {
                dims.push_back(flag.terms[j].dim());
                if (j && (!flag.terms[j - 1].contains(flag.terms[j]) || flag.terms[j].dim() >= flag.terms[j - 1].dim()))
                    monotone = false;
            }
            std::string s;
            for (auto d : dims) s += (s.empty() ? "" : ",") + std::to_string(d);
            r.notes["dims"] = s;
            r.value = dims == entry.series_dims && monotone;
        });
        timed(rep, S, name + ".degree", Relation::Equal, entry.degree.value_or(-1), [&](CheckRecord& r) {
            const auto nil = lie::is_nilpotent(*L);
            r.value = nil.nilpotent ? nil.degree.value_or(-2) : -1;
        });
        if (entry.embedding.empty()) {
            timed(rep, S, name + ".h3_not_applicable", Relation::Equal, 1.0, [&](CheckRecord& r) {
                try {
                    lie::find_h3(*L);
                } catch (const NotApplicableError&) {
                    r.value = 1.0;
                }
            });
            continue;
        }
        timed(rep, S, name + ".h3", Relation::Equal, 1.0, [&](CheckRecord& r) {
            const auto e = lie::find_h3(*L);
            const auto n = L->dim();
            r.notes["x"] = lie::to_string(e.x);
            r.notes["y"] = lie::to_string(e.y);
            r.notes["z"] = lie::to_string(e.z);
            const bool expected = e.x == signed_unit(n, entry.embedding[0]) && e.y == signed_unit(n, entry.embedding[1]) &&
                                  e.z == signed_unit(n, entry.embedding[2]);
            r.value = expected && lie::satisfies_h3(*L, e);
        });
        timed(rep, S, name + ".oracle_agreement", Relation::Equal, 1.0, [&](CheckRecord& r) {
            // The returned pair must be one the exhaustive search finds.
            const auto pairs = oracle_pairs(*L);
            const auto e = lie::find_h3(*L);
            const auto i = unit_index(e.x), j = unit_index(e.y);
            r.numbers["oracle_pairs"] = static_cast<double>(pairs.size());
            r.value = i && j && std::find(pairs.begin(), pairs.end(), std::make_pair(*i, *j)) != pairs.end();
        });
    }
    timed(rep, S, "non_nilpotent_rejected", Relation::Equal, 1.0, [&](CheckRecord& r) {
        const lie::LieAlgebra affine(2, {{0, 1, 1, 1}});
        const auto nil = lie::is_nilpotent(affine);
        try {
            lie::find_h3(affine);
        } catch (const PreconditionError&) {
            r.value = !nil.nilpotent && !nil.degree;
        }
    });
    if (!cfg.lie_file.empty()) {
        timed(rep, S, "file.h3", Relation::Equal, 1.0, [&](CheckRecord& r) {
            try {
                const auto L = lie::load_structure(cfg.lie_file);
                const auto e = lie::find_h3(L);
                r.notes["x"] = lie::to_string(e.x);
                r.notes["y"] = lie::to_string(e.y);
                r.notes["z"] = lie::to_string(e.z);
                r.value = lie::satisfies_h3(L, e);
            } catch (const std::exception& ex) {
                r.notes["error"] = ex.what();
            }
        });
    }
    return rep;
}

using SuiteFn = Report (*)(Context&, const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table{
        {"group", suite_group},           {"representation", suite_representation},
        {"plancherel", suite_plancherel}, {"inversion", suite_inversion},
        {"fusion", suite_fusion},         {"dualconv", suite_dualconv},
        {"derivation", suite_derivation}, {"inequalities", suite_inequalities},
        {"lie", suite_lie},
    };
    return table;
}

std::size_t scale_of(const std::string& suite, const RunConfig& cfg) {
    if (suite == "representation") return cfg.rep_n_points;
    if (suite == "fusion") return cfg.fusion_n_points;
    if (suite == "dualconv" || suite == "inequalities") return cfg.dualconv.n_points;
    if (suite == "group" || suite == "lie") return 0;
    return cfg.transform.n_points;
}

void check_caps(const std::string& suite, const RunConfig& cfg) {
    const auto n = scale_of(suite, cfg);
    const bool tensor = suite == "fusion" || suite == "dualconv" || suite == "inequalities";
    const auto cap = tensor ? cfg.max_tensor_n_points : cfg.max_n_points;
    if (n > cap)
        throw CapacityError(suite + ": n_points " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : suite_table()) v.push_back(name);
        return v;
    }();
    return names;
}

bool is_suite(const std::string& name) {
    return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

Report run_suite(const std::string& name, const RunConfig& cfg, const SuiteOptions& opt) {
    if (!is_suite(name)) throw UsageError("unknown suite '" + name + "'");
    validate(cfg);
    Context ctx(cfg);
    Report rep(dump(cfg));
    for (const auto& [suite, fn] : suite_table())
        if (name == "all" || name == suite) rep.append(fn(ctx, opt));
    return rep;
}

RunConfig refine_config(const RunConfig& cfg, int level) {
    RunConfig r = cfg;
    r.transform = refine(cfg.transform, level);
    r.dualconv = refine(cfg.dualconv, level);
    const double f = std::ldexp(1.0, level);
    r.fusion_n_points = static_cast<std::size_t>(std::llround(static_cast<double>(cfg.fusion_n_points) * f));
    r.fusion_L = cfg.fusion_L * std::sqrt(f);
    r.rep_n_points = static_cast<std::size_t>(std::llround(static_cast<double>(cfg.rep_n_points) * f));
    return r;
}

ConvergenceTable convergence_table(const std::string& suite, const RunConfig& cfg, int levels) {
    if (!is_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
    if (levels < 2) throw UsageError("convergence needs at least 2 levels");
    RunConfig base = cfg;
    if (suite == "representation" || suite == "all") base.rep_n_points = 16;
    ConvergenceTable table;
    std::map<std::pair<std::string, std::string>, double> previous;
    for (int level = 0; level < levels; ++level) {
        const RunConfig c = refine_config(base, level);
        try {
            if (suite == "all")
                for (const auto& s : suite_names()) check_caps(s, c);
            else
                check_caps(suite, c);
        } catch (const CapacityError& e) {
            throw ConvergenceCapacityError(std::string(e.what()) + " at level " + std::to_string(level), table);
        }
        const auto rep = run_suite(suite, c, SuiteOptions{false});
        for (const auto& rec : rep.records()) {
            ConvergenceRow row{rec.suite, rec.check, level, scale_of(rec.suite, c), rec.value,
                               std::numeric_limits<double>::quiet_NaN()};
            const auto key = std::make_pair(rec.suite, rec.check);
            if (auto it = previous.find(key); it != previous.end()) row.ratio = it->second / rec.value;
            previous[key] = rec.value;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

void write_csv(std::ostream& os, const ConvergenceTable& table) {
    const auto flags = os.flags();
    const auto prec = os.precision(10);
    os << "suite,check,level,n_points,value,ratio\n";
    for (const auto& r : table.rows) {
        os << r.suite << ',' << r.check << ',' << r.level << ',' << r.n_points << ',' << r.value << ',';
        if (!std::isnan(r.ratio)) os << r.ratio;
        os << '\n';
    }
    os.precision(prec);
    os.flags(flags);
}

}  // namespace hfa
