// hfa: command-line front end for the verification suites, refinement tables,
// h3 extraction and forward transforms.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hfa/config.hpp"
#include "hfa/derivation.hpp"
#include "hfa/liealg.hpp"
#include "hfa/schrodinger.hpp"
#include "hfa/suites.hpp"

extern char** environ;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

hfa::RunConfig load_config(const std::string& path) {
    hfa::RunConfig cfg;
    if (!path.empty()) hfa::load_config_file(cfg, path);
    hfa::apply_environment(cfg, environ);
    hfa::validate(cfg);
    return cfg;
}

int verify(const std::string& suite, const std::string& config, const std::string& out, bool refine, bool timing) {
    const auto cfg = load_config(config);
    const auto rep = hfa::run_suite(suite, cfg, hfa::SuiteOptions{refine});
    if (!out.empty()) {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot write " + out);
        rep.write_jsonl(os, timing);
    }
    rep.write_summary(std::cout);
    return rep.passed() ? kPass : kFail;
}

int converge(const std::string& suite, const std::string& config, int levels, const std::string& out) {
    const auto cfg = load_config(config);
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw std::runtime_error("cannot write " + out);
    }
    std::ostream& os = out.empty() ? std::cout : file;
    try {
        hfa::write_csv(os, hfa::convergence_table(suite, cfg, levels));
    } catch (const hfa::ConvergenceCapacityError& e) {
        hfa::write_csv(os, e.partial());
        std::cerr << "hfa: " << e.what() << " (partial table written)\n";
        return kFail;
    }
    return kPass;
}

int find_h3(const std::string& path) {
    hfa::lie::LieAlgebra L = hfa::lie::load_structure(path);
    const auto flag = hfa::lie::lower_central_series(L);
    std::cout << "dim " << L.dim() << "\nseries";
    for (const auto& c : flag.terms) std::cout << ' ' << c.dim();
    const auto nil = hfa::lie::is_nilpotent(L);
    std::cout << "\nnilpotent " << (nil.nilpotent ? "yes" : "no");
    if (nil.degree) std::cout << "\ndegree " << *nil.degree;
    std::cout << '\n';
    try {
        const auto e = hfa::lie::find_h3(L);
        std::cout << "X " << hfa::lie::to_string(e.x) << "\nY " << hfa::lie::to_string(e.y) << "\nZ "
                  << hfa::lie::to_string(e.z) << "\nrelations " << (hfa::lie::satisfies_h3(L, e) ? "ok" : "FAIL")
                  << '\n';
        return hfa::lie::satisfies_h3(L, e) ? kPass : kFail;
    } catch (const hfa::NotApplicableError& e) {
        std::cout << "h3 not applicable: " << e.what() << '\n';
        return kFail;
    } catch (const hfa::PreconditionError& e) {
        std::cout << "h3 not applicable: " << e.what() << '\n';
        return kFail;
    }
}

hfa::ClosedForm named_function(const std::string& name, const hfa::RunConfig& cfg) {
    using hfa::ClosedForm;
    if (name == "gaussian") return ClosedForm::gaussian(cfg.sigma, {}, cfg.carrier);
    if (name == "second")
        return ClosedForm::gaussian(cfg.sigma2, {}, cfg.carrier2,
                                    hfa::Polynomial{{{0, 0, 0}, 1.0}, {{1, 0, 1}, cfg.poly2_xz}});
    if (name == "witness") return hfa::nonvanishing_witness(cfg.sigma);
    throw CLI::ValidationError("--function", "unknown function '" + name + "' (gaussian, second, witness)");
}

int transform(const std::string& function, const std::string& input, const std::string& config,
              const std::string& out) {
    const auto cfg = load_config(config);
    const auto& s = cfg.transform;
    std::optional<hfa::SampledFunction3D> f;
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cannot open " + input);
        f = hfa::read_sampled(in);
    } else {
        f = hfa::SampledFunction3D::sample(s.box_grid(), named_function(function, cfg));
    }
    const auto field = hfa::forward_field(*f, s.tgrid(), s.grid());
    hfa::write_field(out, field);
    std::cout << "wrote " << field.size() << " nodes of dimension " << field.dim() << " to " << out << '\n';
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noncommutative Fourier analysis on the Heisenberg group: verification toolkit"};
    app.require_subcommand(1);

    std::string suite, config, out;
    bool no_refine = false, no_timing = false;
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    verify_cmd->add_option("suite", suite, "Suite name or 'all'")->required();
    verify_cmd->add_option("--config", config, "key = value configuration file");
    verify_cmd->add_option("--out", out, "Write the report as JSON lines");
    verify_cmd->add_flag("--no-refinement", no_refine, "Skip the refinement ladders");
    verify_cmd->add_flag("--no-timing", no_timing, "Leave wall times out of the report");

    int levels = 3;
    auto* converge_cmd = app.add_subcommand("converge", "Tabulate check values over refinement levels (CSV)");
    converge_cmd->add_option("suite", suite, "Suite name or 'all'")->required();
    converge_cmd->add_option("--levels", levels, "Number of levels (>= 2)")->required();
    converge_cmd->add_option("--config", config, "key = value configuration file");
    converge_cmd->add_option("--out", out, "CSV output file (default stdout)");

    std::string structure;
    auto* lie_cmd = app.add_subcommand("lie", "Exact Lie algebra tools");
    lie_cmd->require_subcommand(1);
    auto* h3_cmd = lie_cmd->add_subcommand("find-h3", "Lower central series and an embedded h3");
    h3_cmd->add_option("structure-file", structure, "Structure-constant file")->required()->check(CLI::ExistingFile);

    std::string function = "gaussian", input;
    auto* transform_cmd = app.add_subcommand("transform", "Forward transform of a test function to a field directory");
    transform_cmd->add_option("--function", function, "gaussian, second or witness");
    transform_cmd->add_option("--input", input, "Sampled function file instead of --function");
    transform_cmd->add_option("--config", config, "key = value configuration file");
    transform_cmd->add_option("--out", out, "Field directory")->required();

    auto* config_cmd = app.add_subcommand("config", "Print the effective configuration");
    config_cmd->add_option("--config", config, "key = value configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*verify_cmd) return verify(suite, config, out, !no_refine, !no_timing);
        if (*converge_cmd) return converge(suite, config, levels, out);
        if (*h3_cmd) return find_h3(structure);
        if (*transform_cmd) return transform(function, input, config, out);
        if (*config_cmd) {
            for (const auto& [k, v] : hfa::dump(load_config(config))) std::cout << k << " = " << v << '\n';
            return kPass;
        }
    } catch (const hfa::ConfigError& e) {
        std::cerr << "hfa: config: " << e.what() << '\n';
        return kUsage;
    } catch (const hfa::UsageError& e) {
        std::cerr << "hfa: " << e.what() << '\n';
        return kUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "hfa: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hfa: invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "hfa: " << e.what() << '\n';
        return kFail;
    }
    return kUsage;
}
