#include "hfa/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#ifndef HFA_DEFAULT_LIE_CORPUS
#define HFA_DEFAULT_LIE_CORPUS "data/lie"
#endif

namespace hfa {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::istringstream is(v);
    double d = 0;
    std::string rest;
    if (!(is >> d) || (is >> rest)) throw ConfigError("bad number for " + key + ": '" + v + "'");
    return d;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    std::uint64_t u = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, u);
    if (ec != std::errc{} || ptr != end) throw ConfigError("bad integer for " + key + ": '" + v + "'");
    return u;
}

template <class T, std::size_t N>
std::array<T, N> parse_tuple(const std::string& key, const std::string& v, std::function<T(const std::string&)> one) {
    std::string s = v;
    for (auto& ch : s)
        if (ch == ',') ch = ' ';
    std::istringstream is(s);
    std::array<T, N> out{};
    std::string tok;
    std::size_t n = 0;
    while (is >> tok) {
        if (n == N) throw ConfigError(key + " takes " + std::to_string(N) + " values");
        out[n++] = one(tok);
    }
    if (n != N) throw ConfigError(key + " takes " + std::to_string(N) + " values");
    return out;
}

// Shortest text that parses back to the same double.
std::string fmt(double d) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, res.ptr);
}

template <class T, std::size_t N>
std::string fmt(const std::array<T, N>& a) {
    std::string s;
    for (std::size_t i = 0; i < N; ++i) {
        if (i) s += ", ";
        if constexpr (std::is_floating_point_v<T>) s += fmt(a[i]);
        else s += std::to_string(a[i]);
    }
    return s;
}

struct Key {
    std::string name;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

void add_scale(std::vector<Key>& keys, const std::string& prefix, TransformScale RunConfig::*m) {
    keys.push_back({prefix + "n_points",
                    [=](RunConfig& c, const std::string& v) { (c.*m).n_points = parse_uint(prefix + "n_points", v); },
                    [=](const RunConfig& c) { return std::to_string((c.*m).n_points); }});
    keys.push_back({prefix + "L", [=](RunConfig& c, const std::string& v) { (c.*m).L = parse_double(prefix + "L", v); },
                    [=](const RunConfig& c) { return fmt((c.*m).L); }});
    keys.push_back({prefix + "box",
                    [=](RunConfig& c, const std::string& v) {
                        (c.*m).box = parse_tuple<double, 3>(prefix + "box", v,
                                                            [&](const std::string& t) { return parse_double(prefix + "box", t); });
                    },
                    [=](const RunConfig& c) { return fmt((c.*m).box); }});
    keys.push_back({prefix + "counts",
                    [=](RunConfig& c, const std::string& v) {
                        (c.*m).counts = parse_tuple<std::size_t, 3>(
                            prefix + "counts", v, [&](const std::string& t) { return parse_uint(prefix + "counts", t); });
                    },
                    [=](const RunConfig& c) { return fmt((c.*m).counts); }});
    keys.push_back({prefix + "delta",
                    [=](RunConfig& c, const std::string& v) { (c.*m).delta = parse_double(prefix + "delta", v); },
                    [=](const RunConfig& c) { return fmt((c.*m).delta); }});
    keys.push_back({prefix + "k_max",
                    [=](RunConfig& c, const std::string& v) {
                        (c.*m).k_max = static_cast<int>(parse_uint(prefix + "k_max", v));
                    },
                    [=](const RunConfig& c) { return std::to_string((c.*m).k_max); }});
}

template <class T>
void add_plain(std::vector<Key>& keys, const std::string& name, T RunConfig::*m) {
    keys.push_back({name,
                    [=](RunConfig& c, const std::string& v) {
                        if constexpr (std::is_same_v<T, std::string>) c.*m = v;
                        else if constexpr (std::is_floating_point_v<T>) c.*m = parse_double(name, v);
                        else c.*m = static_cast<T>(parse_uint(name, v));
                    },
                    [=](const RunConfig& c) {
                        if constexpr (std::is_same_v<T, std::string>) return c.*m;
                        else if constexpr (std::is_floating_point_v<T>) return fmt(c.*m);
                        else return std::to_string(c.*m);
                    }});
}

void add_triple(std::vector<Key>& keys, const std::string& name, std::array<double, 3> RunConfig::*m) {
    keys.push_back({name,
                    [=](RunConfig& c, const std::string& v) {
                        c.*m = parse_tuple<double, 3>(name, v, [&](const std::string& t) { return parse_double(name, t); });
                    },
                    [=](const RunConfig& c) { return fmt(c.*m); }});
}

const std::vector<Key>& key_table() {
    static const std::vector<Key> keys = [] {
        std::vector<Key> k;
        add_scale(k, "", &RunConfig::transform);
        add_scale(k, "dualconv.", &RunConfig::dualconv);
        add_plain(k, "dualconv.pair_tolerance", &RunConfig::pair_tolerance);
        add_triple(k, "dualconv.sigma1", &RunConfig::dc_sigma1);
        add_plain(k, "dualconv.carrier1", &RunConfig::dc_carrier1);
        add_triple(k, "dualconv.sigma2", &RunConfig::dc_sigma2);
        add_triple(k, "dualconv.center2", &RunConfig::dc_center2);
        add_plain(k, "dualconv.carrier2", &RunConfig::dc_carrier2);
        add_plain(k, "fusion.n_points", &RunConfig::fusion_n_points);
        add_plain(k, "fusion.L", &RunConfig::fusion_L);
        add_plain(k, "rep.n_points", &RunConfig::rep_n_points);
        add_triple(k, "sigma", &RunConfig::sigma);
        add_plain(k, "carrier", &RunConfig::carrier);
        add_triple(k, "sigma2", &RunConfig::sigma2);
        add_plain(k, "carrier2", &RunConfig::carrier2);
        add_plain(k, "poly2_xz", &RunConfig::poly2_xz);
        add_plain(k, "max_n_points", &RunConfig::max_n_points);
        add_plain(k, "max_tensor_n_points", &RunConfig::max_tensor_n_points);
        add_plain(k, "seed", &RunConfig::seed);
        add_plain(k, "lie.corpus", &RunConfig::lie_corpus);
        add_plain(k, "lie.file", &RunConfig::lie_file);
        return k;
    }();
    return keys;
}

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

void validate_scale(const std::string& prefix, const TransformScale& s) {
    if (s.n_points < 8 || !is_power_of_two(s.n_points))
        throw ConfigError(prefix + "n_points must be a power of two >= 8");
    if (!(s.L > 0) || !std::isfinite(s.L)) throw ConfigError(prefix + "L must be positive");
    for (int d = 0; d < 3; ++d) {
        if (!(s.box[d] > 0) || !std::isfinite(s.box[d])) throw ConfigError(prefix + "box must be positive");
        if (s.counts[d] == 0 || s.counts[d] % 2) throw ConfigError(prefix + "counts must be positive and even");
    }
    if (!(s.delta > 0) || !std::isfinite(s.delta)) throw ConfigError(prefix + "delta must be positive");
    if (s.k_max <= 0) throw ConfigError(prefix + "k_max must be positive");
}

}  // namespace

std::map<std::string, double> default_tolerances() {
    return {
        {"unitarity", 1e-12},     {"homomorphism", 1e-6}, {"float_floor", 1e-12}, {"plancherel", 1e-2},
        {"inversion", 1e-2},      {"adjoint", 1e-2},      {"intertwining", 5e-2}, {"trace", 1e-12},
        {"contraction", 1e-9},    {"adjoint_trace", 1e-10}, {"dualconv", 5e-2},   {"slack", 1e-9},
        {"multiplier", 1e-6},     {"spectral", 1e-6},     {"leibniz", 1e-12},     {"module_rel", 5e-2},
        {"module_abs", 1e-9},     {"witness", 1e-3},
    };
}

RunConfig::RunConfig() : lie_corpus(HFA_DEFAULT_LIE_CORPUS), tol(default_tolerances()) {}

double RunConfig::tolerance(const std::string& name) const {
    auto it = tol.find(name);
    if (it == tol.end()) throw std::out_of_range("no tolerance named " + name);
    return it->second;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& k : key_table()) out.push_back(k.name);
    for (const auto& [name, v] : default_tolerances()) out.push_back("tol." + name);
    return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key.rfind("tol.", 0) == 0) {
        const auto name = key.substr(4);
        if (!cfg.tol.count(name)) throw ConfigError("unknown tolerance " + key);
        cfg.tol[name] = parse_double(key, value);
        return;
    }
    for (const auto& k : key_table())
        if (k.name == key) {
            k.set(cfg, value);
            return;
        }
    throw ConfigError("unknown key " + key);
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        try {
            apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void apply_environment(RunConfig& cfg, const char* const* envp) {
    if (!envp) return;
    std::map<std::string, std::string> by_env;
    for (const auto& key : config_keys()) {
        std::string env = "HFA_";
        for (char ch : key) env += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        by_env[env] = key;
    }
    for (auto p = envp; *p; ++p) {
        const std::string entry = *p;
        const auto eq = entry.find('=');
        if (eq == std::string::npos) continue;
        auto it = by_env.find(entry.substr(0, eq));
        if (it == by_env.end()) continue;
        try {
            apply_setting(cfg, it->second, trim(entry.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(it->first + ": " + e.what());
        }
    }
}

void validate(const RunConfig& cfg) {
    validate_scale("", cfg.transform);
    validate_scale("dualconv.", cfg.dualconv);
    if (cfg.fusion_n_points < 8 || !is_power_of_two(cfg.fusion_n_points))
        throw ConfigError("fusion.n_points must be a power of two >= 8");
    if (cfg.rep_n_points < 16 || !is_power_of_two(cfg.rep_n_points))
        throw ConfigError("rep.n_points must be a power of two >= 16");
    if (!(cfg.fusion_L > 0)) throw ConfigError("fusion.L must be positive");
    for (int d = 0; d < 3; ++d)
        if (!(cfg.sigma[d] > 0) || !(cfg.sigma2[d] > 0) || !(cfg.dc_sigma1[d] > 0) || !(cfg.dc_sigma2[d] > 0))
            throw ConfigError("widths must be positive");
    if (!(cfg.pair_tolerance >= 0) || cfg.pair_tolerance >= 1)
        throw ConfigError("dualconv.pair_tolerance must be in [0, 1)");
    for (const auto& [name, v] : cfg.tol)
        if (!(v > 0 && v < 1)) throw ConfigError("tol." + name + " must be in (0, 1)");
}

std::map<std::string, std::string> dump(const RunConfig& cfg) {
    std::map<std::string, std::string> out;
    for (const auto& k : key_table()) out[k.name] = k.get(cfg);
    for (const auto& [name, v] : cfg.tol) out["tol." + name] = fmt(v);
    return out;
}

TransformScale refine(const TransformScale& s, int level) {
    TransformScale r = s;
    const double f = std::ldexp(1.0, level);
    r.n_points = static_cast<std::size_t>(std::llround(static_cast<double>(s.n_points) * f));
    r.L = s.L * std::sqrt(f);
    r.delta = s.delta / f;
    r.k_max = static_cast<int>(std::llround(s.k_max * f));
    for (int d = 0; d < 2; ++d) {
        const long c = std::lround(static_cast<double>(s.counts[d]) * (2.0 + level) / 4.0) * 2;
        if (c <= 0) throw ConfigError("refine: level " + std::to_string(level) + " leaves no samples");
        r.counts[d] = static_cast<std::size_t>(c);
    }
    return r;
}

}  // namespace hfa
