#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kac/diagnostics.hpp"
#include "kac/errors.hpp"
#include "kac/io.hpp"
#include "kac/laws.hpp"
#include "kac/mckean.hpp"
#include "kac/model.hpp"
#include "kac/stable.hpp"
#include "kac/version.hpp"
#include "kac/wild.hpp"

namespace kac {

using nlohmann::json;

namespace cfg {

inline void require_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw ConfigError(where + ": unknown field '" + key + "'");
}

inline double number_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
    if (!obj[key].is_number()) throw ConfigError(where + ": field '" + key + "' must be a number");
    return obj[key].get<double>();
}

} // namespace cfg

inline InitialLaw law_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw ConfigError("init: expected an object with a 'family' string");
    const std::string family = j["family"].get<std::string>();
    const std::string where = "init(" + family + ")";
    if (family == "rademacher") {
        cfg::require_keys(j, {"family", "v"}, where);
        return InitialLaw::rademacher(cfg::number_field(j, "v", where));
    }
    if (family == "gaussian") {
        cfg::require_keys(j, {"family", "sigma"}, where);
        return InitialLaw::gaussian(cfg::number_field(j, "sigma", where));
    }
    if (family == "symmetric-stable") {
        cfg::require_keys(j, {"family", "alpha0", "a"}, where);
        return InitialLaw::symmetric_stable(cfg::number_field(j, "alpha0", where),
                                            cfg::number_field(j, "a", where));
    }
    if (family == "symmetric-pareto") {
        cfg::require_keys(j, {"family", "alpha0", "x0"}, where);
        return InitialLaw::symmetric_pareto(cfg::number_field(j, "alpha0", where),
                                            cfg::number_field(j, "x0", where));
    }
    if (family == "point-mass") {
        cfg::require_keys(j, {"family", "x0"}, where);
        return InitialLaw::point_mass(cfg::number_field(j, "x0", where));
    }
    if (family == "empirical") {
        cfg::require_keys(j, {"family", "path"}, where);
        if (!j.contains("path") || !j["path"].is_string())
            throw ConfigError(where + ": needs a 'path' string");
        return InitialLaw::empirical(read_column_csv(j["path"].get<std::string>()));
    }
    throw ConfigError("init: unknown family '" + family + "'");
}

struct RunConfig {
    std::string command;
    double p = 0.0;
    std::vector<double> times;
    json init_spec;
    std::optional<InitialLaw> init;
    std::size_t n = 10000;
    std::optional<std::uint64_t> seed;
    SolverConfig solver;
    std::string output_dir = "kac-out";
    std::optional<double> c0;
    double probe_min = 1.0;
    double probe_max = 1e4;
    int probe_count = 64;
};

inline json to_json(const SolverConfig& s) {
    return json{{"grid_size", s.grid_size},
                {"xi_max", s.xi_max},
                {"quad_nodes", s.quad_nodes},
                {"series_eps", s.series_eps},
                {"max_terms", s.max_terms},
                {"allow_restarts", s.allow_restarts},
                {"leg_terms_target", s.leg_terms_target},
                {"fold_quadrants", s.fold_quadrants}};
}

inline json to_json(const RunConfig& c) {
    json j{{"command", c.command},
           {"p", c.p},
           {"t", c.times},
           {"n", c.n},
           {"solver", to_json(c.solver)},
           {"output_dir", c.output_dir},
           {"probes", json{{"min", c.probe_min}, {"max", c.probe_max}, {"count", c.probe_count}}}};
    if (!c.init_spec.is_null()) j["init"] = c.init_spec;
    if (c.seed) j["seed"] = *c.seed;
    if (c.c0) j["c0"] = *c.c0;
    return j;
}

inline RunConfig parse_config(const json& j) {
    cfg::require_keys(j, {"command", "p", "t", "init", "n", "seed", "solver",
                          "output_dir", "c0", "probes"},
                      "config");
    RunConfig c;
    if (!j.contains("command") || !j["command"].is_string())
        throw ConfigError("config: missing 'command' string");
    c.command = j["command"].get<std::string>();
    static const std::set<std::string> commands{"simulate", "solve", "stationary-check",
                                                "tails", "equilibrium", "a0"};
    if (!commands.count(c.command))
        throw ConfigError("config: unknown command '" + c.command + "'");

    if (j.contains("p")) {
        c.p = cfg::number_field(j, "p", "config");
        (void)alpha_of(c.p);
    }
    if (j.contains("t")) {
        const auto& t = j["t"];
        if (t.is_number()) {
            c.times = {t.get<double>()};
        } else if (t.is_array() && !t.empty()) {
            for (const auto& v : t) {
                if (!v.is_number()) throw ConfigError("config: 't' entries must be numbers");
                c.times.push_back(v.get<double>());
            }
        } else {
            throw ConfigError("config: 't' must be a number or a non-empty array");
        }
        for (double t_i : c.times)
            if (!(t_i >= 0.0)) throw ConfigError("config: times must be >= 0");
    }
    if (j.contains("init")) {
        c.init_spec = j["init"];
        c.init = law_from_json(c.init_spec);
    }
    if (j.contains("n")) {
        if (!j["n"].is_number_integer() || j["n"].get<std::int64_t>() < 1)
            throw ConfigError("config: 'n' must be a positive integer");
        c.n = j["n"].get<std::size_t>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() ||
            (j["seed"].is_number_integer() && !j["seed"].is_number_unsigned() &&
             j["seed"].get<std::int64_t>() < 0))
            throw ConfigError("config: 'seed' must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        cfg::require_keys(s, {"grid_size", "xi_max", "quad_nodes", "series_eps", "max_terms",
                              "allow_restarts", "leg_terms_target", "fold_quadrants"},
                          "solver");
        if (s.contains("grid_size")) c.solver.grid_size = s["grid_size"].get<int>();
        if (s.contains("xi_max")) c.solver.xi_max = s["xi_max"].get<double>();
        if (s.contains("quad_nodes")) c.solver.quad_nodes = s["quad_nodes"].get<int>();
        if (s.contains("series_eps")) c.solver.series_eps = s["series_eps"].get<double>();
        if (s.contains("max_terms")) c.solver.max_terms = s["max_terms"].get<int>();
        if (s.contains("allow_restarts")) c.solver.allow_restarts = s["allow_restarts"].get<bool>();
        if (s.contains("leg_terms_target"))
            c.solver.leg_terms_target = s["leg_terms_target"].get<int>();
        if (s.contains("fold_quadrants")) c.solver.fold_quadrants = s["fold_quadrants"].get<bool>();
        c.solver.validate();
    }
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) throw ConfigError("config: 'output_dir' must be a string");
        c.output_dir = j["output_dir"].get<std::string>();
    }
    if (j.contains("c0")) {
        c.c0 = cfg::number_field(j, "c0", "config");
        if (!(*c.c0 >= 0.0)) throw ConfigError("config: 'c0' must be >= 0");
    }
    if (j.contains("probes")) {
        const auto& pr = j["probes"];
        cfg::require_keys(pr, {"min", "max", "count"}, "probes");
        if (pr.contains("min")) c.probe_min = pr["min"].get<double>();
        if (pr.contains("max")) c.probe_max = pr["max"].get<double>();
        if (pr.contains("count")) c.probe_count = pr["count"].get<int>();
        if (!(c.probe_min > 0.0) || !(c.probe_max > c.probe_min) || c.probe_count < 1)
            throw ConfigError("probes: need 0 < min < max and count >= 1");
    }

    const bool needs_init = c.command != "a0";
    if (needs_init && !c.init) throw ConfigError(c.command + ": 'init' is required");
    const bool needs_times = c.command == "simulate" || c.command == "solve" ||
                             c.command == "equilibrium";
    if (needs_times && c.times.empty()) throw ConfigError(c.command + ": 't' is required");
    // reproducibility is opt-in by design: sampling commands demand a seed
    if ((c.command == "simulate" || c.command == "equilibrium") && !c.seed)
        throw ConfigError(c.command + ": 'seed' is required");
    if (c.command == "a0") {
        if (!c.c0) throw ConfigError("a0: 'c0' is required");
        if (!(c.p > 0.0)) throw ConfigError("a0: requires p > 0 (alpha < 2)");
    }
    return c;
}

namespace detail {

inline json to_json(const TailReport& rep) {
    json j{{"alpha", rep.alpha},
           {"method", rep.method},
           {"xs", rep.xs},
           {"rho", rep.rho}};
    if (rep.c0)
        j["c0_estimate"] = *rep.c0;
    else
        j["c0_estimate"] = "not-convergent";
    return j;
}

inline json to_json(const ConvergenceReport& rep) {
    json j{{"t", rep.t},
           {"n", rep.sample_size},
           {"verdict", to_string(rep.verdict)},
           {"c0_method", rep.c0_method},
           {"median_abs_v", rep.median_abs_v},
           {"iqr", rep.iqr},
           {"cap_events", rep.cap_events}};
    if (rep.target)
        j["target"] = json{{"alpha", rep.target->alpha}, {"a0", rep.target->a0}};
    else
        j["target"] = nullptr;
    if (rep.c0) j["c0"] = *rep.c0;
    if (std::isfinite(rep.cf_sup_dist)) j["cf_sup_distance"] = rep.cf_sup_dist;
    if (std::isfinite(rep.ks_statistic)) {
        j["ks_statistic"] = rep.ks_statistic;
        j["ks_p_value"] = rep.ks_p_value;
    }
    return j;
}

inline CfGrid initial_grid(const InitialLaw& law, const SolverConfig& solver, bool symmetrized) {
    CfGrid g(solver.xi_max, std::size_t(solver.grid_size));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto v = law.cf(g.node(i));
        g[i] = symmetrized ? std::complex<double>(v.real(), 0.0) : v;
    }
    return g;
}

inline std::string indexed_name(const std::string& stem, std::size_t idx, const char* ext) {
    return stem + "_" + std::to_string(idx) + ext;
}

} // namespace detail

/// Execute a validated configuration; writes all artifacts plus a manifest
/// with the resolved config, and returns the process exit status.
inline int run(const RunConfig& c) {
    namespace fs = std::filesystem;
    const fs::path dir(c.output_dir);
    fs::create_directories(dir);

    json manifest{{"version", version()}, {"tool", "kac"}, {"config", to_json(c)}};
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");

    const ModelParams params(c.p);

    if (c.command == "simulate") {
        json report = json::array();
        for (std::size_t idx = 0; idx < c.times.size(); ++idx) {
            const double t = c.times[idx];
            const EnsembleResult ens = sample_ensemble(params, *c.init, t, c.n, *c.seed);
            const std::string csv_name = detail::indexed_name("velocities", idx, ".csv");
            write_text_file(dir / csv_name, column_to_csv(ens.values, "v"));
            json side{{"seed", *c.seed},        {"t", t},
                      {"p", c.p},               {"alpha", params.alpha()},
                      {"n", c.n},               {"cap_events", ens.stats.cap_events},
                      {"init", c.init_spec},    {"file", csv_name}};
            write_text_file(dir / detail::indexed_name("velocities", idx, ".json"),
                            side.dump(2) + "\n");
            report.push_back(side);
        }
        write_text_file(dir / "report.json", report.dump(2) + "\n");
        return 0;
    }

    if (c.command == "solve") {
        const bool symmetric = c.init->is_symmetric();
        const CfGrid phi0 = detail::initial_grid(*c.init, c.solver, symmetric);
        json report = json::array();
        for (std::size_t idx = 0; idx < c.times.size(); ++idx) {
            const double t = c.times[idx];
            SolveReport sr;
            const CfGrid phi = symmetric ? solve_cf(phi0, params, t, c.solver, &sr)
                                         : solve_cf_asymmetric(phi0, params, t, c.solver, &sr);
            const std::string csv_name = detail::indexed_name("cf", idx, ".csv");
            write_text_file(dir / csv_name, cf_grid_to_csv(phi));
            report.push_back(json{{"t", t},
                                  {"path", symmetric ? "symmetric" : "asymmetric"},
                                  {"legs", sr.legs},
                                  {"terms_per_leg", sr.terms_per_leg},
                                  {"remainder_bound", sr.remainder_bound},
                                  {"max_imag", phi.max_imag()},
                                  {"file", csv_name}});
        }
        write_text_file(dir / "report.json", report.dump(2) + "\n");
        return 0;
    }

    if (c.command == "stationary-check") {
        const CfGrid phi0 = detail::initial_grid(*c.init, c.solver, /*symmetrized=*/true);
        const double residual = fixed_point_residual(phi0, params, c.solver);
        json report{{"residual", residual},
                    {"p", c.p},
                    {"alpha", params.alpha()},
                    {"grid_size", c.solver.grid_size},
                    {"quad_nodes", c.solver.quad_nodes},
                    {"xi_max", c.solver.xi_max}};
        write_text_file(dir / "report.json", report.dump(2) + "\n");
        return 0;
    }

    if (c.command == "tails") {
        std::vector<double> xs(c.probe_count);
        for (int i = 0; i < c.probe_count; ++i)
            xs[i] = c.probe_count == 1
                        ? c.probe_min
                        : c.probe_min * std::pow(c.probe_max / c.probe_min,
                                                 double(i) / double(c.probe_count - 1));
        const TailReport rep = rho_curve(symmetrize(*c.init), params.alpha(), xs);
        std::ostringstream csv;
        csv << "x,rho\n";
        for (std::size_t i = 0; i < rep.xs.size(); ++i)
            csv << format_double(rep.xs[i]) << ',' << format_double(rep.rho[i]) << '\n';
        write_text_file(dir / "tails.csv", csv.str());
        write_text_file(dir / "report.json", detail::to_json(rep).dump(2) + "\n");
        return 0;
    }

    if (c.command == "equilibrium") {
        json runs = json::array();
        std::vector<ConvergenceReport> reps;
        for (std::size_t idx = 0; idx < c.times.size(); ++idx) {
            ConvergenceReport rep = equilibrium_check(params, *c.init, c.times[idx], c.n, *c.seed);
            if (rep.target) {
                std::ostringstream csv;
                csv << "xi,re,im,target_re\n";
                for (std::size_t i = 0; i < rep.cf_xis.size(); ++i)
                    csv << format_double(rep.cf_xis[i]) << ','
                        << format_double(rep.cf_emp[i].real()) << ','
                        << format_double(rep.cf_emp[i].imag()) << ','
                        << format_double(stable_cf(*rep.target, rep.cf_xis[i])) << '\n';
                write_text_file(dir / detail::indexed_name("equilibrium", idx, ".csv"), csv.str());
            }
            runs.push_back(detail::to_json(rep));
            reps.push_back(std::move(rep));
        }
        json report{{"runs", runs}};
        if (reps.size() >= 2) {
            const auto& first = reps.front();
            const auto& last = reps.back();
            json ladder{{"t_first", first.t}, {"t_last", last.t}};
            if (first.iqr > 0.0) ladder["iqr_ratio"] = last.iqr / first.iqr;
            if (first.median_abs_v > 0.0)
                ladder["median_abs_ratio"] = last.median_abs_v / first.median_abs_v;
            bool non_increasing = true;
            for (std::size_t i = 1; i < reps.size(); ++i)
                if (std::isfinite(reps[i].cf_sup_dist) && std::isfinite(reps[i - 1].cf_sup_dist) &&
                    reps[i].cf_sup_dist > reps[i - 1].cf_sup_dist)
                    non_increasing = false;
            if (std::isfinite(first.cf_sup_dist)) ladder["cf_dist_non_increasing"] = non_increasing;
            report["ladder"] = ladder;
        }
        write_text_file(dir / "report.json", report.dump(2) + "\n");
        return 0;
    }

    if (c.command == "a0") {
        const double alpha = params.alpha();
        const double closed = a0_from_c0(*c.c0, alpha);
        const double oracle = 2.0 * (*c.c0) * stable_scale_constant_oracle(alpha);
        json report{{"alpha", alpha},
                    {"c0", *c.c0},
                    {"a0_closed_form", closed},
                    {"a0_oracle", oracle},
                    {"abs_difference", std::abs(closed - oracle)}};
        write_text_file(dir / "report.json", report.dump(2) + "\n");
        std::printf("a0 = %.12g (closed form), %.12g (oscillatory oracle), |diff| = %.3g\n",
                    closed, oracle, std::abs(closed - oracle));
        return 0;
    }

    throw ConfigError("run: unhandled command '" + c.command + "'");
}

} // namespace kac
