#include "atstop/cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "atstop/atransform.hpp"
#include "atstop/config.hpp"
#include "atstop/solver.hpp"
#include "atstop/value.hpp"
#include "atstop/verify.hpp"

namespace atstop {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double v) { return fmt::format("{:.12g}", v == 0.0 ? 0.0 : v); }

Json json_num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

struct Common {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t paths = 0;
    double step = 0.0;
    std::string out_path;
};

Config resolve_config(const Common& common) {
    auto cfg = common.config_path.empty() ? default_config() : load_config(common.config_path);
    if (common.seed_given) {
        cfg.mc.seed = common.seed;
        cfg.eta.empirical_seed = common.seed;
    }
    if (common.paths > 0) cfg.mc.paths = common.paths;
    if (common.step > 0.0) {
        cfg.mc.step = common.step;
        cfg.eta.empirical_step = common.step;
    }
    return cfg;
}

bool monotone_mode(const StoppingProblem& p) {
    return p.eta.kind == EtaKind::monotone_sup || p.eta.kind == EtaKind::monotone_inf;
}

double closed_form_value(const StoppingProblem& p, const StoppingSolution& sol, double x) {
    if (monotone_mode(p)) return value_one_sided(p, sol, x);
    return region_value_exact(p.model, p.reward, sol.region, x);
}

std::vector<double> scan_nodes(const ScanGrid& grid) {
    std::vector<double> xs;
    const auto cells = static_cast<std::size_t>(std::ceil((grid.hi - grid.lo) / grid.step - 1e-9));
    for (std::size_t i = 0; i < cells; ++i) xs.push_back(grid.lo + static_cast<double>(i) * grid.step);
    xs.push_back(grid.hi);
    return xs;
}

int cmd_solve(const Config& cfg, const std::string& table_path, std::ostream& out) {
    const auto problem = to_problem(cfg);
    const auto sol = stopping_region(problem);

    Json doc;
    doc["config"] = echo(cfg);
    Json bounds = Json::array();
    for (const auto& b : sol.boundaries)
        bounds.push_back({{"x", b.x}, {"residual", b.residual}, {"uncertain", b.uncertain}});
    doc["boundaries"] = bounds;
    Json region = Json::array();
    for (const auto& iv : sol.region.intervals())
        region.push_back({{"lo", json_num(iv.lo)}, {"hi", json_num(iv.hi)}, {"uncertain", iv.uncertain}});
    doc["region"] = region;

    Json como = Json::array();
    for (const auto& iv : sol.comonotone.intervals) {
        Json bad = Json::array();
        for (const auto& c : iv.violations)
            bad.push_back({{"lo", c.lo}, {"hi", c.hi}, {"reward_slope", c.reward_slope}, {"image_slope", c.image_slope}});
        como.push_back({{"lo", json_num(iv.interval.lo)},
                        {"hi", json_num(iv.interval.hi)},
                        {"pass", iv.pass()},
                        {"cells_checked", iv.cells_checked},
                        {"violations", bad}});
    }
    doc["comonotone"] = {{"pass", sol.comonotone.pass()}, {"intervals", como}};
    doc["inconclusive"] = sol.inconclusive;
    if (sol.root_bound > 0) doc["root_bound"] = sol.root_bound;
    doc["value_method"] = monotone_mode(problem) ? "one_sided_integral" : "exit_law";

    std::ostringstream csv;
    csv << "x,g,image,V\n";
    Json rows = Json::array();
    for (double x : scan_nodes(problem.grid)) {
        const double g = eval(problem.reward, x);
        const double img = sol.image_at(x);
        const double v = closed_form_value(problem, sol, x);
        csv << num(x) << ',' << num(g) << ',' << num(img) << ',' << num(v) << '\n';
        rows.push_back({x, g, img, v});
    }
    doc["table"] = {{"columns", {"x", "g", "image", "V"}}, {"rows", rows}};
    out << doc.dump(2) << '\n';

    if (!table_path.empty()) {
        std::ofstream t(table_path);
        if (!t) throw std::runtime_error(fmt::format("cannot write {}", table_path));
        t << csv.str();
    }
    return sol.inconclusive ? exit_code::inconclusive : exit_code::ok;
}

int cmd_value(const Config& cfg, double x, std::ostream& out) {
    const auto problem = to_problem(cfg);
    const auto sol = stopping_region(problem);
    out << "x,method,estimate,stderr,samples\n";
    out << num(x) << ',' << (monotone_mode(problem) ? "one_sided_integral" : "exit_law") << ','
        << num(closed_form_value(problem, sol, x)) << ",0,0\n";
    const auto mc = value_mc(problem, sol, x, cfg.mc);
    out << num(x) << ",entry_mc," << num(mc.mean) << ',' << num(mc.std_error) << ',' << mc.samples << '\n';
    if (problem.eta.kind != EtaKind::empirical) {
        const auto def = value_definition_mc(problem, sol, x, cfg.mc);
        out << num(x) << ",definition_mc," << num(def.mean) << ',' << num(def.std_error) << ',' << def.samples
            << '\n';
    }
    return sol.inconclusive ? exit_code::inconclusive : exit_code::ok;
}

int cmd_verify(const Config& cfg, const std::string& suite, std::ostream& out) {
    const auto reports = run_suite(suite, to_problem(cfg), cfg.mc);
    out << "name,x,estimate,target,stderr,allowance,pass\n";
    bool all_pass = true;
    for (const auto& r : reports) {
        out << r.name << ',' << num(r.x) << ',' << num(r.estimate) << ',' << num(r.target) << ','
            << num(r.std_error) << ',' << num(r.allowance) << ',' << (r.pass ? "true" : "false") << '\n';
        all_pass = all_pass && r.pass;
    }
    return all_pass ? exit_code::ok : exit_code::checks_failed;
}

int cmd_appell(const std::string& spec, int n, std::ostream& out) {
    const auto law = parse_law_spec(spec);
    const auto coeffs = appell_poly(*law, n);
    out << "degree,coefficient\n";
    for (std::size_t k = 0; k < coeffs.size(); ++k) out << k << ',' << num(coeffs[k]) << '\n';
    return exit_code::ok;
}

double parse_real(std::string_view text, const char* what) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw std::invalid_argument(fmt::format("bad {} '{}' in --grid", what, text));
    return v;
}

ScanGrid parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw std::invalid_argument("--grid must look like lo:hi:step");
    ScanGrid g{parse_real(std::string_view(text).substr(0, a), "lo"),
               parse_real(std::string_view(text).substr(a + 1, b - a - 1), "hi"),
               parse_real(std::string_view(text).substr(b + 1), "step")};
    if (!(g.lo < g.hi)) throw std::invalid_argument("--grid needs lo < hi");
    if (!(g.step > 0.0)) throw std::invalid_argument("--grid needs a positive step");
    return g;
}

int cmd_plot_data(const Config& cfg, const ScanGrid& grid, std::ostream& out) {
    const auto problem = to_problem(cfg);
    const auto rows = static_cast<std::size_t>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9)) + 1;
    out << "x,g,image\n";
    for (std::size_t i = 0; i < rows; ++i) {
        const double x = grid.lo + static_cast<double>(i) * grid.step;
        out << num(x) << ',' << num(eval(problem.reward, x)) << ',' << num(image_at(problem, x)) << '\n';
    }
    return exit_code::ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal stopping for discounted rewards of Brownian motion with drift", "atstop"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--config", common.config_path, "YAML config file (default: built-in two-sided example)");
    app.add_option("--seed", common.seed, "override mc.seed")->each([&](const std::string&) { common.seed_given = true; });
    app.add_option("--paths", common.paths, "override mc.paths");
    app.add_option("--step", common.step, "override mc.step");
    app.add_option("--out", common.out_path, "write the result here instead of stdout");

    auto* solve = app.add_subcommand("solve", "stopping region, boundaries and value table (JSON)");
    std::string table_path;
    solve->add_option("--table", table_path, "also write the x,g,image,V table as CSV");

    auto* value = app.add_subcommand("value", "value function at one point (CSV)");
    double x = 0.0;
    value->add_option("--x", x, "start point")->required();

    auto* verify = app.add_subcommand("verify", "statistical checks (CSV)");
    std::string suite;
    verify->add_option("--suite", suite, "averaging|martingale|dominance|etalaw|identity|all")->required();

    auto* appell = app.add_subcommand("appell", "Appell polynomial coefficients (CSV)");
    std::string law_spec;
    int degree = 0;
    appell->add_option("--law", law_spec, "exp:<beta>, negexp:<beta> or bm:<mu>,<sigma>,<t>")->required();
    appell->add_option("--n", degree, "degree")->required()->check(CLI::Range(0, 60));

    auto* plot = app.add_subcommand("plot-data", "x,g,image over a grid (CSV)");
    std::string grid_text;
    plot->add_option("--grid", grid_text, "lo:hi:step")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config_error;
    }

    std::ofstream file;
    if (!common.out_path.empty()) {
        file.open(common.out_path);
        if (!file) {
            err << "error: cannot write " << common.out_path << '\n';
            return exit_code::config_error;
        }
    }
    std::ostream& sink = common.out_path.empty() ? out : file;

    try {
        if (appell->parsed()) return cmd_appell(law_spec, degree, sink);
        if (verify->parsed() && std::find(known_suites().begin(), known_suites().end(), suite) == known_suites().end()) {
            err << "error: unknown suite '" << suite << "'\n";
            return exit_code::config_error;
        }
        if (plot->parsed()) {
            const auto grid = parse_grid(grid_text);
            return cmd_plot_data(resolve_config(common), grid, sink);
        }
        const auto cfg = resolve_config(common);
        if (solve->parsed()) return cmd_solve(cfg, table_path, sink);
        if (value->parsed()) return cmd_value(cfg, x, sink);
        if (verify->parsed()) return cmd_verify(cfg, suite, sink);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::config_error;
    }
    return exit_code::config_error;
}

}  // namespace atstop
