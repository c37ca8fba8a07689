#include "atstop/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "atstop/argmax_eta.hpp"

namespace atstop {

namespace {

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Mark& mark, const std::string& message) const {
        if (mark.is_null()) throw ConfigError(fmt::format("{}: {}", source_, message));
        throw ConfigError(fmt::format("{}:{}:{}: {}", source_, mark.line + 1, mark.column + 1, message));
    }

    void expect_map(const YAML::Node& node, const std::string& name) const {
        if (!node.IsMap()) fail(node.Mark(), fmt::format("'{}' must be a mapping", name));
    }

    void check_keys(const YAML::Node& map, std::initializer_list<const char*> allowed,
                    const std::string& where) const {
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok)
                fail(kv.first.Mark(), where.empty() ? fmt::format("unknown key '{}'", key)
                                                    : fmt::format("unknown key '{}' in '{}'", key, where));
        }
    }

    double real(const YAML::Node& node, const std::string& name) const {
        if (!node.IsScalar()) fail(node.Mark(), fmt::format("'{}' must be a number", name));
        double v = 0.0;
        try {
            v = node.as<double>();
        } catch (const YAML::Exception&) {
            fail(node.Mark(), fmt::format("'{}' must be a number, got '{}'", name, node.Scalar()));
        }
        if (!std::isfinite(v)) fail(node.Mark(), fmt::format("'{}' must be finite", name));
        return v;
    }

    long long integer(const YAML::Node& node, const std::string& name, long long min) const {
        const double v = real(node, name);
        if (v != std::floor(v) || v < static_cast<double>(min) || v > 9.0e15)
            fail(node.Mark(), fmt::format("'{}' must be an integer >= {}", name, min));
        return static_cast<long long>(v);
    }

    std::uint64_t seed(const YAML::Node& node, const std::string& name) const {
        if (!node.IsScalar()) fail(node.Mark(), fmt::format("'{}' must be a non-negative integer", name));
        try {
            return node.as<std::uint64_t>();
        } catch (const YAML::Exception&) {
            fail(node.Mark(), fmt::format("'{}' must be a non-negative integer, got '{}'", name, node.Scalar()));
        }
    }

    bool boolean(const YAML::Node& node, const std::string& name) const {
        try {
            return node.as<bool>();
        } catch (const YAML::Exception&) {
            fail(node.Mark(), fmt::format("'{}' must be true or false", name));
        }
    }

private:
    std::string source_;
};

EtaMode parse_eta(const Reader& rd, const YAML::Node& node, const RewardExpr& reward) {
    if (!node.IsScalar()) rd.fail(node.Mark(), "'eta_mode' must be a string");
    const auto text = node.Scalar();
    try {
        const auto kind = parse_eta_kind(text);
        if (kind == EtaKind::two_sided) return two_sided_mode_for(reward);
        EtaMode mode;
        mode.kind = kind;
        return mode;
    } catch (const std::invalid_argument& e) {
        rd.fail(node.Mark(), e.what());
    }
}

}  // namespace

Config parse_config(const std::string& text, const std::string& source) {
    const Reader rd(source);
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        rd.fail(e.mark, e.msg);
    }
    if (!root.IsMap()) rd.fail(root.Mark(), "config must be a mapping");
    rd.check_keys(root, {"process", "q", "reward", "eta_mode", "solver", "mc"}, "");

    Config cfg;
    auto use_default = [&](const std::string& name) { cfg.defaulted.push_back(name); };

    if (const auto p = root["process"]) {
        rd.expect_map(p, "process");
        rd.check_keys(p, {"mu", "sigma"}, "process");
        if (p["mu"]) cfg.model.mu = rd.real(p["mu"], "process.mu"); else use_default("process.mu");
        if (p["sigma"]) cfg.model.sigma = rd.real(p["sigma"], "process.sigma"); else use_default("process.sigma");
        if (!(cfg.model.sigma > 0.0)) rd.fail(p["sigma"].Mark(), "'process.sigma' must be positive");
    } else {
        use_default("process.mu");
        use_default("process.sigma");
    }

    if (!root["q"]) rd.fail(root.Mark(), "missing required key 'q'");
    cfg.model.q = rd.real(root["q"], "q");
    if (!(cfg.model.q > 0.0)) rd.fail(root["q"].Mark(), "'q' must be positive");

    const auto reward = root["reward"];
    if (!reward) rd.fail(root.Mark(), "missing required key 'reward'");
    rd.expect_map(reward, "reward");
    rd.check_keys(reward, {"terms", "positive_part"}, "reward");
    const auto terms = reward["terms"];
    if (!terms || !terms.IsSequence()) rd.fail(reward.Mark(), "'reward.terms' must be a list of {c, n, r}");
    if (terms.size() == 0) rd.fail(terms.Mark(), "'reward.terms' is empty");
    std::vector<RewardTerm> parsed;
    for (const auto& t : terms) {
        rd.expect_map(t, "reward.terms[]");
        rd.check_keys(t, {"c", "n", "r"}, "reward.terms[]");
        if (!t["c"]) rd.fail(t.Mark(), "reward term needs 'c'");
        RewardTerm term;
        term.c = rd.real(t["c"], "c");
        if (t["n"]) term.n = static_cast<int>(rd.integer(t["n"], "n", 0));
        if (t["n"] && term.n > 30) rd.fail(t["n"].Mark(), "'n' must be at most 30");
        if (t["r"]) term.r = rd.real(t["r"], "r");
        parsed.push_back(term);
    }
    bool positive = false;
    if (reward["positive_part"]) positive = rd.boolean(reward["positive_part"], "reward.positive_part");
    else use_default("reward.positive_part");
    cfg.reward = RewardExpr(parsed, positive);
    if (cfg.reward.empty()) rd.fail(terms.Mark(), "'reward.terms' has only zero coefficients");

    if (root["eta_mode"]) {
        cfg.eta = parse_eta(rd, root["eta_mode"], cfg.reward);
    } else {
        use_default("eta_mode");
        try {
            cfg.eta = two_sided_mode_for(cfg.reward);
        } catch (const std::invalid_argument&) {
            cfg.eta = EtaMode{};
        }
    }

    const auto solver = root["solver"];
    if (solver) {
        rd.expect_map(solver, "solver");
        rd.check_keys(solver, {"grid_lo", "grid_hi", "grid_step", "tol", "empirical_samples"}, "solver");
    }
    const auto mc = root["mc"];
    if (mc) {
        rd.expect_map(mc, "mc");
        rd.check_keys(mc, {"paths", "step", "seed", "horizon_cap"}, "mc");
    }
    auto field = [&](const YAML::Node& parent, const char* key) {
        return parent ? parent[key] : YAML::Node(YAML::NodeType::Undefined);
    };

    if (auto n = field(mc, "paths")) cfg.mc.paths = static_cast<std::size_t>(rd.integer(n, "mc.paths", 2));
    else use_default("mc.paths");
    if (auto n = field(mc, "step")) {
        cfg.mc.step = rd.real(n, "mc.step");
        if (!(cfg.mc.step > 0.0)) rd.fail(n.Mark(), "'mc.step' must be positive");
    } else {
        use_default("mc.step");
    }
    if (auto n = field(mc, "seed")) cfg.mc.seed = rd.seed(n, "mc.seed");
    else use_default("mc.seed");
    if (auto n = field(mc, "horizon_cap")) {
        cfg.mc.horizon_cap = rd.real(n, "mc.horizon_cap");
        if (!(cfg.mc.horizon_cap > 0.0)) rd.fail(n.Mark(), "'mc.horizon_cap' must be positive");
    } else {
        use_default("mc.horizon_cap");
        cfg.mc.horizon_cap = default_horizon(cfg.model);
    }

    if (auto n = field(solver, "empirical_samples"))
        cfg.eta.empirical_samples =
            static_cast<std::size_t>(rd.integer(n, "solver.empirical_samples", static_cast<long long>(kMinEmpiricalSamples)));
    else
        use_default("solver.empirical_samples");
    cfg.eta.empirical_seed = cfg.mc.seed;
    cfg.eta.empirical_step = cfg.mc.step;

    ScanGrid grid;
    try {
        grid = default_grid(cfg.model, cfg.reward, cfg.eta);
    } catch (const std::invalid_argument& e) {
        rd.fail(root.Mark(), e.what());
    }
    if (auto n = field(solver, "grid_lo")) grid.lo = rd.real(n, "solver.grid_lo");
    else use_default("solver.grid_lo");
    if (auto n = field(solver, "grid_hi")) grid.hi = rd.real(n, "solver.grid_hi");
    else use_default("solver.grid_hi");
    if (auto n = field(solver, "grid_step")) {
        grid.step = rd.real(n, "solver.grid_step");
        if (!(grid.step > 0.0)) rd.fail(n.Mark(), "'solver.grid_step' must be positive");
    } else {
        use_default("solver.grid_step");
    }
    if (!(grid.lo < grid.hi))
        rd.fail(solver ? solver.Mark() : root.Mark(), "'solver.grid_lo' must be below 'solver.grid_hi'");
    cfg.grid = grid;
    if (auto n = field(solver, "tol")) {
        cfg.tol = rd.real(n, "solver.tol");
        if (!(cfg.tol > 0.0)) rd.fail(n.Mark(), "'solver.tol' must be positive");
    } else {
        use_default("solver.tol");
    }

    try {
        to_problem(cfg).validate();
    } catch (const std::invalid_argument& e) {
        rd.fail(root["eta_mode"] ? root["eta_mode"].Mark() : root.Mark(), e.what());
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("{}: cannot open config file", path));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path);
}

Config default_config() {
    return parse_config(
        "q: 0.02\n"
        "reward:\n"
        "  terms:\n"
        "    - {c: 1, n: 0, r: 0.1}\n"
        "    - {c: 1, n: 0, r: -0.05}\n"
        "    - {c: -2, n: 0, r: 0}\n",
        "<default>");
}

StoppingProblem to_problem(const Config& config) {
    StoppingProblem p;
    p.model = config.model;
    p.reward = config.reward;
    p.eta = config.eta;
    p.grid = config.grid;
    p.tol = config.tol;
    return p;
}

nlohmann::ordered_json echo(const Config& config) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : config.reward.terms()) terms.push_back({{"c", t.c}, {"n", t.n}, {"r", t.r}});
    nlohmann::ordered_json out;
    out["process"] = {{"mu", config.model.mu}, {"sigma", config.model.sigma}};
    out["q"] = config.model.q;
    out["reward"] = {{"terms", terms}, {"positive_part", config.reward.positive_part()}};
    out["eta_mode"] = to_string(config.eta.kind);
    if (config.eta.kind == EtaKind::two_sided) out["eta_params"] = {{"a", config.eta.a}, {"b", config.eta.b}};
    out["solver"] = {{"grid_lo", config.grid.lo},
                     {"grid_hi", config.grid.hi},
                     {"grid_step", config.grid.step},
                     {"tol", config.tol},
                     {"empirical_samples", config.eta.empirical_samples}};
    out["mc"] = {{"paths", config.mc.paths},
                 {"step", config.mc.step},
                 {"seed", config.mc.seed},
                 {"horizon_cap", config.mc.horizon_cap}};
    out["defaults_applied"] = config.defaulted;
    return out;
}

}  // namespace atstop
