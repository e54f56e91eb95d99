#include "cbloch/config.hpp"
#include "cbloch/errors.hpp"
#include "cbloch/presets.hpp"
#include "cbloch/runner.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace {

using namespace cbloch;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> dt_tj;
    std::optional<double> t_end_tj;
};

struct Context {
    Overrides overrides;
    std::filesystem::path out_dir;
    std::size_t workers = 1;
    bool quiet = false;

    void say(const std::string& line) const {
        if (!quiet)
            std::cout << line << '\n';
    }
};

// --dt and --t-end are given in tunneling periods regardless of the grid unit.
void apply(const Overrides& o, Scenario& s) {
    if (o.seed)
        s.seed = *o.seed;
    const double scale = s.grid.unit == TimeUnit::natural ? s.params.tunneling_period() : 1.0;
    if (o.dt_tj)
        s.grid.dt = *o.dt_tj * scale;
    if (o.t_end_tj)
        s.grid.t_end = *o.t_end_tj * scale;
}

void apply(const Overrides& o, Sweep& sw) {
    apply(o, sw.base);
    if (o.t_end_tj)
        sw.horizon.kind = HorizonRule::Kind::fixed;
}

void warn_horizon(const Scenario& s) {
    for (const auto& w : horizon_warnings(s))
        std::cerr << "warning: " << s.name << ": " << w << '\n';
}

int run_scenario(const Context& ctx, Scenario s) {
    apply(ctx.overrides, s);
    s.validate();
    warn_horizon(s);
    const RunResult r = run(s, RunOptions{ctx.out_dir, ctx.workers});
    const auto& m = r.summary["measured"];
    ctx.say(fmt::format("{}: sigma {:.6g} -> {:.6g}, m1 {:.6g} -> {:.6g}", s.name, m["sigma_initial"].get<double>(),
                        m["sigma_final"].get<double>(), m["m1_initial"].get<double>(), m["m1_final"].get<double>()));
    for (const auto& f : r.files)
        ctx.say("  wrote " + f.string());
    return 0;
}

int run_sweep_cmd(const Context& ctx, Sweep sw) {
    apply(ctx.overrides, sw);
    sw.validate();
    for (std::size_t i = 0; i < sw.values.size(); ++i)
        warn_horizon(sw.point(i));
    const SweepResult r = run_sweep(sw, RunOptions{ctx.out_dir, ctx.workers});
    int status = 0;
    for (const auto& row : r.rows) {
        if (!row.error.empty()) {
            std::cerr << fmt::format("error: {} at {}: {}\n", sw.name, row.value, row.error);
            status = kExitNumerical;
        } else {
            ctx.say(fmt::format("{} {} = {:.6g}: sigma_final {:.6g}, A {}", sw.name, to_string(sw.axis), row.value,
                                row.sigma_final, row.fit ? fmt::format("{:.6g}", row.fit->slope) : "n/a"));
        }
    }
    ctx.say("  wrote " + r.file.string());
    return status;
}

int run_experiment(const Context& ctx, const Experiment& e) {
    if (const auto* s = std::get_if<Scenario>(&e))
        return run_scenario(ctx, *s);
    return run_sweep_cmd(ctx, std::get<Sweep>(e));
}

int predict_cmd(const Context& ctx, Experiment e) {
    nlohmann::json out;
    if (auto* s = std::get_if<Scenario>(&e)) {
        apply(ctx.overrides, *s);
        out = predictions(s->params);
        out["scenario"] = s->name;
        out["warnings"] = horizon_warnings(*s);
    } else {
        auto& sw = std::get<Sweep>(e);
        apply(ctx.overrides, sw);
        sw.validate();
        out = nlohmann::json{{"sweep", sw.name}, {"points", nlohmann::json::array()}};
        for (std::size_t i = 0; i < sw.values.size(); ++i) {
            const Scenario p = sw.point(i);
            auto j = predictions(p.params);
            j["value"] = sw.values[i];
            j["warnings"] = horizon_warnings(p);
            out["points"].push_back(std::move(j));
        }
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int preset_cmd(const Context& ctx, const std::string& name, bool config_only) {
    const Preset p = preset(name);
    std::filesystem::create_directories(ctx.out_dir);
    int status = 0;
    for (const auto& e : p.experiments()) {
        if (config_only) {
            const auto& n = std::holds_alternative<Scenario>(e) ? std::get<Scenario>(e).name : std::get<Sweep>(e).name;
            const auto path = ctx.out_dir / (n + ".yaml");
            save_experiment(e, path);
            ctx.say("wrote " + path.string());
        } else {
            status = std::max(status, run_experiment(ctx, e));
        }
    }
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclotron-Bloch dynamics simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(cbloch::code_version()));

    Context ctx;
    std::string out_dir;
    if (const char* env = std::getenv("CBLOCH_OUT_DIR"))
        out_dir = env;
    else
        out_dir = ".";

    std::uint64_t seed = 0;
    double dt = 0.0, t_end = 0.0;
    auto* seed_opt = app.add_option("--seed", seed, "Override the scenario seed");
    auto* dt_opt = app.add_option("--dt", dt, "Override the time step (tunneling periods)")->check(CLI::PositiveNumber);
    auto* t_end_opt =
        app.add_option("--t-end", t_end, "Override the horizon (tunneling periods)")->check(CLI::PositiveNumber);
    app.add_flag("-q,--quiet", ctx.quiet, "Only print warnings and errors");
    app.add_option("-o,--out", out_dir, "Output directory (default: $CBLOCH_OUT_DIR or .)");
    app.add_option("-j,--workers", ctx.workers, "Worker threads")->check(CLI::PositiveNumber);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario or sweep config");
    run_cmd->add_option("config", config_path, "YAML config file")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a sweep config");
    sweep_cmd->add_option("config", config_path, "YAML config file")->required();

    auto* predict = app.add_subcommand("predict", "Print model predictions for a config");
    predict->add_option("config", config_path, "YAML config file")->required();

    std::string preset_name;
    bool config_only = false;
    auto* preset_sub = app.add_subcommand("preset", "Run a figure preset");
    preset_sub->add_option("name", preset_name, "Preset name")->required()->check(CLI::IsMember(preset_names()));
    preset_sub->add_flag("--config-only", config_only, "Write the preset configs instead of running them");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*seed_opt)
        ctx.overrides.seed = seed;
    if (*dt_opt)
        ctx.overrides.dt_tj = dt;
    if (*t_end_opt)
        ctx.overrides.t_end_tj = t_end;
    ctx.out_dir = out_dir;

    try {
        if (*preset_sub)
            return preset_cmd(ctx, preset_name, config_only);
        const Experiment e = load_experiment(config_path);
        if (*predict)
            return predict_cmd(ctx, e);
        if (*sweep_cmd) {
            if (!std::holds_alternative<Sweep>(e))
                throw ConfigError(config_path + " does not describe a sweep");
            return run_sweep_cmd(ctx, std::get<Sweep>(e));
        }
        return run_experiment(ctx, e);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
