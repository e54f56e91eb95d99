#include "cbloch/runner.hpp"

#include "cbloch/errors.hpp"
#include "cbloch/propagator.hpp"
#include "cbloch/states.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#ifndef CBLOCH_VERSION
#define CBLOCH_VERSION "0.0.0"
#endif

namespace cbloch {

using nlohmann::json;

std::string_view code_version() { return CBLOCH_VERSION; }

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string g17(double x) {
    if (std::isnan(x))
        return "nan";
    return fmt::format("{:.17g}", x);
}

std::string header(const char* schema, const std::string& name, std::uint64_t seed, double tj) {
    return fmt::format("# {} scenario={} seed={} tunneling_period={} code_version={}\n", schema, name, seed, g17(tj),
                       code_version());
}

Lattice2D plane_for(const Scenario& s, const Lattice1D& x) {
    const auto ny = s.lattice.n_y;
    const auto origin_y = s.lattice.boundary_y == Boundary::periodic ? 0 : static_cast<std::ptrdiff_t>(ny / 2);
    return Lattice2D{x.n_sites, ny, x.origin, origin_y, s.lattice.boundary_y};
}

State2D embed(const State1D& member, const Lattice2D& plane) {
    State2D psi = embed_y_uniform(member, plane.n_y);
    psi.lattice = plane;
    return psi;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write output file " + path.string());
    out << content;
    if (!out)
        throw ConfigError("failed writing output file " + path.string());
}

// Summary-friendly result of an optional fit.
template <class F>
json fit_record(F&& fit, double tj, bool with_class) {
    try {
        const FitResult r = fit();
        json j = {{"slope", r.slope},
                  {"slope_per_tj", r.slope * tj},
                  {"intercept", r.intercept},
                  {"window", {r.t_lo, r.t_hi}},
                  {"rms_residual", r.rms_residual}};
        if (with_class)
            j["classification"] = std::string(to_string(r.classification));
        return j;
    } catch (const Error& e) {
        return json{{"error", e.what()}};
    }
}

} // namespace

Simulation simulate(const Scenario& scenario, std::size_t workers) {
    scenario.validate();
    const Lattice1D lattice = scenario.resolve_lattice();
    const ModelParams& params = scenario.params;

    std::vector<State1D> members;
    if (scenario.initial.phases == PhaseModel::coherent)
        members.push_back(coherent_gaussian(scenario.initial, lattice, params));
    else
        members = incoherent_ensemble(scenario.initial, lattice, params, scenario.seed).members;

    Simulation sim{lattice, {}};
    if (scenario.hamiltonian == HamiltonianKind::h1d) {
        Ensemble ensemble{std::move(members), scenario.seed};
        EnsembleOptions opts;
        opts.workers = workers;
        sim.trajectory = evolve_ensemble(ensemble, params, scenario.grid, opts).averaged;
        return sim;
    }

    const Lattice2D plane = plane_for(scenario, lattice);
    const auto kind =
        scenario.hamiltonian == HamiltonianKind::h2d_driven ? PlaneHamiltonian::driven : PlaneHamiltonian::static_field;
    std::vector<Trajectory> runs;
    runs.reserve(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
        const std::string where =
            "realization " + std::to_string(k) + " (seed " + std::to_string(scenario.seed) + "): ";
        try {
            runs.push_back(evolve(embed(members[k], plane), params, scenario.grid, kind).trajectory);
        } catch (const NormDrift& e) {
            throw NormDrift(where + e.what());
        } catch (const EdgeOverflow& e) {
            throw EdgeOverflow(where + e.what());
        }
    }
    sim.trajectory = average_trajectories(runs);
    return sim;
}

json predictions(const ModelParams& params) {
    const double tj = params.tunneling_period();
    const Regime regime = classify_regime(params);
    json j = {{"omega", drive_magnitude(params)},
              {"omega_cr", critical_frequency(params)},
              {"regime", std::string(to_string(regime))},
              {"tunneling_period", tj}};

    if (params.alpha != 0.0) {
        const double v = predicted_drift_velocity(params);
        j["drift_velocity"] = v;
        j["drift_velocity_per_tj"] = v * tj;
    } else {
        j["drift_velocity"] = nullptr;
        j["drift_velocity_per_tj"] = nullptr;
    }

    const auto ratio = drive_ratio(params);
    if (!ratio) {
        j["ratio"] = nullptr;
    } else if (ratio->is_rational()) {
        j["ratio"] = {{"kind", "rational"},
                      {"r", ratio->numerator()},
                      {"q", ratio->denominator()},
                      {"nu", *ratio->nu()},
                      {"value", ratio->value()}};
    } else {
        j["ratio"] = {{"kind", "irrational"}, {"value", ratio->value()}};
    }

    if (regime == Regime::fast_driving) {
        const auto rate = predicted_ballistic_rate(params, ratio.value_or(FrequencyRatio::irrational(0.5)));
        if (rate.oscillating())
            j["ballistic_rate"] = {{"kind", "bounded_oscillation"}, {"rate", nullptr}, {"rate_per_tj", nullptr}};
        else
            j["ballistic_rate"] = {{"kind", "linear_growth"}, {"rate", rate.rate}, {"rate_per_tj", rate.rate * tj}};
    } else {
        j["ballistic_rate"] = nullptr;
    }
    return j;
}

std::vector<std::string> horizon_warnings(const Scenario& scenario) {
    std::vector<std::string> out;
    const auto& p = scenario.params;
    const auto ratio = drive_ratio(p);
    if (!ratio || !ratio->nu() || *ratio->nu() < 1 || classify_regime(p) != Regime::fast_driving)
        return out;
    const double tj = p.tunneling_period();
    const double t_end_tj = scenario.grid.to_natural(tj).t_end / tj;
    const double needed = 10.0 * std::pow(drive_magnitude(p) / p.j_y, *ratio->nu());
    if (t_end_tj < needed)
        out.push_back(fmt::format("t_end = {:.4g} T_J is shorter than 10 (omega/j_y)^nu = {:.4g} T_J for ratio "
                                  "{}/{} (nu = {}); the fitted rate may not be asymptotic",
                                  t_end_tj, needed, ratio->numerator(), ratio->denominator(), *ratio->nu()));
    return out;
}

json summarize(const Scenario& scenario, const Simulation& sim) {
    const auto& p = scenario.params;
    const auto& tr = sim.trajectory;
    const double tj = p.tunneling_period();
    const auto natural = scenario.grid.to_natural(tj);

    json lattice = {{"n_sites", sim.lattice.n_sites}, {"origin", sim.lattice.origin}};
    if (scenario.hamiltonian != HamiltonianKind::h1d) {
        lattice["n_y"] = scenario.lattice.n_y;
        lattice["boundary_y"] = std::string(to_string(scenario.lattice.boundary_y));
    }

    json measured = {
        {"m1_initial", tr.m1.front()},
        {"m1_final", tr.m1.back()},
        {"sigma_initial", tr.sigma.front()},
        {"sigma_final", tr.sigma.back()},
        {"max_edge_mass", *std::max_element(tr.edge_mass.begin(), tr.edge_mass.end())},
        {"drift", fit_record([&] { return fit_drift(tr); }, tj, false)},
        {"ballistic", fit_record([&] { return fit_ballistic_rate(tr); }, tj, true)},
    };

    return json{{"schema", kSummarySchema},
                {"code_version", std::string(code_version())},
                {"scenario", scenario.name},
                {"seed", scenario.seed},
                {"hamiltonian", std::string(to_string(scenario.hamiltonian))},
                {"params",
                 {{"j_x", p.j_x}, {"j_y", p.j_y}, {"alpha", p.alpha}, {"omega_x", p.omega_x}, {"omega_y", p.omega_y}}},
                {"lattice", lattice},
                {"realizations", scenario.initial.n_realizations},
                {"phases", std::string(to_string(scenario.initial.phases))},
                {"sigma0", scenario.initial.resolved_width(p)},
                {"tunneling_period", tj},
                {"t_end", natural.t_end},
                {"t_end_tj", natural.t_end / tj},
                {"dt", natural.dt},
                {"predictions", predictions(p)},
                {"measured", measured},
                {"warnings", horizon_warnings(scenario)}};
}

std::string trajectory_csv(const Scenario& scenario, const Trajectory& tr) {
    std::string out = header(kTrajectorySchema, scenario.name, scenario.seed, tr.tunneling_period);
    out += "t,t_over_TJ,m1,m2,sigma,edge_mass\n";
    for (std::size_t i = 0; i < tr.size(); ++i)
        out += fmt::format("{},{},{},{},{},{}\n", g17(tr.times[i]), g17(tr.times[i] / tr.tunneling_period),
                           g17(tr.m1[i]), g17(tr.m2[i]), g17(tr.sigma[i]), g17(tr.edge_mass[i]));
    return out;
}

std::string snapshot_csv(const Scenario& scenario, const Trajectory& tr) {
    std::string out = header(kSnapshotSchema, scenario.name, scenario.seed, tr.tunneling_period);
    out += "t,t_over_TJ,l,p_l\n";
    for (const auto& [t, p] : tr.snapshots) {
        const std::string tt = g17(t) + "," + g17(t / tr.tunneling_period);
        for (std::size_t i = 0; i < p.size(); ++i)
            out += fmt::format("{},{},{}\n", tt, tr.first_site + static_cast<std::ptrdiff_t>(i), g17(p[i]));
    }
    return out;
}

RunResult run(const Scenario& scenario, const RunOptions& options) {
    RunResult result;
    result.simulation = simulate(scenario, options.workers);
    result.summary = summarize(scenario, result.simulation);

    const auto& dir = options.out_dir;
    try {
        std::filesystem::create_directories(dir);
        auto emit = [&](OutputKind kind, const std::string& suffix, const std::string& content) {
            if (!scenario.wants(kind))
                return;
            const auto path = dir / (scenario.name + suffix);
            result.files.push_back(path);
            write_file(path, content);
        };
        emit(OutputKind::trajectory_csv, "_trajectory.csv", trajectory_csv(scenario, result.simulation.trajectory));
        emit(OutputKind::snapshot_csv, "_snapshots.csv", snapshot_csv(scenario, result.simulation.trajectory));
        emit(OutputKind::summary, "_summary.json", result.summary.dump(2) + "\n");
    } catch (...) {
        for (const auto& f : result.files)
            std::filesystem::remove(f);
        throw;
    }
    return result;
}

std::vector<SweepRow> compute_sweep(const Sweep& sweep, std::size_t workers) {
    sweep.validate();
    const std::size_t n = sweep.values.size();
    std::vector<SweepRow> rows(n);

    auto compute = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.value = sweep.values[i];
        row.fit.reset();
        try {
            const Scenario s = sweep.point(i);
            const auto& p = s.params;
            row.omega = drive_magnitude(p);
            row.ratio = p.omega_y != 0.0 ? p.omega_x / p.omega_y : kNaN;
            row.regime = classify_regime(p);
            row.tunneling_period = p.tunneling_period();
            row.t_end = s.grid.to_natural(row.tunneling_period).t_end;
            if (row.regime == Regime::fast_driving) {
                const auto ratio = drive_ratio(p);
                const auto rate = predicted_ballistic_rate(p, ratio.value_or(FrequencyRatio::irrational(0.5)));
                if (!rate.oscillating())
                    row.predicted_rate = rate.rate;
            }
            const Simulation sim = simulate(s, 1);
            row.sigma_final = sim.trajectory.sigma.back();
            row.fit = fit_ballistic_rate(sim.trajectory);
        } catch (const Error& e) {
            row.error = e.what();
        }
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            compute(i);
    };
    const std::size_t n_workers = std::clamp<std::size_t>(workers, 1, n);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back(worker);
    }
    return rows;
}

std::string sweep_csv(const Sweep& sweep, const std::vector<SweepRow>& rows) {
    std::string out = fmt::format("# {} sweep={} axis={} seed={} code_version={}\n", kSweepSchema, sweep.name,
                                  to_string(sweep.axis), sweep.base.seed, code_version());
    out += "value,omega,ratio,regime,t_end,t_end_tj,sigma_final,fitted_A,fitted_A_per_tj,predicted_A,"
           "predicted_A_per_tj,classification,error\n";
    for (const auto& r : rows) {
        const double tj = r.tunneling_period;
        const double fitted = r.fit ? r.fit->slope : kNaN;
        const double predicted = r.predicted_rate.value_or(kNaN);
        std::string error = r.error;
        std::replace_if(error.begin(), error.end(), [](char c) { return c == ',' || c == '\n' || c == '"'; }, ';');
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", g17(r.value), g17(r.omega), g17(r.ratio),
                           to_string(r.regime), g17(r.t_end), g17(tj > 0 ? r.t_end / tj : kNaN),
                           r.error.empty() ? g17(r.sigma_final) : "nan", g17(fitted), g17(fitted * tj),
                           g17(predicted), g17(predicted * tj),
                           r.fit ? std::string(to_string(r.fit->classification)) : std::string(), error);
    }
    return out;
}

SweepResult run_sweep(const Sweep& sweep, const RunOptions& options) {
    SweepResult result;
    result.rows = compute_sweep(sweep, options.workers);
    std::filesystem::create_directories(options.out_dir);
    result.file = options.out_dir / (sweep.name + "_sweep.csv");
    try {
        write_file(result.file, sweep_csv(sweep, result.rows));
    } catch (...) {
        std::filesystem::remove(result.file);
        throw;
    }
    return result;
}

} // namespace cbloch
