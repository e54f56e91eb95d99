#include "cbloch/presets.hpp"

#include "cbloch/errors.hpp"

#include <fmt/format.h>

namespace cbloch {

namespace {

constexpr double kAlpha = 0.1;

ModelParams base_params(double omega, double ratio) {
    ModelParams p;
    p.j_x = 1.0;
    p.j_y = 1.0;
    p.alpha = kAlpha;
    return p.with_drive(omega, ratio);
}

Scenario wide_random(std::string name, double omega, double ratio, double t_end_tj, std::size_t realizations) {
    Scenario s;
    s.name = std::move(name);
    s.params = base_params(omega, ratio);
    s.initial.width = WidthRule::wide;
    s.initial.phases = PhaseModel::random;
    s.initial.n_realizations = realizations;
    s.grid.t_end = t_end_tj;
    s.seed = 20240607;
    s.outputs = {OutputKind::trajectory_csv, OutputKind::summary};
    return s;
}

std::string ratio_tag(double ratio) {
    if (ratio == kIrrationalRatio)
        return "golden";
    if (ratio == 18.0 / 19.0)
        return "r18_19";
    if (ratio == 1.0 / 3.0)
        return "r1_3";
    return fmt::format("r{}", ratio);
}

Preset fig1a() {
    Scenario s;
    s.name = "fig1a";
    s.params = base_params(0.1, 0.0);
    s.initial.width = WidthRule::transporting;
    s.initial.phases = PhaseModel::coherent;
    s.grid.t_end = 30.0;
    for (int k = 0; k <= 30; ++k)
        s.grid.snapshot_times.push_back(k);
    return Preset{"fig1a", {s}, {}};
}

Preset fig1b() {
    Scenario s = wide_random("fig1b", 0.1, 0.0, 30.0, 50);
    for (int k = 0; k <= 30; ++k)
        s.grid.snapshot_times.push_back(k);
    s.outputs = {OutputKind::trajectory_csv, OutputKind::snapshot_csv, OutputKind::summary};
    return Preset{"fig1b", {s}, {}};
}

Preset fig2() {
    Preset out{"fig2", {}, {}};
    for (double ratio : {0.0, 1.0}) {
        Sweep sw;
        sw.name = "fig2_" + ratio_tag(ratio);
        sw.base = wide_random(sw.name, 1.0, ratio, 300.0, 16);
        sw.base.lattice.n_sites = 4096;
        sw.axis = SweepAxis::omega;
        sw.ratio = ratio;
        sw.values = {1.0, 2.0, 4.0, 8.0};
        sw.horizon = HorizonRule{HorizonRule::Kind::scaled, 300.0, 20.0};
        out.sweeps.push_back(std::move(sw));
    }
    return out;
}

Preset fig3() {
    Preset out{"fig3", {}, {}};
    for (double ratio : {1.0, 18.0 / 19.0, kIrrationalRatio})
        out.scenarios.push_back(wide_random("fig3_" + ratio_tag(ratio), 1.0, ratio, 300.0, 16));
    return out;
}

Preset fig4() {
    Preset out{"fig4", {}, {}};
    for (double ratio : {1.0, 1.0 / 3.0, kIrrationalRatio}) {
        Sweep sw;
        sw.name = "fig4_" + ratio_tag(ratio);
        sw.base = wide_random(sw.name, 1.0, ratio, 30.0, 16);
        sw.axis = SweepAxis::omega;
        sw.ratio = ratio;
        sw.values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.25, 1.5, 1.75, 2.0};
        out.sweeps.push_back(std::move(sw));
    }
    return out;
}

Preset fig5() {
    Preset out{"fig5", {}, {}};
    for (double ratio : {1.0, 1.0 / 3.0, kIrrationalRatio}) {
        Scenario s = wide_random("fig5_" + ratio_tag(ratio), 1.0, ratio, 30.0, 50);
        s.grid.snapshot_times = {0.0, 30.0};
        s.outputs = {OutputKind::trajectory_csv, OutputKind::snapshot_csv, OutputKind::summary};
        out.scenarios.push_back(std::move(s));
    }
    return out;
}

} // namespace

std::vector<Experiment> Preset::experiments() const {
    std::vector<Experiment> out(scenarios.begin(), scenarios.end());
    out.insert(out.end(), sweeps.begin(), sweeps.end());
    return out;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1a", "fig1b", "fig2", "fig3", "fig4", "fig5"};
    return names;
}

Preset preset(std::string_view name) {
    if (name == "fig1a")
        return fig1a();
    if (name == "fig1b")
        return fig1b();
    if (name == "fig2")
        return fig2();
    if (name == "fig3")
        return fig3();
    if (name == "fig4")
        return fig4();
    if (name == "fig5")
        return fig5();
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

} // namespace cbloch
