#include "cbloch/config.hpp"

#include "cbloch/errors.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace cbloch {

namespace {

std::string num(double x) { return fmt::format("{}", x); }

void emit_scenario_body(YAML::Emitter& out, const Scenario& s) {
    out << YAML::Key << "name" << YAML::Value << s.name;
    out << YAML::Key << "seed" << YAML::Value << s.seed;
    out << YAML::Key << "hamiltonian" << YAML::Value << std::string(to_string(s.hamiltonian));

    out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "j_x" << YAML::Value << num(s.params.j_x);
    out << YAML::Key << "j_y" << YAML::Value << num(s.params.j_y);
    out << YAML::Key << "alpha" << YAML::Value << num(s.params.alpha);
    out << YAML::Key << "omega_x" << YAML::Value << num(s.params.omega_x);
    out << YAML::Key << "omega_y" << YAML::Value << num(s.params.omega_y);
    out << YAML::EndMap;

    const auto& g = s.initial;
    out << YAML::Key << "initial" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "center" << YAML::Value << (g.center ? num(*g.center) : std::string("auto"));
    out << YAML::Key << "width" << YAML::Value
        << (g.width == WidthRule::explicit_value ? num(g.sigma0) : std::string(to_string(g.width)));
    out << YAML::Key << "phases" << YAML::Value << std::string(to_string(g.phases));
    out << YAML::Key << "realizations" << YAML::Value << g.n_realizations;
    out << YAML::EndMap;

    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "unit" << YAML::Value << std::string(to_string(s.grid.unit));
    out << YAML::Key << "t_end" << YAML::Value << num(s.grid.t_end);
    out << YAML::Key << "dt" << YAML::Value << num(s.grid.dt);
    out << YAML::Key << "record_every" << YAML::Value << s.grid.record_every;
    out << YAML::Key << "snapshot_times" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double t : s.grid.snapshot_times)
        out << num(t);
    out << YAML::EndSeq;
    out << YAML::EndMap;

    out << YAML::Key << "lattice" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "n_sites" << YAML::Value
        << (s.lattice.n_sites ? std::to_string(*s.lattice.n_sites) : std::string("auto"));
    out << YAML::Key << "origin" << YAML::Value
        << (s.lattice.origin ? std::to_string(*s.lattice.origin) : std::string("auto"));
    out << YAML::Key << "n_y" << YAML::Value << s.lattice.n_y;
    out << YAML::Key << "boundary_y" << YAML::Value << std::string(to_string(s.lattice.boundary_y));
    out << YAML::EndMap;

    out << YAML::Key << "outputs" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto o : s.outputs)
        out << std::string(to_string(o));
    out << YAML::EndSeq;
}

void check_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& where) {
    if (!node.IsMap())
        throw ConfigError(where + " must be a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

YAML::Node require(const YAML::Node& node, const char* key, const std::string& where) {
    const YAML::Node child = node[key];
    if (!child)
        throw ConfigError("missing key '" + std::string(key) + "' in " + where);
    return child;
}

template <class T>
T get(const YAML::Node& node, const char* key, const std::string& where) {
    const YAML::Node child = require(node, key, where);
    try {
        return child.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("bad value for '" + std::string(key) + "' in " + where);
    }
}

template <class T>
T get_or(const YAML::Node& node, const char* key, T fallback, const std::string& where) {
    if (!node[key])
        return fallback;
    return get<T>(node, key, where);
}

bool is_auto(const YAML::Node& node) { return node.IsScalar() && node.Scalar() == "auto"; }

Scenario parse_scenario_body(const YAML::Node& node, const std::string& where) {
    check_keys(node, {"kind", "name", "seed", "hamiltonian", "params", "initial", "grid", "lattice", "outputs"},
               where);
    Scenario s;
    s.name = get<std::string>(node, "name", where);
    s.seed = get_or<std::uint64_t>(node, "seed", 0, where);
    s.hamiltonian = parse_hamiltonian(get_or<std::string>(node, "hamiltonian", "h1d", where));

    const std::string pw = where + ".params";
    const YAML::Node p = require(node, "params", where);
    check_keys(p, {"j_x", "j_y", "alpha", "omega_x", "omega_y"}, pw);
    s.params.j_x = get<double>(p, "j_x", pw);
    s.params.j_y = get<double>(p, "j_y", pw);
    s.params.alpha = get<double>(p, "alpha", pw);
    s.params.omega_x = get<double>(p, "omega_x", pw);
    s.params.omega_y = get<double>(p, "omega_y", pw);

    const std::string iw = where + ".initial";
    const YAML::Node init = require(node, "initial", where);
    check_keys(init, {"center", "width", "phases", "realizations"}, iw);
    if (init["center"] && !is_auto(init["center"]))
        s.initial.center = get<double>(init, "center", iw);
    const YAML::Node width = require(init, "width", iw);
    if (width.IsScalar() && width.Scalar() == "transporting") {
        s.initial.width = WidthRule::transporting;
    } else if (width.IsScalar() && width.Scalar() == "wide") {
        s.initial.width = WidthRule::wide;
    } else {
        s.initial.width = WidthRule::explicit_value;
        s.initial.sigma0 = get<double>(init, "width", iw);
    }
    s.initial.phases = parse_phases(get_or<std::string>(init, "phases", "coherent", iw));
    s.initial.n_realizations = get_or<std::size_t>(init, "realizations", 1, iw);

    const std::string gw = where + ".grid";
    const YAML::Node grid = require(node, "grid", where);
    check_keys(grid, {"unit", "t_end", "dt", "record_every", "snapshot_times"}, gw);
    s.grid.unit = parse_time_unit(get_or<std::string>(grid, "unit", "tj", gw));
    s.grid.t_end = get<double>(grid, "t_end", gw);
    s.grid.dt = get<double>(grid, "dt", gw);
    s.grid.record_every = get_or<std::size_t>(grid, "record_every", 20, gw);
    s.grid.snapshot_times = get_or<std::vector<double>>(grid, "snapshot_times", {}, gw);

    if (const YAML::Node lat = node["lattice"]) {
        const std::string lw = where + ".lattice";
        check_keys(lat, {"n_sites", "origin", "n_y", "boundary_y"}, lw);
        if (lat["n_sites"] && !is_auto(lat["n_sites"]))
            s.lattice.n_sites = get<std::size_t>(lat, "n_sites", lw);
        if (lat["origin"] && !is_auto(lat["origin"]))
            s.lattice.origin = get<std::ptrdiff_t>(lat, "origin", lw);
        s.lattice.n_y = get_or<std::size_t>(lat, "n_y", s.lattice.n_y, lw);
        if (lat["boundary_y"])
            s.lattice.boundary_y = parse_boundary(get<std::string>(lat, "boundary_y", lw));
    }

    if (node["outputs"]) {
        s.outputs.clear();
        for (const auto& o : get<std::vector<std::string>>(node, "outputs", where))
            s.outputs.push_back(parse_output(o));
    }
    s.validate();
    return s;
}

} // namespace

std::string to_yaml(const Scenario& scenario) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << "scenario";
    emit_scenario_body(out, scenario);
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string to_yaml(const Sweep& sweep) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << "sweep";
    out << YAML::Key << "name" << YAML::Value << sweep.name;
    out << YAML::Key << "axis" << YAML::Value << std::string(to_string(sweep.axis));
    out << YAML::Key << "ratio" << YAML::Value << num(sweep.ratio);
    out << YAML::Key << "values" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double v : sweep.values)
        out << num(v);
    out << YAML::EndSeq;
    out << YAML::Key << "horizon" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "rule" << YAML::Value
        << (sweep.horizon.kind == HorizonRule::Kind::fixed ? "fixed" : "scaled");
    out << YAML::Key << "min_tj" << YAML::Value << num(sweep.horizon.min_tj);
    out << YAML::Key << "factor" << YAML::Value << num(sweep.horizon.factor);
    out << YAML::EndMap;
    out << YAML::Key << "base" << YAML::Value << YAML::BeginMap;
    emit_scenario_body(out, sweep.base);
    out << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string to_yaml(const Experiment& experiment) {
    return std::visit([](const auto& e) { return to_yaml(e); }, experiment);
}

Experiment parse_experiment(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("malformed YAML: ") + e.what());
    }
    if (!root.IsMap())
        throw ConfigError("config must be a YAML mapping");
    const auto kind = get_or<std::string>(root, "kind", "scenario", "config");
    if (kind == "scenario")
        return parse_scenario_body(root, "scenario");
    if (kind != "sweep")
        throw ConfigError("config kind must be 'scenario' or 'sweep', got '" + kind + "'");

    check_keys(root, {"kind", "name", "axis", "ratio", "values", "horizon", "base"}, "sweep");
    Sweep sw;
    sw.name = get<std::string>(root, "name", "sweep");
    sw.axis = parse_axis(get_or<std::string>(root, "axis", "omega", "sweep"));
    sw.ratio = get_or<double>(root, "ratio", 0.0, "sweep");
    sw.values = get<std::vector<double>>(root, "values", "sweep");
    if (const YAML::Node h = root["horizon"]) {
        check_keys(h, {"rule", "min_tj", "factor"}, "sweep.horizon");
        const auto rule = get_or<std::string>(h, "rule", "fixed", "sweep.horizon");
        if (rule != "fixed" && rule != "scaled")
            throw ConfigError("horizon rule must be 'fixed' or 'scaled'");
        sw.horizon.kind = rule == "fixed" ? HorizonRule::Kind::fixed : HorizonRule::Kind::scaled;
        sw.horizon.min_tj = get_or<double>(h, "min_tj", sw.horizon.min_tj, "sweep.horizon");
        sw.horizon.factor = get_or<double>(h, "factor", sw.horizon.factor, "sweep.horizon");
    }
    sw.base = parse_scenario_body(require(root, "base", "sweep"), "sweep.base");
    sw.validate();
    return sw;
}

Experiment load_experiment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_experiment(text.str());
}

void save_experiment(const Experiment& experiment, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write config file " + path.string());
    out << to_yaml(experiment);
}

} // namespace cbloch
