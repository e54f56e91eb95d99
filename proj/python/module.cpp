#include "cbloch/config.hpp"
#include "cbloch/errors.hpp"
#include "cbloch/observables.hpp"
#include "cbloch/presets.hpp"
#include "cbloch/runner.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace cbloch;

namespace {

py::array_t<double> array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict trajectory_dict(const Trajectory& tr) {
    py::dict d;
    d["tunneling_period"] = tr.tunneling_period;
    d["first_site"] = tr.first_site;
    d["t"] = array(tr.times);
    d["m1"] = array(tr.m1);
    d["m2"] = array(tr.m2);
    d["sigma"] = array(tr.sigma);
    d["edge_mass"] = array(tr.edge_mass);
    py::dict snaps;
    for (const auto& [t, p] : tr.snapshots)
        snaps[py::float_(t)] = array(p);
    d["snapshots"] = snaps;
    return d;
}

py::object from_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Experiment parse(const std::string& yaml) { return parse_experiment(yaml); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Driven tight-binding lattice simulator";
    m.attr("__version__") = std::string(code_version());

    auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    (void)config_error;

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double j_x, double j_y, double alpha, double omega_x, double omega_y) {
                 ModelParams p{j_x, j_y, alpha, omega_x, omega_y};
                 p.validate();
                 return p;
             }),
             py::arg("j_x") = 1.0, py::arg("j_y") = 1.0, py::arg("alpha") = 0.1, py::arg("omega_x") = 0.0,
             py::arg("omega_y") = 0.1)
        .def_readwrite("j_x", &ModelParams::j_x)
        .def_readwrite("j_y", &ModelParams::j_y)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("omega_x", &ModelParams::omega_x)
        .def_readwrite("omega_y", &ModelParams::omega_y)
        .def("with_drive", &ModelParams::with_drive, py::arg("omega"), py::arg("ratio"))
        .def("tunneling_period", &ModelParams::tunneling_period)
        .def("__eq__", [](const ModelParams& a, const ModelParams& b) { return a == b; })
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(j_x=" + std::to_string(p.j_x) + ", j_y=" + std::to_string(p.j_y) +
                   ", alpha=" + std::to_string(p.alpha) + ", omega_x=" + std::to_string(p.omega_x) +
                   ", omega_y=" + std::to_string(p.omega_y) + ")";
        });

    m.def("critical_frequency", &critical_frequency);
    m.def("drive_magnitude", &drive_magnitude);
    m.def("classify_regime", [](const ModelParams& p) { return std::string(to_string(classify_regime(p))); });
    m.def("predicted_drift_velocity", &predicted_drift_velocity);
    m.def("predictions", [](const ModelParams& p) { return from_json(predictions(p)); });
    m.def(
        "rational_approx",
        [](double x, std::int64_t max_q) -> py::object {
            const auto r = rational_approx(x, max_q);
            if (!r.is_rational())
                return py::none();
            return py::make_tuple(r.numerator(), r.denominator());
        },
        py::arg("x"), py::arg("max_q") = kRatioMaxDenominator);

    m.def("preset_names", &preset_names);
    m.def(
        "preset_configs",
        [](const std::string& name) {
            std::vector<std::string> out;
            for (const auto& e : preset(name).experiments())
                out.push_back(to_yaml(e));
            return out;
        },
        py::arg("name"));

    m.def(
        "simulate",
        [](const std::string& yaml, std::size_t workers) {
            const Experiment e = parse(yaml);
            const auto* s = std::get_if<Scenario>(&e);
            if (!s)
                throw ConfigError("simulate() takes a scenario config");
            Simulation sim;
            {
                py::gil_scoped_release release;
                sim = simulate(*s, workers);
            }
            py::dict d = trajectory_dict(sim.trajectory);
            d["summary"] = from_json(summarize(*s, sim));
            return d;
        },
        py::arg("config"), py::arg("workers") = 1);

    m.def(
        "run",
        [](const std::string& yaml, const std::filesystem::path& out_dir, std::size_t workers) -> py::object {
            const Experiment e = parse(yaml);
            const RunOptions opts{out_dir, workers};
            if (const auto* s = std::get_if<Scenario>(&e)) {
                RunResult r;
                {
                    py::gil_scoped_release release;
                    r = run(*s, opts);
                }
                return from_json(r.summary);
            }
            SweepResult r;
            {
                py::gil_scoped_release release;
                r = run_sweep(std::get<Sweep>(e), opts);
            }
            return py::str(r.file.string());
        },
        py::arg("config"), py::arg("out_dir") = ".", py::arg("workers") = 1);
}
