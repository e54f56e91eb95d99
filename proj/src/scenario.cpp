#include "cbloch/scenario.hpp"

#include "cbloch/errors.hpp"
#include "cbloch/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace cbloch {

namespace {

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<Enum, N>& options, const char* what) {
    for (Enum e : options)
        if (to_string(e) == text)
            return e;
    std::string msg = "unknown " + std::string(what) + " '" + std::string(text) + "' (expected one of:";
    for (Enum e : options)
        msg += " " + std::string(to_string(e));
    throw ConfigError(msg + ")");
}

} // namespace

std::string_view to_string(HamiltonianKind kind) {
    switch (kind) {
    case HamiltonianKind::h1d: return "h1d";
    case HamiltonianKind::h2d_driven: return "h2d_driven";
    case HamiltonianKind::h2d_static: return "h2d_static";
    }
    return "?";
}

std::string_view to_string(OutputKind kind) {
    switch (kind) {
    case OutputKind::trajectory_csv: return "trajectory_csv";
    case OutputKind::snapshot_csv: return "snapshot_csv";
    case OutputKind::summary: return "summary";
    }
    return "?";
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::omega: return "omega";
    case SweepAxis::alpha: return "alpha";
    case SweepAxis::j_y: return "j_y";
    }
    return "?";
}

std::string_view to_string(Boundary boundary) {
    return boundary == Boundary::periodic ? "periodic" : "hard_wall";
}

std::string_view to_string(WidthRule rule) {
    switch (rule) {
    case WidthRule::explicit_value: return "explicit";
    case WidthRule::transporting: return "transporting";
    case WidthRule::wide: return "wide";
    }
    return "?";
}

std::string_view to_string(PhaseModel phases) { return phases == PhaseModel::coherent ? "coherent" : "random"; }

std::string_view to_string(TimeUnit unit) { return unit == TimeUnit::natural ? "natural" : "tj"; }

HamiltonianKind parse_hamiltonian(std::string_view text) {
    return parse_enum(text,
                      std::array{HamiltonianKind::h1d, HamiltonianKind::h2d_driven, HamiltonianKind::h2d_static},
                      "hamiltonian");
}

OutputKind parse_output(std::string_view text) {
    return parse_enum(text, std::array{OutputKind::trajectory_csv, OutputKind::snapshot_csv, OutputKind::summary},
                      "output");
}

SweepAxis parse_axis(std::string_view text) {
    return parse_enum(text, std::array{SweepAxis::omega, SweepAxis::alpha, SweepAxis::j_y}, "sweep axis");
}

Boundary parse_boundary(std::string_view text) {
    return parse_enum(text, std::array{Boundary::hard_wall, Boundary::periodic}, "boundary");
}

PhaseModel parse_phases(std::string_view text) {
    return parse_enum(text, std::array{PhaseModel::coherent, PhaseModel::random}, "phase model");
}

TimeUnit parse_time_unit(std::string_view text) {
    return parse_enum(text, std::array{TimeUnit::natural, TimeUnit::tunneling_period}, "time unit");
}

std::optional<FrequencyRatio> drive_ratio(const ModelParams& params) {
    if (params.omega_y == 0.0)
        return std::nullopt;
    return rational_approx(params.omega_x / params.omega_y, kRatioMaxDenominator);
}

void Scenario::validate() const {
    if (name.empty() || name.find_first_of("/\\ \t\n") != std::string::npos)
        throw ConfigError("scenario name must be a non-empty token without spaces or slashes");
    params.validate();
    if (!(params.j_x > 0.0))
        throw ConfigError("scenarios need j_x > 0 (the tunneling period sets the time scale)");
    initial.validate();
    grid.validate();
    if (lattice.n_sites)
        Lattice1D{*lattice.n_sites, lattice.origin.value_or(static_cast<std::ptrdiff_t>(*lattice.n_sites / 2))}
            .validate();
    if (hamiltonian != HamiltonianKind::h1d && lattice.n_y == 0)
        throw ConfigError("plane Hamiltonians need n_y >= 1");
    if (hamiltonian == HamiltonianKind::h2d_static && lattice.boundary_y == Boundary::periodic)
        throw ConfigError("the static-field plane needs boundary_y = hard_wall (the potential w_y m is not periodic)");
    if (hamiltonian == HamiltonianKind::h2d_driven && lattice.boundary_y == Boundary::hard_wall)
        throw ConfigError("a y-uniform start on the driven plane needs boundary_y = periodic");
}

bool Scenario::wants(OutputKind kind) const {
    return std::find(outputs.begin(), outputs.end(), kind) != outputs.end();
}

Lattice1D Scenario::resolve_lattice() const {
    if (lattice.n_sites) {
        const auto n = *lattice.n_sites;
        Lattice1D out{n, lattice.origin.value_or(static_cast<std::ptrdiff_t>(n / 2))};
        out.validate();
        return out;
    }
    const double tj = params.tunneling_period();
    const double t_end = grid.to_natural(tj).t_end;
    const double sigma0 = initial.resolved_width(params);
    std::size_t n = auto_lattice_size(params, sigma0, t_end);
    // Off-center packets need room on the far side.
    n += static_cast<std::size_t>(std::ceil(2.0 * std::abs(initial.resolved_center(params)) / 64.0)) * 64;
    Lattice1D out{n, lattice.origin.value_or(static_cast<std::ptrdiff_t>(n / 2))};
    out.validate();
    return out;
}

void Sweep::validate() const {
    if (name.empty() || name.find_first_of("/\\ \t\n") != std::string::npos)
        throw ConfigError("sweep name must be a non-empty token without spaces or slashes");
    base.validate();
    if (values.empty())
        throw ConfigError("sweep needs at least one value");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw ConfigError("sweep values must be strictly increasing");
    if (axis == SweepAxis::omega && (!(ratio >= 0.0) || !std::isfinite(ratio)))
        throw ConfigError("sweep ratio must be finite and non-negative");
    if (horizon.kind == HorizonRule::Kind::scaled && (!(horizon.min_tj > 0.0) || !(horizon.factor >= 0.0)))
        throw ConfigError("scaled horizon needs min_tj > 0 and factor >= 0");
}

Scenario Sweep::point(std::size_t index) const {
    if (index >= values.size())
        throw ConfigError("sweep point index out of range");
    Scenario s = base;
    s.name = name + "_" + std::to_string(index);
    const double v = values[index];
    switch (axis) {
    case SweepAxis::omega: s.params = base.params.with_drive(v, ratio); break;
    case SweepAxis::alpha: s.params.alpha = v; break;
    case SweepAxis::j_y: s.params.j_y = v; break;
    }

    if (horizon.kind == HorizonRule::Kind::scaled) {
        const auto r = drive_ratio(s.params);
        const double omega = drive_magnitude(s.params);
        double tj = horizon.min_tj;
        if (r && r->nu())
            tj = std::max(tj, horizon.factor * std::pow(omega / s.params.j_y, *r->nu()));
        const double t_nat_per_unit = base.grid.unit == TimeUnit::natural ? s.params.tunneling_period() : 1.0;
        s.grid.t_end = tj * t_nat_per_unit;
    }
    return s;
}

} // namespace cbloch
