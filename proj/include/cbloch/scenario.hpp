#pragma once

#include "cbloch/lattice.hpp"
#include "cbloch/model.hpp"
#include "cbloch/propagator.hpp"
#include "cbloch/states.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cbloch {

enum class HamiltonianKind { h1d, h2d_driven, h2d_static };
enum class OutputKind { trajectory_csv, snapshot_csv, summary };

// Lattice request of a scenario. Absent n_sites means auto-sizing; absent
// origin puts l = 0 in the middle of the window. n_y and boundary_y only
// matter for the plane Hamiltonians.
struct LatticeSpec {
    std::optional<std::size_t> n_sites;
    std::optional<std::ptrdiff_t> origin;
    std::size_t n_y = 8;
    Boundary boundary_y = Boundary::periodic;

    bool operator==(const LatticeSpec&) const = default;
};

struct Scenario {
    std::string name = "scenario";
    ModelParams params;
    GaussianSpec initial;
    TimeGrid grid;
    HamiltonianKind hamiltonian = HamiltonianKind::h1d;
    LatticeSpec lattice;
    std::uint64_t seed = 0;
    std::vector<OutputKind> outputs{OutputKind::trajectory_csv, OutputKind::snapshot_csv, OutputKind::summary};

    void validate() const;
    bool wants(OutputKind kind) const;
    // x window actually used: the explicit request or the auto-sized one.
    Lattice1D resolve_lattice() const;

    bool operator==(const Scenario&) const = default;
};

enum class SweepAxis { omega, alpha, j_y };

// Per-point horizon: fixed (the base grid) or
// max(min_tj, factor * (omega / j_y)^nu) tunneling periods.
struct HorizonRule {
    enum class Kind { fixed, scaled };
    Kind kind = Kind::fixed;
    double min_tj = 300.0;
    double factor = 20.0;

    bool operator==(const HorizonRule&) const = default;
};

struct Sweep {
    std::string name = "sweep";
    Scenario base;
    SweepAxis axis = SweepAxis::omega;
    double ratio = 0.0; // omega_x / omega_y held fixed on the omega axis
    std::vector<double> values;
    HorizonRule horizon;

    void validate() const;
    // Scenario for values[index], with name "<sweep>_<index>".
    Scenario point(std::size_t index) const;

    bool operator==(const Sweep&) const = default;
};

using Experiment = std::variant<Scenario, Sweep>;

// Maximum denominator used when classifying omega_x / omega_y.
inline constexpr std::int64_t kRatioMaxDenominator = 100;

// omega_x / omega_y as a FrequencyRatio, or nullopt when omega_y == 0.
std::optional<FrequencyRatio> drive_ratio(const ModelParams& params);

std::string_view to_string(HamiltonianKind kind);
std::string_view to_string(OutputKind kind);
std::string_view to_string(SweepAxis axis);
std::string_view to_string(Boundary boundary);
std::string_view to_string(WidthRule rule);
std::string_view to_string(PhaseModel phases);
std::string_view to_string(TimeUnit unit);

HamiltonianKind parse_hamiltonian(std::string_view text);
OutputKind parse_output(std::string_view text);
SweepAxis parse_axis(std::string_view text);
Boundary parse_boundary(std::string_view text);
PhaseModel parse_phases(std::string_view text);
TimeUnit parse_time_unit(std::string_view text);

} // namespace cbloch
