#pragma once

#include "cbloch/lattice.hpp"
#include "cbloch/model.hpp"
#include "cbloch/states.hpp"
#include "cbloch/trajectory.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cbloch {

enum class TimeUnit { natural, tunneling_period };

// Fixed-step time grid. t_end, dt and snapshot_times share `unit`;
// to_natural() converts them to 1/J using T_J = 2 pi / j_x.
struct TimeGrid {
    double t_end = 30.0;
    double dt = 1.0 / 200.0;
    TimeUnit unit = TimeUnit::tunneling_period;
    std::size_t record_every = 20;
    std::vector<double> snapshot_times;

    static constexpr double kMaxSteps = 1e9;

    void validate() const;
    TimeGrid to_natural(double tunneling_period) const;
    // Number of steps; t_end is rounded to the nearest multiple of dt when it
    // is within 1e-9 relative of one, otherwise rounded up.
    std::size_t step_count() const;

    bool operator==(const TimeGrid&) const = default;
};

struct EvolveOptions {
    double norm_tolerance = 1e-8; // per-step drift allowed before NormDrift
    double edge_threshold = 1e-6; // guard-band mass allowed before EdgeOverflow
    std::size_t guard_sites = 5;
};

enum class PlaneHamiltonian { driven, static_field };

struct Evolution1D {
    State1D state;
    Trajectory trajectory;
};

struct Evolution2D {
    State2D state;
    Trajectory trajectory;
};

// RK4 integration of the driven chain from state.time to state.time + t_end.
// After every step the state is renormalized when the norm moved by less
// than norm_tolerance; larger drift throws NormDrift. Guard-band mass above
// edge_threshold throws EdgeOverflow.
Evolution1D evolve(State1D state, const ModelParams& params, const TimeGrid& grid,
                   const EvolveOptions& options = {});

// Same for a plane; observables use the integrated populations P_l.
Evolution2D evolve(State2D state, const ModelParams& params, const TimeGrid& grid, PlaneHamiltonian kind,
                   const EvolveOptions& options = {});

struct EnsembleOptions {
    std::size_t workers = 1;
    bool keep_members = false;
    EvolveOptions evolve;
};

struct EnsembleEvolution {
    Trajectory averaged;
    std::vector<Trajectory> members; // filled when keep_members is set
};

// Evolves every realization and averages their populations at each record
// time. Moments are linear in the populations, so the averaged M1, M2 are
// the member means; sigma follows from the averaged moments. Members are
// reduced in index order, so the result does not depend on `workers`.
EnsembleEvolution evolve_ensemble(const Ensemble& ensemble, const ModelParams& params, const TimeGrid& grid,
                                  const EnsembleOptions& options = {});

// Population average of runs recorded on one schedule and one lattice.
Trajectory average_trajectories(std::span<const Trajectory> runs);

// Sites needed so a packet of width sigma0 never reaches the walls within
// t_end (natural units): 2 (|v_drift| t_end + 10 sigma0 + j_x t_end),
// rounded up to a multiple of 64.
std::size_t auto_lattice_size(const ModelParams& params, double sigma0, double t_end);

} // namespace cbloch
