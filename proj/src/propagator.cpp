#include "cbloch/propagator.hpp"

#include "cbloch/errors.hpp"
#include "cbloch/hamiltonian.hpp"
#include "cbloch/observables.hpp"
#include "cbloch/rk4.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

namespace cbloch {

void TimeGrid::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t_end) || dt > t_end)
        throw ConfigError("time grid needs 0 < dt <= t_end");
    if (t_end / dt > kMaxSteps)
        throw ConfigError("time grid asks for more than 1e9 steps");
    if (record_every < 1)
        throw ConfigError("record_every must be positive");
    if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()))
        throw ConfigError("snapshot times must be sorted");
    for (double ts : snapshot_times)
        if (ts < 0.0 || ts > t_end * (1.0 + 1e-12))
            throw ConfigError("snapshot time " + std::to_string(ts) + " lies outside [0, t_end]");
}

TimeGrid TimeGrid::to_natural(double tunneling_period) const {
    if (unit == TimeUnit::natural)
        return *this;
    if (!(tunneling_period > 0.0) || !std::isfinite(tunneling_period))
        throw ConfigError("times in tunneling periods need j_x > 0");
    TimeGrid out = *this;
    out.unit = TimeUnit::natural;
    out.t_end *= tunneling_period;
    out.dt *= tunneling_period;
    for (auto& ts : out.snapshot_times)
        ts *= tunneling_period;
    return out;
}

std::size_t TimeGrid::step_count() const {
    const double ratio = t_end / dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio))
        return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::ceil(ratio));
}

namespace {

constexpr double kFlushBelow = 1e-100;

void check_normalized(double norm) {
    if (std::abs(norm - 1.0) > 1e-10)
        throw ConfigError("initial state is not normalized (norm " + std::to_string(norm) + ")");
}

double squared_norm(std::span<const cplx> psi) {
    double s = 0.0;
    for (const auto& z : psi)
        s += std::norm(z);
    return s;
}

// Guard-band mass along x and, for a hard-wall y direction wide enough to
// carry a band, along y as well.
struct GuardBand {
    std::size_t n_x;
    std::size_t n_y;
    std::size_t guard;
    bool y_walls;

    double operator()(std::span<const cplx> psi) const {
        const std::size_t gx = std::min(guard, n_x / 2);
        double mass = 0.0;
        auto add_rows = [&](std::size_t from, std::size_t to) {
            for (std::size_t k = from * n_y; k < to * n_y; ++k)
                mass += std::norm(psi[k]);
        };
        add_rows(0, gx);
        add_rows(n_x - gx, n_x);
        if (y_walls) {
            for (std::size_t ix = gx; ix < n_x - gx; ++ix)
                for (std::size_t iy = 0; iy < guard; ++iy)
                    mass += std::norm(psi[ix * n_y + iy]) + std::norm(psi[ix * n_y + n_y - 1 - iy]);
        }
        return mass;
    }
};

template <class Op>
concept WindowedOperator = requires(const Op& op, std::span<const cplx> in, std::span<cplx> out) {
    op.derivative(0.0, in, out, std::size_t{0}, std::size_t{0});
};

// [first, last) of the nonzero entries inside [begin, end).
std::pair<std::size_t, std::size_t> support(std::span<const cplx> psi, std::size_t begin, std::size_t end) {
    const cplx zero{};
    std::size_t lo = begin;
    while (lo < end && psi[lo] == zero)
        ++lo;
    std::size_t hi = end;
    while (hi > lo && psi[hi - 1] == zero)
        --hi;
    return {lo, hi};
}

template <class Op, class Populations>
Trajectory integrate(const Op& op, std::vector<cplx>& psi, double& time, const TimeGrid& grid,
                     const EvolveOptions& options, double tunneling_period, std::ptrdiff_t first_site,
                     const GuardBand& guard, Populations&& populations_of) {
    grid.validate();
    check_normalized(squared_norm(psi));

    const std::size_t n_steps = grid.step_count();
    const double t0 = time;

    std::vector<std::size_t> snapshot_steps;
    for (double ts : grid.snapshot_times)
        snapshot_steps.push_back(std::min(n_steps, static_cast<std::size_t>(std::llround(ts / grid.dt))));
    auto next_snapshot = snapshot_steps.begin();

    Trajectory traj;
    traj.tunneling_period = tunneling_period;
    traj.first_site = first_site;
    const std::size_t n_records = n_steps / grid.record_every + 2;
    traj.times.reserve(n_records);
    traj.m1.reserve(n_records);
    traj.m2.reserve(n_records);
    traj.sigma.reserve(n_records);
    traj.edge_mass.reserve(n_records);

    auto observe = [&](std::size_t step, double t, double edge) {
        const bool record = step % grid.record_every == 0 || step == n_steps;
        const bool snapshot = next_snapshot != snapshot_steps.end() && *next_snapshot == step;
        if (!record && !snapshot)
            return;
        const std::vector<double> p = populations_of(psi);
        if (record) {
            const Moments mom = moments(p, first_site);
            traj.times.push_back(t - t0);
            traj.m1.push_back(mom.m1);
            traj.m2.push_back(mom.m2);
            traj.sigma.push_back(mom.sigma);
            traj.edge_mass.push_back(edge);
        }
        while (next_snapshot != snapshot_steps.end() && *next_snapshot == step) {
            traj.snapshots[t - t0] = p;
            ++next_snapshot;
        }
    };

    // Amplitudes are exactly zero outside [lo, hi); windowed operators only
    // integrate that range plus the RK4 reach, which gives the same result as
    // a full-lattice step.
    const std::size_t n = psi.size();
    auto [lo, hi] = support(psi, 0, n);

    Rk4Stepper stepper(n);
    observe(0, t0, guard(psi));
    for (std::size_t step = 1; step <= n_steps; ++step) {
        const double t_prev = t0 + static_cast<double>(step - 1) * grid.dt;
        std::size_t begin = 0;
        std::size_t end = n;
        if constexpr (WindowedOperator<Op>) {
            begin = lo > Rk4Stepper::kReach ? lo - Rk4Stepper::kReach : 0;
            end = std::min(n, hi + Rk4Stepper::kReach);
            stepper.step(op, t_prev, grid.dt, psi, begin, end);
        } else {
            stepper.step(op, t_prev, grid.dt, psi);
        }
        const double t = t0 + static_cast<double>(step) * grid.dt;

        const auto window = std::span(psi).subspan(begin, end - begin);
        const double norm = squared_norm(window);
        if (!(std::abs(norm - 1.0) <= options.norm_tolerance))
            throw NormDrift("norm drifted to " + std::to_string(norm) + " in step " + std::to_string(step) +
                            " (t = " + std::to_string(t) + ", dt = " + std::to_string(grid.dt) +
                            "); reduce dt");
        const double scale = 1.0 / std::sqrt(norm);
        for (auto& z : window) {
            z *= scale;
            // Keep the empty part of the lattice out of the subnormal range.
            if (std::abs(z.real()) < kFlushBelow)
                z.real(0.0);
            if (std::abs(z.imag()) < kFlushBelow)
                z.imag(0.0);
        }
        if constexpr (WindowedOperator<Op>)
            std::tie(lo, hi) = support(psi, begin, end);

        const double edge = guard(psi);
        if (edge > options.edge_threshold)
            throw EdgeOverflow("guard-band mass " + std::to_string(edge) + " exceeds " +
                               std::to_string(options.edge_threshold) + " at t = " + std::to_string(t) +
                               "; enlarge the lattice");
        observe(step, t, edge);
    }
    time = t0 + static_cast<double>(n_steps) * grid.dt;
    return traj;
}

} // namespace

Evolution1D evolve(State1D state, const ModelParams& params, const TimeGrid& grid, const EvolveOptions& options) {
    params.validate();
    state.check_shape();
    const double tj = params.tunneling_period();
    const DrivenChain op(state.lattice, params);
    const GuardBand guard{state.lattice.n_sites, 1, options.guard_sites, false};

    Trajectory traj = integrate(op, state.amplitudes, state.time, grid.to_natural(tj), options, tj,
                                state.lattice.first_site(), guard, [](std::span<const cplx> psi) {
                                    std::vector<double> p(psi.size());
                                    for (std::size_t i = 0; i < psi.size(); ++i)
                                        p[i] = std::norm(psi[i]);
                                    return p;
                                });
    return {std::move(state), std::move(traj)};
}

Evolution2D evolve(State2D state, const ModelParams& params, const TimeGrid& grid, PlaneHamiltonian kind,
                   const EvolveOptions& options) {
    params.validate();
    state.check_shape();
    const double tj = params.tunneling_period();
    const Lattice2D lat = state.lattice;
    const GuardBand guard{lat.n_x, lat.n_y, options.guard_sites,
                          lat.boundary_y == Boundary::hard_wall && lat.n_y > 2 * options.guard_sites};
    auto pops = [&lat](std::span<const cplx> psi) {
        std::vector<double> p(lat.n_x, 0.0);
        for (std::size_t ix = 0; ix < lat.n_x; ++ix)
            for (std::size_t iy = 0; iy < lat.n_y; ++iy)
                p[ix] += std::norm(psi[lat.index(ix, iy)]);
        return p;
    };
    const auto natural = grid.to_natural(tj);
    const std::ptrdiff_t first = -lat.origin_x;

    Trajectory traj;
    if (kind == PlaneHamiltonian::driven)
        traj = integrate(DrivenPlane(lat, params), state.amplitudes, state.time, natural, options, tj, first,
                         guard, pops);
    else
        traj = integrate(StaticFieldPlane(lat, params), state.amplitudes, state.time, natural, options, tj,
                         first, guard, pops);
    return {std::move(state), std::move(traj)};
}

namespace {

[[noreturn]] void rethrow_annotated(std::exception_ptr error, const std::string& where) {
    try {
        std::rethrow_exception(error);
    } catch (const NormDrift& e) {
        throw NormDrift(where + e.what());
    } catch (const EdgeOverflow& e) {
        throw EdgeOverflow(where + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(where + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(where + e.what());
    }
}

} // namespace

EnsembleEvolution evolve_ensemble(const Ensemble& ensemble, const ModelParams& params, const TimeGrid& grid,
                                  const EnsembleOptions& options) {
    const auto& members = ensemble.members;
    if (members.empty())
        throw ConfigError("ensemble has no realizations");
    for (const auto& m : members)
        if (!(m.lattice == members.front().lattice))
            throw ShapeError("ensemble members must share one lattice");

    const std::size_t n = members.size();
    std::vector<Trajectory> runs(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            try {
                runs[k] = evolve(members[k], params, grid, options.evolve).trajectory;
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const std::size_t n_workers = std::clamp<std::size_t>(options.workers, 1, n);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back(worker);
    }
    for (std::size_t k = 0; k < n; ++k)
        if (errors[k])
            rethrow_annotated(errors[k], "realization " + std::to_string(k) + " (seed " +
                                             std::to_string(ensemble.seed) + "): ");

    EnsembleEvolution out;
    out.averaged = average_trajectories(runs);
    if (options.keep_members)
        out.members = std::move(runs);
    return out;
}

Trajectory average_trajectories(std::span<const Trajectory> runs) {
    if (runs.empty())
        throw ConfigError("cannot average an empty set of trajectories");
    const Trajectory& ref = runs.front();
    for (const auto& r : runs)
        if (r.times != ref.times || r.first_site != ref.first_site)
            throw ShapeError("averaged trajectories must share one schedule and lattice");

    Trajectory avg;
    const double inv = 1.0 / static_cast<double>(runs.size());
    avg.tunneling_period = ref.tunneling_period;
    avg.first_site = ref.first_site;
    avg.times = ref.times;
    const std::size_t len = ref.size();
    avg.m1.assign(len, 0.0);
    avg.m2.assign(len, 0.0);
    avg.sigma.assign(len, 0.0);
    avg.edge_mass.assign(len, 0.0);
    for (const auto& r : runs)
        for (std::size_t i = 0; i < len; ++i) {
            avg.m1[i] += r.m1[i] * inv;
            avg.m2[i] += r.m2[i] * inv;
            avg.edge_mass[i] += r.edge_mass[i] * inv;
        }
    // Variance of the mixture: mean member variance plus spread of member centers.
    for (const auto& r : runs)
        for (std::size_t i = 0; i < len; ++i) {
            const double d = r.m1[i] - avg.m1[i];
            avg.sigma[i] += (r.sigma[i] * r.sigma[i] + d * d) * inv;
        }
    for (auto& s : avg.sigma)
        s = std::sqrt(s);

    for (const auto& [t, p] : ref.snapshots) {
        std::vector<double> mean(p.size(), 0.0);
        for (const auto& r : runs) {
            const auto& q = r.snapshots.at(t);
            for (std::size_t i = 0; i < q.size(); ++i)
                mean[i] += q[i] * inv;
        }
        avg.snapshots.emplace(t, std::move(mean));
    }
    return avg;
}

std::size_t auto_lattice_size(const ModelParams& params, double sigma0, double t_end) {
    const double drift = params.alpha != 0.0 ? std::abs(predicted_drift_velocity(params)) : 0.0;
    const double half = drift * t_end + 10.0 * sigma0 + params.j_x * t_end;
    const auto needed = static_cast<std::size_t>(std::ceil(2.0 * half));
    const std::size_t rounded = (needed + 63) / 64 * 64;
    return std::max<std::size_t>(rounded, 64);
}

} // namespace cbloch
