#pragma once

#include "cbloch/lattice.hpp"
#include "cbloch/model.hpp"
#include "cbloch/trajectory.hpp"

#include <span>
#include <vector>

namespace cbloch {

struct Moments {
    double m1 = 0.0;    // sum l P_l
    double m2 = 0.0;    // sum l^2 P_l
    double sigma = 0.0; // sqrt(m2 - m1^2)
};

enum class GrowthClass { linear_growth, bounded_oscillation };

std::string_view to_string(GrowthClass c);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double rms_residual = 0.0;
    GrowthClass classification = GrowthClass::linear_growth;
};

// Fraction of the trajectory used by each fit.
inline constexpr double kDriftWindowStart = 0.2;  // M1 fit over [0.2 t_end, t_end]
inline constexpr double kRateWindowFraction = 0.5; // sigma fit over the final half of samples
// sigma(t) counts as bounded when slope * t_end < kBoundedGrowthFraction * mean(sigma)
// or when the rms residual exceeds kResidualDominance * slope * window length.
inline constexpr double kBoundedGrowthFraction = 0.05;
inline constexpr double kResidualDominance = 0.25;

// |b_l|^2, or for a plane the integrated P_l = sum_m |psi_{l,m}|^2.
std::vector<double> populations(const State1D& state);
std::vector<double> populations(const State2D& state);

// Moments over absolute site labels; first_site is the label of index 0.
// Rounding-level negative variance is clamped to 0, anything below -1e-12
// raises NumericalInconsistency.
Moments moments(std::span<const double> populations, std::ptrdiff_t first_site);
Moments moments(std::span<const double> populations, const Lattice1D& lattice);

// Ordinary least squares y = slope * t + intercept.
FitResult fit_line(std::span<const double> t, std::span<const double> y);

// Drift velocity from M1(t) over [0.2 t_end, t_end]. Needs >= 10 T_J and
// >= 20 records in the window.
FitResult fit_drift(const Trajectory& trajectory);

// Ballistic rate A from sigma(t) over the final 50% of samples, classified
// as linear growth or bounded oscillation.
FitResult fit_ballistic_rate(const Trajectory& trajectory);

// Continued-fraction convergents of x with denominators up to max_q; the
// first convergent within 1e-12 of x is returned as rational, else x is
// reported irrational.
FrequencyRatio rational_approx(double x, std::int64_t max_q);

} // namespace cbloch
