#include "cbloch/observables.hpp"

#include "cbloch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cbloch {

std::string_view to_string(GrowthClass c) {
    return c == GrowthClass::linear_growth ? "linear_growth" : "bounded_oscillation";
}

std::vector<double> populations(const State1D& state) {
    state.check_shape();
    std::vector<double> p(state.amplitudes.size());
    std::transform(state.amplitudes.begin(), state.amplitudes.end(), p.begin(),
                   [](const cplx& z) { return std::norm(z); });
    return p;
}

std::vector<double> populations(const State2D& state) {
    state.check_shape();
    const auto& lat = state.lattice;
    std::vector<double> p(lat.n_x, 0.0);
    for (std::size_t ix = 0; ix < lat.n_x; ++ix)
        for (std::size_t iy = 0; iy < lat.n_y; ++iy)
            p[ix] += std::norm(state.amplitudes[lat.index(ix, iy)]);
    return p;
}

Moments moments(std::span<const double> populations, std::ptrdiff_t first_site) {
    double mass = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < populations.size(); ++i) {
        const double l = static_cast<double>(first_site + static_cast<std::ptrdiff_t>(i));
        mass += populations[i];
        s1 += l * populations[i];
        s2 += l * l * populations[i];
    }
    Moments out{s1, s2, 0.0};

    // Central moment in a second pass avoids cancellation in m2 - m1^2 far
    // from the origin. sum (l - m1)^2 P = m2 - m1^2 + m1^2 (mass - 1).
    double central = 0.0;
    for (std::size_t i = 0; i < populations.size(); ++i) {
        const double d = static_cast<double>(first_site + static_cast<std::ptrdiff_t>(i)) - s1;
        central += d * d * populations[i];
    }
    double variance = central - s1 * s1 * (mass - 1.0);
    if (variance < -1e-12)
        throw NumericalInconsistency("negative variance " + std::to_string(variance) +
                                     " from population vector (mass " + std::to_string(mass) + ")");
    variance = std::max(variance, 0.0);
    out.sigma = std::sqrt(variance);
    return out;
}

Moments moments(std::span<const double> populations, const Lattice1D& lattice) {
    if (populations.size() != lattice.n_sites)
        throw ShapeError("population vector does not match lattice size");
    return moments(populations, lattice.first_site());
}

FitResult fit_line(std::span<const double> t, std::span<const double> y) {
    if (t.size() != y.size())
        throw ShapeError("fit_line: t and y lengths differ");
    if (t.size() < 2)
        throw InsufficientData("fit_line needs at least two points");
    const double n = static_cast<double>(t.size());
    const double tm = std::accumulate(t.begin(), t.end(), 0.0) / n;
    const double ym = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double stt = 0.0;
    double sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - tm) * (t[i] - tm);
        sty += (t[i] - tm) * (y[i] - ym);
    }
    if (stt == 0.0)
        throw InsufficientData("fit_line: all sample times coincide");

    FitResult fit;
    fit.slope = sty / stt;
    fit.intercept = ym - fit.slope * tm;
    fit.t_lo = t.front();
    fit.t_hi = t.back();
    double ss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - (fit.slope * t[i] + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

FitResult fit_drift(const Trajectory& trajectory) {
    if (trajectory.size() < 2)
        throw InsufficientData("fit_drift: empty trajectory");
    const double t_end = trajectory.t_end();
    if (trajectory.tunneling_period > 0.0 && t_end < 10.0 * trajectory.tunneling_period * (1.0 - 1e-9))
        throw InsufficientData("fit_drift needs a trajectory covering at least 10 T_J");

    const double t_start = kDriftWindowStart * t_end;
    const auto first = std::lower_bound(trajectory.times.begin(), trajectory.times.end(), t_start);
    const auto offset = static_cast<std::size_t>(first - trajectory.times.begin());
    const std::size_t count = trajectory.size() - offset;
    if (count < 20)
        throw InsufficientData("fit_drift needs at least 20 records in the fit window, got " +
                               std::to_string(count));

    FitResult fit = fit_line(std::span(trajectory.times).subspan(offset),
                             std::span(trajectory.m1).subspan(offset));
    fit.classification = GrowthClass::linear_growth;
    return fit;
}

FitResult fit_ballistic_rate(const Trajectory& trajectory) {
    const std::size_t n = trajectory.size();
    const auto offset = static_cast<std::size_t>(std::floor(static_cast<double>(n) * (1.0 - kRateWindowFraction)));
    const std::size_t count = n - offset;
    if (count < 10)
        throw InsufficientData("fit_ballistic_rate needs at least 10 samples in the final half, got " +
                               std::to_string(count));

    const auto sigma = std::span(trajectory.sigma).subspan(offset);
    FitResult fit = fit_line(std::span(trajectory.times).subspan(offset), sigma);

    const double mean_sigma = std::accumulate(sigma.begin(), sigma.end(), 0.0) / static_cast<double>(count);
    const double rise = fit.slope * (fit.t_hi - fit.t_lo);
    const bool small_growth = fit.slope * trajectory.t_end() < kBoundedGrowthFraction * mean_sigma;
    const bool residual_dominated = fit.rms_residual > kResidualDominance * rise;
    fit.classification =
        (small_growth || residual_dominated) ? GrowthClass::bounded_oscillation : GrowthClass::linear_growth;
    return fit;
}

FrequencyRatio rational_approx(double x, std::int64_t max_q) {
    if (!std::isfinite(x) || x < 0.0)
        throw ConfigError("rational_approx needs a finite non-negative number");
    if (max_q < 1)
        throw ConfigError("rational_approx needs max_q >= 1");

    constexpr double tolerance = 1e-12;
    std::int64_t h_prev = 1, h_prev2 = 0;
    std::int64_t k_prev = 0, k_prev2 = 1;
    double rest = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_real = std::floor(rest);
        if (a_real > 1e15)
            break;
        const auto a = static_cast<std::int64_t>(a_real);
        const std::int64_t h = a * h_prev + h_prev2;
        const std::int64_t k = a * k_prev + k_prev2;
        if (k > max_q)
            break;
        if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) < tolerance)
            return FrequencyRatio::rational(h, k);
        const double frac = rest - a_real;
        if (frac <= 0.0)
            break;
        rest = 1.0 / frac;
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return FrequencyRatio::irrational(x);
}

} // namespace cbloch
