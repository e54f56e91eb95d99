#include "cbloch/states.hpp"

#include "cbloch/errors.hpp"
#include "cbloch/rng.hpp"

#include <cmath>
#include <string>

namespace cbloch {

namespace {

std::vector<double> envelope(const Lattice1D& lattice, double center, double sigma) {
    const double lo = static_cast<double>(lattice.first_site()) - 0.5;
    const double hi = static_cast<double>(lattice.site(lattice.n_sites - 1)) + 0.5;
    const double tail = 0.5 * std::erfc((center - lo) / sigma) + 0.5 * std::erfc((hi - center) / sigma);
    if (tail > kTruncationTolerance)
        throw TruncationError("Gaussian packet (center " + std::to_string(center) + ", width " +
                              std::to_string(sigma) + ") loses mass " + std::to_string(tail) +
                              " outside a " + std::to_string(lattice.n_sites) + "-site lattice");

    std::vector<double> amp(lattice.n_sites);
    double total = 0.0;
    for (std::size_t i = 0; i < lattice.n_sites; ++i) {
        const double d = static_cast<double>(lattice.site(i)) - center;
        amp[i] = std::exp(-d * d / (2.0 * sigma * sigma));
        total += amp[i] * amp[i];
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto& a : amp)
        a *= scale;
    return amp;
}

} // namespace

double transporting_width(const ModelParams& params) {
    if (params.alpha == 0.0)
        throw DegenerateField("transporting width needs a nonzero alpha");
    return 1.0 / std::sqrt(kTwoPi * std::abs(params.alpha) * std::sqrt(params.j_y / params.j_x));
}

double wide_width(const ModelParams& params) {
    if (params.alpha == 0.0)
        throw DegenerateField("magnetic period is infinite for alpha = 0; give an explicit width");
    return 2.0 / std::abs(params.alpha);
}

double GaussianSpec::resolved_width(const ModelParams& params) const {
    switch (width) {
    case WidthRule::explicit_value: return sigma0;
    case WidthRule::transporting: return transporting_width(params);
    case WidthRule::wide: return wide_width(params);
    }
    return sigma0;
}

double GaussianSpec::resolved_center(const ModelParams& /*params*/) const {
    // -j_y cos(2 pi alpha l) has a minimum at l = 0 for every alpha.
    return center.value_or(0.0);
}

void GaussianSpec::validate() const {
    if (width == WidthRule::explicit_value && !(sigma0 > 0.0 && std::isfinite(sigma0)))
        throw ConfigError("Gaussian width must be positive");
    if (n_realizations < 1)
        throw ConfigError("n_realizations must be at least 1");
    if (center && !std::isfinite(*center))
        throw ConfigError("Gaussian center must be finite");
}

State1D coherent_gaussian(const GaussianSpec& spec, const Lattice1D& lattice, const ModelParams& params) {
    spec.validate();
    lattice.validate();
    const double sigma = spec.resolved_width(params);
    if (sigma > static_cast<double>(lattice.n_sites) / 10.0)
        throw TruncationError("Gaussian width " + std::to_string(sigma) + " exceeds n_sites/10 = " +
                              std::to_string(lattice.n_sites / 10.0));

    const auto amp = envelope(lattice, spec.resolved_center(params), sigma);
    State1D state{lattice, std::vector<cplx>(amp.begin(), amp.end()), 0.0};
    return state;
}

Ensemble incoherent_ensemble(const GaussianSpec& spec, const Lattice1D& lattice, const ModelParams& params,
                             std::uint64_t seed, bool zero_phases) {
    const State1D base = coherent_gaussian(spec, lattice, params);

    Ensemble out;
    out.seed = seed;
    out.members.reserve(spec.n_realizations);
    for (std::size_t k = 0; k < spec.n_realizations; ++k) {
        auto rng = Xoshiro256ss::for_stream(seed, k);
        State1D member = base;
        for (auto& b : member.amplitudes) {
            const double phase = kTwoPi * rng.uniform();
            if (!zero_phases)
                b = std::polar(b.real(), phase);
        }
        out.members.push_back(std::move(member));
    }
    return out;
}

State2D embed_y_uniform(const State1D& state, std::size_t n_y) {
    state.check_shape();
    if (n_y == 0)
        throw ShapeError("embedding needs n_y >= 1");
    State2D out;
    out.lattice = Lattice2D{state.lattice.n_sites, n_y, state.lattice.origin, 0, Boundary::periodic};
    out.time = state.time;
    out.amplitudes.resize(out.lattice.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_y));
    for (std::size_t ix = 0; ix < out.lattice.n_x; ++ix)
        for (std::size_t iy = 0; iy < n_y; ++iy)
            out.amplitudes[out.lattice.index(ix, iy)] = state.amplitudes[ix] * scale;
    return out;
}

} // namespace cbloch
