#pragma once

#include "cbloch/lattice.hpp"
#include "cbloch/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cbloch {

// How the Gaussian width is chosen.
enum class WidthRule {
    explicit_value, // use GaussianSpec::sigma0
    transporting,   // (2 pi alpha sqrt(j_y/j_x))^{-1/2}: ground state of one cosine well
    wide,           // two magnetic periods, 2/alpha
};

enum class PhaseModel { coherent, random };

struct GaussianSpec {
    std::optional<double> center; // sites; absent -> cosine-potential minimum nearest l = 0
    WidthRule width = WidthRule::transporting;
    double sigma0 = 0.0;
    PhaseModel phases = PhaseModel::coherent;
    std::size_t n_realizations = 1;

    double resolved_width(const ModelParams& params) const;
    double resolved_center(const ModelParams& params) const;
    void validate() const;

    bool operator==(const GaussianSpec&) const = default;
};

struct Ensemble {
    std::vector<State1D> members;
    std::uint64_t seed = 0;
};

// Envelope mass a Gaussian may lose outside the lattice window.
inline constexpr double kTruncationTolerance = 1e-12;

double transporting_width(const ModelParams& params);
double wide_width(const ModelParams& params);

// Real, positive, normalized exp(-(l - c)^2 / (2 sigma^2)). Throws
// TruncationError if sigma exceeds n_sites/10 or the tail mass outside the
// window exceeds kTruncationTolerance.
State1D coherent_gaussian(const GaussianSpec& spec, const Lattice1D& lattice, const ModelParams& params);

// Gaussian envelope with i.i.d. uniform phases per site. Realization k draws
// from Xoshiro256ss::for_stream(seed, k). `zero_phases` replaces every phase
// by 0 (test hook).
Ensemble incoherent_ensemble(const GaussianSpec& spec, const Lattice1D& lattice, const ModelParams& params,
                             std::uint64_t seed, bool zero_phases = false);

// psi_{l,m} = b_l / sqrt(n_y) on a periodic-y plane with the same x window.
State2D embed_y_uniform(const State1D& state, std::size_t n_y);

} // namespace cbloch
