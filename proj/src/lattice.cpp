#include "cbloch/lattice.hpp"

#include "cbloch/errors.hpp"

#include <numeric>
#include <string>

namespace cbloch {

namespace {

double squared_norm(const std::vector<cplx>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0,
                           [](double acc, const cplx& z) { return acc + std::norm(z); });
}

} // namespace

Lattice1D Lattice1D::centered(std::size_t n) {
    Lattice1D lattice{n, static_cast<std::ptrdiff_t>(n / 2)};
    lattice.validate();
    return lattice;
}

void Lattice1D::validate() const {
    if (n_sites < kMinSites)
        throw ShapeError("1D lattice needs at least " + std::to_string(kMinSites) + " sites, got " +
                         std::to_string(n_sites));
    if (origin < 0 || origin >= static_cast<std::ptrdiff_t>(n_sites))
        throw ShapeError("lattice origin must lie inside the site window");
}

double State1D::norm() const { return squared_norm(amplitudes); }

void State1D::check_shape() const {
    lattice.validate();
    if (amplitudes.size() != lattice.n_sites)
        throw ShapeError("state has " + std::to_string(amplitudes.size()) + " amplitudes for a " +
                         std::to_string(lattice.n_sites) + "-site lattice");
}

void Lattice2D::validate() const {
    if (n_x == 0 || n_y == 0)
        throw ShapeError("2D lattice dimensions must be positive");
    if (origin_x < 0 || origin_x >= static_cast<std::ptrdiff_t>(n_x) || origin_y < 0 ||
        origin_y >= static_cast<std::ptrdiff_t>(n_y))
        throw ShapeError("2D lattice origin must lie inside the site window");
}

double State2D::norm() const { return squared_norm(amplitudes); }

void State2D::check_shape() const {
    lattice.validate();
    if (amplitudes.size() != lattice.size())
        throw ShapeError("state has " + std::to_string(amplitudes.size()) + " amplitudes for a " +
                         std::to_string(lattice.n_x) + "x" + std::to_string(lattice.n_y) + " lattice");
}

} // namespace cbloch
