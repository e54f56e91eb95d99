#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cbloch {

using cplx = std::complex<double>;

enum class Boundary { hard_wall, periodic };

// Finite window of the infinite chain. `origin` is the array index that
// carries the physical site label l = 0; labels enter the drive phases.
struct Lattice1D {
    std::size_t n_sites = 0;
    std::ptrdiff_t origin = 0;

    static constexpr std::size_t kMinSites = 8;

    // Window of n sites with l = 0 in the middle.
    static Lattice1D centered(std::size_t n);

    void validate() const;
    std::ptrdiff_t site(std::size_t index) const { return static_cast<std::ptrdiff_t>(index) - origin; }
    std::ptrdiff_t first_site() const { return -origin; }

    bool operator==(const Lattice1D&) const = default;
};

struct State1D {
    Lattice1D lattice;
    std::vector<cplx> amplitudes;
    double time = 0.0;

    double norm() const;
    void check_shape() const;
};

// Row-major (l outer, m inner) plane. x is always hard-wall; y is hard-wall
// or periodic.
struct Lattice2D {
    std::size_t n_x = 0;
    std::size_t n_y = 0;
    std::ptrdiff_t origin_x = 0;
    std::ptrdiff_t origin_y = 0;
    Boundary boundary_y = Boundary::periodic;

    void validate() const;
    std::size_t size() const { return n_x * n_y; }
    std::size_t index(std::size_t ix, std::size_t iy) const { return ix * n_y + iy; }
    std::ptrdiff_t site_x(std::size_t ix) const { return static_cast<std::ptrdiff_t>(ix) - origin_x; }
    std::ptrdiff_t site_y(std::size_t iy) const { return static_cast<std::ptrdiff_t>(iy) - origin_y; }

    bool operator==(const Lattice2D&) const = default;
};

struct State2D {
    Lattice2D lattice;
    std::vector<cplx> amplitudes;
    double time = 0.0;

    double norm() const;
    void check_shape() const;
};

} // namespace cbloch
