#pragma once

// Dense Hamiltonians built element by element, used as independent oracles.

#include "cbloch/lattice.hpp"
#include "cbloch/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;

inline Matrix chain(const cbloch::Lattice1D& lat, const cbloch::ModelParams& p, double t) {
    const auto n = static_cast<Eigen::Index>(lat.n_sites);
    Matrix h = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double l = static_cast<double>(i - lat.origin);
        h(i, i) = -p.j_y * std::cos(2 * pi * p.alpha * l - p.omega_y * t);
        if (i + 1 < n)
            h(i, i + 1) = -0.5 * p.j_x * std::polar(1.0, -p.omega_x * t);
        if (i > 0)
            h(i, i - 1) = -0.5 * p.j_x * std::polar(1.0, p.omega_x * t);
    }
    return h;
}

// kind 0: driven plane at time t; kind 1: static-field plane.
inline Matrix plane(const cbloch::Lattice2D& lat, const cbloch::ModelParams& p, double t, int kind) {
    const auto nx = static_cast<Eigen::Index>(lat.n_x), ny = static_cast<Eigen::Index>(lat.n_y);
    Matrix h = Matrix::Zero(nx * ny, nx * ny);
    const bool periodic = lat.boundary_y == cbloch::Boundary::periodic;
    auto idx = [ny](Eigen::Index ix, Eigen::Index iy) { return ix * ny + iy; };
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
        const double l = static_cast<double>(ix - lat.origin_x);
        const double wt_x = kind == 0 ? p.omega_x * t : 0.0;
        const double y_phase = 2 * pi * p.alpha * l - (kind == 0 ? p.omega_y * t : 0.0);
        for (Eigen::Index iy = 0; iy < ny; ++iy) {
            const double m = static_cast<double>(iy - lat.origin_y);
            const auto a = idx(ix, iy);
            if (ix + 1 < nx)
                h(a, idx(ix + 1, iy)) += -0.5 * p.j_x * std::polar(1.0, -wt_x);
            if (ix > 0)
                h(a, idx(ix - 1, iy)) += -0.5 * p.j_x * std::polar(1.0, wt_x);
            if (iy + 1 < ny || periodic)
                h(a, idx(ix, (iy + 1) % ny)) += -0.5 * p.j_y * std::polar(1.0, y_phase);
            if (iy > 0 || periodic)
                h(a, idx(ix, (iy + ny - 1) % ny)) += -0.5 * p.j_y * std::polar(1.0, -y_phase);
            if (kind == 1)
                h(a, a) += p.omega_x * l + p.omega_y * m;
        }
    }
    return h;
}

inline std::vector<cplx> random_state(std::size_t n, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    double s = 0;
    for (auto& z : v) {
        z = {g(gen), g(gen)};
        s += std::norm(z);
    }
    for (auto& z : v)
        z /= std::sqrt(s);
    return v;
}

inline Vector to_eigen(const std::vector<cplx>& v) {
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline double max_abs_diff(const std::vector<cplx>& a, const Vector& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b(static_cast<Eigen::Index>(i))));
    return d;
}

} // namespace oracle
