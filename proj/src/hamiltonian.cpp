#include "cbloch/hamiltonian.hpp"

#include "cbloch/errors.hpp"

#include <cmath>
#include <string>

namespace cbloch {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_buffers(std::size_t dim, std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != dim || out.size() != dim)
        throw ShapeError("derivative buffers of size " + std::to_string(in.size()) + "/" +
                         std::to_string(out.size()) + " do not match lattice dimension " +
                         std::to_string(dim));
}

std::vector<cplx> peierls_phases(std::size_t n, std::ptrdiff_t origin, double alpha) {
    std::vector<cplx> phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double l = static_cast<double>(static_cast<std::ptrdiff_t>(i) - origin);
        phase[i] = std::polar(1.0, kTwoPi * alpha * l);
    }
    return phase;
}

// -i * z
inline cplx times_minus_i(cplx z) { return {z.imag(), -z.real()}; }

// Shared y-bond sweep for both planes: out += -(j_y/2)(e^{i theta_l} psi_{l,m+1} + h.c.) per row,
// where e^{i theta_l} = bond[ix]. Accumulates into `acc` (energy-times-psi, before the -i).
void add_y_bonds(const Lattice2D& lat, double half_jy, std::span<const cplx> bond,
                 std::span<const cplx> in, std::span<cplx> acc) {
    const std::size_t ny = lat.n_y;
    const bool periodic = lat.boundary_y == Boundary::periodic;
    for (std::size_t ix = 0; ix < lat.n_x; ++ix) {
        const cplx up = -half_jy * bond[ix];
        const cplx down = std::conj(up);
        const std::size_t row = ix * ny;
        for (std::size_t iy = 0; iy < ny; ++iy) {
            cplx s{};
            if (iy + 1 < ny)
                s += up * in[row + iy + 1];
            else if (periodic)
                s += up * in[row];
            if (iy > 0)
                s += down * in[row + iy - 1];
            else if (periodic)
                s += down * in[row + ny - 1];
            acc[row + iy] += s;
        }
    }
}

} // namespace

DrivenChain::DrivenChain(const Lattice1D& lattice, const ModelParams& params)
    : lattice_(lattice), params_(params) {
    lattice_.validate();
    site_phase_ = peierls_phases(lattice_.n_sites, lattice_.origin, params_.alpha);
}

void DrivenChain::derivative(double t, std::span<const cplx> in, std::span<cplx> out) const {
    derivative(t, in, out, 0, lattice_.n_sites);
}

void DrivenChain::derivative(double t, std::span<const cplx> in, std::span<cplx> out, std::size_t begin,
                             std::size_t end) const {
    check_buffers(lattice_.n_sites, in, out);
    if (begin > end || end > lattice_.n_sites)
        throw ShapeError("derivative window out of range");

    const double half_jx = 0.5 * params_.j_x;
    // Coefficients of b_{l+1} and b_{l-1} in H b.
    const cplx fwd = -half_jx * std::polar(1.0, -params_.omega_x * t);
    const cplx bwd = std::conj(fwd);
    // cos(2 pi alpha l - w_y t) = Re(e^{i 2 pi alpha l} e^{-i w_y t})
    const cplx drive = std::polar(1.0, -params_.omega_y * t);
    const double jy = params_.j_y;

    for (std::size_t i = begin; i < end; ++i) {
        const cplx& p = site_phase_[i];
        const double cos_term = p.real() * drive.real() - p.imag() * drive.imag();
        cplx h = -jy * cos_term * in[i];
        if (i + 1 < end)
            h += fwd * in[i + 1];
        if (i > begin)
            h += bwd * in[i - 1];
        out[i] = times_minus_i(h);
    }
}

DrivenPlane::DrivenPlane(const Lattice2D& lattice, const ModelParams& params)
    : lattice_(lattice), params_(params) {
    lattice_.validate();
    row_phase_ = peierls_phases(lattice_.n_x, lattice_.origin_x, params_.alpha);
}

void DrivenPlane::derivative(double t, std::span<const cplx> in, std::span<cplx> out) const {
    const std::size_t nx = lattice_.n_x;
    const std::size_t ny = lattice_.n_y;
    check_buffers(lattice_.size(), in, out);

    const cplx fwd = -0.5 * params_.j_x * std::polar(1.0, -params_.omega_x * t);
    const cplx bwd = std::conj(fwd);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            cplx h{};
            if (ix + 1 < nx)
                h += fwd * in[(ix + 1) * ny + iy];
            if (ix > 0)
                h += bwd * in[(ix - 1) * ny + iy];
            out[ix * ny + iy] = h;
        }
    }

    const cplx drive = std::polar(1.0, -params_.omega_y * t);
    std::vector<cplx> bond(nx);
    for (std::size_t ix = 0; ix < nx; ++ix)
        bond[ix] = row_phase_[ix] * drive;
    add_y_bonds(lattice_, 0.5 * params_.j_y, bond, in, out);

    for (auto& z : out)
        z = times_minus_i(z);
}

StaticFieldPlane::StaticFieldPlane(const Lattice2D& lattice, const ModelParams& params)
    : lattice_(lattice), params_(params) {
    lattice_.validate();
    row_phase_ = peierls_phases(lattice_.n_x, lattice_.origin_x, params_.alpha);
}

void StaticFieldPlane::derivative(double /*t*/, std::span<const cplx> in, std::span<cplx> out) const {
    const std::size_t nx = lattice_.n_x;
    const std::size_t ny = lattice_.n_y;
    check_buffers(lattice_.size(), in, out);

    const double half_jx = 0.5 * params_.j_x;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double l = static_cast<double>(lattice_.site_x(ix));
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double m = static_cast<double>(lattice_.site_y(iy));
            const std::size_t k = ix * ny + iy;
            cplx h = (params_.omega_x * l + params_.omega_y * m) * in[k];
            if (ix + 1 < nx)
                h -= half_jx * in[k + ny];
            if (ix > 0)
                h -= half_jx * in[k - ny];
            out[k] = h;
        }
    }

    add_y_bonds(lattice_, 0.5 * params_.j_y, row_phase_, in, out);

    for (auto& z : out)
        z = times_minus_i(z);
}

std::vector<cplx> apply_h1d(const State1D& state, double t, const ModelParams& params) {
    state.check_shape();
    DrivenChain h(state.lattice, params);
    std::vector<cplx> out(h.dimension());
    h.derivative(t, state.amplitudes, out);
    return out;
}

std::vector<cplx> apply_h2d_driven(const State2D& state, double t, const ModelParams& params) {
    state.check_shape();
    DrivenPlane h(state.lattice, params);
    std::vector<cplx> out(h.dimension());
    h.derivative(t, state.amplitudes, out);
    return out;
}

std::vector<cplx> apply_h2d_static(const State2D& state, const ModelParams& params) {
    state.check_shape();
    StaticFieldPlane h(state.lattice, params);
    std::vector<cplx> out(h.dimension());
    h.derivative(0.0, state.amplitudes, out);
    return out;
}

State2D gauge_map(const State2D& state, double t, const ModelParams& params, GaugeDirection direction) {
    state.check_shape();
    const double sign = direction == GaugeDirection::to_driven ? 1.0 : -1.0;
    State2D out = state;
    const auto& lat = state.lattice;
    for (std::size_t ix = 0; ix < lat.n_x; ++ix) {
        const double l = static_cast<double>(lat.site_x(ix));
        for (std::size_t iy = 0; iy < lat.n_y; ++iy) {
            const double m = static_cast<double>(lat.site_y(iy));
            const std::size_t k = lat.index(ix, iy);
            out.amplitudes[k] *= std::polar(1.0, sign * (params.omega_x * l + params.omega_y * m) * t);
        }
    }
    return out;
}

} // namespace cbloch
