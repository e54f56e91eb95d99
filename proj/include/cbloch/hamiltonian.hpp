#pragma once

#include "cbloch/lattice.hpp"
#include "cbloch/model.hpp"

#include <span>
#include <vector>

namespace cbloch {

// Each operator evaluates the right-hand side of the Schroedinger equation,
// d psi / dt = -i H(t) psi, into a caller-provided buffer. The site phases
// exp(i 2 pi alpha l) are tabulated once at construction, so one evaluation
// costs a handful of flops per site.

// Driven chain:
//   i db_l/dt = -(j_x/2)(e^{-i w_x t} b_{l+1} + e^{i w_x t} b_{l-1})
//               - j_y cos(2 pi alpha l - w_y t) b_l
class DrivenChain {
public:
    DrivenChain(const Lattice1D& lattice, const ModelParams& params);

    std::size_t dimension() const { return lattice_.n_sites; }
    const Lattice1D& lattice() const { return lattice_; }

    void derivative(double t, std::span<const cplx> in, std::span<cplx> out) const;
    // Only out[begin, end) is written; sites outside the window read as zero.
    void derivative(double t, std::span<const cplx> in, std::span<cplx> out, std::size_t begin,
                    std::size_t end) const;

private:
    Lattice1D lattice_;
    ModelParams params_;
    std::vector<cplx> site_phase_;
};

// Driven plane (gauge with the force turned into hopping phases):
//   i dpsi/dt = -(j_x/2)(e^{-i w_x t} psi_{l+1,m} + h.c.)
//               -(j_y/2)(e^{i(2 pi alpha l - w_y t)} psi_{l,m+1} + h.c.)
class DrivenPlane {
public:
    DrivenPlane(const Lattice2D& lattice, const ModelParams& params);

    std::size_t dimension() const { return lattice_.size(); }
    const Lattice2D& lattice() const { return lattice_; }

    void derivative(double t, std::span<const cplx> in, std::span<cplx> out) const;

private:
    Lattice2D lattice_;
    ModelParams params_;
    std::vector<cplx> row_phase_;
};

// Static-field plane in the Landau gauge:
//   i dpsi/dt = -(j_x/2)(psi_{l+1,m} + psi_{l-1,m})
//               -(j_y/2)(e^{i 2 pi alpha l} psi_{l,m+1} + h.c.)
//               + (w_x l + w_y m) psi_{l,m}
// The time argument is accepted for interface symmetry and ignored.
class StaticFieldPlane {
public:
    StaticFieldPlane(const Lattice2D& lattice, const ModelParams& params);

    std::size_t dimension() const { return lattice_.size(); }
    const Lattice2D& lattice() const { return lattice_; }

    void derivative(double t, std::span<const cplx> in, std::span<cplx> out) const;

private:
    Lattice2D lattice_;
    ModelParams params_;
    std::vector<cplx> row_phase_;
};

std::vector<cplx> apply_h1d(const State1D& state, double t, const ModelParams& params);
std::vector<cplx> apply_h2d_driven(const State2D& state, double t, const ModelParams& params);
std::vector<cplx> apply_h2d_static(const State2D& state, const ModelParams& params);

enum class GaugeDirection { to_driven, to_static };

// Phase map between the static-field and the driven plane at time t:
// psi_static = exp(-i (w_x l + w_y m) t) psi_driven.
State2D gauge_map(const State2D& state, double t, const ModelParams& params, GaugeDirection direction);

} // namespace cbloch
