#include "cbloch/errors.hpp"
#include "cbloch/hamiltonian.hpp"
#include "cbloch/observables.hpp"
#include "cbloch/propagator.hpp"
#include "cbloch/states.hpp"

#include "dense_oracle.hpp"

#include <doctest.h>

using namespace cbloch;
using oracle::cplx;

namespace {

const cplx I{0.0, 1.0};

ModelParams fig_params() {
    ModelParams p;
    p.alpha = 0.1;
    p.omega_x = 0.0;
    p.omega_y = 0.1;
    return p;
}

State1D delta(std::size_t n, std::ptrdiff_t origin, std::ptrdiff_t l) {
    State1D s{Lattice1D{n, origin}, std::vector<cplx>(n), 0.0};
    s.amplitudes[static_cast<std::size_t>(l + origin)] = 1.0;
    return s;
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace

TEST_CASE("chain derivative, hopping off") {
    auto p = fig_params();
    p.j_x = 0.0;
    const auto d = apply_h1d(delta(16, 8, 0), 0.0, p);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const cplx expected = i == 8 ? I * p.j_y * std::cos(0.0) : cplx{};
        CHECK(std::abs(d[i] - expected) < 1e-15);
    }
}

TEST_CASE("chain derivative, bare hopping") {
    auto p = fig_params();
    p.j_y = 0.0;
    const auto d = apply_h1d(delta(16, 8, 0), 0.83, p);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const cplx expected = (i == 7 || i == 9) ? I * p.j_x / 2.0 : cplx{};
        CHECK(std::abs(d[i] - expected) < 1e-15);
    }
}

TEST_CASE("chain derivative matches the dense oracle") {
    const auto p = fig_params();
    const Lattice1D lat{64, 27};
    GaussianSpec spec;
    spec.center = 1.5;
    const State1D g = coherent_gaussian(spec, lat, p);
    const double t = 0.37;
    const auto d = apply_h1d(g, t, p);
    const oracle::Vector ref = -I * (oracle::chain(lat, p, t) * oracle::to_eigen(g.amplitudes));
    CHECK(oracle::max_abs_diff(d, ref) < 1e-12);

    auto q = p;
    q.omega_x = 0.7;
    q.alpha = 0.23;
    State1D r{lat, oracle::random_state(64, 3), 0.0};
    const auto d2 = apply_h1d(r, 2.9, q);
    CHECK(oracle::max_abs_diff(d2, -I * (oracle::chain(lat, q, 2.9) * oracle::to_eigen(r.amplitudes))) < 1e-12);
}

TEST_CASE("driven plane matches the dense oracle") {
    ModelParams p;
    p.alpha = 0.25;
    p.omega_x = 0.4;
    p.omega_y = 0.9;
    p.j_y = 0.8;
    for (auto boundary : {Boundary::periodic, Boundary::hard_wall}) {
        const Lattice2D lat{8, 8, 3, 2, boundary};
        State2D s{lat, oracle::random_state(64, 5), 0.0};
        const auto d = apply_h2d_driven(s, 1.3, p);
        const oracle::Vector ref = -I * (oracle::plane(lat, p, 1.3, 0) * oracle::to_eigen(s.amplitudes));
        CHECK(oracle::max_abs_diff(d, ref) < 1e-12);
    }
}

TEST_CASE("static plane matches the dense oracle") {
    ModelParams p;
    p.alpha = 0.17;
    p.omega_x = 0.3;
    p.omega_y = 0.55;
    const Lattice2D lat{6, 6, 2, 3, Boundary::hard_wall};
    State2D s{lat, oracle::random_state(36, 9), 0.0};
    const auto d = apply_h2d_static(s, p);
    const oracle::Vector ref = -I * (oracle::plane(lat, p, 0.0, 1) * oracle::to_eigen(s.amplitudes));
    CHECK(oracle::max_abs_diff(d, ref) < 1e-12);

    // Uniform state on a periodic free lattice: only the y hopping sees the
    // wrap, so compare the whole vector with the oracle.
    ModelParams free;
    free.alpha = 0.0;
    free.omega_x = 0.0;
    free.omega_y = 0.0;
    const Lattice2D per{6, 6, 3, 0, Boundary::periodic};
    State2D u{per, std::vector<cplx>(36, 1.0 / 6.0), 0.0};
    const auto du = apply_h2d_static(u, free);
    CHECK(oracle::max_abs_diff(du, -I * (oracle::plane(per, free, 0.0, 1) * oracle::to_eigen(u.amplitudes))) <
          1e-12);
    // Interior x rows see both x neighbours, so they are eigen-rows with E = -(j_x + j_y).
    CHECK(std::abs(du[lat.index(2, 4)] - I * (free.j_x + free.j_y) * u.amplitudes[0]) < 1e-15);
}

TEST_CASE("static plane pure potential") {
    ModelParams p;
    p.j_x = 0.0;
    p.j_y = 0.0;
    p.omega_x = 0.3;
    p.omega_y = 0.7;
    const Lattice2D lat{8, 8, 3, 3, Boundary::hard_wall};
    State2D s{lat, std::vector<cplx>(64), 0.0};
    const std::size_t k = lat.index(5, 6); // (l, m) = (2, 3)
    s.amplitudes[k] = 1.0;
    const auto d = apply_h2d_static(s, p);
    CHECK(std::abs(d[k] - (-I * (2 * p.omega_x + 3 * p.omega_y))) < 1e-15);
}

TEST_CASE("driven plane: y-uniform section and decoupled rows") {
    ModelParams p;
    p.alpha = 0.1;
    p.omega_x = 0.3;
    p.omega_y = 0.6;
    const Lattice1D chain{32, 13};
    State1D b{chain, oracle::random_state(32, 21), 0.0};
    const State2D psi = embed_y_uniform(b, 5);
    const auto d2 = apply_h2d_driven(psi, 0.77, p);
    const auto d1 = apply_h1d(b, 0.77, p);
    for (std::size_t ix = 0; ix < 32; ++ix)
        for (std::size_t iy = 0; iy < 5; ++iy)
            CHECK(std::abs(d2[psi.lattice.index(ix, iy)] - d1[ix] / std::sqrt(5.0)) < 1e-12);

    auto q = p;
    q.j_y = 0.0;
    const Lattice2D lat{16, 4, 8, 0, Boundary::periodic};
    State2D r{lat, oracle::random_state(64, 4), 0.0};
    const auto dr = apply_h2d_driven(r, 1.1, q);
    for (std::size_t iy = 0; iy < 4; ++iy) {
        State1D row{Lattice1D{16, 8}, std::vector<cplx>(16), 0.0};
        for (std::size_t ix = 0; ix < 16; ++ix)
            row.amplitudes[ix] = r.amplitudes[lat.index(ix, iy)];
        auto hop = q;
        hop.j_y = 0.0;
        const auto d = apply_h1d(row, 1.1, hop);
        for (std::size_t ix = 0; ix < 16; ++ix)
            CHECK(std::abs(dr[lat.index(ix, iy)] - d[ix]) < 1e-14);
    }
}

TEST_CASE("generators are Hermitian") {
    ModelParams p;
    p.alpha = 0.31;
    p.omega_x = 0.45;
    p.omega_y = 1.2;
    const Lattice1D chain{40, 17};
    for (unsigned seed = 0; seed < 5; ++seed) {
        State1D u{chain, oracle::random_state(40, seed), 0.0};
        State1D v{chain, oracle::random_state(40, seed + 100), 0.0};
        // d/dt psi = -i H psi, so <u, H v> = i <u, d v>.
        const cplx uhv = I * inner(u.amplitudes, apply_h1d(v, 0.9, p));
        const cplx vhu = I * inner(v.amplitudes, apply_h1d(u, 0.9, p));
        CHECK(std::abs(uhv - std::conj(vhu)) < 1e-13);
    }
    for (auto boundary : {Boundary::periodic, Boundary::hard_wall}) {
        const Lattice2D lat{7, 6, 3, 2, boundary};
        for (unsigned seed = 0; seed < 3; ++seed) {
            State2D u{lat, oracle::random_state(42, seed), 0.0};
            State2D v{lat, oracle::random_state(42, seed + 50), 0.0};
            const cplx a = I * inner(u.amplitudes, apply_h2d_driven(v, 2.1, p));
            const cplx b = I * inner(v.amplitudes, apply_h2d_driven(u, 2.1, p));
            CHECK(std::abs(a - std::conj(b)) < 1e-13);
            const cplx c = I * inner(u.amplitudes, apply_h2d_static(v, p));
            const cplx d = I * inner(v.amplitudes, apply_h2d_static(u, p));
            CHECK(std::abs(c - std::conj(d)) < 1e-13);
        }
    }
}

TEST_CASE("chain derivative is nearest-neighbour") {
    ModelParams p;
    p.omega_x = 0.5;
    const auto d = apply_h1d(delta(20, 10, 3), 0.4, p);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != cplx{}) {
            ++nonzero;
            CHECK(i >= 12);
            CHECK(i <= 14);
        }
    CHECK(nonzero <= 3);
}

TEST_CASE("shape errors") {
    State1D bad{Lattice1D{16, 8}, std::vector<cplx>(15), 0.0};
    CHECK_THROWS_AS(apply_h1d(bad, 0.0, ModelParams{}), ShapeError);
    State2D bad2{Lattice2D{8, 8, 4, 4, Boundary::periodic}, std::vector<cplx>(63), 0.0};
    CHECK_THROWS_AS(apply_h2d_driven(bad2, 0.0, ModelParams{}), ShapeError);
    CHECK_THROWS_AS(apply_h2d_static(bad2, ModelParams{}), ShapeError);
}

TEST_CASE("gauge map") {
    ModelParams p;
    p.omega_x = 0.37;
    p.omega_y = 0.81;
    const Lattice2D lat{9, 7, 4, 3, Boundary::hard_wall};
    State2D s{lat, oracle::random_state(63, 13), 0.0};

    const State2D same = gauge_map(s, 0.0, p, GaugeDirection::to_driven);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        CHECK(same.amplitudes[i] == s.amplitudes[i]);

    const State2D d = gauge_map(s, 3.3, p, GaugeDirection::to_driven);
    const State2D back = gauge_map(d, 3.3, p, GaugeDirection::to_static);
    const auto p0 = populations(s), p1 = populations(d);
    for (std::size_t i = 0; i < p0.size(); ++i)
        CHECK(std::abs(p0[i] - p1[i]) < 1e-15);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
        CHECK(std::abs(back.amplitudes[i] - s.amplitudes[i]) < 1e-15);
        CHECK(std::abs(std::norm(d.amplitudes[i]) - std::norm(s.amplitudes[i])) < 1e-15);
    }
}

// Propagating the static-field plane and mapping to the driven frame at the
// end must agree with propagating the driven plane directly.
TEST_CASE("gauge equivalence under propagation") {
    ModelParams p;
    p.alpha = 0.1;
    p.omega_x = 0.37;
    p.omega_y = 0.53;
    const Lattice2D lat{12, 12, 6, 6, Boundary::hard_wall};
    State2D s{lat, std::vector<cplx>(144), 0.0};
    for (std::size_t ix = 0; ix < 12; ++ix)
        for (std::size_t iy = 0; iy < 12; ++iy) {
            const double l = lat.site_x(ix), m = lat.site_y(iy);
            s.amplitudes[lat.index(ix, iy)] = std::exp(-(l * l + m * m) / 4.0) * std::polar(1.0, 0.3 * l);
        }
    double norm = 0;
    for (auto z : s.amplitudes)
        norm += std::norm(z);
    for (auto& z : s.amplitudes)
        z /= std::sqrt(norm);

    TimeGrid grid;
    grid.t_end = 5.0;
    grid.dt = 1.0 / 1600.0;
    EvolveOptions opts;
    opts.edge_threshold = 1.0; // the packet fills the small lattice

    const auto stat = evolve(s, p, grid, PlaneHamiltonian::static_field, opts);
    const auto drv = evolve(s, p, grid, PlaneHamiltonian::driven, opts);
    const double t = stat.state.time;
    CHECK(t == doctest::Approx(5.0 * kTwoPi));

    const auto ps = populations(stat.state), pd = populations(drv.state);
    double worst = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        worst = std::max(worst, std::abs(ps[i] - pd[i]));
    CHECK(worst < 1e-8);

    const State2D mapped = gauge_map(stat.state, t, p, GaugeDirection::to_driven);
    double amp = 0, amp_wrong = 0;
    const State2D wrong = gauge_map(stat.state, t, p, GaugeDirection::to_static);
    for (std::size_t i = 0; i < mapped.amplitudes.size(); ++i) {
        amp = std::max(amp, std::abs(mapped.amplitudes[i] - drv.state.amplitudes[i]));
        amp_wrong = std::max(amp_wrong, std::abs(wrong.amplitudes[i] - drv.state.amplitudes[i]));
    }
    CHECK(amp < 1e-8);
    CHECK(amp_wrong > 1e-3);

    // Per-site populations, not only the row sums.
    double site = 0;
    for (std::size_t i = 0; i < mapped.amplitudes.size(); ++i)
        site = std::max(site, std::abs(std::norm(stat.state.amplitudes[i]) - std::norm(drv.state.amplitudes[i])));
    CHECK(site < 1e-8);
}
