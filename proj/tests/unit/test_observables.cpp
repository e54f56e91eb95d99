#include "cbloch/errors.hpp"
#include "cbloch/hamiltonian.hpp"
#include "cbloch/observables.hpp"
#include "cbloch/states.hpp"

#include "dense_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace cbloch;

namespace {

Trajectory synthetic(double t_end, std::size_t n, auto m1, auto sigma) {
    Trajectory tr;
    tr.tunneling_period = kTwoPi;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t_end * static_cast<double>(k) / static_cast<double>(n - 1);
        tr.times.push_back(t);
        tr.m1.push_back(m1(t));
        tr.sigma.push_back(sigma(t));
        tr.m2.push_back(sigma(t) * sigma(t) + m1(t) * m1(t));
        tr.edge_mass.push_back(0.0);
    }
    return tr;
}

} // namespace

TEST_CASE("populations") {
    State1D s{Lattice1D{16, 8}, std::vector<cplx>(16), 0.0};
    s.amplitudes[3] = cplx{0.0, 1.0};
    const auto p = populations(s);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(p[i] == (i == 3 ? 1.0 : 0.0));

    ModelParams q;
    q.omega_x = 0.3;
    q.omega_y = 0.6;
    const Lattice2D lat{8, 5, 4, 2, Boundary::hard_wall};
    State2D psi{lat, oracle::random_state(40, 17), 0.0};
    const auto a = populations(psi), b = populations(gauge_map(psi, 7.7, q, GaugeDirection::to_driven));
    CHECK(a.size() == 8);
    CHECK(std::accumulate(a.begin(), a.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-15);

    State1D chain{Lattice1D{8, 4}, oracle::random_state(8, 2), 0.0};
    const auto pc = populations(chain), pe = populations(embed_y_uniform(chain, 3));
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(pc[i] - pe[i]) < 1e-15);
}

TEST_CASE("moments") {
    std::vector<double> p(20, 0.0);
    p[17] = 1.0; // l = 7 with first site -10
    auto m = moments(p, -10);
    CHECK(m.m1 == 7.0);
    CHECK(m.m2 == 49.0);
    CHECK(m.sigma == 0.0);

    std::fill(p.begin(), p.end(), 0.0);
    p[9] = p[11] = 0.5;
    m = moments(p, -10);
    CHECK(m.m1 == 0.0);
    CHECK(m.m2 == 1.0);
    CHECK(m.sigma == 1.0);

    // Direct summation oracle for the default packet.
    ModelParams q;
    const Lattice1D lat = Lattice1D::centered(512);
    GaussianSpec spec;
    spec.width = WidthRule::explicit_value;
    spec.sigma0 = 1.26156;
    const auto pop = populations(coherent_gaussian(spec, lat, q));
    double s0 = 0, s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const double l = static_cast<double>(lat.site(i));
        s0 += pop[i];
        s1 += l * pop[i];
        s2 += l * l * pop[i];
    }
    m = moments(pop, lat);
    CHECK(m.m1 == doctest::Approx(s1 / s0).epsilon(1e-12));
    CHECK(m.sigma == doctest::Approx(std::sqrt(s2 / s0 - s1 * s1 / (s0 * s0))).epsilon(1e-12));
    // |b|^2 of exp(-l^2 / 2 sigma0^2) has width sigma0 / sqrt(2).
    CHECK(m.sigma * std::sqrt(2.0) == doctest::Approx(1.26156).epsilon(0.01));
}

TEST_CASE("moments are translation covariant") {
    std::vector<double> p = {0.1, 0.2, 0.05, 0.3, 0.15, 0.2};
    const auto a = moments(p, -2);
    for (std::ptrdiff_t k : {-1000, -3, 5, 123456}) {
        const auto b = moments(p, -2 + k);
        CHECK(b.m1 == doctest::Approx(a.m1 + static_cast<double>(k)).epsilon(1e-12));
        CHECK(b.sigma == doctest::Approx(a.sigma).epsilon(1e-9));
    }
}

TEST_CASE("negative variance is an inconsistency") {
    std::vector<double> p = {1.0, 0.5, -0.5};
    CHECK_THROWS_AS(moments(p, 0), NumericalInconsistency);
}

TEST_CASE("drift fit") {
    const auto tr = synthetic(20 * kTwoPi, 101, [](double t) { return 3.0 + 0.5 * t; }, [](double) { return 1.0; });
    auto f = fit_drift(tr);
    CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.rms_residual < 1e-10);
    CHECK(f.t_lo == doctest::Approx(0.2 * 20 * kTwoPi));
    CHECK(f.t_hi == doctest::Approx(20 * kTwoPi));

    const auto flat = synthetic(20 * kTwoPi, 101, [](double) { return -4.0; }, [](double) { return 1.0; });
    CHECK(std::abs(fit_drift(flat).slope) < 1e-14);

    const auto short_run = synthetic(5 * kTwoPi, 101, [](double t) { return t; }, [](double) { return 1.0; });
    CHECK_THROWS_AS(fit_drift(short_run), InsufficientData);
    const auto sparse = synthetic(20 * kTwoPi, 15, [](double t) { return t; }, [](double) { return 1.0; });
    CHECK_THROWS_AS(fit_drift(sparse), InsufficientData);
}

TEST_CASE("ballistic fit") {
    const auto lin = synthetic(50.0, 201, [](double) { return 0.0; }, [](double t) { return 2.0 + 0.3 * t; });
    auto f = fit_ballistic_rate(lin);
    CHECK(f.slope == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.rms_residual < 1e-10);
    CHECK(f.classification == GrowthClass::linear_growth);
    CHECK(f.t_lo == doctest::Approx(25.0));

    const auto osc = synthetic(50.0, 201, [](double) { return 0.0; }, [](double t) { return 5.0 + std::sin(t); });
    CHECK(fit_ballistic_rate(osc).classification == GrowthClass::bounded_oscillation);

    const auto few = synthetic(50.0, 12, [](double) { return 0.0; }, [](double t) { return t; });
    CHECK_THROWS_AS(fit_ballistic_rate(few), InsufficientData);
}

TEST_CASE("line fit") {
    const std::vector<double> t = {0, 1, 2, 3}, y = {1, 3, 5, 7};
    const auto f = fit_line(t, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.rms_residual < 1e-12);
    const std::vector<double> one = {1.0};
    CHECK_THROWS_AS(fit_line(one, one), InsufficientData);
}

TEST_CASE("rational approximation") {
    auto r = rational_approx(1.0 / 3.0, 100);
    REQUIRE(r.is_rational());
    CHECK(r.numerator() == 1);
    CHECK(r.denominator() == 3);
    CHECK(r.nu() == 3);

    r = rational_approx(18.0 / 19.0, 100);
    REQUIRE(r.is_rational());
    CHECK(r.numerator() == 18);
    CHECK(r.denominator() == 19);
    CHECK(r.nu() == 36);

    CHECK_FALSE(rational_approx((std::sqrt(5.0) - 1.0) / 4.0, 100).is_rational());
    CHECK_FALSE(rational_approx(0.30901699437494745, 100).is_rational());

    r = rational_approx(0.0, 100);
    CHECK(r.is_rational());
    CHECK(r.numerator() == 0);
    CHECK(r.nu() == 0);

    CHECK(rational_approx(3.0, 100).numerator() == 3);
    CHECK_FALSE(rational_approx(1.0 / 101.0, 100).is_rational());

    int failures = 0;
    for (std::int64_t q = 1; q <= 50; ++q)
        for (std::int64_t p = 0; p <= 50; ++p) {
            if (std::gcd(p, q) != 1)
                continue;
            const auto x = rational_approx(static_cast<double>(p) / static_cast<double>(q), 100);
            failures += !x.is_rational() || x.numerator() != p || x.denominator() != q;
        }
    CHECK(failures == 0);
}
