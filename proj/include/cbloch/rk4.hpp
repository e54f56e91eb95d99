#pragma once

#include "cbloch/lattice.hpp"

#include <span>
#include <vector>

namespace cbloch {

// Classical fourth-order Runge-Kutta step for y' = f(t, y) on complex
// vectors. Op must provide derivative(t, in, out). Work buffers are owned by
// the stepper so repeated steps do not allocate.
class Rk4Stepper {
public:
    explicit Rk4Stepper(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

    template <class Op>
    void step(const Op& op, double t, double dt, std::span<cplx> y) {
        step_impl(t, dt, y, 0, y.size(),
                  [&op](double s, std::span<const cplx> in, std::span<cplx> out, std::size_t, std::size_t) {
                      op.derivative(s, in, out);
                  });
    }

    // Step restricted to indices [begin, end). Op must provide the windowed
    // derivative(t, in, out, begin, end), which treats the window edges as
    // walls. When y vanishes outside [begin + 4, end - 4) this equals the
    // full step, since one RK4 step couples sites at most four apart.
    template <class Op>
    void step(const Op& op, double t, double dt, std::span<cplx> y, std::size_t begin, std::size_t end) {
        step_impl(t, dt, y, begin, end,
                  [&op](double s, std::span<const cplx> in, std::span<cplx> out, std::size_t b, std::size_t e) {
                      op.derivative(s, in, out, b, e);
                  });
    }

    static constexpr std::size_t kReach = 4;

private:
    template <class F>
    void step_impl(double t, double dt, std::span<cplx> y, std::size_t begin, std::size_t end, F&& f) {
        const double half = 0.5 * dt;

        f(t, y, k1_, begin, end);
        for (std::size_t i = begin; i < end; ++i)
            tmp_[i] = y[i] + half * k1_[i];
        f(t + half, tmp_, k2_, begin, end);
        for (std::size_t i = begin; i < end; ++i)
            tmp_[i] = y[i] + half * k2_[i];
        f(t + half, tmp_, k3_, begin, end);
        for (std::size_t i = begin; i < end; ++i)
            tmp_[i] = y[i] + dt * k3_[i];
        f(t + dt, tmp_, k4_, begin, end);

        const double sixth = dt / 6.0;
        for (std::size_t i = begin; i < end; ++i)
            y[i] += sixth * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
    }

    std::vector<cplx> k1_, k2_, k3_, k4_, tmp_;
};

} // namespace cbloch
