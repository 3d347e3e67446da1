#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "atomfield/errors.hpp"

namespace atomfield {

// Dormand-Prince 5(4) with PI step control on a fixed-size complex state.
// Integrates between consecutive sample times, clamping steps to land on them.
template <std::size_t N>
struct Dopri5 {
    using State = std::array<std::complex<double>, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    double rtol = 1e-10;
    double atol = 1e-12;
    std::size_t max_steps = 2000000;

    std::vector<State> solve(const Rhs& f, const State& y0,
                             const std::vector<double>& times) const {
        if (times.empty()) return {};
        std::vector<State> out;
        out.reserve(times.size());
        State y = y0;
        double t = times.front();
        out.push_back(y);
        double h = 0.0;
        std::size_t steps = 0;
        for (std::size_t m = 1; m < times.size(); ++m) {
            const double t_end = times[m];
            if (!(t_end > t)) throw ConfigError("ode: times must be increasing");
            if (h <= 0.0) h = (t_end - t) * 0.1;
            while (t < t_end) {
                if (++steps > max_steps) throw StiffnessError("ode: step budget exhausted");
                bool clipped = false;
                if (t + h >= t_end) {
                    h = t_end - t;
                    clipped = true;
                }
                State ynew, err;
                step(f, t, y, h, ynew, err);
                double norm = 0.0;
                for (std::size_t i = 0; i < N; ++i) {
                    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                    norm = std::max(norm, std::abs(err[i]) / sc);
                }
                if (norm <= 1.0) {
                    t = clipped ? t_end : t + h;
                    y = ynew;
                    const double grow = clipped ? 2.0 : 0.9 * std::pow(std::max(norm, 1e-10), -0.2);
                    h *= std::min(5.0, std::max(0.2, grow));
                } else {
                    h *= std::max(0.1, 0.9 * std::pow(norm, -0.2));
                    if (h < 1e-14 * std::max(1.0, std::abs(t)))
                        throw StiffnessError("ode: step size underflow at t=" + std::to_string(t));
                }
            }
            out.push_back(y);
        }
        return out;
    }

  private:
    static void step(const Rhs& f, double t, const State& y, double h, State& y5,
                     State& err) {
        constexpr double a21 = 1.0 / 5;
        constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                         a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                         a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                         b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                         e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        State k1, k2, k3, k4, k5, k6, k7, tmp;
        f(t, y, k1);
        axpy(tmp, y, h, {{a21, 0, 0, 0, 0, 0}}, {&k1});
        f(t + h / 5, tmp, k2);
        axpy(tmp, y, h, {{a31, a32, 0, 0, 0, 0}}, {&k1, &k2});
        f(t + 3 * h / 10, tmp, k3);
        axpy(tmp, y, h, {{a41, a42, a43, 0, 0, 0}}, {&k1, &k2, &k3});
        f(t + 4 * h / 5, tmp, k4);
        axpy(tmp, y, h, {{a51, a52, a53, a54, 0, 0}}, {&k1, &k2, &k3, &k4});
        f(t + 8 * h / 9, tmp, k5);
        axpy(tmp, y, h, {{a61, a62, a63, a64, a65, 0}}, {&k1, &k2, &k3, &k4, &k5});
        f(t + h, tmp, k6);
        axpy(tmp, y, h, {{b1, 0, b3, b4, b5, b6}}, {&k1, &k2, &k3, &k4, &k5, &k6});
        f(t + h, tmp, k7);
        y5 = tmp;
        for (std::size_t i = 0; i < N; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);
    }

    static void axpy(State& out, const State& y, double h,
                     const std::array<double, 6>& c,
                     std::initializer_list<const State*> ks) {
        out = y;
        std::size_t j = 0;
        for (const State* k : ks) {
            if (c[j] != 0.0)
                for (std::size_t i = 0; i < N; ++i) out[i] += h * c[j] * (*k)[i];
            ++j;
        }
    }
};

}  // namespace atomfield
