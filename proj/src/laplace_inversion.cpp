#include "atomfield/laplace_inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "atomfield/errors.hpp"

namespace atomfield {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<std::complex<double>> invert_bromwich(const LaplaceFn& F,
                                                  const std::vector<double>& times,
                                                  int n_terms, double shift) {
    if (n_terms < 16) throw ConfigError("invert_bromwich: need n_nodes >= 16");
    double t_max = 0.0;
    for (double t : times) {
        if (t < 0.0) throw ConfigError("invert_bromwich: negative time");
        t_max = std::max(t_max, t);
    }
    if (t_max == 0.0) t_max = 1.0;
    const double T = 1.1 * t_max;
    const double a = shift + std::log(1e12) / (2.0 * T);

    // Transform sampled once along the line; each t is then a Fourier sum.
    // Two-sided in k since f(t) is complex-valued.
    std::vector<std::complex<double>> pos(n_terms + 1), neg(n_terms + 1);
    for (int k = 0; k <= n_terms; ++k) {
        pos[k] = F(std::complex<double>(a, k * kPi / T));
        neg[k] = F(std::complex<double>(a, -k * kPi / T));
    }

    std::vector<std::complex<double>> out(times.size());
    for (std::size_t m = 0; m < times.size(); ++m) {
        const double t = times[m];
        std::complex<double> acc = pos[0];
        const std::complex<double> rot = std::polar(1.0, kPi * t / T);
        std::complex<double> phase = rot;
        for (int k = 1; k <= n_terms; ++k) {
            acc += pos[k] * phase + neg[k] * std::conj(phase);
            phase *= rot;
        }
        out[m] = std::exp(a * t) / (2.0 * T) * acc;
    }
    return out;
}

std::complex<double> invert_talbot(const LaplaceFn& F, double t, int n_nodes,
                                   double shift) {
    if (n_nodes < 16) throw ConfigError("invert_talbot: need n_nodes >= 16");
    if (t <= 0.0) throw ConfigError("invert_talbot: t must be positive");
    const int M = n_nodes;
    const double r = 2.0 * M / (5.0 * t);
    // Two-sided contour sum: f(t) = e^{shift t} (r/2M) sum_k e^{s_k t} F(shift+s_k)(1+i sigma_k)
    std::complex<double> acc = std::exp(r * t) * F(shift + r);  // k = 0, sigma = 0
    for (int k = 1; k < M; ++k) {
        const double theta = k * kPi / M;
        const double cot = std::cos(theta) / std::sin(theta);
        const std::complex<double> s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const std::complex<double> jac(1.0, sigma);
        acc += std::exp(s * t) * F(shift + s) * jac;
        acc += std::exp(std::conj(s) * t) * F(shift + std::conj(s)) * std::conj(jac);
    }
    return std::exp(shift * t) * (r / (2.0 * M)) * acc;
}

std::vector<std::complex<double>> invert_talbot_many(const LaplaceFn& F,
                                                     const std::vector<double>& times,
                                                     int n_nodes, double shift) {
    std::vector<std::complex<double>> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        out[i] = invert_talbot(F, times[i], n_nodes, shift);
    return out;
}

}  // namespace atomfield
