#include "atomfield/friedrichs_lee.hpp"

#include <cmath>

#include "atomfield/errors.hpp"

namespace atomfield {

namespace {

double checked_step(const FrequencyGrid& grid, const std::vector<double>& t_grid) {
    if (t_grid.size() < 2) throw ConfigError("volterra: need at least two time points");
    if (t_grid.front() != 0.0) throw ConfigError("volterra: time grid must start at 0");
    const double h = t_grid[1] - t_grid[0];
    if (!(h > 0.0)) throw ConfigError("volterra: time grid must be increasing");
    for (std::size_t j = 1; j < t_grid.size(); ++j) {
        if (std::abs(t_grid[j] - t_grid[j - 1] - h) > 1e-9 * h)
            throw ConfigError("volterra: time grid must be uniform");
    }
    if (!(grid.omega_max() * h < 0.5))
        throw ConfigError("volterra: step too large, need omega_max*h < 0.5");
    return h;
}

// F(k h) for k = 0..n via per-node phase rotation.
std::vector<cdouble> kernel_on_lags(const CouplingModel& model, const FrequencyGrid& grid,
                                    double h, std::size_t n) {
    const std::size_t m = grid.size();
    std::vector<double> gw(m);
    std::vector<cdouble> phase(m), step(m);
    for (std::size_t j = 0; j < m; ++j) {
        gw[j] = grid.weights[j] * model.spectral_weight(grid.nodes[j]);
        phase[j] = cdouble(1.0, 0.0);
        step[j] = std::polar(1.0, -grid.nodes[j] * h);
    }
    std::vector<cdouble> F(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        cdouble acc(0.0, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            acc += gw[j] * phase[j];
            phase[j] *= step[j];
        }
        F[k] = acc;
    }
    return F;
}

// (e^{pt} - 1 - pt)/p^2, stable near p = 0.
cdouble psi2(cdouble p, double t) {
    const cdouble pt = p * t;
    if (std::abs(pt) < 1e-3) {
        cdouble acc(0.5, 0.0);
        cdouble fac(1.0, 0.0);
        double kfact = 2.0;
        for (int k = 1; k <= 8; ++k) {
            fac *= pt;
            kfact *= (k + 2);
            acc += fac / kfact;
        }
        return t * t * acc;
    }
    return (std::exp(pt) - 1.0 - pt) / (p * p);
}

// Gregory end patches turn a plain node sum into a fourth-order rule:
// int ~ h [ sum_j f_j - 5/8 (f_0 + f_k) + 1/6 (f_1 + f_{k-1}) - 1/24 (f_2 + f_{k-2}) ].
constexpr double kG0 = -5.0 / 8.0;
constexpr double kG1 = 1.0 / 6.0;
constexpr double kG2 = -1.0 / 24.0;
constexpr std::size_t kStartup = 8;  // coarse nodes bootstrapped by fine sub-stepping
constexpr int kSubdiv = 16;

}  // namespace

std::vector<double> make_uniform_times(double t_max, int n_steps) {
    if (n_steps < 1 || !(t_max > 0.0))
        throw ConfigError("make_uniform_times: bad t_max or n_steps");
    std::vector<double> t(n_steps + 1);
    const double h = t_max / n_steps;
    for (int j = 0; j <= n_steps; ++j) t[j] = j * h;
    return t;
}

namespace {

// Shared implementation. Phase factors:
//   bare:   a(s) = e^{i w0 s},       c(s) = e^{-i w0 s},        b_fb = 0
//   renorm: a(s) = e^{(i wA + g) s}, c(s) = e^{-(i wA + g) s},  b_fb = b
AmplitudePair march_pair(const CouplingModel& model, const FrequencyGrid& grid,
                         const std::vector<double>& t_grid, cdouble phase_rate,
                         cdouble b_fb) {
    const double h = checked_step(grid, t_grid);
    const std::size_t n = t_grid.size() - 1;
    const auto F = kernel_on_lags(model, grid, h, n);
    const cdouble I(0.0, 1.0);

    std::vector<cdouble> A(n + 1), C(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        A[j] = std::exp(phase_rate * t_grid[j]);
        C[j] = 1.0 / A[j];
    }

    std::vector<cdouble> K(n + 1), M(n + 1);
    K[0] = 1.0;
    M[0] = 0.0;

    // Fine-grid trapezoid bootstrap over the first few coarse nodes.
    const std::size_t n0 = std::min(kStartup, n);
    {
        const std::size_t ns = n0 * kSubdiv;
        const double hs = h / kSubdiv;
        const auto Fs = kernel_on_lags(model, grid, hs, ns);
        std::vector<cdouble> Ks(ns + 1), Ms(ns + 1), As(ns + 1), Cs(ns + 1);
        for (std::size_t j = 0; j <= ns; ++j) {
            As[j] = std::exp(phase_rate * (hs * j));
            Cs[j] = 1.0 / As[j];
        }
        Ks[0] = 1.0;
        Ms[0] = 0.0;
        cdouble sum_m(0.0, 0.0), sum_k(0.0, 0.0);  // trapezoid partials excluding node k
        for (std::size_t k = 1; k <= ns; ++k) {
            if (k >= 2) {
                sum_m += hs * As[k - 1] * Ms[k - 1];
                sum_k += hs * Ks[k - 1];
            } else {
                sum_m += 0.5 * hs * As[0] * Ms[0];
                sum_k += 0.5 * hs * Ks[0];
            }
            cdouble sf = 0.5 * hs * Fs[k] * Cs[0] * Ks[0];
            for (std::size_t j = 1; j < k; ++j) sf += hs * Fs[k - j] * Cs[j] * Ks[j];
            const cdouble c0 = 0.5 * hs;
            const cdouble den = 1.0 - b_fb * c0 + c0 * c0 * Fs[0];
            Ks[k] = (1.0 - I * sum_m + b_fb * sum_k - c0 * As[k] * sf) / den;
            Ms[k] = -I * (sf + c0 * Fs[0] * Cs[k] * Ks[k]);
        }
        for (std::size_t j = 1; j <= n0; ++j) {
            K[j] = Ks[j * kSubdiv];
            M[j] = Ms[j * kSubdiv];
        }
    }

    if (n <= n0) return AmplitudePair{t_grid, std::move(K), std::move(M)};

    // Gregory fourth-order continuation. Prefix sums carry the interior weights;
    // end patches are applied per step.
    cdouble pm(0.0, 0.0), pk(0.0, 0.0);  // sum_{j=0..k-1} of A_j M_j and K_j
    for (std::size_t j = 0; j < n0; ++j) {
        pm += A[j] * M[j];
        pk += K[j];
    }
    for (std::size_t k = n0; k <= n; ++k) {
        if (k > n0) {
            pm += A[k - 1] * M[k - 1];
            pk += K[k - 1];
        }
        // integral of A*M over [0, t_k], unknown M_k has end weight (1 + kG0)
        const double wEnd = 1.0 + kG0;  // 3/8
        cdouble sm = pm + kG0 * A[0] * M[0] + kG1 * (A[1] * M[1] + A[k - 1] * M[k - 1]) +
                     kG2 * (A[2] * M[2] + A[k - 2] * M[k - 2]);
        cdouble sk = pk + kG0 * K[0] + kG1 * (K[1] + K[k - 1]) + kG2 * (K[2] + K[k - 2]);
        // convolution sum_{j=0..k-1} F_{k-j} C_j K_j with Gregory weights in j
        cdouble sf(0.0, 0.0);
        for (std::size_t j = 0; j < k; ++j) sf += F[k - j] * C[j] * K[j];
        sf += kG0 * F[k] * C[0] * K[0] + kG1 * (F[k - 1] * C[1] * K[1] + F[1] * C[k - 1] * K[k - 1]) +
              kG2 * (F[k - 2] * C[2] * K[2] + F[2] * C[k - 2] * K[k - 2]);
        const cdouble c0 = wEnd * h;
        const cdouble den = 1.0 - b_fb * c0 + c0 * c0 * F[0];
        K[k] = (1.0 - I * h * sm + b_fb * h * sk - c0 * h * A[k] * sf) / den;
        M[k] = -I * (h * sf + c0 * F[0] * C[k] * K[k]);
    }
    return AmplitudePair{t_grid, std::move(K), std::move(M)};
}

}  // namespace

AmplitudePair solve_volterra_bare(const CouplingModel& model, const FrequencyGrid& grid,
                                  double omega0, const std::vector<double>& t_grid) {
    return march_pair(model, grid, t_grid, cdouble(0.0, omega0), cdouble(0.0, 0.0));
}

AmplitudePair solve_volterra_renormalized(const CouplingModel& model,
                                          const FrequencyGrid& grid,
                                          const RenormConstants& constants,
                                          const std::vector<double>& t_grid) {
    return march_pair(model, grid, t_grid,
                      cdouble(constants.gamma, constants.omega_A), constants.b);
}

std::vector<cdouble> survival_laplace_bare_series(const CouplingModel& model,
                                                  const FrequencyGrid& grid,
                                                  double omega0,
                                                  const LaplaceSolverConfig& cfg,
                                                  const std::vector<double>& times) {
    // K(z) = 1/(z + S(z)), S = F(z - i w0). Invert G = K - 1/z + S/z^2
    // numerically; 1/z and S/z^2 have closed-form inverses.
    const std::size_t m = grid.size();
    std::vector<cdouble> poles(m);
    std::vector<double> res(m);
    for (std::size_t j = 0; j < m; ++j) {
        poles[j] = cdouble(0.0, omega0 - grid.nodes[j]);
        res[j] = grid.weights[j] * model.spectral_weight(grid.nodes[j]);
    }
    auto S = [&](cdouble z) {
        cdouble acc(0.0, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const cdouble den = z - poles[j];
            if (std::abs(den) < 1e-12)
                throw SingularityError("survival_laplace: contour hit resolvent pole");
            acc += res[j] / den;
        }
        return acc;
    };
    auto G = [&](cdouble z) {
        const cdouble s = S(z);
        return 1.0 / (z + s) - 1.0 / z + s / (z * z);
    };
    const double shift = std::max(cfg.shift, 0.0);
    std::vector<cdouble> tail =
        (cfg.method == InversionMethod::BromwichTrapezoid)
            ? invert_bromwich(G, times, cfg.n_nodes, shift)
            : invert_talbot_many(G, times, cfg.n_nodes, shift);
    std::vector<cdouble> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        cdouble analytic(1.0, 0.0);
        for (std::size_t j = 0; j < m; ++j)
            analytic -= res[j] * psi2(poles[j], times[i]);
        out[i] = analytic + tail[i];
    }
    return out;
}

cdouble survival_laplace_bare(const CouplingModel& model, const FrequencyGrid& grid,
                              double omega0, const LaplaceSolverConfig& cfg, double t) {
    if (!(t > 0.0)) throw ConfigError("survival_laplace_bare: t must be positive");
    return survival_laplace_bare_series(model, grid, omega0, cfg, {t}).front();
}

std::vector<cdouble> survival_renormalized_series(const CouplingModel& model,
                                                  const FrequencyGrid& grid,
                                                  const RenormConstants& constants,
                                                  const LaplaceSolverConfig& cfg,
                                                  const std::vector<double>& times) {
    // K^r(z) = 1/(z + S(z) - b), S = F(z - i w_A - gamma); poles of K^r sit on
    // Re z = gamma, so the contour must stay right of gamma.
    const std::size_t m = grid.size();
    std::vector<cdouble> poles(m);
    std::vector<double> res(m);
    for (std::size_t j = 0; j < m; ++j) {
        poles[j] = cdouble(constants.gamma, constants.omega_A - grid.nodes[j]);
        res[j] = grid.weights[j] * model.spectral_weight(grid.nodes[j]);
    }
    const cdouble b = constants.b;
    auto S = [&](cdouble z) {
        cdouble acc(0.0, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const cdouble den = z - poles[j];
            if (std::abs(den) < 1e-12)
                throw SingularityError("survival_renormalized: contour hit resolvent pole");
            acc += res[j] / den;
        }
        return acc;
    };
    auto G = [&](cdouble z) {
        const cdouble s = S(z);
        return 1.0 / (z + s - b) - 1.0 / z + (s - b) / (z * z);
    };
    const double shift = std::max(cfg.shift, constants.gamma);
    std::vector<cdouble> tail =
        (cfg.method == InversionMethod::BromwichTrapezoid)
            ? invert_bromwich(G, times, cfg.n_nodes, shift)
            : invert_talbot_many(G, times, cfg.n_nodes, shift);
    std::vector<cdouble> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        cdouble kr = 1.0 + b * t;
        for (std::size_t j = 0; j < m; ++j) kr -= res[j] * psi2(poles[j], t);
        kr += tail[i];
        const cdouble amp = std::exp(cdouble(-constants.gamma * t, -constants.omega_A * t));
        out[i] = amp * kr;
    }
    return out;
}

cdouble survival_renormalized(const CouplingModel& model, const FrequencyGrid& grid,
                              const RenormConstants& constants,
                              const LaplaceSolverConfig& cfg, double t) {
    if (!(t > 0.0)) throw ConfigError("survival_renormalized: t must be positive");
    return survival_renormalized_series(model, grid, constants, cfg, {t}).front();
}

std::vector<cdouble> full_amplitude_bare(double omega0, const AmplitudePair& pair) {
    std::vector<cdouble> out(pair.K.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = std::polar(1.0, -omega0 * pair.t[j]) * pair.K[j];
    return out;
}

std::vector<cdouble> full_amplitude_renormalized(const RenormConstants& constants,
                                                 const AmplitudePair& pair) {
    std::vector<cdouble> out(pair.K.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double t = pair.t[j];
        out[j] = std::exp(cdouble(-constants.gamma * t, -constants.omega_A * t)) * pair.K[j];
    }
    return out;
}

}  // namespace atomfield
