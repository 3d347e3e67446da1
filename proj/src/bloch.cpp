#include "atomfield/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "atomfield/errors.hpp"
#include "atomfield/noise.hpp"
#include "atomfield/ode.hpp"

namespace atomfield {

namespace {

const cdouble kI(0.0, 1.0);

Mat2 mul(const Mat2& a, const Mat2& b) {
    return Mat2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}
Mat2 add(const Mat2& a, const Mat2& b) {
    return Mat2{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
Mat2 sub(const Mat2& a, const Mat2& b) {
    return Mat2{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
Mat2 scale(const Mat2& a, cdouble s) {
    return Mat2{a[0] * s, a[1] * s, a[2] * s, a[3] * s};
}
Mat2 dagger(const Mat2& a) {
    return Mat2{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}
Mat2 anticomm(const Mat2& a, const Mat2& b) { return add(mul(a, b), mul(b, a)); }
double max_abs(const Mat2& a) {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

constexpr Mat2 kIdentity{1.0, 0.0, 0.0, 1.0};
constexpr Mat2 kP1{0.0, 0.0, 0.0, 1.0};
constexpr Mat2 kSm{0.0, 1.0, 0.0, 0.0};  // sigma- = |0><1|
constexpr Mat2 kSp{0.0, 0.0, 1.0, 0.0};  // sigma+ = |1><0|

// Cumulative integral of node samples with fourth-order end handling.
std::vector<Mat2> cumulative(const std::vector<Mat2>& f, double h) {
    std::vector<Mat2> out(f.size(), Mat2{});
    if (f.size() < 2) return out;
    for (std::size_t i = 1; i < f.size(); ++i) {
        if (i == 1) {
            // quadratic through the first three nodes
            if (f.size() >= 3) {
                out[1] = add(out[0], scale(add(scale(f[0], 5.0), sub(scale(f[1], 8.0), f[2])),
                                           h / 12.0));
            } else {
                out[1] = scale(add(f[0], f[1]), 0.5 * h);
            }
        } else if (i % 2 == 0) {
            out[i] = add(out[i - 2],
                         scale(add(add(f[i - 2], scale(f[i - 1], 4.0)), f[i]), h / 3.0));
        } else {
            out[i] = add(out[i - 1],
                         scale(add(scale(f[i], 5.0), sub(scale(f[i - 1], 8.0), f[i - 2])),
                               h / 12.0));
        }
    }
    return out;
}

Mat2 simpson(const std::vector<Mat2>& f, double h) {
    return cumulative(f, h).back();
}

// Time-ordered unitary of H_alpha(t) = wA P1 + f_a(t) sigma+ + f_a*(t) sigma-
// sampled on uniform nodes.
std::vector<Mat2> unitary_on_nodes(const CoherentProfile& alpha,
                                   const CouplingModel& model, const FrequencyGrid& grid,
                                   double omega_A, const std::vector<double>& nodes,
                                   double rtol = 1e-12) {
    Dopri5<4> ode;
    ode.rtol = rtol;
    ode.atol = 1e-14;
    auto rhs = [&](double t, const Dopri5<4>::State& s, Dopri5<4>::State& ds) {
        const cdouble fa = coherent_drive(alpha, model, grid, t);
        // H U: H = [[0, fa*],[fa, wA]]
        ds[0] = -kI * (std::conj(fa) * s[2]);
        ds[1] = -kI * (std::conj(fa) * s[3]);
        ds[2] = -kI * (fa * s[0] + omega_A * s[2]);
        ds[3] = -kI * (fa * s[1] + omega_A * s[3]);
    };
    Dopri5<4>::State y0{1.0, 0.0, 0.0, 1.0};
    auto states = ode.solve(rhs, y0, nodes);
    std::vector<Mat2> out(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k)
        out[k] = Mat2{states[k][0], states[k][1], states[k][2], states[k][3]};
    return out;
}

struct PicturedOps {
    std::vector<double> nodes;
    double h = 0.0;
    std::vector<Mat2> U, Ptil, Smtil, Sptil;
};

PicturedOps cache_interaction_ops(const CoherentProfile& alpha, const CouplingModel& model,
                                  const FrequencyGrid& grid, double omega_A, double t,
                                  int n_quad) {
    if (n_quad < 8 || n_quad % 2 != 0)
        throw ConfigError("bloch: quadrature node count must be even and >= 8");
    PicturedOps ops;
    ops.h = t / n_quad;
    ops.nodes.resize(static_cast<std::size_t>(n_quad) + 1);
    for (int i = 0; i <= n_quad; ++i) ops.nodes[static_cast<std::size_t>(i)] = t * i / n_quad;
    ops.U = unitary_on_nodes(alpha, model, grid, omega_A, ops.nodes);
    ops.Ptil.resize(ops.U.size());
    ops.Smtil.resize(ops.U.size());
    ops.Sptil.resize(ops.U.size());
    for (std::size_t k = 0; k < ops.U.size(); ++k) {
        const Mat2 ud = dagger(ops.U[k]);
        ops.Ptil[k] = mul(ud, mul(kP1, ops.U[k]));
        ops.Smtil[k] = mul(ud, mul(kSm, ops.U[k]));
        ops.Sptil[k] = dagger(ops.Smtil[k]);
    }
    return ops;
}

}  // namespace

QubitDensity QubitDensity::ground() {
    QubitDensity d;
    d.rho = Mat2{1.0, 0.0, 0.0, 0.0};
    return d;
}

QubitDensity QubitDensity::excited() {
    QubitDensity d;
    d.rho = Mat2{0.0, 0.0, 0.0, 1.0};
    return d;
}

double QubitDensity::hermiticity_defect() const {
    return std::max(std::abs(rho[1] - std::conj(rho[2])),
                    std::max(std::abs(rho[0].imag()), std::abs(rho[3].imag())));
}

double QubitDensity::min_eigenvalue() const {
    const double a = rho[0].real(), d = rho[3].real();
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho[1]));
    return mid - rad;
}

void QubitDensity::validate(double herm_tol, double pos_tol, double trace_tol) const {
    if (hermiticity_defect() > herm_tol)
        throw VerificationError("density: not Hermitian within tolerance");
    if (std::abs(trace() - 1.0) > trace_tol)
        throw VerificationError("density: trace differs from 1 by " +
                                std::to_string(std::abs(trace() - 1.0)));
    if (min_eigenvalue() < -pos_tol)
        throw VerificationError("density: negative eigenvalue beyond tolerance");
}

double chi_analytic(double t, double gamma) {
    if (t < 0.0) throw std::domain_error("chi_analytic: t must be >= 0");
    if (gamma < 0.0) throw std::domain_error("chi_analytic: gamma must be >= 0");
    return 1.0 - std::exp(-2.0 * gamma * t);
}

namespace {

// Deterministic pairwise reduction.
template <typename T>
T tree_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

}  // namespace

ChiEstimate chi_montecarlo(const CouplingModel& model, const FrequencyGrid& grid,
                           const RenormConstants& constants, double t, int n_samples,
                           std::uint64_t seed, int threads) {
    if (n_samples < 2) throw ConfigError("chi_montecarlo: need at least 2 samples");
    const std::size_t m = grid.size();
    // per-mode coefficient sqrt(w 4 pi w^2) f* Phi(t)
    std::vector<cdouble> q(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double w = grid.nodes[j];
        const double W = grid.weights[j] * 4.0 * std::numbers::pi * w * w;
        const cdouble p(-constants.gamma, w - constants.omega_A);
        const cdouble phi = t == 0.0 ? cdouble(0.0, 0.0) : (std::exp(p * t) - 1.0) / p;
        q[j] = std::sqrt(W) * std::conj(model.eval(w)) * phi;
    }

    CounterRng rng{seed};
    std::vector<cdouble> h_vals(static_cast<std::size_t>(n_samples));
    auto worker = [&](int s_lo, int s_hi) {
        for (int s = s_lo; s < s_hi; ++s) {
            cdouble h(0.0, 0.0);
            for (std::size_t j = 0; j < m; ++j)
                h += q[j] * std::conj(rng.complex_normal(static_cast<std::uint64_t>(s), j));
            h_vals[static_cast<std::size_t>(s)] = h;
        }
    };
    const int nt = std::max(1, threads);
    if (nt == 1) {
        worker(0, n_samples);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n_samples + nt - 1) / nt;
        for (int k = 0; k < nt; ++k) {
            const int lo = k * chunk;
            const int hi = std::min(n_samples, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<double> x(static_cast<std::size_t>(n_samples));
    for (int s = 0; s < n_samples; ++s) x[static_cast<std::size_t>(s)] = std::norm(h_vals[static_cast<std::size_t>(s)]);
    const double n = static_cast<double>(n_samples);
    const double mean = tree_sum(x, 0, x.size()) / n;
    std::vector<double> dev2(x.size());
    for (std::size_t s = 0; s < x.size(); ++s) dev2[s] = (x[s] - mean) * (x[s] - mean);
    const double var = tree_sum(dev2, 0, dev2.size()) / (n - 1.0);

    const cdouble hmean = tree_sum(h_vals, 0, h_vals.size()) / n;
    std::vector<double> hdev2(h_vals.size());
    for (std::size_t s = 0; s < h_vals.size(); ++s) hdev2[s] = std::norm(h_vals[s] - hmean);
    const double hvar = tree_sum(hdev2, 0, hdev2.size()) / (n - 1.0);

    ChiEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(var / n);
    est.first_moment = hmean;
    est.first_moment_std_error = std::sqrt(hvar / n);
    est.n_samples = n_samples;
    est.seed = seed;
    return est;
}

std::vector<QubitDensity> integrate_master_vacuum(const QubitDensity& rho0,
                                                  double omega_A, double gamma,
                                                  const std::vector<double>& t_grid,
                                                  GammaConvention conv, double rtol) {
    rho0.validate();
    const double ga = conv == GammaConvention::HalfWidth ? gamma : 0.5 * gamma;
    const double gj = 2.0 * ga;
    Dopri5<4> ode;
    ode.rtol = rtol;
    ode.atol = 1e-14;
    auto rhs = [&](double, const Dopri5<4>::State& s, Dopri5<4>::State& ds) {
        // s = [r00, r01, r10, r11]
        ds[0] = gj * s[3];
        ds[1] = (kI * omega_A - ga) * s[1];
        ds[2] = (-kI * omega_A - ga) * s[2];
        ds[3] = -2.0 * ga * s[3];
    };
    Dopri5<4>::State y0{rho0.rho[0], rho0.rho[1], rho0.rho[2], rho0.rho[3]};
    auto states = ode.solve(rhs, y0, t_grid);
    std::vector<QubitDensity> out(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        out[k].rho = Mat2{states[k][0], states[k][1], states[k][2], states[k][3]};
        out[k].validate(1e-9, 1e-9);
    }
    return out;
}

QubitDensity driven_map_first_order(const CoherentProfile& alpha,
                                    const CouplingModel& model, const FrequencyGrid& grid,
                                    const RenormConstants& constants,
                                    const QubitDensity& rho0, double t, int n_quad) {
    rho0.validate();
    const auto ops = cache_interaction_ops(alpha, model, grid, constants.omega_A, t, n_quad);
    const double ga = constants.rate_anticommutator();
    const double gj = constants.rate_jump();

    std::vector<Mat2> f_anti(ops.nodes.size()), f_jump(ops.nodes.size());
    for (std::size_t k = 0; k < ops.nodes.size(); ++k) {
        f_anti[k] = anticomm(ops.Ptil[k], rho0.rho);
        f_jump[k] = mul(ops.Smtil[k], mul(rho0.rho, ops.Sptil[k]));
    }
    Mat2 bracket = rho0.rho;
    bracket = sub(bracket, scale(simpson(f_anti, ops.h), ga));
    bracket = add(bracket, scale(simpson(f_jump, ops.h), gj));

    const Mat2& Ut = ops.U.back();
    QubitDensity out;
    out.rho = mul(Ut, mul(bracket, dagger(Ut)));
    if (QubitDensity{out.rho}.hermiticity_defect() > 1e-8)
        throw VerificationError("driven_map_first_order: Hermiticity violated beyond 1e-8");
    return out;
}

std::vector<QubitDensity> driven_lindblad_integrate(const CoherentProfile& alpha,
                                                    const CouplingModel& model,
                                                    const FrequencyGrid& grid,
                                                    const RenormConstants& constants,
                                                    const QubitDensity& rho0,
                                                    const std::vector<double>& t_grid,
                                                    double rtol) {
    rho0.validate();
    const double ga = constants.rate_anticommutator();
    const double gj = constants.rate_jump();
    const double omega_A = constants.omega_A;

    Dopri5<8> ode;
    ode.rtol = rtol;
    ode.atol = 1e-14;
    auto rhs = [&](double t, const Dopri5<8>::State& s, Dopri5<8>::State& ds) {
        const cdouble fa = coherent_drive(alpha, model, grid, t);
        const Mat2 U{s[0], s[1], s[2], s[3]};
        const Mat2 rho{s[4], s[5], s[6], s[7]};
        // dU = -i H_alpha U
        ds[0] = -kI * (std::conj(fa) * s[2]);
        ds[1] = -kI * (std::conj(fa) * s[3]);
        ds[2] = -kI * (fa * s[0] + omega_A * s[2]);
        ds[3] = -kI * (fa * s[1] + omega_A * s[3]);
        const Mat2 ud = dagger(U);
        const Mat2 ptil = mul(ud, mul(kP1, U));
        const Mat2 smtil = mul(ud, mul(kSm, U));
        const Mat2 drho = add(scale(anticomm(ptil, rho), -ga),
                              scale(mul(smtil, mul(rho, dagger(smtil))), gj));
        ds[4] = drho[0];
        ds[5] = drho[1];
        ds[6] = drho[2];
        ds[7] = drho[3];
    };
    Dopri5<8>::State y0{1.0, 0.0, 0.0, 1.0, rho0.rho[0], rho0.rho[1], rho0.rho[2],
                        rho0.rho[3]};
    auto states = ode.solve(rhs, y0, t_grid);
    std::vector<QubitDensity> out(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const Mat2 U{states[k][0], states[k][1], states[k][2], states[k][3]};
        const Mat2 rho{states[k][4], states[k][5], states[k][6], states[k][7]};
        out[k].rho = mul(U, mul(rho, dagger(U)));
        out[k].validate(1e-8, 1e-8, 1e-6);
    }
    return out;
}

namespace {

// Direct second-order expansion of the Gaussian-averaged map (interaction
// picture, drive-exact, gamma perturbative):
//   rho + g_a^2 T3 + T5 - g_a T1 + g_j T2 - g_a g_j T4 + g_j^2 T6, see below.
Mat2 direct_second_order(const PicturedOps& ops, const Mat2& rho, double ga, double gj) {
    const std::size_t n = ops.nodes.size();
    std::vector<Mat2> f1(n), f2(n);
    // first order
    for (std::size_t k = 0; k < n; ++k) {
        f1[k] = anticomm(ops.Ptil[k], rho);
        f2[k] = mul(ops.Smtil[k], mul(rho, ops.Sptil[k]));
    }
    Mat2 bracket = rho;
    bracket = sub(bracket, scale(simpson(f1, ops.h), ga));
    bracket = add(bracket, scale(simpson(f2, ops.h), gj));

    // T3: full square P~(s1) rho P~(s2) = X rho X, X = int P~
    const Mat2 X = simpson(ops.Ptil, ops.h);
    bracket = add(bracket, scale(mul(X, mul(rho, X)), ga * ga));

    // T5: ordered, rho P~(s') P~(s) + P~(s) P~(s') rho over s' < s
    const auto cumP = cumulative(ops.Ptil, ops.h);
    std::vector<Mat2> t5(n);
    for (std::size_t k = 0; k < n; ++k)
        t5[k] = add(mul(rho, mul(cumP[k], ops.Ptil[k])), mul(ops.Ptil[k], mul(cumP[k], rho)));
    bracket = add(bracket, scale(simpson(t5, ops.h), ga * ga));

    // T4: cross terms, both orderings collapsed onto s' < s
    const auto cumJ = cumulative(f2, ops.h);  // int s~- rho s~+
    std::vector<Mat2> t4(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Mat2 a = anticomm(ops.Ptil[k], cumJ[k]);
        const Mat2 b = mul(ops.Smtil[k], mul(anticomm(cumP[k], rho), ops.Sptil[k]));
        t4[k] = add(a, b);
    }
    bracket = sub(bracket, scale(simpson(t4, ops.h), ga * gj));

    // T6: s~-(s) [ int_0^s s~-(s') rho s~+(s') ds' ] s~+(s)
    std::vector<Mat2> t6(n);
    for (std::size_t k = 0; k < n; ++k)
        t6[k] = mul(ops.Smtil[k], mul(cumJ[k], ops.Sptil[k]));
    bracket = add(bracket, scale(simpson(t6, ops.h), gj * gj));

    const Mat2& Ut = ops.U.back();
    return mul(Ut, mul(bracket, dagger(Ut)));
}

// Second-order Dyson expansion of the conjectured generator
// L(s)[X] = -g_a {P~(s), X} + g_j s~-(s) X s~+(s).
Mat2 generator_second_order(const PicturedOps& ops, const Mat2& rho, double ga, double gj) {
    const std::size_t n = ops.nodes.size();
    auto L = [&](std::size_t k, const Mat2& x) {
        return add(scale(anticomm(ops.Ptil[k], x), -ga),
                   scale(mul(ops.Smtil[k], mul(x, ops.Sptil[k])), gj));
    };
    std::vector<Mat2> l1(n);
    for (std::size_t k = 0; k < n; ++k) l1[k] = L(k, rho);
    const auto cumL = cumulative(l1, ops.h);
    std::vector<Mat2> l2(n);
    for (std::size_t k = 0; k < n; ++k) l2[k] = L(k, cumL[k]);

    Mat2 bracket = add(rho, simpson(l1, ops.h));
    bracket = add(bracket, simpson(l2, ops.h));
    const Mat2& Ut = ops.U.back();
    return mul(Ut, mul(bracket, dagger(Ut)));
}

}  // namespace

SecondOrderReport verify_second_order(const CoherentProfile& alpha,
                                      const CouplingModel& model,
                                      const FrequencyGrid& grid,
                                      const RenormConstants& constants_base,
                                      const QubitDensity& rho0, double t,
                                      const std::vector<double>& gamma_list,
                                      int n_quad) {
    if (gamma_list.size() < 3)
        throw ConfigError("verify_second_order: need at least 3 gamma values");
    for (std::size_t i = 1; i < gamma_list.size(); ++i)
        if (!(gamma_list[i] < gamma_list[i - 1]))
            throw ConfigError("verify_second_order: gamma values must decrease");
    rho0.validate();

    const auto ops =
        cache_interaction_ops(alpha, model, grid, constants_base.omega_A, t, n_quad);

    SecondOrderReport rep;
    rep.gammas = gamma_list;
    for (double gamma : gamma_list) {
        RenormConstants c(constants_base.omega0, gamma, constants_base.delta_omega,
                          constants_base.convention);
        const double ga = c.rate_anticommutator();
        const double gj = c.rate_jump();
        const Mat2 direct = direct_second_order(ops, rho0.rho, ga, gj);
        const Mat2 gen = generator_second_order(ops, rho0.rho, ga, gj);
        auto sol = driven_lindblad_integrate(alpha, model, grid, c, rho0, {0.0, t});
        rep.expansion_mismatch.push_back(max_abs(sub(direct, gen)));
        rep.residual.push_back(max_abs(sub(direct, sol.back().rho)));
    }
    // least-squares slope of log residual vs log gamma
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(gamma_list.size());
    for (std::size_t i = 0; i < gamma_list.size(); ++i) {
        const double x = std::log(gamma_list[i]);
        const double y = std::log(std::max(rep.residual[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    rep.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.pass = rep.exponent >= 2.5;
    return rep;
}

double symmetrization_identity_defect(const CoherentProfile& alpha,
                                      const CouplingModel& model,
                                      const FrequencyGrid& grid,
                                      const RenormConstants& constants,
                                      const QubitDensity& rho0, double t, int n_quad) {
    const auto ops = cache_interaction_ops(alpha, model, grid, constants.omega_A, t, n_quad);
    const std::size_t n = ops.nodes.size();
    // ordered: int_{s1<s2} P~(s1) rho P~(s2)
    const auto cumP = cumulative(ops.Ptil, ops.h);
    std::vector<Mat2> f(n);
    for (std::size_t k = 0; k < n; ++k)
        f[k] = mul(cumP[k], mul(rho0.rho, ops.Ptil[k]));
    const Mat2 ordered = simpson(f, ops.h);
    // square: X rho X
    const Mat2 X = simpson(ops.Ptil, ops.h);
    const Mat2 square = mul(X, mul(rho0.rho, X));
    return max_abs(sub(scale(ordered, 2.0), square));
}

}  // namespace atomfield
