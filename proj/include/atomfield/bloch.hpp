#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "atomfield/propagator.hpp"
#include "atomfield/spectral_model.hpp"

namespace atomfield {

// 2x2 density matrix rho, row-major.
struct QubitDensity {
    Mat2 rho{};

    static QubitDensity ground();
    static QubitDensity excited();
    double trace() const { return (rho[0] + rho[3]).real(); }
    double hermiticity_defect() const;
    double min_eigenvalue() const;
    void validate(double herm_tol = 1e-12, double pos_tol = 1e-10,
                  double trace_tol = 1e-10) const;
};

// chi(t) = 1 - e^{-2 gamma t}
double chi_analytic(double t, double gamma);

struct ChiEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    cdouble first_moment{0.0, 0.0};
    double first_moment_std_error = 0.0;
    int n_samples = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo estimate of chi(t) = E_xi |h_xi(t)|^2 over the product Gaussian
// measure, h_xi(t) = int_0^t f*_xi(s) e^{-i wA s - gamma s} ds evaluated
// mode-by-mode. Deterministic for a fixed seed regardless of thread count.
ChiEstimate chi_montecarlo(const CouplingModel& model, const FrequencyGrid& grid,
                           const RenormConstants& constants, double t, int n_samples,
                           std::uint64_t seed, int threads = 1);

// Vacuum GKSL: d rho = -i [wA P1, rho] - g_a {P1, rho} + g_j sigma- rho sigma+,
// with (g_a, g_j) = (gamma, 2 gamma) HalfWidth or (gamma/2, gamma) Rescaled.
std::vector<QubitDensity> integrate_master_vacuum(const QubitDensity& rho0,
                                                  double omega_A, double gamma,
                                                  const std::vector<double>& t_grid,
                                                  GammaConvention conv,
                                                  double rtol = 1e-11);

// First-order-in-gamma driven map built from the time-ordered unitary U_alpha:
// rho(t) = U [ rho0 - g_a int {P~(s), rho0} ds + g_j int s~-(s) rho0 s~+(s) ds ] U^+.
QubitDensity driven_map_first_order(const CoherentProfile& alpha,
                                    const CouplingModel& model,
                                    const FrequencyGrid& grid,
                                    const RenormConstants& constants,
                                    const QubitDensity& rho0, double t,
                                    int n_quad = 200);

// Conjectured interaction-picture generator integrated to all orders:
// d rho~/dt = -g_a {P~1(t), rho~} + g_j s~-(t) rho~ s~+(t), mapped back with
// U_alpha. Equivalent Schrodinger form is the driven optical Bloch equation.
std::vector<QubitDensity> driven_lindblad_integrate(const CoherentProfile& alpha,
                                                    const CouplingModel& model,
                                                    const FrequencyGrid& grid,
                                                    const RenormConstants& constants,
                                                    const QubitDensity& rho0,
                                                    const std::vector<double>& t_grid,
                                                    double rtol = 1e-11);

struct SecondOrderReport {
    std::vector<double> gammas;
    std::vector<double> expansion_mismatch;  // direct vs generator expansion (quadrature level)
    std::vector<double> residual;            // direct second order vs integrated generator
    double exponent = 0.0;                   // fitted residual scaling, expected >= 3
    bool pass = false;
};

// Both second-order expansions by nested quadrature for each gamma in
// gamma_list, plus the all-orders generator solution; the residual against the
// integrated generator must shrink at least like gamma^2.5.
SecondOrderReport verify_second_order(const CoherentProfile& alpha,
                                      const CouplingModel& model,
                                      const FrequencyGrid& grid,
                                      const RenormConstants& constants_base,
                                      const QubitDensity& rho0, double t,
                                      const std::vector<double>& gamma_list,
                                      int n_quad = 128);

// max-norm defect of the ordered-vs-square identity
// 2 int_{s1<s2} P~(s1) rho P~(s2) = int int P~(s1) rho P~(s2); exact for
// drive-free evolution.
double symmetrization_identity_defect(const CoherentProfile& alpha,
                                      const CouplingModel& model,
                                      const FrequencyGrid& grid,
                                      const RenormConstants& constants,
                                      const QubitDensity& rho0, double t,
                                      int n_quad = 200);

}  // namespace atomfield
