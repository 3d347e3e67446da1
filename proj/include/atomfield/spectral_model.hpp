#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "atomfield/grid.hpp"

namespace atomfield {

using cdouble = std::complex<double>;

enum class CouplingFamily { Lorentzian, OhmicExpCutoff, FlatWindow, Tabulated };

// Sign convention for the decay-rate constant carried downstream.
//   HalfWidth: b + b* = 2*gamma, excited population decays as exp(-2*gamma*t).
//   Rescaled:  gamma -> gamma/2, b + b* = gamma, population decays as exp(-gamma*t).
enum class GammaConvention { HalfWidth, Rescaled };

// Coupling function f(omega) of the atom-field interaction. All frequency
// integrals over dk reduce to the isotropic 3D measure: this module owns the
// 4*pi*omega^2 weight and everything downstream reuses spectral_weight().
struct CouplingModel {
    CouplingFamily family = CouplingFamily::Lorentzian;
    double amplitude = 0.0;       // peak coupling strength, units of f
    double center = 0.0;          // carrier / resonance frequency
    double width_or_cutoff = 1.0; // HWHM for Lorentzian, cutoff scale otherwise
    std::vector<std::pair<double, cdouble>> table;  // Tabulated only

    CouplingModel() = default;
    CouplingModel(CouplingFamily fam, double amp, double ctr, double width,
                  std::vector<std::pair<double, cdouble>> tab = {});

    static CouplingModel lorentzian(double amplitude, double center, double width);
    static CouplingModel ohmic(double amplitude, double cutoff);
    static CouplingModel flat_window(double amplitude, double center, double width);
    static CouplingModel tabulated(std::vector<std::pair<double, cdouble>> tab);

    cdouble eval(double omega) const;      // f(omega); omega < 0 -> std::domain_error
    double abs2(double omega) const;       // |f(omega)|^2
    double spectral_weight(double omega) const;  // g(omega) = 4*pi*omega^2*|f|^2
    // Analytic extension of g used by the second-sheet Laplace continuation;
    // non-analytic families fall back to the real part of omega.
    cdouble spectral_weight_analytic(cdouble omega) const;

    double default_omega_max() const;  // center + 20*width (cutoff-scaled families)

    std::string to_json() const;
    static CouplingModel from_json(const std::string& text);
    std::uint64_t hash() const;  // FNV-1a of the canonical JSON form
};

// gamma / delta_omega / derived constants of the dissipative split.
// Constructor enforces b = i*delta_omega + gamma, Omega = omega_A - i*gamma,
// omega_A = omega0 + delta_omega exactly.
struct RenormConstants {
    double gamma = 0.0;
    double delta_omega = 0.0;
    double omega0 = 0.0;
    double omega_A = 0.0;
    cdouble b{0.0, 0.0};
    cdouble Omega{0.0, 0.0};
    GammaConvention convention = GammaConvention::HalfWidth;

    RenormConstants() = default;
    RenormConstants(double omega0_, double gamma_, double delta_omega_,
                    GammaConvention conv = GammaConvention::HalfWidth);

    // Effective (anticommutator, jump) rates of the GKSL generator under the
    // active convention: HalfWidth -> (gamma, 2*gamma), Rescaled -> (gamma/2, gamma).
    double rate_anticommutator() const;
    double rate_jump() const;
};

struct LaplaceValue {
    cdouble value{0.0, 0.0};
    bool continued = false;  // true when evaluated left of the Re(z) = gamma boundary
};

// F(t) = sum_j w_j g(omega_j) exp(-i omega_j t)
cdouble memory_kernel(const CouplingModel& model, const FrequencyGrid& grid, double t);

// F^r(t) = exp(i(omega_A - i gamma) t) F(t)
cdouble renorm_memory_kernel(const CouplingModel& model, const FrequencyGrid& grid,
                             const RenormConstants& constants, double t);

// F^r(z) = sum_j w_j g(omega_j) / (z + i(omega_j - omega_A) - gamma).
// Right of Re(z) = gamma this is the plain quadrature value; left of it the
// second-sheet residue 2*pi*g(omega_A + i(z - gamma)) is added and the result
// is flagged. Throws SingularityError when z collides with a grid pole.
LaplaceValue laplace_kernel(const CouplingModel& model, const FrequencyGrid& grid,
                            cdouble z, double omega_A, double gamma);

struct RenormOptions {
    bool fixed_point = false;  // iterate omega_A = omega0 + delta_omega(omega_A)
    double tol = 1e-10;
    int max_iter = 100;
};

// gamma = 4 pi^2 omega_A^2 |f(omega_A)|^2,
// delta_omega = PV int g(omega) / (omega_A - omega) d omega
// with the principal value done by symmetric subtraction around omega_A.
RenormConstants compute_renorm_constants(const CouplingModel& model,
                                         const FrequencyGrid& grid, double omega0,
                                         const RenormOptions& options = {},
                                         GammaConvention conv = GammaConvention::HalfWidth);

// Principal-value integral of g(omega)/(omega_A - omega) over [lo, hi] on a
// dedicated subdivision with n_nodes points per piece. Exposed for oracles.
double principal_value_integral(const CouplingModel& model, double omega_A,
                                double lo, double hi, int n_nodes);

std::string grid_to_json(const FrequencyGrid& grid);
FrequencyGrid grid_from_json(const std::string& text);

}  // namespace atomfield
