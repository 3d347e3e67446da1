#pragma once

#include <complex>
#include <vector>

#include "atomfield/laplace_inversion.hpp"
#include "atomfield/spectral_model.hpp"

namespace atomfield {

// Single-excitation-sector amplitudes on a uniform time grid.
// K is the excited-state amplitude in the (renormalized) interaction picture,
// M the field-sector partner. K[0] = 1, M[0] = 0.
struct AmplitudePair {
    std::vector<double> t;
    std::vector<cdouble> K;
    std::vector<cdouble> M;
};

std::vector<double> make_uniform_times(double t_max, int n_steps);

// Trapezoidal product-integration march of
//   K(t) = 1 - i int_0^t e^{i w0 s} M(s) ds,
//   M(t) = -i int_0^t e^{-i w0 s} F(t-s) K(s) ds.
// Requires uniform t_grid with omega_max * h < 0.5.
AmplitudePair solve_volterra_bare(const CouplingModel& model, const FrequencyGrid& grid,
                                  double omega0, const std::vector<double>& t_grid);

// Renormalized pair with the extra i(delta_omega - i gamma) feedback term.
AmplitudePair solve_volterra_renormalized(const CouplingModel& model,
                                          const FrequencyGrid& grid,
                                          const RenormConstants& constants,
                                          const std::vector<double>& t_grid);

// K(t) from numerical inversion of K(z) = 1/(z + F(z - i w0)).
std::vector<cdouble> survival_laplace_bare_series(const CouplingModel& model,
                                                  const FrequencyGrid& grid,
                                                  double omega0,
                                                  const LaplaceSolverConfig& cfg,
                                                  const std::vector<double>& times);
cdouble survival_laplace_bare(const CouplingModel& model, const FrequencyGrid& grid,
                              double omega0, const LaplaceSolverConfig& cfg, double t);

// Full amplitude e^{(-i w_A - gamma) t} K^r(t) with K^r from inversion of
// K^r(z) = 1/(z + F(z - i w_A - gamma) - i delta_omega - gamma).
std::vector<cdouble> survival_renormalized_series(const CouplingModel& model,
                                                  const FrequencyGrid& grid,
                                                  const RenormConstants& constants,
                                                  const LaplaceSolverConfig& cfg,
                                                  const std::vector<double>& times);
cdouble survival_renormalized(const CouplingModel& model, const FrequencyGrid& grid,
                              const RenormConstants& constants,
                              const LaplaceSolverConfig& cfg, double t);

// |<e|e^{-iHt}|e>| from each picture.
std::vector<cdouble> full_amplitude_bare(double omega0, const AmplitudePair& pair);
std::vector<cdouble> full_amplitude_renormalized(const RenormConstants& constants,
                                                 const AmplitudePair& pair);

}  // namespace atomfield
