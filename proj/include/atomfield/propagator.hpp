#pragma once

#include <array>
#include <complex>
#include <vector>

#include "atomfield/spectral_model.hpp"

namespace atomfield {

using Mat2 = std::array<cdouble, 4>;  // row-major 2x2, index [i*2+j], i,j in {0,1}

// Coherent-state mode amplitudes alpha(omega_j) sampled on a FrequencyGrid.
struct CoherentProfile {
    std::vector<cdouble> alpha;

    static CoherentProfile zero(std::size_t n) { return {std::vector<cdouble>(n)}; }
    // Linear interpolation of tabulated (omega, alpha) points onto the grid.
    static CoherentProfile from_table(const FrequencyGrid& grid,
                                      const std::vector<std::pair<double, cdouble>>& tab);
    double norm2(const FrequencyGrid& grid) const;  // sum w_j |alpha_j|^2
};

enum class Picture { RenormInteraction, Schrodinger };

struct PropagatorBlock {
    double t = 0.0;
    Mat2 m{};
    Picture picture = Picture::RenormInteraction;
    cdouble overlap{1.0, 0.0};  // <beta|alpha> factor carried explicitly
};

struct QubitState {
    cdouble c0{0.0, 0.0}, c1{0.0, 0.0};
};

// f_alpha(t) = sum_j w_j 4 pi w_j^2 f(w_j) alpha_j e^{-i w_j t}
cdouble coherent_drive(const CoherentProfile& profile, const CouplingModel& model,
                       const FrequencyGrid& grid, double t);

// Discretized multimode coherent overlap
// <beta|alpha> = exp( sum_j w_j [beta* alpha - |alpha|^2/2 - |beta|^2/2] ).
cdouble coherent_overlap(const CoherentProfile& beta, const CoherentProfile& alpha,
                         const FrequencyGrid& grid);

// Theta = sum_j w_j 4 pi w_j^2 w_j beta*_j alpha_j (free field phase generator)
cdouble theta_phase(const CoherentProfile& beta, const CoherentProfile& alpha,
                    const FrequencyGrid& grid);

// dS/dt = -i (A_alpha(t) sigma+ + A'_beta(t) sigma-) S, S(0) = <beta|alpha> I,
// A_alpha(t) = e^{i Omega t} f_alpha(t), A'_beta(t) = e^{-i Omega t} f*_beta(t).
std::vector<PropagatorBlock> evolve_block(const CoherentProfile& alpha,
                                          const CoherentProfile& beta,
                                          const CouplingModel& model,
                                          const FrequencyGrid& grid,
                                          const RenormConstants& constants,
                                          const std::vector<double>& t_grid,
                                          double rtol = 1e-10);

// Row l picks up e^{-l gamma t} e^{-i (l omega_A + Theta) t}.
PropagatorBlock to_schrodinger(const PropagatorBlock& block,
                               const RenormConstants& constants,
                               const CoherentProfile& beta, const CoherentProfile& alpha,
                               const FrequencyGrid& grid);

// d psi/dt = -i [ (omega_A - i gamma) P1 + f_alpha(t) sigma+ + f*_alpha(t) sigma- ] psi
std::vector<QubitState> semiclassical_evolve(const CoherentProfile& alpha,
                                             const CouplingModel& model,
                                             const FrequencyGrid& grid,
                                             const RenormConstants& constants,
                                             const QubitState& psi0,
                                             const std::vector<double>& t_grid,
                                             double rtol = 1e-10);

// <psi(t)|psi(t)> = e^{-2 gamma t} + D(t,0) for the initially excited atom in
// vacuum; D evaluated mode-by-mode from the closed form of its double time
// integral.
std::vector<double> vacuum_norm_check(const CouplingModel& model,
                                      const FrequencyGrid& grid,
                                      const RenormConstants& constants,
                                      const std::vector<double>& t_grid);

// Husimi block for a finite coherent mixture: sum_i p_i M_i psi0 psi0^+ M_i^+
// with M_i the Schrodinger-picture block <beta|S(t)|alpha_i>.
struct CoherentMixture {
    std::vector<std::pair<double, CoherentProfile>> components;
};
Mat2 husimi_q(const CoherentMixture& mixture, const CoherentProfile& beta,
              const QubitState& psi0, const CouplingModel& model,
              const FrequencyGrid& grid, const RenormConstants& constants, double t);

}  // namespace atomfield
