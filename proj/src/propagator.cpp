#include "atomfield/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "atomfield/errors.hpp"
#include "atomfield/ode.hpp"

namespace atomfield {

namespace {
constexpr double kPi = std::numbers::pi;

void check_profile(const CoherentProfile& p, const FrequencyGrid& grid,
                   const char* what) {
    if (p.alpha.size() != grid.size())
        throw ConfigError(std::string(what) + ": profile/grid size mismatch");
}
}  // namespace

CoherentProfile CoherentProfile::from_table(
    const FrequencyGrid& grid, const std::vector<std::pair<double, cdouble>>& tab) {
    CoherentProfile p;
    p.alpha.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double w = grid.nodes[j];
        if (tab.empty() || w < tab.front().first || w > tab.back().first) {
            p.alpha[j] = 0.0;
            continue;
        }
        auto it = std::lower_bound(tab.begin(), tab.end(), w,
                                   [](const auto& row, double x) { return row.first < x; });
        if (it == tab.begin()) {
            p.alpha[j] = it->second;
        } else {
            const auto hi = it;
            const auto lo = it - 1;
            const double s = (w - lo->first) / (hi->first - lo->first);
            p.alpha[j] = lo->second + s * (hi->second - lo->second);
        }
    }
    return p;
}

double CoherentProfile::norm2(const FrequencyGrid& grid) const {
    check_profile(*this, grid, "norm2");
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        acc += grid.weights[j] * std::norm(alpha[j]);
    return acc;
}

cdouble coherent_drive(const CoherentProfile& profile, const CouplingModel& model,
                       const FrequencyGrid& grid, double t) {
    check_profile(profile, grid, "coherent_drive");
    cdouble acc(0.0, 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (profile.alpha[j] == cdouble(0.0, 0.0)) continue;
        const double w = grid.nodes[j];
        acc += grid.weights[j] * 4.0 * kPi * w * w * model.eval(w) * profile.alpha[j] *
               std::polar(1.0, -w * t);
    }
    return acc;
}

cdouble coherent_overlap(const CoherentProfile& beta, const CoherentProfile& alpha,
                         const FrequencyGrid& grid) {
    check_profile(beta, grid, "coherent_overlap");
    check_profile(alpha, grid, "coherent_overlap");
    cdouble expo(0.0, 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        expo += grid.weights[j] * (std::conj(beta.alpha[j]) * alpha.alpha[j] -
                                   0.5 * std::norm(alpha.alpha[j]) -
                                   0.5 * std::norm(beta.alpha[j]));
    }
    return std::exp(expo);
}

cdouble theta_phase(const CoherentProfile& beta, const CoherentProfile& alpha,
                    const FrequencyGrid& grid) {
    check_profile(beta, grid, "theta_phase");
    check_profile(alpha, grid, "theta_phase");
    cdouble acc(0.0, 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double w = grid.nodes[j];
        acc += grid.weights[j] * 4.0 * kPi * w * w * w * std::conj(beta.alpha[j]) *
               alpha.alpha[j];
    }
    return acc;
}

std::vector<PropagatorBlock> evolve_block(const CoherentProfile& alpha,
                                          const CoherentProfile& beta,
                                          const CouplingModel& model,
                                          const FrequencyGrid& grid,
                                          const RenormConstants& constants,
                                          const std::vector<double>& t_grid,
                                          double rtol) {
    check_profile(alpha, grid, "evolve_block");
    check_profile(beta, grid, "evolve_block");
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw ConfigError("evolve_block: time grid must start at 0");

    const cdouble ovl = coherent_overlap(beta, alpha, grid);
    const cdouble iOmega(constants.gamma, constants.omega_A);  // i*Omega

    Dopri5<4> ode;
    ode.rtol = rtol;
    ode.atol = 1e-14;
    const cdouble I(0.0, 1.0);
    auto rhs = [&](double t, const Dopri5<4>::State& s, Dopri5<4>::State& ds) {
        const cdouble Aa = std::exp(iOmega * t) * coherent_drive(alpha, model, grid, t);
        const cdouble Ab =
            std::exp(-iOmega * t) * std::conj(coherent_drive(beta, model, grid, t));
        // dS = -i (Aa sigma+ + Ab sigma-) S ; sigma+ S adds row1 <- row0 etc.
        ds[0] = -I * Ab * s[2];       // (sigma- S)_{00} = S_{10}
        ds[1] = -I * Ab * s[3];
        ds[2] = -I * Aa * s[0];       // (sigma+ S)_{10} = S_{00}
        ds[3] = -I * Aa * s[1];
    };
    Dopri5<4>::State y0{ovl, 0.0, 0.0, ovl};
    std::vector<Dopri5<4>::State> states;
    try {
        states = ode.solve(rhs, y0, t_grid);
    } catch (const StiffnessError& e) {
        const double d0 = std::abs(coherent_drive(alpha, model, grid, t_grid.back()));
        throw StiffnessError(std::string(e.what()) + " (gamma*h scale " +
                             std::to_string(constants.gamma) + ", drive magnitude " +
                             std::to_string(d0) + ")");
    }
    std::vector<PropagatorBlock> out(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        out[k].t = t_grid[k];
        out[k].m = {states[k][0], states[k][1], states[k][2], states[k][3]};
        out[k].picture = Picture::RenormInteraction;
        out[k].overlap = ovl;
    }
    return out;
}

PropagatorBlock to_schrodinger(const PropagatorBlock& block,
                               const RenormConstants& constants,
                               const CoherentProfile& beta, const CoherentProfile& alpha,
                               const FrequencyGrid& grid) {
    if (block.picture != Picture::RenormInteraction)
        throw ConfigError("to_schrodinger: block already in Schrodinger picture");
    const cdouble theta = theta_phase(beta, alpha, grid);
    PropagatorBlock out = block;
    out.picture = Picture::Schrodinger;
    const double t = block.t;
    // row l scaling: e^{-l gamma t} e^{-i (l omega_A + Theta) t}
    const cdouble row0 = std::exp(cdouble(0.0, -1.0) * theta * t);
    const cdouble row1 =
        std::exp(cdouble(-constants.gamma * t, 0.0) +
                 cdouble(0.0, -1.0) * (constants.omega_A + theta) * t);
    out.m[0] = row0 * block.m[0];
    out.m[1] = row0 * block.m[1];
    out.m[2] = row1 * block.m[2];
    out.m[3] = row1 * block.m[3];
    return out;
}

std::vector<QubitState> semiclassical_evolve(const CoherentProfile& alpha,
                                             const CouplingModel& model,
                                             const FrequencyGrid& grid,
                                             const RenormConstants& constants,
                                             const QubitState& psi0,
                                             const std::vector<double>& t_grid,
                                             double rtol) {
    check_profile(alpha, grid, "semiclassical_evolve");
    Dopri5<2> ode;
    ode.rtol = rtol;
    ode.atol = 1e-14;
    const cdouble I(0.0, 1.0);
    const cdouble hdiag(constants.omega_A, -constants.gamma);
    auto rhs = [&](double t, const Dopri5<2>::State& s, Dopri5<2>::State& ds) {
        const cdouble fa = coherent_drive(alpha, model, grid, t);
        // H = (wA - i g)|1><1| + f_a sigma+ + f_a* sigma-:
        // (H psi)_0 = f_a* c1, (H psi)_1 = (wA - i g) c1 + f_a c0
        ds[0] = -I * std::conj(fa) * s[1];
        ds[1] = -I * (hdiag * s[1] + fa * s[0]);
    };
    Dopri5<2>::State y0{psi0.c0, psi0.c1};
    std::vector<Dopri5<2>::State> states;
    try {
        states = ode.solve(rhs, y0, t_grid);
    } catch (const StiffnessError& e) {
        throw StiffnessError(std::string(e.what()) + " (gamma " +
                             std::to_string(constants.gamma) + ")");
    }
    std::vector<QubitState> out(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k)
        out[k] = QubitState{states[k][0], states[k][1]};
    return out;
}

std::vector<double> vacuum_norm_check(const CouplingModel& model,
                                      const FrequencyGrid& grid,
                                      const RenormConstants& constants,
                                      const std::vector<double>& t_grid) {
    std::vector<double> out(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double t = t_grid[k];
        double D = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double w = grid.nodes[j];
            const double g = model.spectral_weight(w);
            if (g == 0.0) continue;
            // | int_0^t e^{(-gamma - i(w - wA)) s} ds |^2
            const cdouble p(-constants.gamma, -(w - constants.omega_A));
            const cdouble val = (std::exp(p * t) - 1.0) / p;
            D += grid.weights[j] * g * std::norm(val);
        }
        out[k] = std::exp(-2.0 * constants.gamma * t) + D;
    }
    return out;
}

Mat2 husimi_q(const CoherentMixture& mixture, const CoherentProfile& beta,
              const QubitState& psi0, const CouplingModel& model,
              const FrequencyGrid& grid, const RenormConstants& constants, double t) {
    Mat2 q{};
    const std::vector<double> times = {0.0, t};
    for (const auto& [p, alpha] : mixture.components) {
        auto blocks = evolve_block(alpha, beta, model, grid, constants, times);
        const PropagatorBlock sb =
            to_schrodinger(blocks.back(), constants, beta, alpha, grid);
        // v = M psi0; q += p v v^+
        const cdouble v0 = sb.m[0] * psi0.c0 + sb.m[1] * psi0.c1;
        const cdouble v1 = sb.m[2] * psi0.c0 + sb.m[3] * psi0.c1;
        q[0] += p * v0 * std::conj(v0);
        q[1] += p * v0 * std::conj(v1);
        q[2] += p * v1 * std::conj(v0);
        q[3] += p * v1 * std::conj(v1);
    }
    return q;
}

}  // namespace atomfield
