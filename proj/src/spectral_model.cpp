#include "atomfield/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "atomfield/errors.hpp"
#include "json.hpp"

namespace atomfield {

namespace {

constexpr double kPi = std::numbers::pi;

const char* family_name(CouplingFamily f) {
    switch (f) {
        case CouplingFamily::Lorentzian: return "lorentzian";
        case CouplingFamily::OhmicExpCutoff: return "ohmic_exp_cutoff";
        case CouplingFamily::FlatWindow: return "flat_window";
        case CouplingFamily::Tabulated: return "tabulated";
    }
    return "?";
}

CouplingFamily family_from_name(const std::string& s) {
    if (s == "lorentzian") return CouplingFamily::Lorentzian;
    if (s == "ohmic_exp_cutoff") return CouplingFamily::OhmicExpCutoff;
    if (s == "flat_window") return CouplingFamily::FlatWindow;
    if (s == "tabulated") return CouplingFamily::Tabulated;
    throw ConfigError("model: unknown coupling family '" + s + "'");
}

}  // namespace

CouplingModel::CouplingModel(CouplingFamily fam, double amp, double ctr, double width,
                             std::vector<std::pair<double, cdouble>> tab)
    : family(fam), amplitude(amp), center(ctr), width_or_cutoff(width),
      table(std::move(tab)) {
    if (!(width_or_cutoff > 0.0))
        throw ConfigError("model: width_or_cutoff must be positive");
    if (amplitude < 0.0) throw ConfigError("model: amplitude must be non-negative");
    if (family == CouplingFamily::Tabulated) {
        if (table.size() < 2) throw ConfigError("model: table needs at least two rows");
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (table[i].first < 0.0)
                throw ConfigError("model: table frequencies must be non-negative");
            if (i > 0 && !(table[i].first > table[i - 1].first))
                throw ConfigError("model: table frequencies must be strictly increasing");
        }
    }
}

CouplingModel CouplingModel::lorentzian(double amplitude, double center, double width) {
    return CouplingModel(CouplingFamily::Lorentzian, amplitude, center, width);
}

CouplingModel CouplingModel::ohmic(double amplitude, double cutoff) {
    return CouplingModel(CouplingFamily::OhmicExpCutoff, amplitude, 0.0, cutoff);
}

CouplingModel CouplingModel::flat_window(double amplitude, double center, double width) {
    return CouplingModel(CouplingFamily::FlatWindow, amplitude, center, width);
}

CouplingModel CouplingModel::tabulated(std::vector<std::pair<double, cdouble>> tab) {
    return CouplingModel(CouplingFamily::Tabulated, 0.0, 0.0, 1.0, std::move(tab));
}

cdouble CouplingModel::eval(double omega) const {
    if (omega < 0.0) throw std::domain_error("eval_coupling: omega must be >= 0");
    switch (family) {
        case CouplingFamily::Lorentzian: {
            const double x = (omega - center) / width_or_cutoff;
            return cdouble(amplitude / (1.0 + x * x), 0.0);
        }
        case CouplingFamily::OhmicExpCutoff:
            return cdouble(amplitude * std::sqrt(omega) *
                               std::exp(-omega / (2.0 * width_or_cutoff)),
                           0.0);
        case CouplingFamily::FlatWindow:
            return (std::abs(omega - center) <= 0.5 * width_or_cutoff)
                       ? cdouble(amplitude, 0.0)
                       : cdouble(0.0, 0.0);
        case CouplingFamily::Tabulated: {
            if (omega < table.front().first || omega > table.back().first)
                return cdouble(0.0, 0.0);
            auto it = std::lower_bound(
                table.begin(), table.end(), omega,
                [](const auto& row, double w) { return row.first < w; });
            if (it == table.begin()) return it->second;
            const auto hi = it;
            const auto lo = it - 1;
            const double s = (omega - lo->first) / (hi->first - lo->first);
            return lo->second + s * (hi->second - lo->second);
        }
    }
    return cdouble(0.0, 0.0);
}

double CouplingModel::abs2(double omega) const { return std::norm(eval(omega)); }

double CouplingModel::spectral_weight(double omega) const {
    return 4.0 * kPi * omega * omega * abs2(omega);
}

cdouble CouplingModel::spectral_weight_analytic(cdouble omega) const {
    switch (family) {
        case CouplingFamily::Lorentzian: {
            const cdouble x = (omega - center) / width_or_cutoff;
            const cdouble lor = amplitude / (1.0 + x * x);
            return 4.0 * kPi * omega * omega * lor * lor;
        }
        case CouplingFamily::OhmicExpCutoff:
            return 4.0 * kPi * omega * omega * amplitude * amplitude * omega *
                   std::exp(-omega / width_or_cutoff);
        case CouplingFamily::FlatWindow:
        case CouplingFamily::Tabulated:
            return cdouble(spectral_weight(std::max(0.0, omega.real())), 0.0);
    }
    return cdouble(0.0, 0.0);
}

double CouplingModel::default_omega_max() const {
    if (family == CouplingFamily::Tabulated) return table.back().first;
    if (family == CouplingFamily::OhmicExpCutoff) return 20.0 * width_or_cutoff;
    return center + 20.0 * width_or_cutoff;
}

std::string CouplingModel::to_json() const {
    nlohmann::json j;
    j["family"] = family_name(family);
    j["amplitude"] = amplitude;
    j["center"] = center;
    j["width_or_cutoff"] = width_or_cutoff;
    if (family == CouplingFamily::Tabulated) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [w, f] : table)
            rows.push_back({w, f.real(), f.imag()});
        j["table"] = rows;
    }
    return j.dump();
}

CouplingModel CouplingModel::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("model: bad JSON: ") + e.what());
    }
    for (const auto& [key, _] : j.items()) {
        if (key != "family" && key != "amplitude" && key != "center" &&
            key != "width_or_cutoff" && key != "table")
            throw ConfigError("model: unknown key '" + key + "'");
    }
    const auto fam = family_from_name(j.at("family").get<std::string>());
    std::vector<std::pair<double, cdouble>> tab;
    if (j.contains("table")) {
        for (const auto& row : j.at("table")) {
            if (!row.is_array() || row.size() != 3)
                throw ConfigError("model: table rows must be [omega, re, im]");
            tab.emplace_back(row[0].get<double>(),
                             cdouble(row[1].get<double>(), row[2].get<double>()));
        }
    }
    return CouplingModel(fam, j.value("amplitude", 0.0), j.value("center", 0.0),
                         j.value("width_or_cutoff", 1.0), std::move(tab));
}

std::uint64_t CouplingModel::hash() const {
    const std::string s = to_json();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

RenormConstants::RenormConstants(double omega0_, double gamma_, double delta_omega_,
                                 GammaConvention conv)
    : gamma(gamma_), delta_omega(delta_omega_), omega0(omega0_),
      omega_A(omega0_ + delta_omega_), b(gamma_, delta_omega_),
      Omega(omega0_ + delta_omega_, -gamma_), convention(conv) {
    if (gamma < 0.0) throw ConfigError("constants: gamma must be >= 0");
}

double RenormConstants::rate_anticommutator() const {
    return convention == GammaConvention::HalfWidth ? gamma : 0.5 * gamma;
}

double RenormConstants::rate_jump() const {
    return convention == GammaConvention::HalfWidth ? 2.0 * gamma : gamma;
}

cdouble memory_kernel(const CouplingModel& model, const FrequencyGrid& grid, double t) {
    if (grid.nodes.empty()) throw ConfigError("memory_kernel: empty grid");
    cdouble acc(0.0, 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double g = model.spectral_weight(grid.nodes[j]);
        if (g == 0.0) continue;
        acc += grid.weights[j] * g * std::polar(1.0, -grid.nodes[j] * t);
    }
    return acc;
}

cdouble renorm_memory_kernel(const CouplingModel& model, const FrequencyGrid& grid,
                             const RenormConstants& constants, double t) {
    const cdouble rot = std::exp(cdouble(constants.gamma, constants.omega_A) * t);
    return rot * memory_kernel(model, grid, t);
}

LaplaceValue laplace_kernel(const CouplingModel& model, const FrequencyGrid& grid,
                            cdouble z, double omega_A, double gamma) {
    if (grid.nodes.empty()) throw ConfigError("laplace_kernel: empty grid");
    LaplaceValue out;
    cdouble acc(0.0, 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const cdouble den = z + cdouble(0.0, grid.nodes[j] - omega_A) - gamma;
        if (std::abs(den) < 1e-12)
            throw SingularityError("laplace_kernel: z collides with grid pole at omega=" +
                                   std::to_string(grid.nodes[j]));
        const double g = model.spectral_weight(grid.nodes[j]);
        if (g == 0.0) continue;
        acc += grid.weights[j] * g / den;
    }
    out.value = acc;
    if (z.real() <= gamma) {
        out.continued = true;
        // Second sheet: the integrand pole omega_p = omega_A + i(z - gamma) has
        // crossed the real axis; add its residue when it sits over the support.
        const cdouble omega_p = omega_A + cdouble(0.0, 1.0) * (z - gamma);
        if (omega_p.real() >= 0.0 && omega_p.real() <= grid.omega_max())
            out.value += 2.0 * kPi * model.spectral_weight_analytic(omega_p);
    }
    return out;
}

double principal_value_integral(const CouplingModel& model, double omega_A,
                                double lo, double hi, int n_nodes) {
    if (!(lo < omega_A && omega_A < hi))
        throw ConfigError("principal_value: omega_A must lie inside [lo, hi]");
    const double R = std::min(omega_A - lo, hi - omega_A);
    const double g_at = model.spectral_weight(omega_A);
    // Even node count keeps Gauss nodes off the singular point.
    const int n = (n_nodes % 2 == 0) ? n_nodes : n_nodes + 1;

    std::vector<double> x, w;
    double acc = 0.0;
    // Symmetric window: subtracted integrand is regular, and the subtracted
    // term integrates to zero exactly over [omega_A - R, omega_A + R].
    gauss_legendre_rule(n, omega_A - R, omega_A + R, x, w);
    for (int i = 0; i < n; ++i) {
        const double d = omega_A - x[i];
        acc += w[i] * (model.spectral_weight(x[i]) - g_at) / d;
    }
    // Leftover pieces are singularity-free.
    if (omega_A - R > lo) {
        gauss_legendre_rule(n, lo, omega_A - R, x, w);
        for (int i = 0; i < n; ++i)
            acc += w[i] * model.spectral_weight(x[i]) / (omega_A - x[i]);
    }
    if (omega_A + R < hi) {
        gauss_legendre_rule(n, omega_A + R, hi, x, w);
        for (int i = 0; i < n; ++i)
            acc += w[i] * model.spectral_weight(x[i]) / (omega_A - x[i]);
    }
    return acc;
}

RenormConstants compute_renorm_constants(const CouplingModel& model,
                                         const FrequencyGrid& grid, double omega0,
                                         const RenormOptions& options,
                                         GammaConvention conv) {
    const double lo = 0.0;
    const double hi = grid.omega_max();
    if (!(omega0 > lo && omega0 < hi))
        throw ConfigError("renorm_constants: omega0 must lie inside the grid support");
    const int n = static_cast<int>(std::max<std::size_t>(grid.size(), 512));

    auto eval_at = [&](double omega_A) {
        const double gamma = kPi * model.spectral_weight(omega_A);
        const double dw = principal_value_integral(model, omega_A, lo, hi, n);
        return std::pair<double, double>(gamma, dw);
    };

    if (!options.fixed_point) {
        auto [gamma, dw] = eval_at(omega0);
        return RenormConstants(omega0, gamma, dw, conv);
    }

    double omega_A = omega0;
    for (int it = 0; it < options.max_iter; ++it) {
        auto [gamma, dw] = eval_at(omega_A);
        const double next = omega0 + dw;
        if (std::abs(next - omega_A) <= options.tol * std::max(1.0, std::abs(omega_A))) {
            auto [gamma_f, dw_f] = eval_at(next);
            return RenormConstants(omega0, gamma_f, dw_f, conv);
        }
        omega_A = next;
        if (!(omega_A > lo && omega_A < hi))
            throw IterationError("renorm_constants: fixed point left the grid support",
                                 omega_A);
    }
    throw IterationError("renorm_constants: fixed point did not converge", omega_A);
}

std::string grid_to_json(const FrequencyGrid& grid) {
    nlohmann::json j;
    j["scheme"] = grid.scheme == GridScheme::GaussLegendre ? "gauss_legendre" : "trapezoid";
    j["n_nodes"] = grid.size();
    j["omega_max"] = grid.omega_max();
    return j.dump();
}

FrequencyGrid grid_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("grid: bad JSON: ") + e.what());
    }
    for (const auto& [key, _] : j.items()) {
        if (key != "scheme" && key != "n_nodes" && key != "omega_max")
            throw ConfigError("grid: unknown key '" + key + "'");
    }
    const auto scheme = j.at("scheme").get<std::string>();
    const int n = j.at("n_nodes").get<int>();
    const double wmax = j.at("omega_max").get<double>();
    if (scheme == "gauss_legendre") return FrequencyGrid::gauss_legendre(n, wmax);
    if (scheme == "trapezoid") return FrequencyGrid::trapezoid(n, wmax);
    throw ConfigError("grid: unknown scheme '" + scheme + "'");
}

}  // namespace atomfield
