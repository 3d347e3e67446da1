#include "atomfield/grid.hpp"

#include <cmath>
#include <numbers>

#include "atomfield/errors.hpp"

namespace atomfield {

void gauss_legendre_rule(int n, double a, double b,
                         std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw ConfigError("gauss_legendre_rule: need at least one node");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = xm - xl * z;
        x[n - 1 - i] = xm + xl * z;
        w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

double FrequencyGrid::omega_max() const { return omega_hi_; }

FrequencyGrid FrequencyGrid::gauss_legendre(int n_nodes, double omega_max) {
    if (omega_max <= 0.0) throw ConfigError("grid: omega_max must be positive");
    FrequencyGrid g;
    g.scheme = GridScheme::GaussLegendre;
    g.omega_hi_ = omega_max;
    gauss_legendre_rule(n_nodes, 0.0, omega_max, g.nodes, g.weights);
    g.validate();
    return g;
}

FrequencyGrid FrequencyGrid::trapezoid(int n_nodes, double omega_max) {
    if (omega_max <= 0.0) throw ConfigError("grid: omega_max must be positive");
    if (n_nodes < 2) throw ConfigError("grid: trapezoid needs at least two nodes");
    FrequencyGrid g;
    g.scheme = GridScheme::Trapezoid;
    g.omega_hi_ = omega_max;
    const double h = omega_max / (n_nodes - 1);
    g.nodes.resize(n_nodes);
    g.weights.assign(n_nodes, h);
    for (int i = 0; i < n_nodes; ++i) g.nodes[i] = i * h;
    g.weights.front() = 0.5 * h;
    g.weights.back() = 0.5 * h;
    g.validate();
    return g;
}

void FrequencyGrid::validate() const {
    if (nodes.empty()) throw ConfigError("grid: empty node list");
    if (nodes.size() != weights.size())
        throw ConfigError("grid: node/weight size mismatch");
    double wsum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] < 0.0 || nodes[i] > omega_hi_ + 1e-12 * omega_hi_)
            throw ConfigError("grid: node outside [0, omega_max]");
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw ConfigError("grid: nodes must be strictly increasing");
        if (!(weights[i] > 0.0)) throw ConfigError("grid: weights must be positive");
        wsum += weights[i];
    }
    if (std::abs(wsum - omega_hi_) > 1e-10 * omega_hi_)
        throw ConfigError("grid: weights do not sum to omega_max");
}

}  // namespace atomfield
