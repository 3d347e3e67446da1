#pragma once

#include <cstddef>
#include <vector>

namespace atomfield {

enum class GridScheme { GaussLegendre, Trapezoid };

// Quadrature grid on [0, omega_max] used to discretize all dk integrals.
struct FrequencyGrid {
    std::vector<double> nodes;    // strictly increasing, inside [0, omega_max]
    std::vector<double> weights;  // > 0, sum to omega_max
    GridScheme scheme = GridScheme::GaussLegendre;

    std::size_t size() const { return nodes.size(); }
    double omega_min() const { return nodes.front(); }
    double omega_max() const;  // upper end of the covered interval

    static FrequencyGrid gauss_legendre(int n_nodes, double omega_max);
    static FrequencyGrid trapezoid(int n_nodes, double omega_max);

    void validate() const;  // throws ConfigError on invariant violation

  private:
    double omega_hi_ = 0.0;
};

// Nodes/weights of the n-point Gauss-Legendre rule on [a, b].
void gauss_legendre_rule(int n, double a, double b,
                         std::vector<double>& x, std::vector<double>& w);

}  // namespace atomfield
