#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace atomfield {

enum class InversionMethod { TalbotContour, BromwichTrapezoid };

struct LaplaceSolverConfig {
    InversionMethod method = InversionMethod::BromwichTrapezoid;
    int n_nodes = 20000;  // Fourier terms (Bromwich) or contour nodes (Talbot)
    double shift = 0.0;   // growth bound of f(t); contour abscissa sits right of it
};

using LaplaceFn = std::function<std::complex<double>(std::complex<double>)>;

// Trapezoid on the Bromwich line a = shift + log(1e12)/(2T), T = 1.1*max(t)
// (Fourier-series form; the transform values are shared across all t).
// F must decay at least like 1/z along the line for the series to converge.
std::vector<std::complex<double>> invert_bromwich(const LaplaceFn& F,
                                                  const std::vector<double>& times,
                                                  int n_terms, double shift);

// Fixed Talbot contour, M nodes, evaluated per time point. shift moves the
// contour for transforms with growth bound > 0.
std::complex<double> invert_talbot(const LaplaceFn& F, double t, int n_nodes,
                                   double shift);

std::vector<std::complex<double>> invert_talbot_many(const LaplaceFn& F,
                                                     const std::vector<double>& times,
                                                     int n_nodes, double shift);

}  // namespace atomfield
