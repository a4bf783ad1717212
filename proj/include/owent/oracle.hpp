#pragma once

// Brute-force reference evaluators for tests and benchmark runs. Nothing in
// the production path calls into this header.

#include <cstddef>
#include <functional>

namespace owent::oracle {

struct QuadratureSpec {
    double abs_tol = 1e-13;
    std::size_t max_intervals = 2000;  ///< subdivision budget
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
    std::size_t intervals = 0;
    bool converged = true;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a,b]. The
/// interval with the largest error estimate is bisected until the summed
/// estimate drops below spec.abs_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec);

/// Same, over consecutive panels [p_0,p_1], [p_1,p_2], ... sharing the
/// tolerance and the subdivision budget.
QuadratureResult integrate_panels(const std::function<double(double)>& f, const double* points,
                                  std::size_t count, const QuadratureSpec& spec);

/// Phi(x) = erfc(-x/sqrt2)/2 from the C library.
double normal_cdf(double x);

/// T(h,a) = 1/2pi int_0^{atan a} exp(-h^2 / (2 cos^2 t)) dt.
QuadratureResult owen_t_quadrature(double h, double a, double tol = 1e-13);

/// Phi2(x,y;rho) from Plackett's identity d Phi2 / d rho = phi2. The
/// integration runs from the nearer of rho = 0 and rho = +-1, in angle
/// variables that keep the integrand bounded near |rho| = 1.
QuadratureResult phi2_plackett_quadrature(double x, double y, double rho, double tol = 1e-13);

/// Q(k+1,q) = e^{-q} sum_{i<=k} q^i / i!, summed in extended precision.
double incomplete_gamma_direct(std::size_t k, double q);

}  // namespace owent::oracle
