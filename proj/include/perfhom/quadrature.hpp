#pragma once

#include <functional>

namespace perfhom {

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over the finite interval
/// [a, b]. Panels are bisected until the embedded error estimate meets
/// rel_tol * |integral| + abs_tol. Throws convergence_error if the panel
/// budget is exhausted first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 0.0);

/// Integral of f over [a, +inf) via the substitution t = a + u/(1-u),
/// which maps (0,1) onto (a, inf). f must decay fast enough for the
/// transformed integrand to be integrable; the adaptive routine reports
/// failure otherwise.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-10, double abs_tol = 0.0);

}  // namespace perfhom
