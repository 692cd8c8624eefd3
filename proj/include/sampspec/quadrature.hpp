#pragma once

#include <functional>
#include <span>

namespace sampspec::quad {

using Integrand = std::function<double(double)>;

struct Result {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    bool converged = true;
};

struct Options {
    double rel_tol = 1e-11;
    double abs_tol = 1e-15;
    int max_depth = 30;
    // Upper bound on the width of the initial panels. Oscillatory kernels
    // pass a fraction of their period here.
    double max_panel = 0.0;  // 0 = no limit
};

// Fixed 20-point Gauss-Legendre rule on [a, b].
double gauss_legendre(const Integrand& f, double a, double b);

// Adaptive bisection driven by the 20-point rule. The interval is first cut
// at every breakpoint inside (a, b) and into panels no wider than
// options.max_panel; each panel is then refined independently. Panels are
// summed in left-to-right order, so the result is deterministic.
Result integrate(const Integrand& f, double a, double b, const Options& options = {},
                 std::span<const double> breakpoints = {});

}  // namespace sampspec::quad
