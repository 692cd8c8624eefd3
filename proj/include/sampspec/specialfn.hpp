#pragma once

// Gamma, Bessel J of real non-negative order and hypersphere measures.
// All functions are pure and thread-safe.

namespace sampspec::specialfn {

// Lanczos approximation (g = 7, 9 terms); relative error below 1e-14.
// Returns +inf once the result overflows (x > ~171.6).
double gamma(double x);

// ln Γ(x) for x > 0; finite for any finite x.
double log_gamma(double x);

// Bessel function of the first kind J_v(x), v >= 0, x >= 0.
double bessel_j(double order, double x);

// Leading term of the small-argument expansion, (x/2)^v / Γ(1+v).
double bessel_small_arg(double order, double x);

// Λ_v(x) = Γ(v+1) (2/x)^v J_v(x), the Bessel function normalised to 1 at
// the origin. Accepts v >= 0 and v = -1/2 (where Λ is cos x), which covers
// the radial Fourier kernel of every integer dimension.
double normalized_bessel(double order, double x);

// 1 - Λ_v(x) evaluated without cancellation for small x.
double one_minus_normalized_bessel(double order, double x);

struct SphereMeasure {
    int dim = 0;
    double surface = 0.0;       // μ(S^{d-1}) = 2 π^{d/2} / Γ(d/2)
    double ball_volume = 0.0;   // V_d = π^{d/2} / Γ(1 + d/2)
    double log_surface = 0.0;
    double log_ball_volume = 0.0;
};

SphereMeasure sphere_measure(int d);

}  // namespace sampspec::specialfn
