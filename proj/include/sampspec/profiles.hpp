#pragma once

#include <string>

namespace sampspec {

enum class ProfileKind { Flat, StepPSD, StepPCF };

// Ordinary: P(ρ) with ρ in cycles per unit length, the convention of the
// periodogram and of the blue-noise PCF closed form. AngularLiteral: the
// Poisson-disk PSD written with J_{d/2}(ρ r_min), i.e. ρ read as angular
// frequency 2π·ρ_ordinary. Numeric checks through the forward transform
// select Ordinary; the literal form is kept for side-by-side comparison.
enum class FrequencyConvention { Ordinary, AngularLiteral };

// SmallArgument replaces J_v(x) by (x/2)^v / Γ(1+v).
enum class BesselMode { Exact, SmallArgument };

// Analytic radial profile of one of the three sampler families.
struct SpectralProfile {
    ProfileKind kind = ProfileKind::Flat;
    double param = 0.0;  // ρ_z for StepPSD, r_min for StepPCF
    double n_samples = 1.0;
    int dim = 1;

    static SpectralProfile flat(double n, int dim);
    static SpectralProfile step_psd(double rho_z, double n, int dim);
    static SpectralProfile step_pcf(double r_min, double n, int dim);
};

void validate(const SpectralProfile& profile);

double frequency_scale(FrequencyConvention convention);

double eval_psd(const SpectralProfile& profile, double rho,
                FrequencyConvention convention = FrequencyConvention::Ordinary);
double eval_pcf(const SpectralProfile& profile, double r, BesselMode mode = BesselMode::Exact);

// G(r) = 1 - (1/N) (ρ_z / r)^{d/2} J_{d/2}(2π ρ_z r)
double bluenoise_pcf(double rho_z, double n, int dim, double r, BesselMode mode = BesselMode::Exact);

// Ideal Poisson-disk spectrum written as (1 - φ) + φ (1 - Λ_{d/2}(κ ρ r_min))
// with packing fraction φ = N V_d r_min^d; passing φ explicitly lets callers
// at the optimum use φ = 1 without rounding.
double pds_psd(double fill, double r_min, int dim, double rho,
               FrequencyConvention convention = FrequencyConvention::Ordinary);
double packing_fraction(double r_min, double n, int dim);

// ρ_z* = (N Γ(1 + d/2) / π^{d/2})^{1/d} and its inverse in N.
double max_zero_region(double n, int dim);
double log_max_zero_region(double n, int dim);
double min_samples_for_zero_region(double rho_z, int dim);
double log_min_samples_for_zero_region(double rho_z, int dim);

// r_min* = (Γ(1 + d/2) / (π^{d/2} N))^{1/d} and its inverse in N.
double max_rmin(double n, int dim);
double log_max_rmin(double n, int dim);
double min_samples_for_rmin(double r_min, int dim);
double log_min_samples_for_rmin(double r_min, int dim);

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

}  // namespace sampspec
