#include "sampspec/profiles.hpp"

#include "sampspec/errors.hpp"
#include "sampspec/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sampspec {

namespace {

void require_n_d(double n, int dim, const char* what) {
    if (!(n >= 1.0) || !std::isfinite(n)) {
        throw DomainError(std::string(what) + ": N must be finite and >= 1");
    }
    if (dim < 1) {
        throw DomainError(std::string(what) + ": d must be >= 1");
    }
}

void require_positive(double v, const char* what, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + ": " + name + " must be finite and > 0");
    }
}

double log_ball(int dim) { return specialfn::sphere_measure(dim).log_ball_volume; }

}  // namespace

SpectralProfile SpectralProfile::flat(double n, int dim) {
    SpectralProfile p{ProfileKind::Flat, 0.0, n, dim};
    validate(p);
    return p;
}

SpectralProfile SpectralProfile::step_psd(double rho_z, double n, int dim) {
    SpectralProfile p{ProfileKind::StepPSD, rho_z, n, dim};
    validate(p);
    return p;
}

SpectralProfile SpectralProfile::step_pcf(double r_min, double n, int dim) {
    SpectralProfile p{ProfileKind::StepPCF, r_min, n, dim};
    validate(p);
    return p;
}

void validate(const SpectralProfile& profile) {
    require_n_d(profile.n_samples, profile.dim, "SpectralProfile");
    if (profile.kind != ProfileKind::Flat) {
        require_positive(profile.param, "SpectralProfile", "param");
    }
}

double frequency_scale(FrequencyConvention convention) {
    return convention == FrequencyConvention::Ordinary ? 2.0 * std::numbers::pi : 1.0;
}

double packing_fraction(double r_min, double n, int dim) {
    require_positive(r_min, "packing_fraction", "r_min");
    require_n_d(n, dim, "packing_fraction");
    return std::exp(log_ball(dim) + dim * std::log(r_min) + std::log(n));
}

double pds_psd(double fill, double r_min, int dim, double rho, FrequencyConvention convention) {
    require_positive(rho, "pds_psd", "rho");
    const double x = frequency_scale(convention) * rho * r_min;
    return (1.0 - fill) + fill * specialfn::one_minus_normalized_bessel(0.5 * dim, x);
}

double eval_psd(const SpectralProfile& profile, double rho, FrequencyConvention convention) {
    validate(profile);
    require_positive(rho, "eval_psd", "rho");
    switch (profile.kind) {
        case ProfileKind::Flat:
            return 1.0;
        case ProfileKind::StepPSD:
            return rho <= profile.param ? 0.0 : 1.0;
        case ProfileKind::StepPCF:
            return pds_psd(packing_fraction(profile.param, profile.n_samples, profile.dim),
                           profile.param, profile.dim, rho, convention);
    }
    throw DomainError("eval_psd: unknown profile kind");
}

double bluenoise_pcf(double rho_z, double n, int dim, double r, BesselMode mode) {
    require_positive(rho_z, "bluenoise_pcf", "rho_z");
    require_positive(r, "bluenoise_pcf", "r");
    require_n_d(n, dim, "bluenoise_pcf");
    // (ρ_z/r)^{d/2} J_{d/2}(2π ρ_z r) / N = (V_d ρ_z^d / N) Λ_{d/2}(2π ρ_z r)
    const double scale = std::exp(log_ball(dim) + dim * std::log(rho_z) - std::log(n));
    if (mode == BesselMode::SmallArgument) {
        return 1.0 - scale;
    }
    return 1.0 - scale * specialfn::normalized_bessel(0.5 * dim, 2.0 * std::numbers::pi * rho_z * r);
}

double eval_pcf(const SpectralProfile& profile, double r, BesselMode mode) {
    validate(profile);
    require_positive(r, "eval_pcf", "r");
    switch (profile.kind) {
        case ProfileKind::Flat:
            return 1.0;
        case ProfileKind::StepPSD:
            return bluenoise_pcf(profile.param, profile.n_samples, profile.dim, r, mode);
        case ProfileKind::StepPCF:
            return r <= profile.param ? 0.0 : 1.0;
    }
    throw DomainError("eval_pcf: unknown profile kind");
}

double log_max_zero_region(double n, int dim) {
    require_n_d(n, dim, "max_zero_region");
    return (std::log(n) - log_ball(dim)) / dim;
}

double max_zero_region(double n, int dim) { return std::exp(log_max_zero_region(n, dim)); }

double log_min_samples_for_zero_region(double rho_z, int dim) {
    require_positive(rho_z, "min_samples_for_zero_region", "rho_z");
    if (dim < 1) {
        throw DomainError("min_samples_for_zero_region: d must be >= 1");
    }
    return log_ball(dim) + dim * std::log(rho_z);
}

double min_samples_for_zero_region(double rho_z, int dim) {
    return std::exp(log_min_samples_for_zero_region(rho_z, dim));
}

double log_max_rmin(double n, int dim) {
    require_n_d(n, dim, "max_rmin");
    return -(std::log(n) + log_ball(dim)) / dim;
}

double max_rmin(double n, int dim) { return std::exp(log_max_rmin(n, dim)); }

double log_min_samples_for_rmin(double r_min, int dim) {
    require_positive(r_min, "min_samples_for_rmin", "r_min");
    if (dim < 1) {
        throw DomainError("min_samples_for_rmin: d must be >= 1");
    }
    return -log_ball(dim) - dim * std::log(r_min);
}

double min_samples_for_rmin(double r_min, int dim) {
    return std::exp(log_min_samples_for_rmin(r_min, dim));
}

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::Flat: return "flat";
        case ProfileKind::StepPSD: return "step_psd";
        case ProfileKind::StepPCF: return "step_pcf";
    }
    return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name) {
    if (name == "flat") return ProfileKind::Flat;
    if (name == "step_psd") return ProfileKind::StepPSD;
    if (name == "step_pcf") return ProfileKind::StepPCF;
    throw DomainError("unknown profile kind '" + name + "'");
}

}  // namespace sampspec
