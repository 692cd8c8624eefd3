#pragma once

#include "sampspec/profiles.hpp"
#include "sampspec/spectral_estimation.hpp"

#include <map>
#include <string>

namespace sampspec {

enum class LossKind { BestCase, WorstCase };

// Radial loss spectrum: c_l on [0, ρ_0), then 0 (best) or c_l' ρ^{-d-1} (worst).
struct LossSpectrumModel {
    LossKind kind = LossKind::BestCase;
    double c_l = 1.0;
    double c_l_prime = 0.0;
    double rho_0 = 1.0;

    static LossSpectrumModel best(double c_l, double rho_0);
    static LossSpectrumModel worst(double c_l, double c_l_prime, double rho_0);

    double eval(double rho, int dim) const;
};

void validate(const LossSpectrumModel& loss);

enum class Case { Best, Worst };
enum class Regime { Zero, BelowCutoff, AboveCutoff, Numeric };
enum class Sampler { Random, BlueNoise, PoissonDisk };
enum class PdsMethod { Quadrature, AppendixClosedForm };

struct BoundResult {
    double value = 0.0;
    Regime regime = Regime::Numeric;
    bool clamped = false;
    std::map<std::string, double> components;
};

// (μ(S^{d-1}) / N) ∫_0^∞ ρ^{d-1} P_S(ρ) P_l(ρ) dρ. N and d come from the
// sampler. For the model losses the worst case adds the c_l' tail; analytic
// tails are used for the step profiles. A tabulated loss is taken as zero
// beyond its last node and must vanish there.
BoundResult gen_error_radial(const SpectralProfile& sampler, const LossSpectrumModel& loss, Case c,
                             FrequencyConvention convention = FrequencyConvention::Ordinary);
BoundResult gen_error_radial(const RadialSpectrum& sampler, const LossSpectrumModel& loss, Case c);
BoundResult gen_error_radial(const SpectralProfile& sampler, const RadialSpectrum& loss,
                             FrequencyConvention convention = FrequencyConvention::Ordinary);
BoundResult gen_error_radial(const RadialSpectrum& sampler, const RadialSpectrum& loss);

BoundResult bound_random(const LossSpectrumModel& loss, double n, int dim, Case c);
BoundResult bound_bluenoise(const LossSpectrumModel& loss, double n, int dim, Case c);
BoundResult bound_pds(const LossSpectrumModel& loss, double n, int dim, Case c,
                      PdsMethod method = PdsMethod::Quadrature,
                      FrequencyConvention convention = FrequencyConvention::Ordinary);

BoundResult bound(Sampler sampler, const LossSpectrumModel& loss, double n, int dim, Case c,
                  PdsMethod method = PdsMethod::Quadrature);

// ∫_a^∞ t^{-2} (1 - Λ_v(t)) dt; abs_error receives a bound on the truncation error.
double bessel_tail_integral(double order, double a, double* abs_error = nullptr);

std::string to_string(Case c);
std::string to_string(Regime r);
std::string to_string(Sampler s);
std::string to_string(PdsMethod m);
Case case_from_string(const std::string& name);
Sampler sampler_from_string(const std::string& name);
PdsMethod pds_method_from_string(const std::string& name);

}  // namespace sampspec
