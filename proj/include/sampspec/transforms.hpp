#pragma once

#include "sampspec/profiles.hpp"
#include "sampspec/spectral_estimation.hpp"

#include <functional>
#include <span>
#include <vector>

namespace sampspec {

// Piecewise-linear interpolant through (x_i, y_i). Holds y_0 below x_0;
// callers handle the region beyond the last node.
class TabulatedFunction {
public:
    TabulatedFunction(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const;
    double x_max() const { return x_.back(); }
    double last() const { return y_.back(); }
    std::span<const double> nodes() const { return x_; }

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

// H_v f(r) = 2π ∫_0^∞ x f(x) J_v(2π r x) dx, for v >= 0 or v = -1/2.
// The tabulated form integrates to the last node and adds the contribution
// of a linear ramp from f(x_max) to zero over one period 1/r.
double hankel(double order, const TabulatedFunction& f, double r);
double hankel(double order, const std::function<double(double)>& f, double x_max, double r,
              std::span<const double> breakpoints = {});

// 512 nodes on (0, 0.5] and on (0, 4 ρ_z].
std::vector<double> default_radius_grid();
std::vector<double> default_frequency_grid(double rho_z);

// G(r) = 1 + (μ(S^{d-1}) / N) ∫ ρ^{d-1} (P(ρ) - 1) Λ_{d/2-1}(2π ρ r) dρ,
// which equals 1 + (1/N) r^{1-d/2} H_{d/2-1}[ρ^{d/2-1} (P - 1)](r).
PairCorrelation psd_to_pcf(const RadialSpectrum& spec, std::span<const double> r_grid);
PairCorrelation psd_to_pcf(const SpectralProfile& profile, std::span<const double> r_grid,
                           FrequencyConvention convention = FrequencyConvention::Ordinary);
// psd is integrated over (0, rho_max]; P = 1 is assumed beyond.
PairCorrelation psd_to_pcf(const std::function<double(double)>& psd, double n, int dim,
                           std::span<const double> r_grid, double rho_max,
                           std::span<const double> breakpoints = {});

// P(ρ) = 1 + N μ(S^{d-1}) ∫ r^{d-1} (G(r) - 1) Λ_{d/2-1}(2π ρ r) dr.
RadialSpectrum pcf_to_psd(const PairCorrelation& pcf, std::span<const double> rho_grid);
RadialSpectrum pcf_to_psd(const SpectralProfile& profile, std::span<const double> rho_grid);
RadialSpectrum pcf_to_psd(const std::function<double(double)>& pcf, double n, int dim,
                          std::span<const double> rho_grid, double r_max,
                          std::span<const double> breakpoints = {});

struct RealizabilityReport {
    bool psd_nonneg = true;
    bool pcf_nonneg = true;
    double min_psd = 0.0;
    double min_pcf = 0.0;
    double argmin_psd = 0.0;
    double argmin_pcf = 0.0;
    double tol = 0.0;

    bool realizable() const { return psd_nonneg && pcf_nonneg; }
};

struct RealizabilityOptions {
    double tol = 1e-9;
    BesselMode mode = BesselMode::Exact;
    FrequencyConvention convention = FrequencyConvention::Ordinary;
    // probes r in (0, probe_extent] for StepPSD, ρ in (0, probe_extent / r_min] for StepPCF
    double probe_extent = 10.0;
    std::size_t probe_nodes = 4000;
};

RealizabilityReport check_realizability(const SpectralProfile& profile,
                                        const RealizabilityOptions& options = {});
// Tabulated inputs: the missing representation is computed by the transform.
RealizabilityReport check_realizability(const RadialSpectrum& spec, std::span<const double> r_grid,
                                        double tol = 1e-3);
RealizabilityReport check_realizability(const PairCorrelation& pcf,
                                        std::span<const double> rho_grid, double tol = 1e-3);

}  // namespace sampspec
