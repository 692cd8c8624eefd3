#pragma once

#include "sampspec/bounds.hpp"
#include "sampspec/pointset.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sampspec {

// a cos(2π k.x) + b sin(2π k.x)
struct FourierTerm {
    std::vector<int> k;
    double a = 0.0;
    double b = 0.0;
};

enum class LossShape { Cosine, TruncatedFourier };

// Real trigonometric polynomial on the torus; R_P and the spectrum are exact.
class TestLoss {
public:
    static TestLoss cosine(std::vector<int> k);
    static TestLoss truncated_fourier(int dim, double constant, std::vector<FourierTerm> terms);
    static TestLoss constant(int dim, double value);

    LossShape shape() const { return shape_; }
    int dim() const { return dim_; }
    double population_mean() const { return constant_; }
    const std::vector<FourierTerm>& terms() const { return terms_; }

    double eval(std::span<const double> x) const;
    // R_S = (1/N) Σ l(x_j)
    double empirical_mean(const PointSet& ps) const;
    // (1/N) Σ_{k != 0} |c_k|^2 P(k) for the given point set
    double spectral_term(const PointSet& ps) const;
    // Σ_{k != 0} |c_k|^2 = Var_x l(x)
    double spectral_mass() const;

private:
    TestLoss(LossShape shape, int dim, double constant, std::vector<FourierTerm> terms);
    double fluctuation(std::span<const double> x) const;

    LossShape shape_;
    int dim_;
    double constant_;
    std::vector<FourierTerm> terms_;
};

// Sampler used by the Monte Carlo experiments. Blue-noise synthesis is not
// provided, so only Random and PoissonDisk are accepted.
struct SamplerSpec {
    Sampler kind = Sampler::Random;
    int dim = 1;
    std::size_t n = 1;        // Random
    double r_min = 0.0;       // PoissonDisk
    std::optional<std::uint64_t> max_attempts;

    PointSet draw(std::uint64_t seed) const;
};

struct EmpiricalGenError {
    double gen_error = 0.0;       // mean (R_P - R_S)^2
    double gen_error_stderr = 0.0;
    double bias = 0.0;            // mean(R_S) - R_P
    double bias_stderr = 0.0;
    double spectral_sum = 0.0;    // mean over realizations of (1/N_i) Σ |c_k|^2 P_i(k)
    double spectral_stderr = 0.0;
    double mean_points = 0.0;
    std::size_t realizations = 0;
};

// Realization i uses seed + i; results are reduced in index order.
EmpiricalGenError empirical_gen_error(const TestLoss& loss, const SamplerSpec& sampler,
                                      std::size_t n_realizations, std::uint64_t seed);

struct IdentityReport {
    EmpiricalGenError data;
    double empirical = 0.0;
    double spectral = 0.0;
    double relative_deviation = 0.0;  // |empirical - spectral| / spectral
};

IdentityReport validate_spectral_identity(const TestLoss& loss, const SamplerSpec& sampler,
                                          std::size_t n_realizations, std::uint64_t seed);

struct SweepResult {
    std::string axis;   // "N" or "d"
    std::string label;
    std::vector<double> axis_values;
    std::vector<double> values;
    std::vector<double> log_values;
    std::vector<std::string> regimes;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS of the log-log fit
    bool degenerate = false;
    std::vector<std::size_t> interior_maxima;
    std::vector<std::size_t> interior_minima;
    std::vector<std::string> notes;
};

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

// Ordinary least squares of log y on log x.
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

// n points from lo to hi, evenly spaced in log.
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

// Requires at least 5 increasing N spanning two decades.
SweepResult convergence_sweep(Sampler sampler, const LossSpectrumModel& loss, int dim,
                              std::span<const double> n_list, Case c,
                              PdsMethod method = PdsMethod::Quadrature);

enum class DimensionMetric {
    RhoZStar,
    NMinForRhoZ,
    RMinStar,
    NMinForRMin,
    RelativeRhoZ,
    RelativeRMin,
};

struct DimensionParams {
    double n = 10.0;
    double rho_z = 5.0;
    double r_min = 0.1;
};

SweepResult dimension_sweep(DimensionMetric metric, const DimensionParams& params,
                            std::span<const int> d_list);

// log of the metric at a single dimension
double log_dimension_metric(DimensionMetric metric, const DimensionParams& params, int dim);

std::string to_string(DimensionMetric m);
DimensionMetric dimension_metric_from_string(const std::string& name);

}  // namespace sampspec
