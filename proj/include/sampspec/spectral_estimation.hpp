#pragma once

#include "sampspec/pointset.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sampspec {

// Radially averaged power spectrum tabulated on frequencies rho > 0.
struct RadialSpectrum {
    std::vector<double> rho_grid;  // strictly increasing, DC excluded
    std::vector<double> values;
    double n_samples = 0.0;
    int dim = 0;
};

// Pair correlation function tabulated on radii r > 0. intensity = N on the
// unit-volume torus.
struct PairCorrelation {
    std::vector<double> r_grid;  // strictly increasing
    std::vector<double> values;
    double n_samples = 0.0;
    int dim = 0;
    double intensity = 0.0;
};

// Throws DomainError unless grid/value sizes agree, the grid is strictly
// increasing and positive, and N >= 1, d >= 1.
void validate(const RadialSpectrum& spec);
void validate(const PairCorrelation& pcf);

// P(k) = (1/N) |sum_j exp(-2πi k.x_j)|^2 at a single integer frequency.
double psd_at(const PointSet& ps, std::span<const int> k);

// Evaluates P(k) on every integer frequency 0 < |k| <= k_max and averages
// within unit-width radial bins centred at the integers.
RadialSpectrum estimate_psd(const PointSet& ps, int k_max);

// Bin-wise mean of spectra sharing one grid.
RadialSpectrum average_spectra(std::span<const RadialSpectrum> spectra);

// 0.5 * N^{-1/d}
double default_pcf_bandwidth(std::size_t n, int dim);

// Gaussian-kernel estimate over all ordered pair distances, normalised by
// N (N - 1) μ(S^{d-1}) r^{d-1} so that uniform i.i.d. points give G = 1 in
// expectation. r_grid must lie in (0, 0.5].
PairCorrelation estimate_pcf(const PointSet& ps, std::span<const double> r_grid,
                             std::optional<double> bandwidth = std::nullopt);

PairCorrelation average_pcfs(std::span<const PairCorrelation> pcfs);

// n evenly spaced nodes on (0, hi]: hi/n, 2 hi/n, ..., hi.
std::vector<double> uniform_grid(double hi, std::size_t n);

}  // namespace sampspec
