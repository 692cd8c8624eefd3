#include "sampspec/spectral_estimation.hpp"

#include "sampspec/errors.hpp"
#include "sampspec/kernels.hpp"
#include "sampspec/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sampspec {

namespace {

void validate_grid(const std::vector<double>& grid, const std::vector<double>& values, double n,
                   int dim, const char* what) {
    if (grid.empty() || grid.size() != values.size()) {
        throw DomainError(std::string(what) + ": grid and values must be non-empty and equal length");
    }
    if (!(grid.front() > 0.0)) {
        throw DomainError(std::string(what) + ": grid must be strictly positive");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw DomainError(std::string(what) + ": grid must be strictly increasing");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw DomainError(std::string(what) + ": non-finite value");
        }
    }
    if (!(n >= 1.0) || dim < 1) {
        throw DomainError(std::string(what) + ": missing N or d metadata");
    }
}

}  // namespace

void validate(const RadialSpectrum& spec) {
    validate_grid(spec.rho_grid, spec.values, spec.n_samples, spec.dim, "RadialSpectrum");
}

void validate(const PairCorrelation& pcf) {
    validate_grid(pcf.r_grid, pcf.values, pcf.n_samples, pcf.dim, "PairCorrelation");
}

double psd_at(const PointSet& ps, std::span<const int> k) {
    if (k.size() != static_cast<std::size_t>(ps.dim())) {
        throw DomainError("psd_at: frequency dimension differs from point set");
    }
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const auto x = ps.point(j);
        double dot = 0.0;
        for (std::size_t a = 0; a < k.size(); ++a) {
            dot += k[a] * x[a];
        }
        re += std::cos(2.0 * std::numbers::pi * dot);
        im -= std::sin(2.0 * std::numbers::pi * dot);
    }
    return (re * re + im * im) / static_cast<double>(ps.size());
}

RadialSpectrum estimate_psd(const PointSet& ps, int k_max) {
    if (k_max < 1) {
        throw DomainError("estimate_psd: k_max must be >= 1");
    }
    const auto lattice = kernels::make_lattice(ps.dim(), k_max);
    std::vector<double> per_freq(lattice.size());
    kernels::psd_lattice_omp(ps, lattice, per_freq);

    // bin b holds |k| in [b - 1/2, b + 1/2); summed in lattice order
    std::vector<double> sum(static_cast<std::size_t>(k_max) + 1, 0.0);
    std::vector<std::size_t> count(sum.size(), 0);
    for (std::size_t f = 0; f < lattice.size(); ++f) {
        const auto bin = static_cast<std::size_t>(
            std::floor(std::sqrt(static_cast<double>(lattice.norm_sq(f))) + 0.5));
        if (bin < sum.size()) {
            sum[bin] += per_freq[f];
            ++count[bin];
        }
    }
    RadialSpectrum out;
    out.n_samples = static_cast<double>(ps.size());
    out.dim = ps.dim();
    for (std::size_t b = 1; b < sum.size(); ++b) {
        if (count[b] > 0) {
            out.rho_grid.push_back(static_cast<double>(b));
            out.values.push_back(sum[b] / static_cast<double>(count[b]));
        }
    }
    return out;
}

RadialSpectrum average_spectra(std::span<const RadialSpectrum> spectra) {
    if (spectra.empty()) {
        throw DomainError("average_spectra: nothing to average");
    }
    RadialSpectrum out = spectra.front();
    double n_sum = 0.0;
    std::fill(out.values.begin(), out.values.end(), 0.0);
    for (const auto& s : spectra) {
        if (s.rho_grid != out.rho_grid) {
            throw DomainError("average_spectra: grids differ");
        }
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            out.values[i] += s.values[i];
        }
        n_sum += s.n_samples;
    }
    const auto m = static_cast<double>(spectra.size());
    for (double& v : out.values) {
        v /= m;
    }
    out.n_samples = n_sum / m;
    return out;
}

double default_pcf_bandwidth(std::size_t n, int dim) {
    return 0.5 * std::pow(static_cast<double>(n), -1.0 / dim);
}

PairCorrelation estimate_pcf(const PointSet& ps, std::span<const double> r_grid,
                             std::optional<double> bandwidth) {
    const std::size_t n = ps.size();
    if (n < 2) {
        throw DomainError("estimate_pcf: need at least two points");
    }
    const double h = bandwidth.value_or(default_pcf_bandwidth(n, ps.dim()));
    if (!(h > 0.0)) {
        throw DomainError("estimate_pcf: bandwidth must be > 0");
    }
    for (double r : r_grid) {
        if (!(r > 0.0 && r <= 0.5)) {
            throw DomainError("estimate_pcf: radii must lie in (0, 0.5]");
        }
    }

    auto dist = kernels::pair_distances_omp(ps);
    std::sort(dist.begin(), dist.end());

    const auto sphere = specialfn::sphere_measure(ps.dim());
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * h);
    const int dim = ps.dim();

    PairCorrelation out;
    out.r_grid.assign(r_grid.begin(), r_grid.end());
    out.values.resize(r_grid.size());
    out.n_samples = static_cast<double>(n);
    out.dim = dim;
    out.intensity = static_cast<double>(n);

    kernels::map_nodes_omp(r_grid, [&](double r) {
        const auto lo = std::lower_bound(dist.begin(), dist.end(), r - 8.0 * h);
        const auto hi = std::upper_bound(dist.begin(), dist.end(), r + 8.0 * h);
        double density = 0.0;
        for (auto it = lo; it != hi; ++it) {
            const double z = (r - *it) / h;
            density += std::exp(-0.5 * z * z);
        }
        // each unordered pair counts for both orderings
        density *= 2.0 * norm;
        return density / (pairs * sphere.surface * std::pow(r, dim - 1));
    }, out.values);
    return out;
}

PairCorrelation average_pcfs(std::span<const PairCorrelation> pcfs) {
    if (pcfs.empty()) {
        throw DomainError("average_pcfs: nothing to average");
    }
    PairCorrelation out = pcfs.front();
    std::fill(out.values.begin(), out.values.end(), 0.0);
    double n_sum = 0.0;
    for (const auto& p : pcfs) {
        if (p.r_grid != out.r_grid) {
            throw DomainError("average_pcfs: grids differ");
        }
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            out.values[i] += p.values[i];
        }
        n_sum += p.n_samples;
    }
    const auto m = static_cast<double>(pcfs.size());
    for (double& v : out.values) {
        v /= m;
    }
    out.n_samples = n_sum / m;
    out.intensity = out.n_samples;
    return out;
}

std::vector<double> uniform_grid(double hi, std::size_t n) {
    if (!(hi > 0.0) || n == 0) {
        throw DomainError("uniform_grid: need hi > 0 and n >= 1");
    }
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = hi * static_cast<double>(i + 1) / static_cast<double>(n);
    }
    return grid;
}

}  // namespace sampspec
