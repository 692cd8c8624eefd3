#include "sampspec/transforms.hpp"

#include "sampspec/errors.hpp"
#include "sampspec/kernels.hpp"
#include "sampspec/quadrature.hpp"
#include "sampspec/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sampspec {

namespace {

constexpr double kPi = std::numbers::pi;

quad::Options oscillatory_options(double r) {
    quad::Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-13;
    opt.max_panel = 0.25 / r;  // quarter period of J(2π r x) in x
    return opt;
}

void require_radius(double r, const char* what) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError(std::string(what) + ": evaluation point must be finite and > 0");
    }
}

double bessel_any(double order, double z) {
    if (order == -0.5) {
        return std::sqrt(2.0 / (kPi * z)) * std::cos(z);
    }
    return specialfn::bessel_j(order, z);
}

void require_order(double order) {
    if (!(order >= 0.0 || order == -0.5) || !std::isfinite(order)) {
        throw DomainError("hankel: order must be >= 0 or -1/2");
    }
}

void check(const quad::Result& res, const char* what) {
    if (!res.converged && res.error > 1e-6 * std::max(1.0, std::abs(res.value))) {
        throw NumericError(std::string(what) + ": quadrature did not converge (estimated error " +
                           std::to_string(res.error) + ")");
    }
}

// ∫_0^upper t^{d-1} dev(t) Λ_{d/2-1}(2π s t) dt
double radial_integral(const std::function<double(double)>& dev, int dim, double s, double upper,
                       std::span<const double> breakpoints) {
    const double order = 0.5 * dim - 1.0;
    const double k = 2.0 * kPi * s;
    auto f = [&](double t) {
        const double v = dev(t);
        if (v == 0.0) {
            return 0.0;
        }
        return std::pow(t, dim - 1) * v * specialfn::normalized_bessel(order, k * t);
    };
    const auto res = quad::integrate(f, 0.0, upper, oscillatory_options(s), breakpoints);
    check(res, "radial transform");
    return res.value;
}

// Contribution of a deviation that falls linearly from `value` at x to zero at x + 1/s.
double radial_tail(double value, int dim, double s, double x) {
    if (value == 0.0) {
        return 0.0;
    }
    const double width = 1.0 / s;
    auto ramp = [=](double t) { return value * (1.0 - (t - x) / width); };
    const double order = 0.5 * dim - 1.0;
    const double k = 2.0 * kPi * s;
    auto f = [&](double t) {
        return std::pow(t, dim - 1) * ramp(t) * specialfn::normalized_bessel(order, k * t);
    };
    const auto res = quad::integrate(f, x, x + width, oscillatory_options(s));
    check(res, "radial transform tail");
    return res.value;
}

void check_grid(std::span<const double> grid, const char* what) {
    if (grid.empty()) {
        throw DomainError(std::string(what) + ": empty evaluation grid");
    }
    for (double g : grid) {
        require_radius(g, what);
    }
}

TabulatedFunction deviation_table(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> dev(y.size());
    std::transform(y.begin(), y.end(), dev.begin(), [](double v) { return v - 1.0; });
    return TabulatedFunction(x, std::move(dev));
}

std::vector<double> probe_grid(double extent, std::size_t nodes) {
    // geometric near the origin, uniform elsewhere
    std::vector<double> grid;
    const std::size_t half = std::max<std::size_t>(nodes / 4, 2);
    const double lo = 1e-6 * extent;
    for (std::size_t i = 0; i < half; ++i) {
        grid.push_back(lo * std::pow(0.01 / 1e-6, static_cast<double>(i) / static_cast<double>(half)));
    }
    for (std::size_t i = 1; i <= nodes; ++i) {
        const double v = extent * static_cast<double>(i) / static_cast<double>(nodes);
        if (v > grid.back()) {
            grid.push_back(v);
        }
    }
    return grid;
}

template <class Fn>
void track_min(std::span<const double> grid, Fn&& fn, double& min_value, double& argmin) {
    min_value = fn(grid.front());
    argmin = grid.front();
    for (double g : grid) {
        const double v = fn(g);
        if (v < min_value) {
            min_value = v;
            argmin = g;
        }
    }
}

void min_of(const std::vector<double>& grid, const std::vector<double>& values, double& min_value,
            double& argmin) {
    const auto it = std::min_element(values.begin(), values.end());
    min_value = *it;
    argmin = grid[static_cast<std::size_t>(it - values.begin())];
}

}  // namespace

TabulatedFunction::TabulatedFunction(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.empty() || x_.size() != y_.size()) {
        throw DomainError("TabulatedFunction: nodes and values must be non-empty and equal length");
    }
    if (!(x_.front() >= 0.0)) {
        throw DomainError("TabulatedFunction: nodes must be >= 0");
    }
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw DomainError("TabulatedFunction: nodes must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < y_.size(); ++i) {
        if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
            throw DomainError("TabulatedFunction: non-finite sample");
        }
    }
}

double TabulatedFunction::operator()(double t) const {
    if (t <= x_.front()) {
        return y_.front();
    }
    if (t >= x_.back()) {
        return y_.back();
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const auto i = static_cast<std::size_t>(it - x_.begin());
    const double w = (t - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return y_[i - 1] + w * (y_[i] - y_[i - 1]);
}

double hankel(double order, const std::function<double(double)>& f, double x_max, double r,
              std::span<const double> breakpoints) {
    require_order(order);
    require_radius(r, "hankel");
    if (!(x_max > 0.0) || !std::isfinite(x_max)) {
        throw DomainError("hankel: x_max must be finite and > 0");
    }
    auto integrand = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw DomainError("hankel: non-finite function value");
        }
        return v == 0.0 ? 0.0 : x * v * bessel_any(order, 2.0 * kPi * r * x);
    };
    const auto res = quad::integrate(integrand, 0.0, x_max, oscillatory_options(r), breakpoints);
    check(res, "hankel");
    return 2.0 * kPi * res.value;
}

double hankel(double order, const TabulatedFunction& f, double r) {
    const double x_max = f.x_max();
    double value = hankel(order, [&](double x) { return f(x); }, x_max, r, f.nodes());
    const double last = f.last();
    if (last != 0.0) {
        const double width = 1.0 / r;
        value += hankel(order,
                        [&](double x) {
                            return x <= x_max ? 0.0 : last * (1.0 - (x - x_max) / width);
                        },
                        x_max + width, r, std::span<const double>(&x_max, 1));
    }
    return value;
}

std::vector<double> default_radius_grid() { return uniform_grid(0.5, 512); }

std::vector<double> default_frequency_grid(double rho_z) {
    if (!(rho_z > 0.0)) {
        throw DomainError("default_frequency_grid: rho_z must be > 0");
    }
    return uniform_grid(4.0 * rho_z, 512);
}

PairCorrelation psd_to_pcf(const std::function<double(double)>& psd, double n, int dim,
                           std::span<const double> r_grid, double rho_max,
                           std::span<const double> breakpoints) {
    if (!(n >= 1.0) || dim < 1) {
        throw DomainError("psd_to_pcf: missing N or d metadata");
    }
    check_grid(r_grid, "psd_to_pcf");
    const double scale = specialfn::sphere_measure(dim).surface / n;
    auto dev = [&](double rho) { return psd(rho) - 1.0; };

    PairCorrelation out;
    out.r_grid.assign(r_grid.begin(), r_grid.end());
    out.values.resize(r_grid.size());
    out.n_samples = n;
    out.dim = dim;
    out.intensity = n;
    kernels::map_nodes_omp(r_grid, [&](double r) {
        return 1.0 + scale * radial_integral(dev, dim, r, rho_max, breakpoints);
    }, out.values);
    return out;
}

PairCorrelation psd_to_pcf(const RadialSpectrum& spec, std::span<const double> r_grid) {
    validate(spec);
    check_grid(r_grid, "psd_to_pcf");
    const auto table = deviation_table(spec.rho_grid, spec.values);
    const double scale = specialfn::sphere_measure(spec.dim).surface / spec.n_samples;
    auto dev = [&](double rho) { return table(rho); };

    PairCorrelation out;
    out.r_grid.assign(r_grid.begin(), r_grid.end());
    out.values.resize(r_grid.size());
    out.n_samples = spec.n_samples;
    out.dim = spec.dim;
    out.intensity = spec.n_samples;
    kernels::map_nodes_omp(r_grid, [&](double r) {
        const double body = radial_integral(dev, spec.dim, r, table.x_max(), table.nodes());
        return 1.0 + scale * (body + radial_tail(table.last(), spec.dim, r, table.x_max()));
    }, out.values);
    return out;
}

PairCorrelation psd_to_pcf(const SpectralProfile& profile, std::span<const double> r_grid,
                           FrequencyConvention convention) {
    validate(profile);
    const double n = profile.n_samples;
    const int dim = profile.dim;
    switch (profile.kind) {
        case ProfileKind::Flat:
            return psd_to_pcf([](double) { return 1.0; }, n, dim, r_grid, 1.0);
        case ProfileKind::StepPSD: {
            const double rho_z = profile.param;
            return psd_to_pcf([rho_z](double rho) { return rho <= rho_z ? 0.0 : 1.0; }, n, dim,
                              r_grid, rho_z);
        }
        case ProfileKind::StepPCF: {
            // deviation envelope has decayed by ~1e-4 at Bessel argument 400
            const double rho_max = 400.0 / (frequency_scale(convention) * profile.param);
            return psd_to_pcf([&](double rho) { return eval_psd(profile, rho, convention); }, n,
                              dim, r_grid, rho_max);
        }
    }
    throw DomainError("psd_to_pcf: unknown profile kind");
}

RadialSpectrum pcf_to_psd(const std::function<double(double)>& pcf, double n, int dim,
                          std::span<const double> rho_grid, double r_max,
                          std::span<const double> breakpoints) {
    if (!(n >= 1.0) || dim < 1) {
        throw DomainError("pcf_to_psd: missing N or d metadata");
    }
    check_grid(rho_grid, "pcf_to_psd");
    const double scale = n * specialfn::sphere_measure(dim).surface;
    auto dev = [&](double r) { return pcf(r) - 1.0; };

    RadialSpectrum out;
    out.rho_grid.assign(rho_grid.begin(), rho_grid.end());
    out.values.resize(rho_grid.size());
    out.n_samples = n;
    out.dim = dim;
    kernels::map_nodes_omp(rho_grid, [&](double rho) {
        return 1.0 + scale * radial_integral(dev, dim, rho, r_max, breakpoints);
    }, out.values);
    return out;
}

RadialSpectrum pcf_to_psd(const PairCorrelation& pcf, std::span<const double> rho_grid) {
    validate(pcf);
    check_grid(rho_grid, "pcf_to_psd");
    const auto table = deviation_table(pcf.r_grid, pcf.values);
    const double scale = pcf.n_samples * specialfn::sphere_measure(pcf.dim).surface;
    auto dev = [&](double r) { return table(r); };

    RadialSpectrum out;
    out.rho_grid.assign(rho_grid.begin(), rho_grid.end());
    out.values.resize(rho_grid.size());
    out.n_samples = pcf.n_samples;
    out.dim = pcf.dim;
    kernels::map_nodes_omp(rho_grid, [&](double rho) {
        const double body = radial_integral(dev, pcf.dim, rho, table.x_max(), table.nodes());
        return 1.0 + scale * (body + radial_tail(table.last(), pcf.dim, rho, table.x_max()));
    }, out.values);
    return out;
}

RadialSpectrum pcf_to_psd(const SpectralProfile& profile, std::span<const double> rho_grid) {
    validate(profile);
    const double n = profile.n_samples;
    const int dim = profile.dim;
    switch (profile.kind) {
        case ProfileKind::Flat:
            return pcf_to_psd([](double) { return 1.0; }, n, dim, rho_grid, 1.0);
        case ProfileKind::StepPCF: {
            const double r_min = profile.param;
            return pcf_to_psd([r_min](double r) { return r <= r_min ? 0.0 : 1.0; }, n, dim,
                              rho_grid, r_min);
        }
        case ProfileKind::StepPSD: {
            const double r_max = 400.0 / (2.0 * kPi * profile.param);
            return pcf_to_psd([&](double r) { return eval_pcf(profile, r); }, n, dim, rho_grid,
                              r_max);
        }
    }
    throw DomainError("pcf_to_psd: unknown profile kind");
}

RealizabilityReport check_realizability(const SpectralProfile& profile,
                                        const RealizabilityOptions& options) {
    validate(profile);
    RealizabilityReport rep;
    rep.tol = options.tol;
    switch (profile.kind) {
        case ProfileKind::Flat:
            rep.min_psd = 1.0;
            rep.min_pcf = 1.0;
            break;
        case ProfileKind::StepPSD: {
            rep.min_psd = 0.0;
            rep.argmin_psd = profile.param;
            const auto grid = probe_grid(options.probe_extent, options.probe_nodes);
            track_min(grid, [&](double r) { return eval_pcf(profile, r, options.mode); },
                      rep.min_pcf, rep.argmin_pcf);
            break;
        }
        case ProfileKind::StepPCF: {
            rep.min_pcf = 0.0;
            rep.argmin_pcf = profile.param;
            const auto grid = probe_grid(options.probe_extent / profile.param, options.probe_nodes);
            track_min(grid, [&](double rho) { return eval_psd(profile, rho, options.convention); },
                      rep.min_psd, rep.argmin_psd);
            break;
        }
    }
    rep.psd_nonneg = rep.min_psd >= -rep.tol;
    rep.pcf_nonneg = rep.min_pcf >= -rep.tol;
    return rep;
}

RealizabilityReport check_realizability(const RadialSpectrum& spec, std::span<const double> r_grid,
                                        double tol) {
    validate(spec);
    const auto pcf = psd_to_pcf(spec, r_grid);
    RealizabilityReport rep;
    rep.tol = tol;
    min_of(spec.rho_grid, spec.values, rep.min_psd, rep.argmin_psd);
    min_of(pcf.r_grid, pcf.values, rep.min_pcf, rep.argmin_pcf);
    rep.psd_nonneg = rep.min_psd >= -tol;
    rep.pcf_nonneg = rep.min_pcf >= -tol;
    return rep;
}

RealizabilityReport check_realizability(const PairCorrelation& pcf,
                                        std::span<const double> rho_grid, double tol) {
    validate(pcf);
    const auto spec = pcf_to_psd(pcf, rho_grid);
    RealizabilityReport rep;
    rep.tol = tol;
    min_of(spec.rho_grid, spec.values, rep.min_psd, rep.argmin_psd);
    min_of(pcf.r_grid, pcf.values, rep.min_pcf, rep.argmin_pcf);
    rep.psd_nonneg = rep.min_psd >= -tol;
    rep.pcf_nonneg = rep.min_pcf >= -tol;
    return rep;
}

}  // namespace sampspec
