#include "sampspec/bounds.hpp"

#include "sampspec/errors.hpp"
#include "sampspec/quadrature.hpp"
#include "sampspec/specialfn.hpp"
#include "sampspec/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

namespace sampspec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_n_d(double n, int dim, const char* what) {
    if (!(n >= 1.0) || !std::isfinite(n)) {
        throw DomainError(std::string(what) + ": N must be finite and >= 1");
    }
    if (dim < 1) {
        throw DomainError(std::string(what) + ": d must be >= 1");
    }
}

quad::Options tight(double max_panel = 0.0) {
    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 0.0;
    opt.max_depth = 40;
    opt.max_panel = max_panel;
    return opt;
}

void check(const quad::Result& res, const char* what) {
    if (!res.converged && res.error > 1e-8 * std::abs(res.value)) {
        throw NumericError(std::string(what) + ": quadrature did not converge, achieved absolute error " +
                           std::to_string(res.error) + " on value " + std::to_string(res.value));
    }
}

double ipow(double x, int d) { return std::pow(x, d); }

// Sampler spectrum as seen by the radial integral.
struct SamplerEval {
    std::function<double(double)> psd;
    std::vector<double> breakpoints;
    double max_panel = 0.0;
    double n = 1.0;
    int dim = 1;
};

SamplerEval from_profile(const SpectralProfile& p, FrequencyConvention convention) {
    validate(p);
    SamplerEval s;
    s.n = p.n_samples;
    s.dim = p.dim;
    switch (p.kind) {
        case ProfileKind::Flat:
            s.psd = [](double) { return 1.0; };
            break;
        case ProfileKind::StepPSD: {
            const double rho_z = p.param;
            s.psd = [rho_z](double rho) { return rho <= rho_z ? 0.0 : 1.0; };
            s.breakpoints.push_back(rho_z);
            break;
        }
        case ProfileKind::StepPCF: {
            const double fill = packing_fraction(p.param, p.n_samples, p.dim);
            const double r = p.param;
            const int dim = p.dim;
            s.psd = [=](double rho) { return rho <= 0.0 ? 1.0 - fill : pds_psd(fill, r, dim, rho, convention); };
            s.max_panel = 0.5 * kPi / (frequency_scale(convention) * r);
            break;
        }
    }
    return s;
}

SamplerEval from_spectrum(const RadialSpectrum& spec) {
    validate(spec);
    auto table = std::make_shared<TabulatedFunction>(spec.rho_grid, spec.values);
    SamplerEval s;
    s.psd = [table](double rho) { return (*table)(rho); };
    s.breakpoints = spec.rho_grid;
    s.n = spec.n_samples;
    s.dim = spec.dim;
    return s;
}

// ∫_0^{ρ_0} ρ^{d-1} P_S dρ for the ideal Poisson-disk spectrum, via t = κ ρ r.
double pds_low_band(double fill, double r, int dim, double rho_0, double kappa, double& err) {
    const double a = kappa * rho_0 * r;
    const double v = 0.5 * dim;
    auto f = [=](double t) { return ipow(t, dim - 1) * specialfn::one_minus_normalized_bessel(v, t); };
    const auto res = quad::integrate(f, 0.0, a, tight(0.5 * kPi));
    check(res, "pds low band");
    const double scale = ipow(kappa * r, -dim);
    err += fill * scale * res.error;
    return (1.0 - fill) * ipow(rho_0, dim) / dim + fill * scale * res.value;
}

// ∫_{ρ_0}^∞ ρ^{-2} P_S dρ for the ideal Poisson-disk spectrum.
double pds_tail(double fill, double r, int dim, double rho_0, double kappa, double& err) {
    double tail_err = 0.0;
    const double body = bessel_tail_integral(0.5 * dim, kappa * rho_0 * r, &tail_err);
    err += fill * kappa * r * tail_err;
    return (1.0 - fill) / rho_0 + fill * kappa * r * body;
}

double generic_low_band(const SamplerEval& s, double rho_0, double& err) {
    const int dim = s.dim;
    auto f = [&](double rho) { return ipow(rho, dim - 1) * s.psd(rho); };
    const auto res = quad::integrate(f, 0.0, rho_0, tight(s.max_panel), s.breakpoints);
    check(res, "gen_error_radial");
    err += res.error;
    return res.value;
}

BoundResult finish(double scale, double low, double tail, double err, const LossSpectrumModel& loss,
                   Case c) {
    BoundResult out;
    out.regime = Regime::Numeric;
    out.components["low_band"] = scale * loss.c_l * low;
    double value = scale * loss.c_l * low;
    double abs_err = scale * loss.c_l * err;
    if (c == Case::Worst) {
        out.components["tail"] = scale * loss.c_l_prime * tail;
        value += scale * loss.c_l_prime * tail;
        abs_err = scale * (loss.c_l + loss.c_l_prime) * err;
    }
    out.components["quadrature_error"] = abs_err;
    if (value < 0.0) {
        value = 0.0;
        out.clamped = true;
    }
    out.value = value;
    return out;
}

void require_case(const LossSpectrumModel& loss, Case c) {
    validate(loss);
    if (c == Case::Worst && loss.kind != LossKind::WorstCase) {
        throw DomainError("worst case needs a worst-case loss model with c_l'");
    }
}

BoundResult tabulated_loss(const SamplerEval& s, const RadialSpectrum& loss) {
    validate(loss);
    if (loss.dim != s.dim) {
        throw DomainError("gen_error_radial: sampler and loss dimensions differ");
    }
    if (loss.values.back() != 0.0) {
        throw NumericError("gen_error_radial: loss spectrum does not vanish at its last node; the "
                           "integral diverges");
    }
    const TabulatedFunction table(loss.rho_grid, loss.values);
    const int dim = s.dim;
    auto f = [&](double rho) {
        const double l = table(rho);
        return l == 0.0 ? 0.0 : ipow(rho, dim - 1) * s.psd(rho) * l;
    };
    std::vector<double> cuts = s.breakpoints;
    cuts.insert(cuts.end(), loss.rho_grid.begin(), loss.rho_grid.end());
    const auto res = quad::integrate(f, 0.0, table.x_max(), tight(s.max_panel), cuts);
    check(res, "gen_error_radial");
    const double scale = specialfn::sphere_measure(dim).surface / s.n;
    BoundResult out;
    out.regime = Regime::Numeric;
    out.value = std::max(0.0, scale * res.value);
    out.clamped = scale * res.value < 0.0;
    out.components["quadrature_error"] = scale * res.error;
    return out;
}

}  // namespace

LossSpectrumModel LossSpectrumModel::best(double c_l, double rho_0) {
    LossSpectrumModel m{LossKind::BestCase, c_l, 0.0, rho_0};
    validate(m);
    return m;
}

LossSpectrumModel LossSpectrumModel::worst(double c_l, double c_l_prime, double rho_0) {
    LossSpectrumModel m{LossKind::WorstCase, c_l, c_l_prime, rho_0};
    validate(m);
    return m;
}

double LossSpectrumModel::eval(double rho, int dim) const {
    if (rho < rho_0) {
        return c_l;
    }
    return kind == LossKind::BestCase ? 0.0 : c_l_prime * std::pow(rho, -dim - 1);
}

void validate(const LossSpectrumModel& loss) {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(loss.c_l)) {
        throw DomainError("loss model: c_l must be finite and > 0");
    }
    if (!positive(loss.rho_0)) {
        throw DomainError("loss model: rho_0 must be finite and > 0");
    }
    if (loss.kind == LossKind::WorstCase && !positive(loss.c_l_prime)) {
        throw DomainError("loss model: c_l' must be finite and > 0");
    }
}

double bessel_tail_integral(double order, double a, double* abs_error) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw DomainError("bessel_tail_integral: lower limit must be finite and >= 0");
    }
    // |Λ_v(t)| <= amp · t^{-v-1/2} away from the origin
    const double amp = 1.1 * std::sqrt(2.0 / kPi) *
                       std::exp(specialfn::log_gamma(order + 1.0) + order * std::log(2.0));
    auto f = [order](double t) {
        return specialfn::one_minus_normalized_bessel(order, t) / (t * t);
    };
    auto remainder = [&](double t) { return amp * std::pow(t, -order - 1.5) / (order + 1.5); };

    double lo = a;
    double hi = std::max(a, std::max(10.0, 2.0 * order * order)) + 64.0 * kPi;
    double body = 0.0;
    double err = 0.0;
    while (true) {
        const auto res = quad::integrate(f, lo, hi, tight(0.5 * kPi));
        check(res, "bessel_tail_integral");
        body += res.value;
        err += res.error;
        // beyond hi: ∫ t^{-2} = 1/hi, and the Λ part is bounded by the envelope
        if (remainder(hi) <= 1e-8 * (body + 1.0 / hi) || hi > 1e8) {
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    if (abs_error) {
        *abs_error = err + remainder(hi);
    }
    return body + 1.0 / hi;
}

BoundResult gen_error_radial(const SpectralProfile& sampler, const LossSpectrumModel& loss, Case c,
                             FrequencyConvention convention) {
    require_case(loss, c);
    validate(sampler);
    const int dim = sampler.dim;
    const double rho_0 = loss.rho_0;
    const double scale = specialfn::sphere_measure(dim).surface / sampler.n_samples;
    double err = 0.0;
    double low = 0.0;
    double tail = 0.0;
    switch (sampler.kind) {
        case ProfileKind::Flat:
        case ProfileKind::StepPSD: {
            low = generic_low_band(from_profile(sampler, convention), rho_0, err);
            const double edge = sampler.kind == ProfileKind::Flat ? rho_0 : std::max(rho_0, sampler.param);
            tail = 1.0 / edge;
            break;
        }
        case ProfileKind::StepPCF: {
            const double fill = packing_fraction(sampler.param, sampler.n_samples, dim);
            const double kappa = frequency_scale(convention);
            low = pds_low_band(fill, sampler.param, dim, rho_0, kappa, err);
            if (c == Case::Worst) {
                tail = pds_tail(fill, sampler.param, dim, rho_0, kappa, err);
            }
            break;
        }
    }
    return finish(scale, low, tail, err, loss, c);
}

BoundResult gen_error_radial(const RadialSpectrum& sampler, const LossSpectrumModel& loss, Case c) {
    require_case(loss, c);
    const auto s = from_spectrum(sampler);
    const double scale = specialfn::sphere_measure(s.dim).surface / s.n;
    double err = 0.0;
    const double low = generic_low_band(s, loss.rho_0, err);
    double tail = 0.0;
    if (c == Case::Worst) {
        const double last = sampler.rho_grid.back();
        const double edge = std::max(loss.rho_0, last);
        if (last > loss.rho_0) {
            auto f = [&](double rho) { return s.psd(rho) / (rho * rho); };
            const auto res = quad::integrate(f, loss.rho_0, last, tight(), s.breakpoints);
            check(res, "gen_error_radial");
            tail += res.value;
            err += res.error;
        }
        // P held at its last tabulated value beyond the grid
        tail += sampler.values.back() / edge;
    }
    return finish(scale, low, tail, err, loss, c);
}

BoundResult gen_error_radial(const SpectralProfile& sampler, const RadialSpectrum& loss,
                             FrequencyConvention convention) {
    return tabulated_loss(from_profile(sampler, convention), loss);
}

BoundResult gen_error_radial(const RadialSpectrum& sampler, const RadialSpectrum& loss) {
    return tabulated_loss(from_spectrum(sampler), loss);
}

BoundResult bound_random(const LossSpectrumModel& loss, double n, int dim, Case c) {
    require_case(loss, c);
    require_n_d(n, dim, "bound_random");
    const double mu = specialfn::sphere_measure(dim).surface;
    BoundResult out;
    out.regime = Regime::AboveCutoff;
    const double best = mu * loss.c_l * std::pow(loss.rho_0, dim) / (n * dim);
    out.components["random_baseline"] = best;
    out.value = best;
    if (c == Case::Worst) {
        const double gap = mu * loss.c_l_prime / (n * loss.rho_0);
        out.components["tail"] = gap;
        out.value = best + gap;
    }
    return out;
}

BoundResult bound_bluenoise(const LossSpectrumModel& loss, double n, int dim, Case c) {
    require_case(loss, c);
    require_n_d(n, dim, "bound_bluenoise");
    const auto sphere = specialfn::sphere_measure(dim);
    const double rho_z = max_zero_region(n, dim);
    BoundResult out;
    out.components["rho_z_star"] = rho_z;
    const bool below = loss.rho_0 <= rho_z;

    double best = 0.0;
    if (!below) {
        const double random_best = bound_random(loss, n, dim, Case::Best).value;
        // μ c_l Γ(1 + d/2) / (d π^{d/2})
        const double reduction = loss.c_l * std::exp(sphere.log_surface +
                                                     specialfn::log_gamma(1.0 + 0.5 * dim) -
                                                     0.5 * dim * std::log(kPi) - std::log(dim));
        out.components["random_baseline"] = random_best;
        out.components["reduction"] = reduction;
        best = random_best - reduction;
        if (best < 0.0) {
            best = 0.0;
            out.clamped = true;
        }
    }

    if (c == Case::Best) {
        out.value = best;
        out.regime = below ? Regime::Zero : Regime::AboveCutoff;
        return out;
    }
    if (below) {
        out.value = sphere.surface * loss.c_l_prime / (n * rho_z);
        out.regime = Regime::BelowCutoff;
    } else {
        const double gap = sphere.surface * loss.c_l_prime / (n * loss.rho_0);
        out.components["tail"] = gap;
        out.value = best + gap;
        out.regime = Regime::AboveCutoff;
    }
    return out;
}

BoundResult bound_pds(const LossSpectrumModel& loss, double n, int dim, Case c, PdsMethod method,
                      FrequencyConvention convention) {
    require_case(loss, c);
    require_n_d(n, dim, "bound_pds");
    const double r_star = max_rmin(n, dim);
    const double mu = specialfn::sphere_measure(dim).surface;
    const double kappa = frequency_scale(convention);
    const double random_best = bound_random(loss, n, dim, Case::Best).value;

    if (method == PdsMethod::AppendixClosedForm) {
        if (c != Case::Best) {
            throw DomainError("bound_pds: the closed form covers the best case only");
        }
        // μ c_l Γ^{2/d}(1 + d/2) ρ_0^{d+2} / (8π (1 + d/2)^2 N^{1+2/d}), written for
        // J(ρ r); the ordinary-frequency kernel J(2π ρ r) scales it by κ^2.
        const double half = 0.5 * dim;
        const double log_value = std::log(mu * loss.c_l) +
                                 (2.0 / dim) * specialfn::log_gamma(1.0 + half) +
                                 (dim + 2.0) * std::log(loss.rho_0) -
                                 std::log(8.0 * kPi * (1.0 + half) * (1.0 + half)) -
                                 (1.0 + 2.0 / dim) * std::log(n);
        BoundResult out;
        out.value = kappa * kappa * std::exp(log_value);
        out.regime = Regime::BelowCutoff;
        out.components["r_min_star"] = r_star;
        out.components["random_baseline"] = random_best;
        out.components["rho0_rmin"] = loss.rho_0 * r_star;
        return out;
    }

    // at r_min* the packing fraction is exactly one
    const double fill = 1.0;
    double err = 0.0;
    const double low = pds_low_band(fill, r_star, dim, loss.rho_0, kappa, err);
    double tail = 0.0;
    if (c == Case::Worst) {
        tail = pds_tail(fill, r_star, dim, loss.rho_0, kappa, err);
    }
    auto out = finish(mu / n, low, tail, err, loss, c);
    out.components["r_min_star"] = r_star;
    out.components["random_baseline"] = random_best;
    out.components["correction"] = random_best - out.components["low_band"];
    out.components["rho0_rmin"] = loss.rho_0 * r_star;
    return out;
}

BoundResult bound(Sampler sampler, const LossSpectrumModel& loss, double n, int dim, Case c,
                  PdsMethod method) {
    switch (sampler) {
        case Sampler::Random: return bound_random(loss, n, dim, c);
        case Sampler::BlueNoise: return bound_bluenoise(loss, n, dim, c);
        case Sampler::PoissonDisk: return bound_pds(loss, n, dim, c, method);
    }
    throw DomainError("bound: unknown sampler");
}

std::string to_string(Case c) { return c == Case::Best ? "best" : "worst"; }

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Zero: return "zero";
        case Regime::BelowCutoff: return "below_cutoff";
        case Regime::AboveCutoff: return "above_cutoff";
        case Regime::Numeric: return "numeric";
    }
    return "unknown";
}

std::string to_string(Sampler s) {
    switch (s) {
        case Sampler::Random: return "random";
        case Sampler::BlueNoise: return "bluenoise";
        case Sampler::PoissonDisk: return "pds";
    }
    return "unknown";
}

std::string to_string(PdsMethod m) {
    return m == PdsMethod::Quadrature ? "quadrature" : "appendix_closed_form";
}

Case case_from_string(const std::string& name) {
    if (name == "best") return Case::Best;
    if (name == "worst") return Case::Worst;
    throw DomainError("unknown case '" + name + "' (expected best or worst)");
}

Sampler sampler_from_string(const std::string& name) {
    if (name == "random") return Sampler::Random;
    if (name == "bluenoise") return Sampler::BlueNoise;
    if (name == "pds") return Sampler::PoissonDisk;
    throw DomainError("unknown sampler '" + name + "' (expected random, bluenoise or pds)");
}

PdsMethod pds_method_from_string(const std::string& name) {
    if (name == "quadrature") return PdsMethod::Quadrature;
    if (name == "appendix_closed_form" || name == "closed_form") return PdsMethod::AppendixClosedForm;
    throw DomainError("unknown method '" + name + "'");
}

}  // namespace sampspec
