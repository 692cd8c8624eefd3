#include "sampspec/experiments.hpp"

#include "sampspec/errors.hpp"
#include "sampspec/kernels.hpp"
#include "sampspec/profiles.hpp"
#include "sampspec/spectral_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace sampspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<int> negated(const std::vector<int>& k) {
    std::vector<int> out(k.size());
    std::transform(k.begin(), k.end(), out.begin(), [](int v) { return -v; });
    return out;
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MeanStderr summarize(const std::vector<double>& v) {
    MeanStderr out;
    const auto m = static_cast<double>(v.size());
    for (double x : v) {
        out.mean += x;
    }
    out.mean /= m;
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) {
            ss += (x - out.mean) * (x - out.mean);
        }
        out.stderr_ = std::sqrt(ss / (m - 1.0) / m);
    }
    return out;
}

void find_extrema(SweepResult& out) {
    const auto& v = out.log_values;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) {
            out.interior_maxima.push_back(i);
        }
        if (v[i] < v[i - 1] && v[i] <= v[i + 1]) {
            out.interior_minima.push_back(i);
        }
    }
}

void fit_positive(SweepResult& out) {
    // log y is carried directly, which keeps huge or tiny values exact
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (out.values[i] > 0.0 && std::isfinite(out.log_values[i])) {
            lx.push_back(std::log(out.axis_values[i]));
            ly.push_back(out.log_values[i]);
        }
    }
    if (lx.size() < 2) {
        out.degenerate = true;
        out.notes.push_back("degenerate fit: fewer than two positive values");
        return;
    }
    if (lx.size() < out.values.size()) {
        out.notes.push_back("zero values excluded from the fit");
    }
    const auto m = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) {
        out.degenerate = true;
        out.notes.push_back("degenerate fit: a single axis value");
        return;
    }
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (out.intercept + out.slope * lx[i]);
        rss += e * e;
    }
    out.residual = std::sqrt(rss / m);
}

}  // namespace

TestLoss::TestLoss(LossShape shape, int dim, double constant, std::vector<FourierTerm> terms)
    : shape_(shape), dim_(dim), constant_(constant), terms_(std::move(terms)) {
    if (dim_ < 1) {
        throw DomainError("TestLoss: d must be >= 1");
    }
    if (!std::isfinite(constant_)) {
        throw DomainError("TestLoss: constant must be finite");
    }
    std::set<std::vector<int>> seen;
    for (const auto& t : terms_) {
        if (t.k.size() != static_cast<std::size_t>(dim_)) {
            throw DomainError("TestLoss: frequency has the wrong number of components");
        }
        if (std::all_of(t.k.begin(), t.k.end(), [](int v) { return v == 0; })) {
            throw DomainError("TestLoss: zero frequency belongs in the constant");
        }
        if (!std::isfinite(t.a) || !std::isfinite(t.b)) {
            throw DomainError("TestLoss: coefficients must be finite");
        }
        if (!seen.insert(t.k).second || !seen.insert(negated(t.k)).second) {
            throw DomainError("TestLoss: each frequency pair ±k may appear once");
        }
    }
}

TestLoss TestLoss::cosine(std::vector<int> k) {
    const int dim = static_cast<int>(k.size());
    return TestLoss(LossShape::Cosine, dim, 0.0, {FourierTerm{std::move(k), 1.0, 0.0}});
}

TestLoss TestLoss::truncated_fourier(int dim, double constant, std::vector<FourierTerm> terms) {
    return TestLoss(LossShape::TruncatedFourier, dim, constant, std::move(terms));
}

TestLoss TestLoss::constant(int dim, double value) {
    return TestLoss(LossShape::TruncatedFourier, dim, value, {});
}

double TestLoss::eval(std::span<const double> x) const { return constant_ + fluctuation(x); }

double TestLoss::fluctuation(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(dim_)) {
        throw DomainError("TestLoss::eval: point dimension differs from loss");
    }
    double v = 0.0;
    for (const auto& t : terms_) {
        double dot = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) {
            dot += t.k[a] * x[a];
        }
        v += t.a * std::cos(kTwoPi * dot) + t.b * std::sin(kTwoPi * dot);
    }
    return v;
}

double TestLoss::empirical_mean(const PointSet& ps) const {
    double s = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        s += fluctuation(ps.point(j));
    }
    // constant added after averaging
    return constant_ + s / static_cast<double>(ps.size());
}

double TestLoss::spectral_term(const PointSet& ps) const {
    if (ps.dim() != dim_) {
        throw DomainError("TestLoss: point set dimension differs from loss");
    }
    double s = 0.0;
    for (const auto& t : terms_) {
        // |c_k|^2 = |c_{-k}|^2 = (a^2 + b^2) / 4
        const double mass = 0.25 * (t.a * t.a + t.b * t.b);
        s += mass * (psd_at(ps, t.k) + psd_at(ps, negated(t.k)));
    }
    return s / static_cast<double>(ps.size());
}

double TestLoss::spectral_mass() const {
    double s = 0.0;
    for (const auto& t : terms_) {
        s += 0.5 * (t.a * t.a + t.b * t.b);
    }
    return s;
}

PointSet SamplerSpec::draw(std::uint64_t seed) const {
    SeededRng rng(seed);
    switch (kind) {
        case Sampler::Random:
            return generate_random(dim, n, rng);
        case Sampler::PoissonDisk:
            return generate_poisson_disk(dim, r_min, rng, max_attempts);
        case Sampler::BlueNoise:
            break;
    }
    throw DomainError("experiments: blue-noise point synthesis is not available; use random or pds");
}

EmpiricalGenError empirical_gen_error(const TestLoss& loss, const SamplerSpec& sampler,
                                      std::size_t n_realizations, std::uint64_t seed) {
    if (n_realizations < 2) {
        throw DomainError("empirical_gen_error: need at least two realizations");
    }
    if (sampler.dim != loss.dim()) {
        throw DomainError("empirical_gen_error: sampler and loss dimensions differ");
    }
    // surface bad parameters before spawning tasks
    if (sampler.kind == Sampler::BlueNoise) {
        sampler.draw(seed);
    }
    if (sampler.kind == Sampler::PoissonDisk && !(sampler.r_min > 0.0 && sampler.r_min < 0.5)) {
        throw DomainError("empirical_gen_error: r_min must lie in (0, 0.5)");
    }
    if (sampler.kind == Sampler::Random && sampler.n < 1) {
        throw DomainError("empirical_gen_error: N must be >= 1");
    }

    std::vector<double> diff(n_realizations);
    std::vector<double> spectral(n_realizations);
    std::vector<double> count(n_realizations);
    const double r_p = loss.population_mean();
    kernels::for_each_index_omp(n_realizations, [&](std::size_t i) {
        const PointSet ps = sampler.draw(seed + i);
        diff[i] = loss.empirical_mean(ps) - r_p;
        spectral[i] = loss.spectral_term(ps);
        count[i] = static_cast<double>(ps.size());
    });

    std::vector<double> sq(n_realizations);
    std::transform(diff.begin(), diff.end(), sq.begin(), [](double v) { return v * v; });
    const auto gen = summarize(sq);
    const auto bias = summarize(diff);
    const auto spec = summarize(spectral);

    EmpiricalGenError out;
    out.gen_error = gen.mean;
    out.gen_error_stderr = gen.stderr_;
    out.bias = bias.mean;
    out.bias_stderr = bias.stderr_;
    out.spectral_sum = spec.mean;
    out.spectral_stderr = spec.stderr_;
    out.mean_points = summarize(count).mean;
    out.realizations = n_realizations;
    return out;
}

IdentityReport validate_spectral_identity(const TestLoss& loss, const SamplerSpec& sampler,
                                          std::size_t n_realizations, std::uint64_t seed) {
    IdentityReport rep;
    rep.data = empirical_gen_error(loss, sampler, n_realizations, seed);
    rep.empirical = rep.data.gen_error;
    rep.spectral = rep.data.spectral_sum;
    if (rep.spectral > 0.0) {
        rep.relative_deviation = std::abs(rep.empirical - rep.spectral) / rep.spectral;
    } else {
        rep.relative_deviation = rep.empirical == 0.0 ? 0.0 : std::abs(rep.empirical);
    }
    return rep;
}

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("fit_loglog: need at least two (x, y) pairs");
    }
    SweepResult tmp;
    tmp.axis_values.assign(x.begin(), x.end());
    tmp.values.assign(y.begin(), y.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) {
            throw DomainError("fit_loglog: x must be > 0");
        }
        tmp.log_values.push_back(y[i] > 0.0 ? std::log(y[i]) : -INFINITY);
    }
    fit_positive(tmp);
    if (tmp.degenerate) {
        throw NumericError("fit_loglog: " + tmp.notes.back());
    }
    return {tmp.slope, tmp.intercept, tmp.residual};
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw DomainError("log_spaced: need 0 < lo < hi and n >= 2");
    }
    std::vector<double> out(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo * std::exp(step * static_cast<double>(i));
    }
    out.back() = hi;
    return out;
}

SweepResult convergence_sweep(Sampler sampler, const LossSpectrumModel& loss, int dim,
                              std::span<const double> n_list, Case c, PdsMethod method) {
    validate(loss);
    if (n_list.size() < 5) {
        throw DomainError("convergence_sweep: need at least 5 values of N");
    }
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (!(n_list[i] >= 1.0) || (i > 0 && !(n_list[i] > n_list[i - 1]))) {
            throw DomainError("convergence_sweep: N values must be >= 1 and strictly increasing");
        }
    }
    if (n_list.back() / n_list.front() < 100.0 * (1.0 - 1e-12)) {
        throw DomainError("convergence_sweep: N values must span at least two decades");
    }
    // validates d and the case/model pairing up front
    bound(sampler, loss, n_list.front(), dim, c, method);

    SweepResult out;
    out.axis = "N";
    out.label = to_string(sampler) + "_" + to_string(c);
    out.axis_values.assign(n_list.begin(), n_list.end());
    std::vector<BoundResult> results(n_list.size());
    kernels::for_each_index_omp(n_list.size(), [&](std::size_t i) {
        results[i] = bound(sampler, loss, n_list[i], dim, c, method);
    });
    for (const auto& r : results) {
        out.values.push_back(r.value);
        out.log_values.push_back(r.value > 0.0 ? std::log(r.value) : -INFINITY);
        out.regimes.push_back(to_string(r.regime));
        if (r.clamped) {
            out.notes.push_back("clamped to zero at some N");
        }
    }
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (out.regimes[i] != out.regimes[i - 1]) {
            out.notes.push_back("regime " + out.regimes[i - 1] + " -> " + out.regimes[i] +
                                " between N=" + std::to_string(n_list[i - 1]) +
                                " and N=" + std::to_string(n_list[i]));
        }
    }
    fit_positive(out);
    find_extrema(out);
    return out;
}

double log_dimension_metric(DimensionMetric metric, const DimensionParams& p, int dim) {
    switch (metric) {
        case DimensionMetric::RhoZStar: return log_max_zero_region(p.n, dim);
        case DimensionMetric::NMinForRhoZ: return log_min_samples_for_zero_region(p.rho_z, dim);
        case DimensionMetric::RMinStar: return log_max_rmin(p.n, dim);
        case DimensionMetric::NMinForRMin: return log_min_samples_for_rmin(p.r_min, dim);
        case DimensionMetric::RelativeRhoZ: return log_max_zero_region(p.n, dim) - 0.5 * std::log(dim);
        case DimensionMetric::RelativeRMin: return log_max_rmin(p.n, dim) - 0.5 * std::log(dim);
    }
    throw DomainError("dimension_sweep: unknown metric");
}

SweepResult dimension_sweep(DimensionMetric metric, const DimensionParams& params,
                            std::span<const int> d_list) {
    if (d_list.empty()) {
        throw DomainError("dimension_sweep: empty dimension list");
    }
    for (std::size_t i = 0; i < d_list.size(); ++i) {
        if (d_list[i] < 1 || (i > 0 && d_list[i] <= d_list[i - 1])) {
            throw DomainError("dimension_sweep: dimensions must be >= 1 and strictly increasing");
        }
    }
    SweepResult out;
    out.axis = "d";
    out.label = to_string(metric);
    for (int d : d_list) {
        const double lv = log_dimension_metric(metric, params, d);
        out.axis_values.push_back(static_cast<double>(d));
        out.log_values.push_back(lv);
        out.values.push_back(std::exp(lv));
    }
    if (d_list.size() >= 2) {
        fit_positive(out);
    } else {
        out.degenerate = true;
        out.notes.push_back("degenerate fit: a single dimension");
    }
    find_extrema(out);
    if (!out.interior_maxima.empty()) {
        out.notes.push_back("interior maximum at d=" +
                            std::to_string(d_list[out.interior_maxima.front()]));
    }
    return out;
}

std::string to_string(DimensionMetric m) {
    switch (m) {
        case DimensionMetric::RhoZStar: return "rho_z_star";
        case DimensionMetric::NMinForRhoZ: return "n_min_for_rho_z";
        case DimensionMetric::RMinStar: return "r_min_star";
        case DimensionMetric::NMinForRMin: return "n_min_for_rmin";
        case DimensionMetric::RelativeRhoZ: return "relative_rho_z";
        case DimensionMetric::RelativeRMin: return "relative_rmin";
    }
    return "unknown";
}

DimensionMetric dimension_metric_from_string(const std::string& name) {
    for (auto m : {DimensionMetric::RhoZStar, DimensionMetric::NMinForRhoZ, DimensionMetric::RMinStar,
                   DimensionMetric::NMinForRMin, DimensionMetric::RelativeRhoZ,
                   DimensionMetric::RelativeRMin}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw DomainError("unknown metric '" + name + "'");
}

}  // namespace sampspec
