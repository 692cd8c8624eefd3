#include "sampspec/specialfn.hpp"

#include "sampspec/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace sampspec::specialfn {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// Series A(z) of the Lanczos approximation with z = x - 1.
double lanczos_sum(double z) {
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        a += kLanczos[i] / (z + static_cast<double>(i));
    }
    return a;
}

void require_finite_nonneg(double order, double x, const char* what) {
    if (!(order >= 0.0) || !std::isfinite(order)) {
        throw DomainError(std::string(what) + ": order must be finite and >= 0");
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(what) + ": argument must be finite and >= 0");
    }
}

double bessel_series(double v, double x) {
    const double half = 0.5 * x;
    double term = v == 0.0 ? 1.0 : std::exp(v * std::log(half) - log_gamma(v + 1.0));
    if (term == 0.0) {
        return 0.0;
    }
    const double q = -half * half;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * (static_cast<double>(k) + v));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

// Hankel's large-argument expansion; callers ensure x >> v^2.
double bessel_asymptotic(double v, double x) {
    const double mu = 4.0 * v * v;
    double p = 1.0;
    double q = 0.0;
    double t = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        t *= (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(t) > std::abs(prev)) {
            break;  // asymptotic series started to diverge
        }
        switch (k % 4) {
            case 1: q += t; break;
            case 2: p -= t; break;
            case 3: q -= t; break;
            default: p += t; break;
        }
        if (t == 0.0 || std::abs(t) < 1e-17) {
            break;
        }
        prev = t;
    }
    const double chi = x - (0.5 * v + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Miller's backward recurrence, normalised with
//   (x/2)^mu = sum_k (mu + 2k) Γ(mu + k) / k! J_{mu+2k}(x),  0 <= mu < 1.
double bessel_miller(double v, double x) {
    const double mu = v - std::floor(v);
    const int n = static_cast<int>(std::floor(v));
    const int top = std::max(n, static_cast<int>(std::ceil(x)));
    int start = top + 20 + static_cast<int>(std::sqrt(40.0 * top));
    if (start % 2 != 0) {
        ++start;
    }

    std::vector<double> weight(static_cast<std::size_t>(start / 2 + 1));
    weight[0] = mu == 0.0 ? 1.0 : gamma(mu + 1.0);
    double ratio = gamma(mu + 1.0);  // Γ(mu + k) / k! at k = 1
    for (std::size_t k = 1; k < weight.size(); ++k) {
        const double kk = static_cast<double>(k);
        weight[k] = (mu + 2.0 * kk) * ratio;
        ratio *= (mu + kk) / (kk + 1.0);
    }

    double j_next = 0.0;
    double j = 1e-30;
    double norm = 0.0;
    double target = 0.0;
    for (int i = start; i >= 1; --i) {
        if (i % 2 == 0) {
            norm += weight[static_cast<std::size_t>(i / 2)] * j;
        }
        if (i == n) {
            target = j;
        }
        const double j_prev = 2.0 * (mu + i) / x * j - j_next;
        j_next = j;
        j = j_prev;
        if (std::abs(j) > 1e250) {
            j *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            target *= 1e-250;
        }
    }
    norm += weight[0] * j;
    if (n == 0) {
        target = j;
    }
    return target * std::pow(0.5 * x, mu) / norm;
}

}  // namespace

double gamma(double x) {
    if (!(x > 0.0) || std::isnan(x)) {
        throw DomainError("gamma: argument must be > 0");
    }
    if (x < 0.5) {
        // reflection; 1 - x stays in (0.5, 1)
        return kPi / (std::sin(kPi * x) * gamma(1.0 - x));
    }
    if (x > 171.7) {
        return std::numeric_limits<double>::infinity();
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    // split the power so t^(z+1/2) does not overflow before exp(-t) scales it down
    const double half_pow = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * kPi) * half_pow * (half_pow * std::exp(-t)) * lanczos_sum(z);
}

double log_gamma(double x) {
    if (!(x > 0.0) || std::isnan(x)) {
        throw DomainError("log_gamma: argument must be > 0");
    }
    if (x < 0.5) {
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double bessel_j(double order, double x) {
    require_finite_nonneg(order, x, "bessel_j");
    if (x == 0.0) {
        return order == 0.0 ? 1.0 : 0.0;
    }
    if (x <= 12.0) {
        return bessel_series(order, x);
    }
    if (x >= std::max(50.0, 25.0 * (order * order + 1.0))) {
        return bessel_asymptotic(order, x);
    }
    return bessel_miller(order, x);
}

double bessel_small_arg(double order, double x) {
    require_finite_nonneg(order, x, "bessel_small_arg");
    if (order == 0.0) {
        return 1.0;
    }
    if (x == 0.0) {
        return 0.0;
    }
    return std::exp(order * std::log(0.5 * x) - log_gamma(1.0 + order));
}

double normalized_bessel(double order, double x) {
    if (order == -0.5) {
        return std::cos(x);
    }
    require_finite_nonneg(order, std::abs(x), "normalized_bessel");
    x = std::abs(x);
    if (x <= 2.0) {
        const double q = -0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= q / (static_cast<double>(k) * (order + k));
            sum += term;
            if (std::abs(term) < 1e-18) {
                break;
            }
        }
        return sum;
    }
    return bessel_j(order, x) * std::exp(log_gamma(order + 1.0) + order * std::log(2.0 / x));
}

double one_minus_normalized_bessel(double order, double x) {
    if (order == -0.5) {
        const double s = std::sin(0.5 * x);
        return 2.0 * s * s;
    }
    require_finite_nonneg(order, std::abs(x), "one_minus_normalized_bessel");
    x = std::abs(x);
    if (x <= 2.0) {
        const double q = -0.25 * x * x;
        double term = -q / (order + 1.0);
        double sum = term;
        for (int k = 2; k < 60; ++k) {
            term *= q / (static_cast<double>(k) * (order + k));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) {
                break;
            }
        }
        return sum;
    }
    return 1.0 - normalized_bessel(order, x);
}

SphereMeasure sphere_measure(int d) {
    if (d < 1) {
        throw DomainError("sphere_measure: dimension must be >= 1");
    }
    const double half = 0.5 * d;
    SphereMeasure m;
    m.dim = d;
    m.log_surface = std::log(2.0) + half * std::log(kPi) - log_gamma(half);
    m.log_ball_volume = half * std::log(kPi) - log_gamma(1.0 + half);
    if (d > 300) {
        m.surface = std::exp(m.log_surface);
        m.ball_volume = std::exp(m.log_ball_volume);
    } else {
        const double pi_pow = std::pow(kPi, half);
        m.surface = 2.0 * pi_pow / gamma(half);
        m.ball_volume = pi_pow / gamma(1.0 + half);
    }
    return m;
}

}  // namespace sampspec::specialfn
