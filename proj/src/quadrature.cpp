#include "sampspec/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace sampspec::quad {

namespace {

constexpr int kOrder = 20;

struct Rule {
    std::array<double, kOrder> node{};
    std::array<double, kOrder> weight{};
};

// Newton iteration on P_n from the Chebyshev initial guesses.
Rule make_rule() {
    Rule rule;
    const int n = kOrder;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        rule.node[static_cast<std::size_t>(i)] = x;
        rule.weight[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const Rule& rule() {
    static const Rule r = make_rule();
    return r;
}

Result refine(const Integrand& f, double a, double b, double whole, const Options& opt,
              int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_legendre(f, a, mid);
    const double right = gauss_legendre(f, mid, b);
    const double sum = left + right;
    const double err = std::abs(sum - whole);
    if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(sum))) {
        return {sum, err, true};
    }
    if (depth >= opt.max_depth || mid <= a || mid >= b) {
        return {sum, err, false};
    }
    const Result l = refine(f, a, mid, left, opt, depth + 1);
    const Result r = refine(f, mid, b, right, opt, depth + 1);
    return {l.value + r.value, l.error + r.error, l.converged && r.converged};
}

}  // namespace

double gauss_legendre(const Integrand& f, double a, double b) {
    const Rule& r = rule();
    const double half = 0.5 * (b - a);
    const double center = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.node.size(); ++i) {
        sum += r.weight[i] * f(center + half * r.node[i]);
    }
    return half * sum;
}

Result integrate(const Integrand& f, double a, double b, const Options& options,
                 std::span<const double> breakpoints) {
    if (!(b > a)) {
        return {};
    }
    std::vector<double> cuts{a};
    std::vector<double> inner;
    for (double p : breakpoints) {
        if (p > a && p < b) {
            inner.push_back(p);
        }
    }
    std::sort(inner.begin(), inner.end());
    inner.push_back(b);
    for (double p : inner) {
        const double lo = cuts.back();
        if (p <= lo) {
            continue;
        }
        if (options.max_panel > 0.0) {
            const auto pieces = static_cast<long>(std::ceil((p - lo) / options.max_panel));
            for (long k = 1; k < pieces; ++k) {
                cuts.push_back(lo + (p - lo) * static_cast<double>(k) / static_cast<double>(pieces));
            }
        }
        cuts.push_back(p);
    }

    Result total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const Result part = refine(f, lo, hi, gauss_legendre(f, lo, hi), options, 0);
        total.value += part.value;
        total.error += part.error;
        total.converged = total.converged && part.converged;
    }
    return total;
}

}  // namespace sampspec::quad
