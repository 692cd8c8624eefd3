#include "sampspec/kernels.hpp"

#include "sampspec/errors.hpp"

#include <cmath>
#include <complex>
#include <exception>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sampspec::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_sizes(const PointSet& ps, const FrequencyLattice& lattice, std::span<double> out) {
    if (lattice.dim != ps.dim()) {
        throw DomainError("psd_lattice: lattice and point set dimensions differ");
    }
    if (out.size() != lattice.size()) {
        throw DomainError("psd_lattice: output size does not match lattice");
    }
}

// phase[(j * dim + a) * (2K + 1) + (k + K)] = exp(-2πi k x_{j,a})
std::vector<std::complex<double>> phase_table(const PointSet& ps, int k_max) {
    const auto width = static_cast<std::size_t>(2 * k_max + 1);
    const auto dim = static_cast<std::size_t>(ps.dim());
    std::vector<std::complex<double>> table(ps.size() * dim * width);
    const auto coords = ps.coords();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t jd = 0; jd < static_cast<std::ptrdiff_t>(coords.size()); ++jd) {
        const double x = coords[static_cast<std::size_t>(jd)];
        auto* row = table.data() + static_cast<std::size_t>(jd) * width;
        for (int k = -k_max; k <= k_max; ++k) {
            row[k + k_max] = std::polar(1.0, -kTwoPi * k * x);
        }
    }
    return table;
}

}  // namespace

long FrequencyLattice::norm_sq(std::size_t i) const {
    long s = 0;
    for (int a = 0; a < dim; ++a) {
        const long v = k[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)];
        s += v * v;
    }
    return s;
}

FrequencyLattice make_lattice(int dim, int k_max) {
    if (dim < 1 || k_max < 1) {
        throw DomainError("make_lattice: need d >= 1 and k_max >= 1");
    }
    FrequencyLattice lattice;
    lattice.dim = dim;
    lattice.k_max = k_max;
    const long limit = static_cast<long>(k_max) * k_max;
    std::vector<int> cur(static_cast<std::size_t>(dim), -k_max);
    while (true) {
        long n2 = 0;
        for (int v : cur) {
            n2 += static_cast<long>(v) * v;
        }
        if (n2 > 0 && n2 <= limit) {
            lattice.k.insert(lattice.k.end(), cur.begin(), cur.end());
        }
        int a = dim - 1;
        while (a >= 0 && cur[static_cast<std::size_t>(a)] == k_max) {
            cur[static_cast<std::size_t>(a)] = -k_max;
            --a;
        }
        if (a < 0) {
            break;
        }
        ++cur[static_cast<std::size_t>(a)];
    }
    return lattice;
}

void psd_lattice_serial(const PointSet& ps, const FrequencyLattice& lattice, std::span<double> out) {
    check_sizes(ps, lattice, out);
    const int dim = ps.dim();
    const std::size_t n = ps.size();
    for (std::size_t f = 0; f < lattice.size(); ++f) {
        const int* k = lattice.k.data() + f * static_cast<std::size_t>(dim);
        double re = 0.0;
        double im = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto x = ps.point(j);
            double dot = 0.0;
            for (int a = 0; a < dim; ++a) {
                dot += k[a] * x[static_cast<std::size_t>(a)];
            }
            re += std::cos(kTwoPi * dot);
            im -= std::sin(kTwoPi * dot);
        }
        out[f] = (re * re + im * im) / static_cast<double>(n);
    }
}

void psd_lattice_omp(const PointSet& ps, const FrequencyLattice& lattice, std::span<double> out) {
    check_sizes(ps, lattice, out);
    const int dim = ps.dim();
    const int k_max = lattice.k_max;
    const std::size_t n = ps.size();
    const auto width = static_cast<std::size_t>(2 * k_max + 1);
    const auto table = phase_table(ps, k_max);
    const auto count = static_cast<std::ptrdiff_t>(lattice.size());

#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t f = 0; f < count; ++f) {
        const int* k = lattice.k.data() + static_cast<std::size_t>(f) * static_cast<std::size_t>(dim);
        std::complex<double> sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto* row = table.data() + j * static_cast<std::size_t>(dim) * width;
            std::complex<double> term = row[k[0] + k_max];
            for (int a = 1; a < dim; ++a) {
                term *= row[static_cast<std::size_t>(a) * width + static_cast<std::size_t>(k[a] + k_max)];
            }
            sum += term;
        }
        out[static_cast<std::size_t>(f)] = std::norm(sum) / static_cast<double>(n);
    }
}

std::vector<double> pair_distances_serial(const PointSet& ps) {
    const std::size_t n = ps.size();
    const int dim = ps.dim();
    std::vector<double> out;
    out.reserve(n * (n - 1) / 2);
    const double* c = ps.coords().data();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out.push_back(std::sqrt(toroidal_distance_sq_unchecked(c + i * dim, c + j * dim, dim)));
        }
    }
    return out;
}

std::vector<double> pair_distances_omp(const PointSet& ps) {
    const std::size_t n = ps.size();
    const int dim = ps.dim();
    std::vector<double> out(n * (n - 1) / 2);
    const double* c = ps.coords().data();
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        std::size_t slot = i * n - i * (i + 1) / 2;
        for (std::size_t j = i + 1; j < n; ++j) {
            out[slot++] = std::sqrt(toroidal_distance_sq_unchecked(c + i * dim, c + j * dim, dim));
        }
    }
    return out;
}

void map_nodes_serial(std::span<const double> nodes, const std::function<double(double)>& fn,
                      std::span<double> out) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out[i] = fn(nodes[i]);
    }
}

void map_nodes_omp(std::span<const double> nodes, const std::function<double(double)>& fn,
                   std::span<double> out) {
    for_each_index_omp(nodes.size(), [&](std::size_t i) { out[i] = fn(nodes[i]); });
}

void for_each_index_serial(std::size_t count, const std::function<void(std::size_t)>& task) {
    for (std::size_t i = 0; i < count; ++i) {
        task(i);
    }
}

void for_each_index_omp(std::size_t count, const std::function<void(std::size_t)>& task) {
    // exceptions may not escape an OpenMP region; keep the first and rethrow
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        try {
            task(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(sampspec_task_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace sampspec::kernels
