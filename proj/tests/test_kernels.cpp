#include "sampspec/errors.hpp"
#include "sampspec/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace sampspec;

namespace {

PointSet sample(int dim, std::size_t n, std::uint64_t seed) {
    SeededRng rng(seed);
    return generate_random(dim, n, rng);
}

}  // namespace

TEST_CASE("frequency lattice") {
    const auto l1 = kernels::make_lattice(1, 4);
    CHECK(l1.size() == 8);
    CHECK(l1.k.front() == -4);
    const auto l2 = kernels::make_lattice(2, 3);
    // integer points with 0 < x^2 + y^2 <= 9
    std::size_t expected = 0;
    for (int x = -3; x <= 3; ++x) {
        for (int y = -3; y <= 3; ++y) {
            expected += (x * x + y * y > 0 && x * x + y * y <= 9) ? 1 : 0;
        }
    }
    CHECK(l2.size() == expected);
    CHECK_THROWS_AS(kernels::make_lattice(0, 3), DomainError);
    CHECK_THROWS_AS(kernels::make_lattice(2, 0), DomainError);
}

TEST_CASE("psd lattice: serial and parallel agree") {
    for (int d = 1; d <= 3; ++d) {
        const auto ps = sample(d, 200, 3 + static_cast<std::uint64_t>(d));
        const auto lattice = kernels::make_lattice(d, d == 3 ? 6 : 20);
        std::vector<double> a(lattice.size()), b(lattice.size()), c(lattice.size());
        kernels::psd_lattice_serial(ps, lattice, a);
        kernels::psd_lattice_omp(ps, lattice, b);
        kernels::psd_lattice_omp(ps, lattice, c);
        CHECK(b == c);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(a[i] - b[i]) < 1e-9 * std::max(1.0, a[i]));
        }
    }
    const auto ps = sample(2, 10, 1);
    const auto lattice = kernels::make_lattice(1, 3);
    std::vector<double> out(lattice.size());
    CHECK_THROWS_AS(kernels::psd_lattice_omp(ps, lattice, out), DomainError);
}

TEST_CASE("pair distances: serial and parallel are identical") {
    const auto ps = sample(2, 300, 9);
    const auto a = kernels::pair_distances_serial(ps);
    const auto b = kernels::pair_distances_omp(ps);
    CHECK(a.size() == 300 * 299 / 2);
    CHECK(a == b);
    CHECK(a[0] == toroidal_distance(ps.point(0), ps.point(1)));
}

TEST_CASE("map and for_each") {
    std::vector<double> nodes(1000);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        nodes[i] = 0.01 * static_cast<double>(i);
    }
    std::vector<double> a(nodes.size()), b(nodes.size());
    auto fn = [](double x) { return std::sin(x) * x; };
    kernels::map_nodes_serial(nodes, fn, a);
    kernels::map_nodes_omp(nodes, fn, b);
    CHECK(a == b);

    std::vector<int> hits(500, 0);
    kernels::for_each_index_omp(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) {
        CHECK(h == 1);
    }
    CHECK_THROWS_AS(kernels::for_each_index_omp(100,
                                                [](std::size_t i) {
                                                    if (i == 37) {
                                                        throw std::runtime_error("task failed");
                                                    }
                                                }),
                    std::runtime_error);
    CHECK(kernels::max_threads() >= 1);
}
