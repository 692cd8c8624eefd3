#pragma once

// Data-parallel inner loops. Every kernel has a plain serial version kept as
// the reference for tests and benchmarks, and an OpenMP version that produces
// identical output independent of the thread count.

#include "sampspec/pointset.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sampspec::kernels {

// Integer frequencies k != 0 with |k| <= k_max, lexicographic order.
struct FrequencyLattice {
    int dim = 0;
    int k_max = 0;
    std::vector<int> k;  // dim entries per frequency

    std::size_t size() const { return dim == 0 ? 0 : k.size() / static_cast<std::size_t>(dim); }
    long norm_sq(std::size_t i) const;
};

FrequencyLattice make_lattice(int dim, int k_max);

// out[i] = (1/N) |sum_j exp(-2πi k_i . x_j)|^2.
// Serial: direct cos/sin of the dot product per (frequency, point).
void psd_lattice_serial(const PointSet& ps, const FrequencyLattice& lattice, std::span<double> out);
// OpenMP: per-point, per-axis phase tables, frequencies split across threads.
void psd_lattice_omp(const PointSet& ps, const FrequencyLattice& lattice, std::span<double> out);

// Toroidal distances of all unordered pairs i < j, row-major in (i, j).
std::vector<double> pair_distances_serial(const PointSet& ps);
std::vector<double> pair_distances_omp(const PointSet& ps);

// out[i] = fn(nodes[i]).
void map_nodes_serial(std::span<const double> nodes, const std::function<double(double)>& fn,
                      std::span<double> out);
void map_nodes_omp(std::span<const double> nodes, const std::function<double(double)>& fn,
                   std::span<double> out);

// Runs task(i) for i in [0, count). Tasks must only write to slot i of
// caller-owned storage.
void for_each_index_serial(std::size_t count, const std::function<void(std::size_t)>& task);
void for_each_index_omp(std::size_t count, const std::function<void(std::size_t)>& task);

int max_threads();

}  // namespace sampspec::kernels
