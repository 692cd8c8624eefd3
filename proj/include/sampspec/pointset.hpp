#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sampspec {

// xoshiro256** seeded through splitmix64. The sequence depends only on the
// 64-bit seed, so any implementation of the same two algorithms reproduces it.
class SeededRng {
public:
    using result_type = std::uint64_t;

    explicit SeededRng(std::uint64_t seed);

    std::uint64_t next_u64();
    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    std::uint64_t seed() const { return seed_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return next_u64(); }

private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_;
};

// N points in the toroidal unit cube [0,1)^d, stored row-major.
class PointSet {
public:
    PointSet(int dim, std::vector<double> coords);

    int dim() const { return dim_; }
    std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    std::span<const double> coords() const { return coords_; }

private:
    int dim_;
    std::vector<double> coords_;
};

// Euclidean distance with per-axis wrap min(|Δ|, 1 - |Δ|).
double toroidal_distance(std::span<const double> a, std::span<const double> b);

// Same, squared, without argument checks; for inner loops.
inline double toroidal_distance_sq_unchecked(const double* a, const double* b, int dim) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
        double delta = a[k] - b[k];
        delta = delta < 0.0 ? -delta : delta;
        delta = delta > 0.5 ? 1.0 - delta : delta;
        s += delta * delta;
    }
    return s;
}

PointSet generate_random(int dim, std::size_t n, SeededRng& rng);

// Dart throwing on the torus: uniform candidates are accepted iff their
// toroidal distance to every accepted point is >= r_min. Stops after
// max_attempts consecutive rejections; when not given, the limit is
// 10^4 times the number of points accepted so far. Supports d in {1, 2, 3}.
PointSet generate_poisson_disk(int dim, double r_min, SeededRng& rng,
                               std::optional<std::uint64_t> max_attempts = std::nullopt);

}  // namespace sampspec
