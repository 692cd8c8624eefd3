#include "sampspec/pointset.hpp"

#include "sampspec/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace sampspec {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Uniform grid of cells with side >= r_min, used to limit the neighbour search.
class CellGrid {
public:
    CellGrid(int dim, double r_min)
        : dim_(dim), per_axis_(std::min(static_cast<int>(std::floor(1.0 / r_min)), axis_cap(dim))) {
        std::size_t total = 1;
        for (int k = 0; k < dim_; ++k) {
            total *= static_cast<std::size_t>(per_axis_);
        }
        cells_.resize(total);
    }

    // Fewer than three cells per axis would make the 3^d stencil revisit cells.
    bool usable() const { return per_axis_ >= 3; }

    void insert(const double* p, std::uint32_t index) { cells_[cell_of(p)].push_back(index); }

    template <class Visit>
    bool all_neighbours(const double* p, Visit&& visit) const {
        std::array<int, 3> base{};
        for (int k = 0; k < dim_; ++k) {
            base[static_cast<std::size_t>(k)] = axis_cell(p[k]);
        }
        int stencil = 1;
        for (int k = 0; k < dim_; ++k) {
            stencil *= 3;
        }
        for (int s = 0; s < stencil; ++s) {
            int rest = s;
            std::size_t flat = 0;
            for (int k = 0; k < dim_; ++k) {
                const int offset = rest % 3 - 1;
                rest /= 3;
                const int c = (base[static_cast<std::size_t>(k)] + offset + per_axis_) % per_axis_;
                flat = flat * static_cast<std::size_t>(per_axis_) + static_cast<std::size_t>(c);
            }
            for (std::uint32_t idx : cells_[flat]) {
                if (!visit(idx)) {
                    return false;
                }
            }
        }
        return true;
    }

private:
    // keeps the table below ~4M cells
    static int axis_cap(int dim) { return dim == 1 ? 1 << 22 : (dim == 2 ? 2048 : 160); }

    int axis_cell(double c) const {
        const int i = static_cast<int>(c * per_axis_);
        return i >= per_axis_ ? per_axis_ - 1 : i;
    }

    std::size_t cell_of(const double* p) const {
        std::size_t flat = 0;
        for (int k = 0; k < dim_; ++k) {
            flat = flat * static_cast<std::size_t>(per_axis_) + static_cast<std::size_t>(axis_cell(p[k]));
        }
        return flat;
    }

    int dim_;
    int per_axis_;
    std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) {
        s = splitmix64(x);
    }
}

std::uint64_t SeededRng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SeededRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 1) {
        throw DomainError("PointSet: dimension must be >= 1");
    }
    if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim_) != 0) {
        throw DomainError("PointSet: need at least one point with exactly " + std::to_string(dim_) +
                          " coordinates each");
    }
    for (double c : coords_) {
        if (!(c >= 0.0 && c < 1.0)) {
            throw DomainError("PointSet: coordinate outside [0, 1)");
        }
    }
}

double toroidal_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw DomainError("toroidal_distance: dimension mismatch");
    }
    return std::sqrt(toroidal_distance_sq_unchecked(a.data(), b.data(), static_cast<int>(a.size())));
}

PointSet generate_random(int dim, std::size_t n, SeededRng& rng) {
    if (dim < 1 || n < 1) {
        throw DomainError("generate_random: need d >= 1 and N >= 1");
    }
    std::vector<double> coords(n * static_cast<std::size_t>(dim));
    for (double& c : coords) {
        c = rng.uniform();
    }
    return PointSet(dim, std::move(coords));
}

PointSet generate_poisson_disk(int dim, double r_min, SeededRng& rng,
                               std::optional<std::uint64_t> max_attempts) {
    if (dim < 1 || dim > 3) {
        throw DomainError("generate_poisson_disk: only d in {1, 2, 3} is supported");
    }
    if (!(r_min > 0.0 && r_min < 0.5)) {
        throw DomainError("generate_poisson_disk: r_min must lie in (0, 0.5)");
    }
    if (max_attempts && *max_attempts == 0) {
        throw DomainError("generate_poisson_disk: max_attempts must be >= 1");
    }

    CellGrid grid(dim, r_min);
    std::vector<double> coords;
    std::array<double, 3> candidate{};
    std::uint64_t streak = 0;

    while (true) {
        const std::size_t accepted = coords.size() / static_cast<std::size_t>(dim);
        const std::uint64_t limit =
            max_attempts ? *max_attempts : 10000ULL * std::max<std::uint64_t>(1, accepted);
        if (streak >= limit) {
            break;
        }
        for (int k = 0; k < dim; ++k) {
            candidate[static_cast<std::size_t>(k)] = rng.uniform();
        }
        bool ok = true;
        if (grid.usable()) {
            ok = grid.all_neighbours(candidate.data(), [&](std::uint32_t idx) {
                return std::sqrt(toroidal_distance_sq_unchecked(candidate.data(), coords.data() + idx * dim, dim)) >= r_min;
            });
        } else {
            for (std::size_t i = 0; i < accepted && ok; ++i) {
                ok = std::sqrt(toroidal_distance_sq_unchecked(candidate.data(), coords.data() + i * dim, dim)) >= r_min;
            }
        }
        if (!ok) {
            ++streak;
            continue;
        }
        streak = 0;
        coords.insert(coords.end(), candidate.begin(), candidate.begin() + dim);
        if (grid.usable()) {
            grid.insert(candidate.data(), static_cast<std::uint32_t>(accepted));
        }
    }
    if (coords.empty()) {
        throw NumericError("generate_poisson_disk: no point accepted");
    }
    return PointSet(dim, std::move(coords));
}

}  // namespace sampspec
