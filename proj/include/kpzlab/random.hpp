#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace kpz {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser; the mixing step used for all seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for stream `stream` under `root`.  Chains compose:
/// derive_seed(derive_seed(root, module), index).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

/// Stable 64-bit tag for a name, for the command/module level of the seed
/// hierarchy.
std::uint64_t stream_tag(const char* name);

/// Discretised Brownian path: one increment per grid cell, each
/// Normal(0, step).
struct NoisePath {
    double step = 0.0;
    std::vector<double> increments;
    std::uint64_t seed = 0;

    static NoisePath brownian(std::size_t cells, double step, std::uint64_t seed);
    static NoisePath zero(std::size_t cells, double step);

    std::size_t cells() const { return increments.size(); }
    double length() const { return step * static_cast<double>(increments.size()); }
    /// W(end) - W(start).
    double total() const;
    /// Cells [first, first + count) as a path of their own.
    NoisePath slice(std::size_t first, std::size_t count) const;
};

}  // namespace kpz
