#include "kpzlab/random.hpp"

#include <cmath>
#include <numeric>

#include "kpzlab/errors.hpp"

namespace kpz {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    return splitmix64(splitmix64(root) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t stream_tag(const char* name) {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char* p = name; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 0x100000001b3ULL;
    }
    return h;
}

NoisePath NoisePath::brownian(std::size_t cells, double step, std::uint64_t seed) {
    if (!(step > 0.0)) throw ConfigError("NoisePath: step must be positive");
    NoisePath p;
    p.step = step;
    p.seed = seed;
    p.increments.resize(cells);
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(step));
    for (auto& dw : p.increments) dw = normal(rng);
    return p;
}

NoisePath NoisePath::zero(std::size_t cells, double step) {
    if (!(step > 0.0)) throw ConfigError("NoisePath: step must be positive");
    NoisePath p;
    p.step = step;
    p.increments.assign(cells, 0.0);
    return p;
}

double NoisePath::total() const { return std::accumulate(increments.begin(), increments.end(), 0.0); }

NoisePath NoisePath::slice(std::size_t first, std::size_t count) const {
    if (first + count > increments.size()) throw ConfigError("NoisePath::slice: range exceeds path");
    NoisePath p;
    p.step = step;
    p.seed = seed;
    p.increments.assign(increments.begin() + static_cast<std::ptrdiff_t>(first),
                        increments.begin() + static_cast<std::ptrdiff_t>(first + count));
    return p;
}

}  // namespace kpz
