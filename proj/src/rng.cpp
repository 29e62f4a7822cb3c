#include "ambc/rng.hpp"

#include <cmath>

namespace ambc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng substream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ splitmix64(index + 0x2545f4914f6cdd1dULL));
    return Rng(h);
}

Complex complex_gaussian(Rng& rng, double variance) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

}  // namespace ambc
