#include "bornuq/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bornuq::rng {

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t parent_seed, std::uint64_t key) {
    return mix64(parent_seed ^ ((key + 1) * golden_gamma));
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Stream::Stream(std::uint64_t seed) : seed_(seed) {
    // splitmix64 expansion of the seed into the four state words
    std::uint64_t s = seed;
    for (auto& w : state_) {
        s += golden_gamma;
        w = mix64(s);
    }
}

std::uint64_t Stream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Stream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

bool Stream::bernoulli(double p_true) {
    if (!(p_true >= 0.0 && p_true <= 1.0))
        throw std::invalid_argument("bernoulli: probability outside [0, 1]");
    return uniform() < p_true;
}

double Stream::normal() {
    // Box-Muller, discarding the second variate
    const double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t Stream::below(std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("below: n must be positive");
    // multiply-shift with rejection of the biased tail
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = next_u64();
        const unsigned __int128 m = static_cast<unsigned __int128>(r) * n;
        if (static_cast<std::uint64_t>(m) >= threshold)
            return static_cast<std::uint64_t>(m >> 64);
    }
}

Stream Stream::split(std::uint64_t key) const {
    return Stream(derive_seed(seed_, key));
}

} // namespace bornuq::rng
