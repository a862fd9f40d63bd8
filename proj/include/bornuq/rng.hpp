#ifndef BORNUQ_RNG_HPP
#define BORNUQ_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace bornuq::rng {

/*
 * Deterministic random streams for reproducible experiments.
 *
 * Generator: xoshiro256++ (Blackman & Vigna, 2019, public domain).
 * State is seeded from a single 64-bit seed expanded with splitmix64,
 * as recommended by the authors.
 *
 * Splitting rule (documented so every table cell is reproducible):
 *   child_seed = mix64(parent_seed ^ (key + 1) * 0x9e3779b97f4a7c15)
 * where mix64 is the splitmix64 output scrambler. Keys are either raw
 * indices (repetition number, grid cell) or hash_tag("...") values for
 * domain separation between unrelated consumers of the same parent.
 */

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

// splitmix64 output scrambler
std::uint64_t mix64(std::uint64_t x);

// FNV-1a, for turning short role names into split keys
std::uint64_t hash_tag(std::string_view tag);

std::uint64_t derive_seed(std::uint64_t parent_seed, std::uint64_t key);

class Stream {
public:
    explicit Stream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();

    // uniform in [0, 1), 53-bit resolution
    double uniform();
    double uniform(double lo, double hi);

    bool bernoulli(double p_true);

    // standard normal via Box-Muller (no cached spare, so copies of a
    // stream stay in lockstep draw-for-draw)
    double normal();

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n);

    // independent child stream; see splitting rule above
    Stream split(std::uint64_t key) const;
    Stream split(std::string_view tag) const { return split(hash_tag(tag)); }

private:
    std::array<std::uint64_t, 4> state_;
    std::uint64_t seed_;
};

} // namespace bornuq::rng

#endif
