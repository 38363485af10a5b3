#pragma once

#include <array>
#include <cstdint>

namespace arq {

// Philox4x32-10 counter-based generator. A block of four 32-bit words is a
// pure function of (key, counter), so every draw in the project is addressed
// by indices instead of shared state: results cannot depend on evaluation
// order or thread count.
namespace philox {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        const std::uint64_t p0 = std::uint64_t{kMult0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMult1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

}  // namespace philox

// Stream domains keep unrelated consumers of the same seed apart.
enum class RngDomain : std::uint32_t {
    Simulation = 0,
    Bootstrap = 1,
    SeedDerivation = 2,
};

// One logical stream, identified by (seed, domain, hi, lo). The simulator
// uses hi = participant index and lo = trial index; the bootstrap uses
// lo = resample index. Each draw slot maps to its own Philox block:
// counter = {slot, lo, hi, domain}, key = seed.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, RngDomain domain, std::uint32_t hi, std::uint32_t lo)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          domain_(static_cast<std::uint32_t>(domain)),
          hi_(hi),
          lo_(lo) {}

    std::array<std::uint32_t, 4> block_at(std::uint32_t slot) const {
        return philox::block({slot, lo_, hi_, domain_}, key_);
    }

    std::uint32_t u32(std::uint32_t slot) const { return block_at(slot)[0]; }

    std::uint64_t u64(std::uint32_t slot) const {
        const auto b = block_at(slot);
        return (std::uint64_t{b[1]} << 32) | b[0];
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform(std::uint32_t slot) const {
        return static_cast<double>(u64(slot) >> 11) * 0x1.0p-53;
    }

    bool bernoulli(std::uint32_t slot, double p) const { return uniform(slot) < p; }

    // Uniform integer in [0, n) via multiply-shift; the bias of at most
    // n / 2^32 is irrelevant at the label-set sizes used here.
    std::uint32_t below(std::uint32_t slot, std::uint32_t n) const {
        return static_cast<std::uint32_t>((std::uint64_t{u32(slot)} * n) >> 32);
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t domain_;
    std::uint32_t hi_;
    std::uint32_t lo_;
};

// Deterministic sub-seed for nested randomized procedures (per-replication
// studies, per-condition streams).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t a, std::uint32_t b) {
    return PhiloxStream(seed, RngDomain::SeedDerivation, a, b).u64(0);
}

}  // namespace arq
