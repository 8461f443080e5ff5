#pragma once

#include <cstdint>
#include <random>

namespace mco {

using Engine = std::mt19937_64;

// Deterministic, splittable source of randomness. A stream is just a 64-bit
// key; split(i) derives an independent child key, and engine() materializes a
// generator for the key. Streams are copied by value and never shared.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

    RandomStream split(std::uint64_t index) const {
        RandomStream child(0);
        child.key_ = mix(key_ + mix(index + 0x9e3779b97f4a7c15ULL));
        return child;
    }

    Engine engine() const { return Engine(key_); }
    std::uint64_t key() const { return key_; }

private:
    // SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
};

} // namespace mco
