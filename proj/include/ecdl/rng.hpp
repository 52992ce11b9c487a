#ifndef ECDL_RNG_HPP
#define ECDL_RNG_HPP

#include <cstdint>

namespace ecdl {

// SplitMix64: small, fast, and good enough for experiment sampling.
// Trial-level determinism is obtained by seeding one generator per trial
// from (seed, trial index), so results do not depend on scheduling.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    static Rng for_trial(uint64_t seed, uint64_t trial) {
        Rng r(seed + 0x9e3779b97f4a7c15ULL * (trial + 1));
        r.next();
        r.next();
        return r;
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound > 0
    uint64_t below(uint64_t bound) {
        // rejection sampling to avoid modulo bias
        uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    uint64_t bits(unsigned nbits) {
        return nbits == 0 ? 0 : (next() >> (64 - nbits));
    }

private:
    uint64_t state_;
};

} // namespace ecdl

#endif
