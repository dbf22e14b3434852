#ifndef GM_RNG_HPP
#define GM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace gm {

/// splitmix64 step. All randomness in the library flows through this
/// generator so that runs are reproducible across platforms and standard
/// libraries (std::uniform_int_distribution is not portable).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Splittable seed derivation: seed = mix(master, part0, part1, ...).
/// Used as deriveSeed(master, {instanceIndex, trialIndex}) by the harness,
/// giving independent streams without coordination between workers.
inline std::uint64_t deriveSeed(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = master;
    (void)splitmix64(s);
    for (std::uint64_t p : parts) {
        s ^= p + 0x9e3779b97f4a7c15ULL;
        (void)splitmix64(s);
    }
    return s;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Avoid the all-zero orbit quirk; one warm-up step decorrelates
        // small consecutive seeds as well.
        (void)splitmix64(state_);
    }

    std::uint64_t nextU64() { return splitmix64(state_); }

    /// Unbiased uniform draw from [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling over the largest multiple of n.
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = nextU64();
            if (r >= threshold) return r % n;
        }
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

    bool coin() { return (nextU64() & 1) != 0; }

    /// Uniform double in [0, 1) with 53 random bits.
    double unitDouble() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[index(v.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace gm

#endif
