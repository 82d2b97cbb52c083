#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hetnet {

// splitmix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic seed for a sub-stream identified by up to three tags.
// Streams for distinct tag tuples are independent, so adding a stream
// never perturbs the draws of an existing one.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = mix_seed(master ^ mix_seed(a + 0x517cc1b727220a95ull));
    s = mix_seed(s ^ mix_seed(b + 0x6c62272e07bb0142ull));
    return mix_seed(s ^ mix_seed(c + 0x2545f4914f6cdd1dull));
}

// mt19937_64 plus helpers whose mapping from raw draws to values is fully
// pinned down here (no std::*_distribution), so a seed reproduces the same
// values on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // unbiased integer in [0, n), n >= 1
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (~n + 1) % n; // 2^64 mod n
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace hetnet
