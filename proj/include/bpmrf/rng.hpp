#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace bpmrf {

// Counter-based random stream (Philox4x32-10, Salmon et al. 2011).
//
// A stream is identified by (seed, stream id). Draws are a pure function of
// that identity and the block counter, so runs are bit-reproducible and
// independent streams can be handed to parallel jobs without coordination.
// split(child) derives a statistically independent child stream.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), block_(0), pos_(4), have_gauss_(false), gauss_(0.0) {
        key_[0] = static_cast<std::uint32_t>(seed);
        key_[1] = static_cast<std::uint32_t>(seed >> 32);
    }

    // Independent child stream; children of distinct (stream, child) pairs
    // get distinct stream ids via a splitmix64 mix.
    RandomStream split(std::uint64_t child) const {
        return RandomStream(seed_, mix64(stream_ ^ mix64(child + 0x9E3779B97F4A7C15ULL)));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint32_t next_u32() {
        if (pos_ >= 4) {
            buf_ = block(block_++);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform on the open interval (0,1); safe for log().
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; second value of each pair is cached.
    double next_gaussian() {
        if (have_gauss_) {
            have_gauss_ = false;
            return gauss_;
        }
        double u1 = next_double();
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        gauss_ = r * std::sin(a);
        have_gauss_ = true;
        return r * std::cos(a);
    }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // multiply-shift; bias is negligible for n << 2^64
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static void round(std::array<std::uint32_t, 4>& c, std::uint32_t k0, std::uint32_t k1) {
        const std::uint64_t m0 = 0xD2511F53ULL * c[0];
        const std::uint64_t m1 = 0xCD9E8D57ULL * c[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(m0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(m0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(m1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(m1);
        c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    }

    std::array<std::uint32_t, 4> block(std::uint64_t n) const {
        std::array<std::uint32_t, 4> c = {
            static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int r = 0; r < 10; ++r) {
            round(c, k0, k1);
            k0 += 0x9E3779B9U;
            k1 += 0xBB67AE85U;
        }
        return c;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_;
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> buf_{};
    int pos_;
    bool have_gauss_;
    double gauss_;
};

}  // namespace bpmrf
