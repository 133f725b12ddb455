#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>

namespace authsim {

// splitmix64 finalizer; decorrelates raw seed words before they are used as
// a Philox key.
inline constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace detail {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3", SC 2011).
inline std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 2> key,
                                                 std::array<std::uint32_t, 4> ctr) noexcept {
    constexpr std::uint32_t mul_a = 0xD2511F53u;
    constexpr std::uint32_t mul_b = 0xCD9E8D57u;
    constexpr std::uint32_t weyl_a = 0x9E3779B9u;
    constexpr std::uint32_t weyl_b = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(mul_a) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(mul_b) * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
               static_cast<std::uint32_t>(p0)};
        key[0] += weyl_a;
        key[1] += weyl_b;
    }
    return ctr;
}

}  // namespace detail

// Counter-based random stream: the triple (master seed, stream id, position)
// fully determines every output, so trials can be partitioned across workers
// in any order and still reproduce bit-identically. The stream id occupies
// the upper counter words, the block index the lower ones.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(mix64(seed)),
               static_cast<std::uint32_t>(mix64(seed) >> 32)},
          stream_(stream) {}

    std::uint32_t next_u32() noexcept {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe as a logarithm argument.
    double uniform_pos() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Circularly symmetric complex Gaussian with E|z|^2 = variance
    // (each real component has variance/2). Box-Muller in polar form:
    // |z|^2 ~ Exp(variance), phase uniform.
    std::complex<double> complex_gaussian(double variance) noexcept {
        const double mag = std::sqrt(-variance * std::log(uniform_pos()));
        const double phase = 6.283185307179586476925286766559 * uniform01();
        return {mag * std::cos(phase), mag * std::sin(phase)};
    }

    void fill_complex_gaussian(std::span<std::complex<double>> out, double variance) noexcept {
        for (auto& z : out) z = complex_gaussian(variance);
    }

private:
    void refill() noexcept {
        buf_ = detail::philox_block(key_, {static_cast<std::uint32_t>(block_),
                                           static_cast<std::uint32_t>(block_ >> 32),
                                           static_cast<std::uint32_t>(stream_),
                                           static_cast<std::uint32_t>(stream_ >> 32)});
        ++block_;
        pos_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

// A family of related streams: `base` reserves a block of stream ids under
// one seed, member streams are addressed by index. Index ranges of distinct
// families must not overlap; the engine allocates bases with tag bits in
// the top byte.
struct StreamFamily {
    std::uint64_t seed = 0;
    std::uint64_t base = 0;

    Rng at(std::uint64_t index) const noexcept { return Rng(seed, base + index); }
    StreamFamily sub(std::uint64_t offset) const noexcept { return {seed, base + offset}; }
};

inline constexpr std::uint64_t stream_tag(std::uint64_t tag, std::uint64_t aux = 0) noexcept {
    return (tag << 56) | (aux << 40);
}

}  // namespace authsim
