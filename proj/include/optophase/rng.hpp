#ifndef OPTOPHASE_RNG_HPP
#define OPTOPHASE_RNG_HPP

#include <array>
#include <cstdint>

namespace optophase {

/// Philox4x32-10 block function: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Counter-based generator. A (seed, stream) pair names an independent
/// sequence; draw i of that sequence depends only on (seed, stream, i), so
/// shards can run in any order and on any thread.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1].
    double uniform_open() { return 1.0 - uniform(); }
    /// Standard normal (Box-Muller, one value per two uniforms).
    double normal();
    /// Exponential with unit mean.
    double exponential();

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

}  // namespace optophase

#endif  // OPTOPHASE_RNG_HPP
