#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace dhk::random
{
// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key)
{
    constexpr std::uint32_t kM0 = 0xD2511F53;
    constexpr std::uint32_t kM1 = 0xCD9E8D57;
    constexpr std::uint32_t kW0 = 0x9E3779B9;
    constexpr std::uint32_t kW1 = 0xBB67AE85;
    for (int round = 0; round < 10; ++round)
    {
        std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
        std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
               static_cast<std::uint32_t>(p0)};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

/*!
 * Independent random stream identified by (seed, stream id).
 *
 * The stream id occupies the high half of the Philox counter and the block
 * index the low half, so streams never overlap and any stream can be
 * reconstructed without generating the ones before it.
 */
class Stream
{
  public:
    Stream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          stream_{stream}
    {
    }

    std::uint32_t next_u32()
    {
        if (used_ == 4)
        {
            buf_ = philox4x32({static_cast<std::uint32_t>(block_),
                               static_cast<std::uint32_t>(block_ >> 32),
                               static_cast<std::uint32_t>(stream_),
                               static_cast<std::uint32_t>(stream_ >> 32)},
                              key_);
            ++block_;
            used_ = 0;
        }
        return buf_[used_++];
    }

    //! Uniform on the open interval (0, 1) with 53 random bits.
    double uniform()
    {
        std::uint64_t hi = next_u32();
        std::uint64_t lo = next_u32();
        std::uint64_t bits = ((hi << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    //! Standard normal variate by the Box-Muller transform.
    double normal()
    {
        if (have_spare_)
        {
            have_spare_ = false;
            return spare_;
        }
        double r = std::sqrt(-2 * std::log(uniform()));
        double theta = 2 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

  private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int used_ = 4;
    double spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace dhk::random
