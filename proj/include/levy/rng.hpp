#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace levy
{

//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 counter-based generator.
 *
 * A stream is fixed by (seed, draw index, stream id); the block counter runs
 * inside it. Any draw can be regenerated without touching the others, which
 * keeps batches independent of how they are split across threads.
 */
class Philox
{
  public:
    using result_type = std::uint64_t;

    Philox(std::uint64_t seed, std::uint64_t draw, std::uint32_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{static_cast<std::uint32_t>(draw), static_cast<std::uint32_t>(draw >> 32), stream, 0}
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (avail_ == 0)
            refill();
        --avail_;
        return buf_[avail_];
    }

    //! Uniform on the open interval (0, 1) with 53 random bits
    double uniform()
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    //! Raw block function, exposed for known-answer tests
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);

  private:
    void refill()
    {
        auto const out = block(ctr_, key_);
        ++ctr_[3];
        buf_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
        buf_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
        // served from the back
        std::swap(buf_[0], buf_[1]);
        avail_ = 2;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint64_t, 2> buf_{};
    int avail_{0};
};

inline std::array<std::uint32_t, 4> Philox::block(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key)
{
    constexpr std::uint32_t kM0 = 0xD2511F53, kM1 = 0xCD9E8D57;
    constexpr std::uint32_t kW0 = 0x9E3779B9, kW1 = 0xBB67AE85;
    for (int round = 0; round < 10; ++round)
    {
        std::uint64_t const p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        std::uint64_t const p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        std::uint32_t const hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
        std::uint32_t const hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

}  // namespace levy
