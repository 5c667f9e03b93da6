#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace wlp {

// Identifies one reproducible substream of the master generator. Distinct
// stream_index values give statistically independent draws for the same
// master_seed, independent of how work is split across threads.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

// Philox4x32-10 counter-based generator. Key = master seed, counter =
// (draw index, stream index); a block is pure function of (key, counter),
// so replay never depends on call interleaving.
class Philox4x32 {
  public:
    explicit Philox4x32(RngStream s) : stream_(s) {}

    std::array<std::uint32_t, 4> block(std::uint64_t draw) const {
        std::uint32_t c0 = static_cast<std::uint32_t>(draw);
        std::uint32_t c1 = static_cast<std::uint32_t>(draw >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(stream_.stream_index);
        std::uint32_t c3 = static_cast<std::uint32_t>(stream_.stream_index >> 32);
        std::uint32_t k0 = static_cast<std::uint32_t>(stream_.master_seed);
        std::uint32_t k1 = static_cast<std::uint32_t>(stream_.master_seed >> 32);
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += 0x9E3779B9u;
                k1 += 0xBB67AE85u;
            }
            std::uint64_t p0 = 0xD2511F53ull * c0;
            std::uint64_t p1 = 0xCD9E8D57ull * c2;
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            std::uint32_t n0 = hi1 ^ c1 ^ k0;
            std::uint32_t n1 = lo1;
            std::uint32_t n2 = hi0 ^ c3 ^ k1;
            std::uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
        }
        return {c0, c1, c2, c3};
    }

    RngStream stream() const { return stream_; }

  private:
    RngStream stream_;
};

// Standard normal draws from one stream via Box-Muller on Philox blocks.
class NormalStream {
  public:
    explicit NormalStream(RngStream s) : gen_(s) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        auto b = gen_.block(draw_++);
        std::uint64_t w0 = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
        std::uint64_t w1 = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
        // u1 in (0,1] so the log is finite; u2 in [0,1).
        double u1 = 1.0 - static_cast<double>(w0 >> 11) * 0x1.0p-53;
        double u2 = static_cast<double>(w1 >> 11) * 0x1.0p-53;
        double rad = std::sqrt(-2.0 * std::log(u1));
        double ang = 6.283185307179586476925286766559 * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

  private:
    Philox4x32 gen_;
    std::uint64_t draw_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace wlp
