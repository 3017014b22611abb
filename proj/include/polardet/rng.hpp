#pragma once

#include <cmath>
#include <cstdint>

namespace polardet {

// Counter-based generator (philox4x32-10). A stream is addressed by
// (seed, stream index); draws within a stream are addressed by a block
// counter. Any (seed, stream) pair can be opened independently on any
// thread and always yields the same sequence.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Uniform double in (0, 1]. Never 0, so log() is always safe.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    ++normals_;
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * kPi * u2;
    cached_ = r * std::sin(t);
    have_cached_ = true;
    return r * std::cos(t);
  }

  // Number of normal() draws handed out; tests use it to count rejections.
  std::uint64_t normals_drawn() const { return normals_; }

  // Raw philox4x32-10 block for the known-answer tests.
  static void block(const std::uint32_t ctr[4], const std::uint32_t key[2],
                    std::uint32_t out[4]) {
    std::uint32_t c0 = ctr[0], c1 = ctr[1], c2 = ctr[2], c3 = ctr[3];
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c0;
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      c0 = n0;
      c1 = lo1;
      c2 = n2;
      c3 = lo0;
      if (round != 9) {
        k0 += kW0;
        k1 += kW1;
      }
    }
    out[0] = c0;
    out[1] = c1;
    out[2] = c2;
    out[3] = c3;
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  std::uint64_t next_u64() {
    if (pending_valid_) {
      pending_valid_ = false;
      return pending_;
    }
    const std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32)};
    const std::uint32_t key[2] = {static_cast<std::uint32_t>(seed_),
                                  static_cast<std::uint32_t>(seed_ >> 32)};
    std::uint32_t out[4];
    block(ctr, key, out);
    ++block_;
    pending_ = out[2] | (static_cast<std::uint64_t>(out[3]) << 32);
    pending_valid_ = true;
    return out[0] | (static_cast<std::uint64_t>(out[1]) << 32);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::uint64_t pending_ = 0;
  bool pending_valid_ = false;
  bool have_cached_ = false;
  double cached_ = 0.0;
  std::uint64_t normals_ = 0;
};

}
