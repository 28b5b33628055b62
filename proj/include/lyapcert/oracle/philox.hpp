#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11) and
// Box-Muller normals. A stream is (key, counter prefix); draws with the
// same key and counter are bit-identical on every platform and thread count.

#include <array>
#include <cmath>
#include <cstdint>

namespace lyapcert {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter c, Key k) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        k[0] += kW0;
        k[1] += kW1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
    }
    return c;
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
};

// Stream of standard normals for one (seed, stream id) pair; the block
// counter advances by one per two normals.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        hi_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const auto r = Philox4x32::block({static_cast<std::uint32_t>(n_), static_cast<std::uint32_t>(n_ >> 32), hi_[0], hi_[1]}, key_);
    ++n_;
    // 53-bit uniforms, u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(((static_cast<std::uint64_t>(r[0]) << 32 | r[1]) >> 11)) + 1.0) * 0x1p-53;
    const double u2 = static_cast<double>((static_cast<std::uint64_t>(r[2]) << 32 | r[3]) >> 11) * 0x1p-53;
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double th = 6.283185307179586 * u2;
    spare_ = rad * std::sin(th);
    have_spare_ = true;
    return rad * std::cos(th);
  }

  // Uniform integer in [0, n) from a fresh block (bootstrap resampling).
  std::uint64_t uniform_index(std::uint64_t n) {
    const auto r = Philox4x32::block({static_cast<std::uint32_t>(n_), static_cast<std::uint32_t>(n_ >> 32), hi_[0], hi_[1]}, key_);
    ++n_;
    const std::uint64_t v = static_cast<std::uint64_t>(r[0]) << 32 | r[1];
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * n) >> 64);
  }

 private:
  Philox4x32::Key key_;
  std::array<std::uint32_t, 2> hi_;
  std::uint64_t n_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace lyapcert
