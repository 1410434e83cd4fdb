#pragma once

#include <cmath>
#include <cstdint>

namespace fdcr {

// xoshiro256++ with splitmix64 state expansion. Fixed seed => bit-identical
// stream on every platform, which the simulation contracts rely on.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(uint64_t seed) {
    uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9E3779B97F4A7C15ull;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      word = z ^ (z >> 31);
    }
  }

  uint64_t next() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1], safe as a log argument.
  double uniform_open01() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  uint64_t state_[4];
};

// Deterministic sub-stream seed for partitioned workloads.
inline uint64_t derive_stream_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Standard normal sampler, Marsaglia-Tsang ziggurat (128 layers). One RNG
// word per draw on the fast path; sample-level simulation burns most of its
// time here.
class ZigguratNormal {
 public:
  double draw(Xoshiro256pp& rng) const {
    const Tables& t = tables();
    while (true) {
      const int32_t hz = static_cast<int32_t>(rng.next() >> 32);
      const uint32_t iz = static_cast<uint32_t>(hz) & 127u;
      const uint32_t az =
          hz < 0 ? static_cast<uint32_t>(-static_cast<int64_t>(hz))
                 : static_cast<uint32_t>(hz);
      if (az < t.kn[iz]) return hz * t.wn[iz];

      if (iz == 0) {
        // Tail beyond r.
        double x, y;
        do {
          x = -std::log(rng.uniform_open01()) * kInvR;
          y = -std::log(rng.uniform_open01());
        } while (y + y < x * x);
        return hz > 0 ? kR + x : -(kR + x);
      }
      const double x = hz * t.wn[iz];
      if (t.fn[iz] + rng.uniform01() * (t.fn[iz - 1] - t.fn[iz]) <
          std::exp(-0.5 * x * x)) {
        return x;
      }
    }
  }

 private:
  static constexpr double kR = 3.442619855899;
  static constexpr double kInvR = 1.0 / kR;

  struct Tables {
    uint32_t kn[128];
    double wn[128];
    double fn[128];

    Tables() {
      const double m1 = 2147483648.0;
      double dn = kR, tn = kR;
      const double vn = 9.91256303526217e-3;
      const double q = vn / std::exp(-0.5 * dn * dn);
      kn[0] = static_cast<uint32_t>((dn / q) * m1);
      kn[1] = 0;
      wn[0] = q / m1;
      wn[127] = dn / m1;
      fn[0] = 1.0;
      fn[127] = std::exp(-0.5 * dn * dn);
      for (int i = 126; i >= 1; --i) {
        dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
        kn[i + 1] = static_cast<uint32_t>((dn / tn) * m1);
        tn = dn;
        fn[i] = std::exp(-0.5 * dn * dn);
        wn[i] = dn / m1;
      }
    }
  };

  static const Tables& tables() {
    static const Tables t;
    return t;
  }
};

}  // namespace fdcr
