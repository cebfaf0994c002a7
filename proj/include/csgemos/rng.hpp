#ifndef CSGEMOS_RNG_HPP
#define CSGEMOS_RNG_HPP

#include <cstdint>
#include <random>

namespace csgemos {

// splitmix64 step; used to derive independent substream seeds so that
// parallel workers produce identical output regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL + stream * 0xbf58476d1ce4e5b9ULL);
  splitmix64(s);
  return splitmix64(s);
}

// mt19937_64 wrapper producing platform-independent uniforms (the raw
// engine is standardized; distributions from <random> are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // strictly inside (0, 1)
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // unbiased integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace csgemos

#endif  // CSGEMOS_RNG_HPP
