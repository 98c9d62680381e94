#ifndef POWB_RNG_HPP
#define POWB_RNG_HPP

#include <cstdint>
#include <vector>

namespace powb {

// splitmix64: all randomness in the workbench flows from one 64-bit seed
// through named substreams so artifacts are reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  // Derives an independent stream for a named purpose.
  SplitMix64 split(std::uint64_t stream_id) const {
    SplitMix64 r(state_ ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)));
    r.next();
    return r;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace powb

#endif
