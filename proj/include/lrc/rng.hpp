#pragma once

#include <cstdint>
#include <random>

namespace lrc {

// One SplitMix64 output step; also the mixing function for stream derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Hash-chained RNG stream tree: a master seed expands into per-replicate and
// per-site streams via child(label), so every node is reproducible from the
// root seed and its label path, independent of evaluation order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(splitmix64(seed)) {}

  RngStream child(std::uint64_t label) const {
    RngStream out(*this);
    out.state_ = splitmix64(state_ ^ splitmix64(label));
    return out;
  }

  std::mt19937_64 engine() const { return std::mt19937_64(splitmix64(state_)); }

 private:
  std::uint64_t state_;
};

}  // namespace lrc
