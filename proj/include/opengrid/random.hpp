#pragma once

#include <cstdint>

namespace opengrid {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xorshift64* (Vigna). Fixed algorithm so seeded runs reproduce across
// platforms and standard libraries.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) {
    std::uint64_t s = seed;
    state_ = splitmix64(s);
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

// Independent stream per (seed, stream id), so work items can draw in any
// order or on any thread.
inline Xorshift64Star make_stream(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t s = seed ^ (stream_id * 0xD1B54A32D192ED03ULL);
  return Xorshift64Star(splitmix64(s));
}

}  // namespace opengrid
