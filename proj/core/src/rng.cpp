#include "mixinglab/rng.hpp"

#include <array>

namespace mixinglab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  // Mix (seed, stream) so stream ids that differ in a single bit still
  // decorrelate the engines.
  std::uint64_t s = seed ^ (stream * 0x9E3779B97F4A7C15ULL) ^ 0xD1B54A32D192ED03ULL;
  std::array<std::uint32_t, 8> words;
  for (std::size_t i = 0; i < words.size(); i += 2) {
    const std::uint64_t w = splitmix64(s);
    words[i] = static_cast<std::uint32_t>(w);
    words[i + 1] = static_cast<std::uint32_t>(w >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  gen_.seed(seq);
}

}  // namespace mixinglab
