#ifndef HETNET_CS_RNG_HPP
#define HETNET_CS_RNG_HPP

#include <cstdint>
#include <random>

namespace hetnet_cs {

using Rng = std::mt19937_64;

/// Named sub-streams of one scenario seed. Each consumer gets its own engine
/// so that e.g. adding a user does not shift the shadow-fading draws.
enum class Stream : std::uint32_t {
  users = 1,
  channel = 2,
  instances = 3,
};

/// Deterministic engine for (seed, stream, index). `index` is the time step
/// for channel draws and unused (0) otherwise.
inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace hetnet_cs

#endif  // HETNET_CS_RNG_HPP
