#ifndef COMMDIM_RNG_HPP
#define COMMDIM_RNG_HPP

#include <array>
#include <cstdint>

namespace commdim {

/// xoshiro256++ seeded through splitmix64. Self-contained so that streams are
/// reproducible bit-for-bit across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Stream for worker `index` of a seeded computation; the fixed splitting
  /// rule keeps (seed, index) -> stream stable.
  static Rng derive(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  double uniform01();    // [0, 1)
  double uniform_pos();  // (0, 1]

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace commdim

#endif
