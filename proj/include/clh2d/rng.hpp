#pragma once

#include "clh2d/core.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace clh2d {

// Seeded generator with labeled splitting: derive("state", 7) and
// derive("scramble", 7) are independent streams of the same root seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng derive(std::uint64_t root, std::string_view label);
  Rng split(std::string_view label) const { return derive(seed_, label); }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform double in [0, 1) from the top 53 bits; identical on every platform.
  double uniform();
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t mix_label(std::uint64_t root, std::string_view label);

// Haar-distributed 2 x 2 unitary.
Mat2 haar_unitary(Rng& rng);

}  // namespace clh2d
