#include "clh2d/rng.hpp"

#include <cmath>

namespace clh2d {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_label(std::uint64_t root, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(root) ^ h);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

Rng Rng::derive(std::uint64_t root, std::string_view label) { return Rng(mix_label(root, label)); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Mat2 haar_unitary(Rng& rng) {
  auto disc = [&](double& a, double& b) {
    double s = 0.0;
    do {
      a = 2.0 * rng.uniform() - 1.0;
      b = 2.0 * rng.uniform() - 1.0;
      s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    return s;
  };
  double x1, x2, x3, x4;
  const double s1 = disc(x1, x2);
  const double s2 = disc(x3, x4);
  const double f = std::sqrt((1.0 - s1) / s2);
  const cplx a(x1, x2), b(x3 * f, x4 * f);
  const double phi = 2.0 * M_PI * rng.uniform();
  const cplx phase = std::polar(1.0, phi);
  Mat2 u;
  u << a, -std::conj(b), b, std::conj(a);
  return phase * u;
}

}  // namespace clh2d
