#include "qsi/rng.hpp"

#include <string>

#include "qsi/error.hpp"

namespace qsi {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Stream::Stream(std::uint64_t seed, std::string_view label)
    : key_(mix64(mix64(seed) ^ fnv1a64(label))) {}

std::uint64_t Stream::next() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

std::uint64_t Stream::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::InvalidParameters, "uniform bound must be positive");
  // 2^64 mod bound, computed without 128-bit arithmetic.
  const std::uint64_t excess = (0 - bound) % bound;
  const std::uint64_t limit = 0 - excess;  // wraps to 0 when excess == 0
  for (;;) {
    std::uint64_t x = next();
    if (excess == 0 || x < limit) return x % bound;
  }
}

u128 Stream::uniform_wide(u128 bound) {
  if (bound == 0) throw Error(ErrorKind::InvalidParameters, "uniform bound must be positive");
  if ((bound >> 64) == 0) return uniform(static_cast<std::uint64_t>(bound));
  const u128 excess = (0 - bound) % bound;
  const u128 limit = 0 - excess;
  for (;;) {
    u128 hi = next();
    u128 x = (hi << 64) | next();
    if (excess == 0 || x < limit) return x % bound;
  }
}

Stream Stream::split(std::string_view label) const {
  return Stream(mix64(key_ ^ fnv1a64(label)));
}

Stream Stream::split(std::string_view label, std::uint64_t index) const {
  std::string full(label);
  full += '/';
  full += std::to_string(index);
  return split(full);
}

}  // namespace qsi
