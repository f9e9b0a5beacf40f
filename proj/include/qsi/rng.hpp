#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace qsi {

using u128 = unsigned __int128;

/// Counter-based random stream keyed by (seed, label).
///
/// The construction is fixed so that other implementations can reproduce
/// every run bit for bit:
///   mix(z)            splitmix64 finalizer
///   label hash        64-bit FNV-1a over the label bytes
///   key               mix(mix(seed) ^ fnv1a(label))
///   i-th output       mix(key + i * 0x9e3779b97f4a7c15), i = 1, 2, ...
///   split(label)      new stream with key mix(key ^ fnv1a(label))
///   uniform(n)        rejection below 2^64 - (2^64 mod n), then x mod n
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream(std::uint64_t seed, std::string_view label);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t uniform(std::uint64_t bound);
  /// Uniform in [0, bound) for bounds beyond 64 bits (exponent ranges up to q^4).
  u128 uniform_wide(u128 bound);

  Stream split(std::string_view label) const;
  Stream split(std::string_view label, std::uint64_t index) const;

  /// Fisher-Yates with uniform() draws, front to back.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform(static_cast<std::uint64_t>(i)));
      std::swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t key() const noexcept { return key_; }

 private:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z) noexcept;
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace qsi
