#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace misq {

// splitmix64 finalizer; the standard mixer for deriving generator seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t stream_tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One independent random stream per (master seed, component tag, replica
// index). Streams depend only on that triple, never on thread layout, so
// replicated experiments are bit-reproducible at any worker count.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t tag, std::uint64_t index)
      : engine_(mix64(mix64(mix64(master_seed) ^ tag) ^ index)) {}

  explicit RngStream(std::uint64_t master_seed) : RngStream(master_seed, 0, 0) {}

  std::mt19937_64& engine() { return engine_; }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double exponential() { return std::exponential_distribution<double>(1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace misq
