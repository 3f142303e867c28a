#include "ideaforge/rng.hpp"

namespace ideaforge {

namespace {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t global_seed,
                          std::initializer_list<std::string_view> parts) noexcept {
  std::uint64_t h = mix64(global_seed + 0x9E3779B97F4A7C15ULL);
  for (const auto part : parts) h = mix64(h ^ fnv1a64(part));
  return h;
}

}  // namespace ideaforge
