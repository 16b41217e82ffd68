#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mdlgauge/term.hpp"

namespace mdlgauge::rnd {

std::uint64_t splitmix64(std::uint64_t x);

// Derives an independent stream seed for item `index` of a seeded run.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// mt19937_64 with bounded draws that do not depend on the standard
/// library's distribution implementations, so seeded runs reproduce across
/// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  std::uint64_t next() { return eng_(); }
  // Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n);
  // Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  const T& pick(std::span<const T> xs) {
    return xs[below(xs.size())];
  }
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 eng_;
};

/// Random ordered tree with exactly `nodes` nodes. Each node takes between 0
/// and `max_arity` children; labels are drawn uniformly from `labels`.
term::Term random_tree(Rng& rng, std::size_t nodes, const std::vector<std::string>& labels,
                       std::size_t max_arity = 3);

// Labels "s0".."s{n-1}".
std::vector<std::string> alphabet(std::size_t n, std::string_view prefix = "s");

}  // namespace mdlgauge::rnd
