#include "mdlgauge/random_terms.hpp"

#include <algorithm>
#include <stdexcept>

namespace mdlgauge::rnd {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  // Rejection sampling over the largest multiple of n.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

term::Term random_tree(Rng& rng, std::size_t nodes, const std::vector<std::string>& labels,
                       std::size_t max_arity) {
  if (nodes == 0) throw std::invalid_argument("random_tree: zero nodes");
  const std::string& label = rng.pick(labels);
  std::size_t rest = nodes - 1;
  if (rest == 0 || max_arity == 0) return term::Term::node(label);
  // Split the remaining nodes over 1..max_arity non-empty children.
  const std::size_t arity = rng.between(1, std::min(max_arity, rest));
  std::vector<std::size_t> sizes(arity, 1);
  for (std::size_t extra = rest - arity; extra > 0; --extra) ++sizes[rng.below(arity)];
  std::vector<term::Term> kids;
  kids.reserve(arity);
  for (auto s : sizes) kids.push_back(random_tree(rng, s, labels, max_arity));
  return term::Term::node(label, std::move(kids));
}

std::vector<std::string> alphabet(std::size_t n, std::string_view prefix) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

}  // namespace mdlgauge::rnd
