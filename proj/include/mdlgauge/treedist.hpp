#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>

#include "mdlgauge/term.hpp"

namespace mdlgauge::treedist {

struct CostModel {
  double insert_cost = 1.0;
  double delete_cost = 1.0;
  // Charged only when labels differ.
  double relabel_cost = 1.0;

  static CostModel unit() { return {}; }
};

// "i,d,r" as taken by the CLI; throws std::invalid_argument on malformed or
// negative values.
CostModel parse_costs(std::string_view text);

/// Ordered tree edit distance (Zhang & Shasha). Metavariables are ordinary
/// labels, distinct from a node with the same name. O(n1 n2 min(depth,
/// leaves)^2) time and O(n1 n2) space.
double ted(const term::Term& a, const term::Term& b, const CostModel& costs = {});

class SizeLimitExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kOracleMaxNodes = 10;

// Reference implementation for testing: memoized recursion over forests,
// removing rightmost roots. Exponential; refuses trees over kOracleMaxNodes.
double ted_oracle(const term::Term& a, const term::Term& b, const CostModel& costs = {});

// Sum of coordinate-wise distances between two argument tuples of equal
// length.
double tuple_distance(std::span<const term::Term> a, std::span<const term::Term> b,
                      const CostModel& costs = {});

}  // namespace mdlgauge::treedist
