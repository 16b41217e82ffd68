#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdlgauge/term.hpp"
#include "mdlgauge/treedist.hpp"

namespace mdlgauge::viscosity {

/// Applies `edits` random elementary edits (relabel, insert or delete of one
/// node) to a ground term. The root is never deleted. The result always
/// differs from `t`; a single edit is at unit tree edit distance.
term::Term perturb(const term::Term& t, std::uint64_t seed, std::size_t edits = 1);

// Labels perturb() draws from, besides those already in the term.
const std::vector<std::string>& perturb_labels();

struct Observation {
  double d_in = 0;   // summed parameter distance
  double d_out = 0;  // instance distance
};

struct LipschitzEstimate {
  double forward_k = 0;
  bool inverse_ok = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  // Parameters that never occur in the body; inverse_ok is not meaningful
  // when this is non-empty.
  std::vector<std::string> unused_params;
  std::vector<Observation> observations;
};

class ZeroSamples : public std::invalid_argument {
 public:
  ZeroSamples() : std::invalid_argument("estimate_lipschitz needs at least one sample") {}
};

/// Samples argument tuples and one-parameter perturbations of them, and
/// relates parameter distance to instance distance:
///   forward_k  = max d_out / d_in
///   inverse_ok = d_in <= d_out on every sample
/// Each sample draws from its own seed stream, so results do not depend on
/// evaluation order.
LipschitzEstimate estimate_lipschitz(const term::Abstraction& a, std::size_t samples,
                                     std::uint64_t seed,
                                     const treedist::CostModel& costs = {});

// One sample: distances for a given base and perturbed argument tuple.
Observation observe(const term::Abstraction& a, std::span<const term::Term> base,
                    std::span<const term::Term> perturbed, const treedist::CostModel& costs = {});

// Random abstraction over `labels` whose body has `body_nodes` nodes, with
// `params` parameters each occurring at least once. Used for property runs.
term::Abstraction random_abstraction(std::uint64_t seed, std::size_t params, std::size_t body_nodes);

}  // namespace mdlgauge::viscosity
