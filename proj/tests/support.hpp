#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mdlgauge/manifest.hpp"
#include "mdlgauge/random_terms.hpp"
#include "mdlgauge/term.hpp"

namespace support {

inline std::filesystem::path scenarios() { return MDLGAUGE_SCENARIOS; }

inline std::string read(const std::string& rel) { return mdlgauge::manifest::read_file(scenarios() / rel); }

inline mdlgauge::term::Term term_file(const std::string& rel) {
  return mdlgauge::term::parse_term(read(rel));
}

inline mdlgauge::term::Term T(std::string_view text) { return mdlgauge::term::parse_term(text); }

// Random term of exactly `nodes` nodes whose leaves become one of `vars`
// with probability `var_prob`.
inline mdlgauge::term::Term random_term(mdlgauge::rnd::Rng& rng, std::size_t nodes,
                                        const std::vector<std::string>& labels,
                                        const std::vector<std::string>& vars, double var_prob,
                                        std::size_t max_arity = 3) {
  using mdlgauge::term::Term;
  if (nodes == 1) {
    if (!vars.empty() && rng.chance(var_prob)) return Term::var(rng.pick(vars));
    return Term::node(rng.pick(labels));
  }
  const std::size_t rest = nodes - 1;
  const std::size_t arity = rng.between(1, std::min(rest, max_arity));
  // Split `rest` into `arity` positive parts.
  std::vector<std::size_t> parts(arity, 1);
  for (std::size_t extra = rest - arity; extra > 0; --extra) ++parts[rng.below(arity)];
  std::vector<Term> kids;
  for (auto p : parts) kids.push_back(random_term(rng, p, labels, vars, var_prob, max_arity));
  return Term::node(rng.pick(labels), std::move(kids));
}

// All ordered forests / trees with exactly `n` nodes over `labels`.
inline std::vector<std::vector<mdlgauge::term::Term>> forests(std::size_t n, const std::vector<std::string>& labels);

inline std::vector<mdlgauge::term::Term> trees(std::size_t n, const std::vector<std::string>& labels) {
  std::vector<mdlgauge::term::Term> out;
  for (const auto& kids : forests(n - 1, labels)) {
    for (const auto& l : labels) out.push_back(mdlgauge::term::Term::node(l, kids));
  }
  return out;
}

inline std::vector<std::vector<mdlgauge::term::Term>> forests(std::size_t n, const std::vector<std::string>& labels) {
  if (n == 0) return {{}};
  std::vector<std::vector<mdlgauge::term::Term>> out;
  for (std::size_t first = 1; first <= n; ++first) {
    for (const auto& head : trees(first, labels)) {
      for (auto tail : forests(n - first, labels)) {
        tail.insert(tail.begin(), head);
        out.push_back(std::move(tail));
      }
    }
  }
  return out;
}

// Replaces random subterms of `g` by variables, one variable per distinct
// replaced subterm. The replaced subterms are recorded in `theta`, so
// substitute(theta, result) == g.
inline mdlgauge::term::Term generalize_randomly(mdlgauge::rnd::Rng& rng, const mdlgauge::term::Term& g, double p,
                                                mdlgauge::term::Substitution& theta,
                                                std::map<mdlgauge::term::Term, std::string>& names,
                                                const std::string& prefix) {
  using mdlgauge::term::Term;
  if (rng.chance(p)) {
    auto [it, fresh] = names.try_emplace(g, "");
    if (fresh) {
      it->second = prefix + std::to_string(names.size());
      theta.emplace(it->second, g);
    }
    return Term::var(it->second);
  }
  std::vector<Term> kids;
  for (const auto& c : g.children()) kids.push_back(generalize_randomly(rng, c, p, theta, names, prefix));
  return Term::node(g.name(), std::move(kids));
}

}  // namespace support
