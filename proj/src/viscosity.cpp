#include "mdlgauge/viscosity.hpp"

#include <algorithm>
#include <set>

#include "mdlgauge/random_terms.hpp"

namespace mdlgauge::viscosity {

using term::Term;

namespace {

// Pre-order path to a node: child indices from the root.
using Path = std::vector<std::size_t>;

void collect_paths(const Term& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(i);
    collect_paths(t.child(i), cur, out);
    cur.pop_back();
  }
}

template <typename F>
Term rewrite_at(const Term& t, std::span<const std::size_t> path, F&& f) {
  if (path.empty()) return f(t);
  std::vector<Term> kids(t.children().begin(), t.children().end());
  kids[path[0]] = rewrite_at(t.child(path[0]), path.subspan(1), f);
  return Term::node(t.name(), std::move(kids));
}

std::string fresh_label(rnd::Rng& rng, const std::string& avoid) {
  const auto& pool = perturb_labels();
  for (;;) {
    const std::string& l = rng.pick(pool);
    if (l != avoid) return l;
  }
}

Term one_edit(const Term& t, rnd::Rng& rng) {
  std::vector<Path> paths;
  Path cur;
  collect_paths(t, cur, paths);

  // 0 relabel, 1 insert, 2 delete (never the root).
  const std::size_t kind = rng.below(paths.size() > 1 ? 3 : 2);
  if (kind == 2) {
    const Path& p = paths[1 + rng.below(paths.size() - 1)];
    const std::size_t idx = p.back();
    return rewrite_at(t, std::span(p).first(p.size() - 1), [&](const Term& parent) {
      std::vector<Term> kids;
      for (std::size_t i = 0; i < parent.arity(); ++i) {
        if (i != idx) {
          kids.push_back(parent.child(i));
          continue;
        }
        for (const auto& g : parent.child(i).children()) kids.push_back(g);
      }
      return Term::node(parent.name(), std::move(kids));
    });
  }
  const Path& p = rng.pick(paths);
  if (kind == 0) {
    return rewrite_at(t, p, [&](const Term& n) {
      return Term::node(fresh_label(rng, n.name()),
                        std::vector<Term>(n.children().begin(), n.children().end()));
    });
  }
  // Insert a node under `p` adopting a contiguous run of its children.
  return rewrite_at(t, p, [&](const Term& n) {
    const std::size_t start = rng.below(n.arity() + 1);
    const std::size_t count = rng.below(n.arity() - start + 1);
    std::vector<Term> adopted(n.children().begin() + static_cast<std::ptrdiff_t>(start),
                              n.children().begin() + static_cast<std::ptrdiff_t>(start + count));
    std::vector<Term> kids(n.children().begin(), n.children().begin() + static_cast<std::ptrdiff_t>(start));
    kids.push_back(Term::node(fresh_label(rng, ""), std::move(adopted)));
    kids.insert(kids.end(), n.children().begin() + static_cast<std::ptrdiff_t>(start + count),
                n.children().end());
    return Term::node(n.name(), std::move(kids));
  });
}

}  // namespace

const std::vector<std::string>& perturb_labels() {
  static const std::vector<std::string> labels = {"a", "b", "c", "f", "g", "h", "r", "s", "+", "*", "1"};
  return labels;
}

Term perturb(const Term& t, std::uint64_t seed, std::size_t edits) {
  rnd::Rng rng(seed);
  for (;;) {
    Term out = t;
    for (std::size_t i = 0; i < std::max<std::size_t>(edits, 1); ++i) out = one_edit(out, rng);
    if (!(out == t)) return out;
  }
}

Observation observe(const term::Abstraction& a, std::span<const Term> base,
                    std::span<const Term> perturbed, const treedist::CostModel& costs) {
  Observation o;
  o.d_in = treedist::tuple_distance(base, perturbed, costs);
  o.d_out = treedist::ted(term::instantiate(a, base), term::instantiate(a, perturbed), costs);
  return o;
}

LipschitzEstimate estimate_lipschitz(const term::Abstraction& a, std::size_t samples,
                                     std::uint64_t seed, const treedist::CostModel& costs) {
  if (samples == 0) throw ZeroSamples();
  term::validate(a);

  LipschitzEstimate est;
  est.samples = samples;
  est.seed = seed;
  for (const auto& p : a.params) {
    if (term::occurrences(a.body, p) == 0) est.unused_params.push_back(p);
  }
  if (a.params.empty()) {
    est.observations.assign(samples, Observation{});
    return est;
  }

  static const std::vector<std::string> arg_labels = {"a", "b", "c", "f", "g", "r", "s", "1"};
  for (std::size_t i = 0; i < samples; ++i) {
    rnd::Rng rng(rnd::stream_seed(seed, i));
    std::vector<Term> base;
    for (std::size_t k = 0; k < a.params.size(); ++k) {
      base.push_back(rnd::random_tree(rng, rng.between(1, 4), arg_labels, 2));
    }
    // One parameter changes by one or two elementary edits.
    std::vector<Term> moved = base;
    const std::size_t which = rng.below(base.size());
    moved[which] = perturb(base[which], rng.next(), rng.between(1, 2));

    const Observation o = observe(a, base, moved, costs);
    est.observations.push_back(o);
    if (o.d_in > 0) est.forward_k = std::max(est.forward_k, o.d_out / o.d_in);
    if (o.d_in > o.d_out) est.inverse_ok = false;
  }
  return est;
}

term::Abstraction random_abstraction(std::uint64_t seed, std::size_t params, std::size_t body_nodes) {
  rnd::Rng rng(seed);
  static const std::vector<std::string> labels = {"f", "g", "h", "k", "+", "*", "c", "d"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < params; ++i) names.push_back("p" + std::to_string(i + 1));

  for (;;) {
    Term shape = rnd::random_tree(rng, std::max(body_nodes, params), labels, 3);
    // Turn a random selection of leaves into parameter occurrences, covering
    // every parameter at least once.
    std::vector<Path> leaves;
    std::vector<Path> all;
    Path cur;
    collect_paths(shape, cur, all);
    for (auto& p : all) {
      const Term* n = &shape;
      for (auto i : p) n = &n->child(i);
      if (n->is_leaf()) leaves.push_back(p);
    }
    if (leaves.size() < params) continue;
    for (std::size_t i = leaves.size(); i > 1; --i) std::swap(leaves[i - 1], leaves[rng.below(i)]);
    Term body = shape;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      const bool forced = i < params;
      if (!forced && (names.empty() || !rng.chance(0.4))) continue;
      const std::string& v = forced ? names[i] : rng.pick(names);
      body = rewrite_at(body, leaves[i], [&](const Term&) { return Term::var(v); });
    }
    return term::Abstraction{"rand" + std::to_string(seed), names, body};
  }
}

}  // namespace mdlgauge::viscosity
