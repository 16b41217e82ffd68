#include "mdlgauge/tradeoff.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "mdlgauge/csv.hpp"
#include "mdlgauge/random_terms.hpp"

namespace mdlgauge::tradeoff {

using term::Term;

namespace {

std::size_t total_size(const std::vector<Term>& ts) {
  std::size_t n = 0;
  for (const auto& t : ts) n += t.size();
  return n;
}

std::size_t library_size(const std::vector<term::Abstraction>& lib) {
  std::size_t n = 0;
  for (const auto& a : lib) n += a.body.size();
  return n;
}

std::size_t non_var_nodes(const Term& t) {
  if (t.is_var()) return 0;
  std::size_t n = 1;
  for (const auto& c : t.children()) n += non_var_nodes(c);
  return n;
}

void for_each_subterm(const Term& t, const std::function<void(const Term&)>& f) {
  f(t);
  for (const auto& c : t.children()) for_each_subterm(c, f);
}

// Motif body: a random tree whose leaves (up to two of them) become the
// parameter slots p1, p2 in pre-order.
term::Abstraction make_motif(rnd::Rng& rng, std::size_t size, const std::vector<std::string>& labels,
                             std::size_t id) {
  Term shape = rnd::random_tree(rng, size, labels, 3);
  std::vector<std::size_t> leaf_ids;
  std::size_t counter = 0;
  for_each_subterm(shape, [&](const Term& t) {
    if (t.is_leaf()) leaf_ids.push_back(counter);
    ++counter;
  });
  const std::size_t want = size >= 3 ? std::min<std::size_t>(2, leaf_ids.size()) : 0;
  std::vector<std::size_t> chosen;
  while (chosen.size() < want) {
    const std::size_t pick = leaf_ids[rng.below(leaf_ids.size())];
    if (std::find(chosen.begin(), chosen.end(), pick) == chosen.end()) chosen.push_back(pick);
  }
  std::sort(chosen.begin(), chosen.end());

  std::size_t pre = 0;
  std::vector<std::string> params;
  std::function<Term(const Term&)> mark = [&](const Term& t) -> Term {
    const std::size_t me = pre++;
    if (auto it = std::find(chosen.begin(), chosen.end(), me); it != chosen.end()) {
      params.push_back("p" + std::to_string(params.size() + 1));
      return Term::var(params.back());
    }
    std::vector<Term> kids;
    for (const auto& c : t.children()) kids.push_back(mark(c));
    return Term::node(t.name(), std::move(kids));
  };
  Term body = mark(shape);
  return term::Abstraction{"motif" + std::to_string(id), params, body};
}

// Rebuilds `filler`, inserting hosted instances among the children of their
// host node (hosts are pre-order indices into the filler tree).
Term attach(const Term& filler, const std::multimap<std::size_t, Term>& hosted, std::size_t& pre,
            rnd::Rng& rng) {
  const std::size_t me = pre++;
  std::vector<Term> kids;
  for (const auto& c : filler.children()) kids.push_back(attach(c, hosted, pre, rng));
  auto [lo, hi] = hosted.equal_range(me);
  for (auto it = lo; it != hi; ++it) {
    const std::size_t at = rng.below(kids.size() + 1);
    kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(at), it->second);
  }
  return Term::node(filler.name(), std::move(kids));
}

// -- rewriting -----------------------------------------------------------

struct RewriteStats {
  term::MatchStats match;
  std::size_t rewrites = 0;
};

Term rewrite_constant(const Term& t, const Term& constant, const std::string& ref, RewriteStats& st) {
  if (t.hash() == constant.hash() && t.size() == constant.size() &&
      term::match_term(constant, t, &st.match)) {
    ++st.rewrites;
    return Term::node(ref);
  }
  if (t.is_leaf() || t.size() <= constant.size()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  bool changed = false;
  for (const auto& c : t.children()) {
    kids.push_back(rewrite_constant(c, constant, ref, st));
    changed = changed || !kids.back().same_object(c);
  }
  return changed ? Term::node(t.name(), std::move(kids)) : t;
}

Term rewrite_pattern(const Term& t, const term::Abstraction& pat, RewriteStats& st) {
  if (!t.is_var() && t.name() == pat.body.name()) {
    if (auto s = term::match_term(pat.body, t, &st.match)) {
      ++st.rewrites;
      std::vector<Term> args;
      args.reserve(pat.params.size());
      for (const auto& p : pat.params) args.push_back(rewrite_pattern(s->at(p), pat, st));
      return Term::node(pat.name, std::move(args));
    }
  }
  if (t.is_leaf()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  bool changed = false;
  for (const auto& c : t.children()) {
    kids.push_back(rewrite_pattern(c, pat, st));
    changed = changed || !kids.back().same_object(c);
  }
  return changed ? Term::node(t.name(), std::move(kids)) : t;
}

std::vector<Term> rewrite_all(const std::vector<Term>& corpus, const term::Abstraction& entry,
                              Level level, RewriteStats& st) {
  std::vector<Term> out;
  out.reserve(corpus.size());
  for (const auto& p : corpus) {
    out.push_back(level == Level::constants ? rewrite_constant(p, entry.body, entry.name, st)
                                            : rewrite_pattern(p, entry, st));
  }
  return out;
}

// -- discovery -------------------------------------------------------------

std::optional<Term> best_constant(const std::vector<Term>& corpus) {
  std::unordered_map<Term, std::size_t, term::TermHash> counts;
  std::vector<Term> order;
  for (const auto& p : corpus) {
    for_each_subterm(p, [&](const Term& t) {
      if (t.size() < 2) return;
      auto [it, inserted] = counts.try_emplace(t, 0);
      if (inserted) order.push_back(t);
      ++it->second;
    });
  }
  std::optional<Term> best;
  long best_gain = 0;
  for (const auto& t : order) {
    const long n = static_cast<long>(counts[t]);
    const long size = static_cast<long>(t.size());
    const long gain = n * (size - 1) - size;
    if (gain > best_gain) {
      best_gain = gain;
      best = t;
    }
  }
  return best;
}

std::size_t fingerprint(const Term& t, std::size_t depth) {
  std::size_t h = std::hash<std::string>{}(t.name()) * 31 + t.arity();
  if (depth == 0) return h;
  for (const auto& c : t.children()) h = rnd::splitmix64(h ^ fingerprint(c, depth - 1));
  return h;
}

// Nodes saved by one call replacing `site`, given the pattern's bindings.
long call_gain(const term::Abstraction& pat, const Term& site, const term::Substitution& s) {
  long call = 1;
  for (const auto& p : pat.params) call += static_cast<long>(s.at(p).size());
  return static_cast<long>(site.size()) - call;
}

std::vector<term::Abstraction> substitution_candidates(const std::vector<Term>& corpus,
                                                       const CompressOptions& opts, std::size_t round) {
  std::vector<Term> windows;
  for (const auto& p : corpus) {
    for_each_subterm(p, [&](const Term& t) {
      if (t.size() >= opts.min_window && t.size() <= opts.max_window) windows.push_back(t);
    });
  }

  rnd::Rng rng(rnd::stream_seed(opts.seed, round));
  std::map<std::string, Term> unique;
  for (std::size_t depth = 0; depth <= 2; ++depth) {
    // Groups keyed by first member so iteration order is reproducible.
    std::unordered_map<std::size_t, std::size_t> group_of;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      auto [it, inserted] = group_of.try_emplace(fingerprint(windows[i], depth), groups.size());
      if (inserted) groups.emplace_back();
      groups[it->second].push_back(i);
    }
    for (const auto& g : groups) {
      if (g.size() < 2) continue;
      for (std::size_t k = 0; k < opts.pairs_per_group; ++k) {
        const std::size_t a = g[rng.below(g.size())];
        const std::size_t b = g[rng.below(g.size())];
        if (a == b) continue;
        Term pat = term::lgg_pair(windows[a], windows[b]);
        if (pat.is_var() || non_var_nodes(pat) < 2) continue;
        unique.emplace(term::render_term(pat), pat);
      }
    }
  }

  std::vector<term::Abstraction> out;
  for (auto& [text, body] : unique) out.push_back({"", term::vars_of(body), body});
  return out;
}

struct Scored {
  long gain;
  std::size_t index;
};

std::vector<Scored> score_candidates(const std::vector<Term>& corpus,
                                     const std::vector<term::Abstraction>& cands) {
  std::unordered_map<std::string, std::vector<Term>> by_label;
  for (const auto& p : corpus) {
    for_each_subterm(p, [&](const Term& t) {
      if (!t.is_leaf()) by_label[t.name()].push_back(t);
    });
  }
  std::vector<Scored> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto& c = cands[i];
    auto it = by_label.find(c.body.name());
    if (it == by_label.end()) continue;
    long gain = -static_cast<long>(c.body.size());
    for (const auto& site : it->second) {
      if (site.size() < c.body.size()) continue;
      if (auto s = term::match_term(c.body, site)) gain += call_gain(c, site, *s);
    }
    if (gain > 0) out.push_back({gain, i});
  }
  std::stable_sort(out.begin(), out.end(), [](const Scored& a, const Scored& b) { return a.gain > b.gain; });
  return out;
}

Compression compress_constants(const std::vector<Term>& corpus) {
  Compression c;
  c.original_size = total_size(corpus);
  c.rewritten = corpus;
  RewriteStats st;
  while (auto best = best_constant(c.rewritten)) {
    term::Abstraction entry{"#" + std::to_string(c.library.size() + 1), {}, *best};
    c.rewritten = rewrite_all(c.rewritten, entry, Level::constants, st);
    c.library.push_back(std::move(entry));
  }
  c.rewrites = st.rewrites;
  c.comparisons = st.match.comparisons;
  c.compressed_size = total_size(c.rewritten) + library_size(c.library);
  return c;
}

Compression compress_substitution(const std::vector<Term>& corpus, const CompressOptions& opts) {
  Compression c;
  c.original_size = total_size(corpus);
  c.rewritten = corpus;
  std::size_t current = c.original_size;
  RewriteStats st;
  for (std::size_t round = 0; round < opts.max_rounds; ++round) {
    auto cands = substitution_candidates(c.rewritten, opts, round);
    const auto ranked = score_candidates(c.rewritten, cands);
    bool accepted = false;
    // Overlapping sites make the estimate optimistic; confirm on a real rewrite.
    for (std::size_t k = 0; k < std::min<std::size_t>(ranked.size(), 4) && !accepted; ++k) {
      term::Abstraction entry = cands[ranked[k].index];
      entry.name = "@" + std::to_string(c.library.size() + 1);
      RewriteStats trial;
      auto next = rewrite_all(c.rewritten, entry, Level::substitution, trial);
      const std::size_t size = total_size(next) + library_size(c.library) + entry.body.size();
      if (size < current) {
        current = size;
        c.rewritten = std::move(next);
        c.library.push_back(std::move(entry));
        st.rewrites += trial.rewrites;
        st.match.comparisons += trial.match.comparisons;
        accepted = true;
      }
    }
    if (!accepted) break;
  }
  c.rewrites = st.rewrites;
  c.comparisons = st.match.comparisons;
  c.compressed_size = current;
  return c;
}

}  // namespace

void validate(const DomainSpec& s) {
  if (s.program_count == 0) throw InconsistentSpec("program_count must be positive");
  if (s.program_size == 0) throw InconsistentSpec("program_size must be positive");
  if (s.motif_size == 0) throw InconsistentSpec("motif_size must be positive");
  if (s.alphabet_size == 0) throw InconsistentSpec("alphabet_size must be positive");
  if (!(s.motif_rate >= 0.0 && s.motif_rate <= 1.0)) throw InconsistentSpec("motif_rate must lie in [0,1]");
  if (s.motif_size > s.program_size) throw InconsistentSpec("motif_size exceeds program_size");
  if (s.motif_count > 0 && s.motif_rate * static_cast<double>(s.program_size) < static_cast<double>(s.motif_size)) {
    throw InconsistentSpec("motif_rate * program_size is smaller than one motif instance");
  }
}

std::string_view MetalanguageLevel::name() const {
  switch (level) {
    case Level::none: return "none";
    case Level::constants: return "constants";
    case Level::substitution: return "substitution";
  }
  return "?";
}

std::size_t GeneratedCorpus::total_nodes() const { return total_size(programs); }

std::size_t GeneratedCorpus::planted_savings() const {
  std::size_t saved = 0;
  for (const auto& inst : instances) {
    const auto& motif = motifs[inst.motif];
    const auto s = term::match_term(motif.body, inst.site);
    const long gain = call_gain(motif, inst.site, *s);
    if (gain > 0) saved += static_cast<std::size_t>(gain);
  }
  return saved;
}

std::size_t GeneratedCorpus::information_floor() const { return total_nodes() - planted_savings(); }

GeneratedCorpus generate(const DomainSpec& spec) {
  validate(spec);
  const auto labels = rnd::alphabet(spec.alphabet_size);
  GeneratedCorpus out;
  for (std::size_t m = 0; m < spec.motif_count; ++m) {
    rnd::Rng mr(rnd::stream_seed(spec.seed, 1'000'000 + m));
    out.motifs.push_back(make_motif(mr, spec.motif_size, labels, m + 1));
  }

  const std::size_t per_program =
      spec.motif_count == 0
          ? 0
          : static_cast<std::size_t>(spec.motif_rate * static_cast<double>(spec.program_size) /
                                     static_cast<double>(spec.motif_size));
  for (std::size_t i = 0; i < spec.program_count; ++i) {
    rnd::Rng rng(rnd::stream_seed(spec.seed, i));
    std::vector<PlantedInstance> planted;
    std::size_t used = 0;
    for (std::size_t k = 0; k < per_program; ++k) {
      const std::size_t m = rng.below(spec.motif_count);
      std::vector<Term> args;
      for (std::size_t a = 0; a < out.motifs[m].params.size(); ++a) {
        args.push_back(rnd::random_tree(rng, rng.between(1, 3), labels, 2));
      }
      Term site = term::instantiate(out.motifs[m], args);
      if (used + site.size() >= spec.program_size) break;
      used += site.size();
      planted.push_back({i, m, site});
    }
    const std::size_t filler_nodes = spec.program_size - used;
    Term filler = rnd::random_tree(rng, filler_nodes, labels, 3);
    std::multimap<std::size_t, Term> hosted;
    for (const auto& p : planted) hosted.emplace(rng.below(filler_nodes), p.site);
    std::size_t pre = 0;
    out.programs.push_back(attach(filler, hosted, pre, rng));
    for (auto& p : planted) out.instances.push_back(std::move(p));
  }
  return out;
}

std::vector<Term> generate_corpus(const DomainSpec& spec) { return generate(spec).programs; }

Compression compress_with_level(const std::vector<Term>& corpus, Level level, const CompressOptions& opts) {
  switch (level) {
    case Level::none: {
      Compression c;
      c.original_size = total_size(corpus);
      c.compressed_size = c.original_size;
      c.rewritten = corpus;
      return c;
    }
    case Level::constants: return compress_constants(corpus);
    case Level::substitution: return compress_substitution(corpus, opts);
  }
  throw std::invalid_argument("unknown level");
}

double measure_inversion_cost(const std::vector<Term>& corpus,
                              const std::vector<term::Abstraction>& library, Level level) {
  if (level == Level::none || library.empty()) return 0.0;
  RewriteStats st;
  std::vector<Term> cur = corpus;
  for (const auto& entry : library) cur = rewrite_all(cur, entry, level, st);
  return st.rewrites == 0 ? 0.0
                          : static_cast<double>(st.match.comparisons) / static_cast<double>(st.rewrites);
}

std::vector<TradeoffPoint> emit_tradeoff_points(const DomainSpec& spec) {
  const auto corpus = generate_corpus(spec);
  CompressOptions opts;
  opts.seed = spec.seed;
  std::vector<TradeoffPoint> points;
  for (std::size_t i = 0; i < kLevelCount; ++i) {
    const Level level = static_cast<Level>(i);
    const auto c = compress_with_level(corpus, level, opts);
    TradeoffPoint p{MetalanguageLevel{level}, c.ratio(),
                    measure_inversion_cost(corpus, c.library, level), c.compressed_size,
                    c.library.size()};
    points.push_back(p);
  }
  return points;
}

std::string points_csv(const std::vector<TradeoffPoint>& points) {
  csv::Writer w;
  w.row({"level", "power", "compression_ratio", "inversion_cost"});
  for (const auto& p : points) {
    w.row({std::to_string(p.level.index()), csv::fixed6(p.level.power()), csv::fixed6(p.compression_ratio),
           csv::fixed6(p.inversion_cost)});
  }
  return w.str();
}

}  // namespace mdlgauge::tradeoff
