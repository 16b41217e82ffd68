// Matching and unification over first-order terms.
//
// unify() builds a shared term graph for both inputs and merges equivalence
// classes with a union-find (union by rank, path compression), in the style
// of Huet's algorithm. The occurs check is a single cycle search over the
// class graph after all merges, which keeps the whole thing near-linear.

#include <algorithm>
#include <unordered_map>

#include "mdlgauge/term.hpp"

namespace mdlgauge::term {

namespace {

class Matcher {
 public:
  explicit Matcher(MatchStats* stats) : stats_(stats) {}

  bool match(const Term& p, const Term& t) {
    tick();
    if (p.is_var()) {
      auto [it, inserted] = bindings.emplace(p.name(), t);
      return inserted || equal_counted(it->second, t);
    }
    if (t.is_var() || p.name() != t.name() || p.arity() != t.arity()) return false;
    for (std::size_t i = 0; i < p.arity(); ++i) {
      if (!match(p.child(i), t.child(i))) return false;
    }
    return true;
  }

  Substitution bindings;

 private:
  void tick() {
    if (stats_) ++stats_->comparisons;
  }

  bool equal_counted(const Term& a, const Term& b) {
    tick();
    if (a.is_var() != b.is_var() || a.name() != b.name() || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (!equal_counted(a.child(i), b.child(i))) return false;
    }
    return true;
  }

  MatchStats* stats_;
};

class TermGraph {
 public:
  int add(const Term& t) {
    if (t.is_var()) {
      auto [it, inserted] = var_ids_.emplace(t.name(), 0);
      if (inserted) it->second = push(true, t.name(), {});
      return it->second;
    }
    std::vector<int> kids;
    kids.reserve(t.arity());
    for (const auto& c : t.children()) kids.push_back(add(c));
    return push(false, t.name(), std::move(kids));
  }

  bool unify(int a, int b) {
    std::vector<std::pair<int, int>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      const int rx = find(x), ry = find(y);
      if (rx == ry) continue;
      const int sx = schema_[rx], sy = schema_[ry];
      const Node& nx = nodes_[sx];
      const Node& ny = nodes_[sy];
      int schema;
      if (!nx.is_var && !ny.is_var) {
        if (nx.label != ny.label || nx.kids.size() != ny.kids.size()) return false;
        for (std::size_t i = nx.kids.size(); i-- > 0;) work.emplace_back(nx.kids[i], ny.kids[i]);
        schema = sx;
      } else if (nx.is_var && ny.is_var) {
        schema = sy;  // left variable points at the right one
      } else {
        schema = nx.is_var ? sy : sx;
      }
      link(rx, ry, schema);
    }
    return true;
  }

  // True when some class (transitively) contains itself.
  bool has_cycle() {
    std::vector<char> color(nodes_.size(), 0);  // 0 new, 1 on stack, 2 done
    for (std::size_t start = 0; start < nodes_.size(); ++start) {
      const int r = find(static_cast<int>(start));
      if (color[r]) continue;
      // Iterative DFS: (class root, next child index).
      std::vector<std::pair<int, std::size_t>> stack{{r, 0}};
      color[r] = 1;
      while (!stack.empty()) {
        auto& [cls, next] = stack.back();
        const Node& n = nodes_[schema_[cls]];
        if (n.is_var || next == n.kids.size()) {
          color[cls] = 2;
          stack.pop_back();
          continue;
        }
        const int child = find(n.kids[next++]);
        if (color[child] == 1) return true;
        if (color[child] == 0) {
          color[child] = 1;
          stack.emplace_back(child, 0);
        }
      }
    }
    return false;
  }

  Substitution solution() {
    Substitution out;
    for (const auto& [name, id] : var_ids_) {
      const int s = schema_[find(id)];
      if (s == id) continue;
      out.emplace(name, build(id));
    }
    return out;
  }

 private:
  struct Node {
    bool is_var;
    std::string label;
    std::vector<int> kids;
  };

  int push(bool is_var, std::string label, std::vector<int> kids) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{is_var, std::move(label), std::move(kids)});
    parent_.push_back(id);
    rank_.push_back(0);
    schema_.push_back(id);
    return id;
  }

  int find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void link(int rx, int ry, int schema) {
    if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
    parent_[ry] = rx;
    if (rank_[rx] == rank_[ry]) ++rank_[rx];
    schema_[rx] = schema;
  }

  Term build(int id) {
    const int root = find(id);
    if (auto it = built_.find(root); it != built_.end()) return it->second;
    const Node& n = nodes_[schema_[root]];
    std::optional<Term> t;
    if (n.is_var) {
      t = Term::var(n.label);
    } else {
      std::vector<Term> kids;
      kids.reserve(n.kids.size());
      for (int k : n.kids) kids.push_back(build(k));
      t = Term::node(n.label, std::move(kids));
    }
    built_.emplace(root, *t);
    return *t;
  }

  std::vector<Node> nodes_;
  std::vector<int> parent_, rank_, schema_;
  std::map<std::string, int> var_ids_;
  std::unordered_map<int, Term> built_;
};

}  // namespace

std::optional<Substitution> match_term(const Term& pattern, const Term& target, MatchStats* stats) {
  Matcher m(stats);
  if (!m.match(pattern, target)) return std::nullopt;
  return std::move(m.bindings);
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  TermGraph g;
  const int ia = g.add(a);
  const int ib = g.add(b);
  if (!g.unify(ia, ib) || g.has_cycle()) return std::nullopt;
  return g.solution();
}

}  // namespace mdlgauge::term
