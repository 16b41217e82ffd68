#include "mdlgauge/treedist.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <string>
#include <vector>

namespace mdlgauge::treedist {

using term::Term;

namespace {

std::string label_of(const Term& t) { return t.is_var() ? "?" + t.name() : t.name(); }

// Post-order view of a tree: labels, leftmost-leaf descendants (1-based as in
// the original formulation, index 0 unused) and keyroots.
struct Indexed {
  std::vector<std::string> label{""};
  std::vector<std::size_t> leftmost{0};
  std::vector<std::size_t> keyroots;

  explicit Indexed(const Term& root) {
    visit(root);
    const std::size_t n = label.size() - 1;
    // A keyroot is the highest node with a given leftmost leaf.
    std::vector<bool> seen(n + 1, false);
    for (std::size_t i = n; i >= 1; --i) {
      if (!seen[leftmost[i]]) {
        seen[leftmost[i]] = true;
        keyroots.push_back(i);
      }
    }
    std::sort(keyroots.begin(), keyroots.end());
  }

  std::size_t size() const { return label.size() - 1; }

 private:
  std::size_t visit(const Term& t) {
    std::size_t first_leaf = 0;
    for (std::size_t i = 0; i < t.arity(); ++i) {
      const std::size_t l = visit(t.child(i));
      if (i == 0) first_leaf = l;
    }
    label.push_back(label_of(t));
    const std::size_t id = label.size() - 1;
    leftmost.push_back(t.is_leaf() ? id : first_leaf);
    return leftmost.back();
  }
};

class ForestOracle {
 public:
  explicit ForestOracle(const CostModel& c) : costs_(c) {}

  double dist(const std::vector<Term>& f, const std::vector<Term>& g) {
    const std::string key = key_of(f) + "#" + key_of(g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    double d;
    if (f.empty() && g.empty()) {
      d = 0.0;
    } else if (f.empty()) {
      d = dist(f, strip_root(g)) + costs_.insert_cost;
    } else if (g.empty()) {
      d = dist(strip_root(f), g) + costs_.delete_cost;
    } else {
      const Term& rf = f.back();
      const Term& rg = g.back();
      const double del = dist(strip_root(f), g) + costs_.delete_cost;
      const double ins = dist(f, strip_root(g)) + costs_.insert_cost;
      std::vector<Term> f_rest(f.begin(), f.end() - 1);
      std::vector<Term> g_rest(g.begin(), g.end() - 1);
      const double rel = (label_of(rf) == label_of(rg) ? 0.0 : costs_.relabel_cost);
      const double keep = dist(f_rest, g_rest) + dist(children(rf), children(rg)) + rel;
      d = std::min({del, ins, keep});
    }
    memo_.emplace(key, d);
    return d;
  }

 private:
  static std::vector<Term> children(const Term& t) {
    return {t.children().begin(), t.children().end()};
  }

  // Removes the rightmost root, splicing its children into the forest.
  static std::vector<Term> strip_root(const std::vector<Term>& f) {
    std::vector<Term> out(f.begin(), f.end() - 1);
    for (const auto& c : f.back().children()) out.push_back(c);
    return out;
  }

  static std::string key_of(const std::vector<Term>& f) {
    std::string k;
    for (const auto& t : f) {
      k += term::render_term(t);
      k += '|';
    }
    return k;
  }

  CostModel costs_;
  std::map<std::string, double> memo_;
};

}  // namespace

CostModel parse_costs(std::string_view text) {
  std::vector<double> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string field(text.substr(pos, comma - pos));
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (field.empty() || used != field.size()) {
      throw std::invalid_argument("bad cost value '" + field + "' (expected i,d,r)");
    }
    if (!(v >= 0)) throw std::invalid_argument("costs must be non-negative");
    vals.push_back(v);
    pos = comma + 1;
  }
  if (vals.size() != 3) throw std::invalid_argument("expected three costs i,d,r");
  return CostModel{vals[0], vals[1], vals[2]};
}

double ted(const Term& a, const Term& b, const CostModel& costs) {
  const Indexed t1(a), t2(b);
  const std::size_t n1 = t1.size(), n2 = t2.size();
  std::vector<double> tree(( n1 + 1) * (n2 + 1), 0.0);
  auto td = [&](std::size_t i, std::size_t j) -> double& { return tree[i * (n2 + 1) + j]; };
  std::vector<double> forest((n1 + 2) * (n2 + 2), 0.0);

  for (std::size_t i : t1.keyroots) {
    for (std::size_t j : t2.keyroots) {
      const std::size_t li = t1.leftmost[i], lj = t2.leftmost[j];
      const std::size_t rows = i - li + 2, cols = j - lj + 2;
      auto fd = [&](std::size_t x, std::size_t y) -> double& { return forest[x * cols + y]; };
      // fd(x, y): forest li..li+x-1 vs lj..lj+y-1, offset by one.
      fd(0, 0) = 0;
      for (std::size_t x = 1; x < rows; ++x) fd(x, 0) = fd(x - 1, 0) + costs.delete_cost;
      for (std::size_t y = 1; y < cols; ++y) fd(0, y) = fd(0, y - 1) + costs.insert_cost;
      for (std::size_t x = 1; x < rows; ++x) {
        const std::size_t ni = li + x - 1;
        for (std::size_t y = 1; y < cols; ++y) {
          const std::size_t nj = lj + y - 1;
          const double del = fd(x - 1, y) + costs.delete_cost;
          const double ins = fd(x, y - 1) + costs.insert_cost;
          if (t1.leftmost[ni] == li && t2.leftmost[nj] == lj) {
            const double rel = t1.label[ni] == t2.label[nj] ? 0.0 : costs.relabel_cost;
            fd(x, y) = std::min({del, ins, fd(x - 1, y - 1) + rel});
            td(ni, nj) = fd(x, y);
          } else {
            const std::size_t px = t1.leftmost[ni] - li;
            const std::size_t py = t2.leftmost[nj] - lj;
            fd(x, y) = std::min({del, ins, fd(px, py) + td(ni, nj)});
          }
        }
      }
    }
  }
  return td(n1, n2);
}

double ted_oracle(const Term& a, const Term& b, const CostModel& costs) {
  if (a.size() > kOracleMaxNodes || b.size() > kOracleMaxNodes) {
    throw SizeLimitExceeded("ted_oracle accepts trees of at most " +
                            std::to_string(kOracleMaxNodes) + " nodes");
  }
  return ForestOracle(costs).dist({a}, {b});
}

double tuple_distance(std::span<const Term> a, std::span<const Term> b, const CostModel& costs) {
  if (a.size() != b.size()) throw std::invalid_argument("tuple_distance: length mismatch");
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += ted(a[i], b[i], costs);
  return d;
}

}  // namespace mdlgauge::treedist
