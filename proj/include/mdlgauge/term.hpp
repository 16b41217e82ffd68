#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mdlgauge::term {

/// Immutable first-order term: either a metavariable or a labeled node with
/// ordered children. Copies share structure.
class Term {
 public:
  static Term var(std::string name);
  static Term node(std::string label, std::vector<Term> children = {});

  bool is_var() const { return rep_->is_var; }
  bool is_leaf() const { return rep_->children.empty(); }
  // Label for nodes, metavariable name (without '?') for variables.
  const std::string& name() const { return rep_->name; }
  std::span<const Term> children() const { return rep_->children; }
  std::size_t arity() const { return rep_->children.size(); }
  const Term& child(std::size_t i) const { return rep_->children[i]; }

  // Node count, variables included.
  std::size_t size() const { return rep_->size; }
  std::size_t depth() const { return rep_->depth; }
  bool is_ground() const { return rep_->ground; }
  std::size_t hash() const { return rep_->hash; }

  bool same_object(const Term& o) const { return rep_ == o.rep_; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Rep {
    bool is_var;
    std::string name;
    std::vector<Term> children;
    std::size_t size;
    std::size_t depth;
    std::size_t hash;
    bool ground;
  };

  explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  std::shared_ptr<const Rep> rep_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Parenthesized prefix notation: "(+ (* ?a ?a) (* ?b ?b))". Symbols are bare
// words or double-quoted strings; "(f)" is accepted and equals the leaf "f".
Term parse_term(std::string_view text);
std::string render_term(const Term& t);

// Symbols that need quoting in term text.
bool needs_quoting(std::string_view symbol);

/// Metavariable name -> term.
using Substitution = std::map<std::string, Term>;

std::string render_substitution(const Substitution& s);

// Simultaneous replacement of bound variables; unbound ones stay.
Term substitute(const Substitution& s, const Term& t);

// Applies `s` repeatedly until no bound variable remains in the image, so the
// result satisfies substitute(r, substitute(r, t)) == substitute(r, t). Assumes s is
// acyclic (always true for results of unify).
Substitution normalize(const Substitution& s);

void collect_vars(const Term& t, std::vector<std::string>& out);
// Variable names in first-occurrence (pre-order) order, without repeats.
std::vector<std::string> vars_of(const Term& t);
std::size_t occurrences(const Term& t, std::string_view var);

struct Abstraction {
  std::string name;
  std::vector<std::string> params;
  Term body;
};

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidAbstraction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Checks distinct params and that the body only uses declared params.
void validate(const Abstraction& a);

Term instantiate(const Abstraction& a, std::span<const Term> args);

// File form: "params: ?a ?b" on the first line, body term after it.
Abstraction parse_abstraction(std::string_view text, std::string name = {});
std::string render_abstraction(const Abstraction& a);

/// Work counter for inversion-cost accounting: one unit per pair of nodes
/// compared.
struct MatchStats {
  std::size_t comparisons = 0;
};

// One-sided matching: finds s with substitute(s, pattern) == target. Variables in
// `target` are treated as constants.
std::optional<Substitution> match_term(const Term& pattern, const Term& target,
                                       MatchStats* stats = nullptr);

// Most general unifier, idempotent. Variable-variable bindings point from the
// left term's variable to the right one's.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// Least general generalization together with the arguments that map it
/// back onto each input.
struct Generalization {
  Abstraction abstraction;
  std::vector<std::vector<Term>> witnesses;
};

// Variables are named x1, x2, ... in first-occurrence order. Throws
// std::invalid_argument on an empty list.
Generalization generalize(std::span<const Term> terms);
Abstraction lgg(std::span<const Term> terms);

// Binary anti-unification. Equal pairs of subterms share one variable.
Term lgg_pair(const Term& a, const Term& b);

// Renames variables to x1, x2, ... by first occurrence.
Term canonicalize_vars(const Term& t, std::string_view prefix = "x");

}  // namespace mdlgauge::term
