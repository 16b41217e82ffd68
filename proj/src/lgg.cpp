#include <map>
#include <stdexcept>

#include "mdlgauge/term.hpp"

namespace mdlgauge::term {

namespace {

class AntiUnifier {
 public:
  Term run(const Term& a, const Term& b) {
    if (a == b) return a;
    if (!a.is_var() && !b.is_var() && a.name() == b.name() && a.arity() == b.arity()) {
      std::vector<Term> kids;
      kids.reserve(a.arity());
      for (std::size_t i = 0; i < a.arity(); ++i) kids.push_back(run(a.child(i), b.child(i)));
      return Term::node(a.name(), std::move(kids));
    }
    auto [it, inserted] = pairs_.try_emplace({a, b}, "");
    if (inserted) it->second = "_g" + std::to_string(pairs_.size());
    return Term::var(it->second);
  }

 private:
  std::map<std::pair<Term, Term>, std::string> pairs_;
};

Term rename(const Term& t, const std::map<std::string, std::string>& names) {
  if (t.is_var()) return Term::var(names.at(t.name()));
  if (t.is_ground()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const auto& c : t.children()) kids.push_back(rename(c, names));
  return Term::node(t.name(), std::move(kids));
}

}  // namespace

Term canonicalize_vars(const Term& t, std::string_view prefix) {
  std::map<std::string, std::string> names;
  for (const auto& v : vars_of(t)) {
    names.emplace(v, std::string(prefix) + std::to_string(names.size() + 1));
  }
  return rename(t, names);
}

Term lgg_pair(const Term& a, const Term& b) { return canonicalize_vars(AntiUnifier{}.run(a, b)); }

Generalization generalize(std::span<const Term> terms) {
  if (terms.empty()) throw std::invalid_argument("lgg of an empty list");
  Term acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    acc = AntiUnifier{}.run(canonicalize_vars(acc, "_f"), terms[i]);
  }
  // Folding introduces fresh names each step; renumber once at the end.
  Term body = canonicalize_vars(acc);

  Generalization g{Abstraction{"lgg", vars_of(body), body}, {}};
  for (const auto& t : terms) {
    auto s = match_term(body, t);
    if (!s) throw std::logic_error("lgg body does not match input " + render_term(t));
    std::vector<Term> args;
    for (const auto& p : g.abstraction.params) args.push_back(s->at(p));
    g.witnesses.push_back(std::move(args));
  }
  return g;
}

Abstraction lgg(std::span<const Term> terms) { return generalize(terms).abstraction; }

}  // namespace mdlgauge::term
