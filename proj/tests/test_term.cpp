#include <functional>

#include "doctest.h"
#include "mdlgauge/cfrag.hpp"
#include "mdlgauge/term.hpp"
#include "support.hpp"

using namespace mdlgauge::term;
using mdlgauge::rnd::Rng;
using support::T;

namespace {

const std::vector<std::string> kLabels{"f", "g", "h", "a", "b", "+", "*", "x y", "(q)", "\"s\""};
const std::vector<std::string> kSmallLabels{"f", "g", "a", "b"};
const std::vector<std::string> kVars{"a", "b", "c", "d"};

Abstraction hypot() { return parse_abstraction(support::read("hypot/hypot.abs"), "hypot"); }

std::vector<Term> args(std::initializer_list<const char*> texts) {
  std::vector<Term> out;
  for (const char* t : texts) out.push_back(T(t));
  return out;
}

// Every generalization of `t` obtainable by cutting an antichain of
// positions and naming the cuts by a set partition.
std::vector<Term> all_generalizations(const Term& t) {
  std::vector<Term> subterms;
  std::function<void(const Term&)> collect = [&](const Term& s) {
    subterms.push_back(s);
    for (const auto& c : s.children()) collect(c);
  };
  collect(t);
  const std::size_t n = subterms.size();
  std::vector<Term> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    // Pre-order ids; a cut position must not lie under another cut.
    std::vector<std::size_t> cuts;
    bool antichain = true;
    std::size_t pre = 0;
    std::function<void(const Term&, bool)> check = [&](const Term& s, bool under) {
      const std::size_t me = pre++;
      const bool cut = mask & (1u << me);
      if (cut && under) antichain = false;
      if (cut) cuts.push_back(me);
      for (const auto& c : s.children()) check(c, under || cut);
    };
    check(t, false);
    if (!antichain) continue;
    // Restricted growth strings enumerate set partitions of the cuts.
    std::vector<std::size_t> block(cuts.size(), 0);
    while (true) {
      std::size_t id = 0;
      std::function<Term(const Term&)> build = [&](const Term& s) -> Term {
        const std::size_t me = id++;
        if (auto it = std::find(cuts.begin(), cuts.end(), me); it != cuts.end()) {
          return Term::var("v" + std::to_string(block[it - cuts.begin()]));
        }
        std::vector<Term> kids;
        for (const auto& c : s.children()) kids.push_back(build(c));
        return Term::node(s.name(), std::move(kids));
      };
      out.push_back(build(t));
      // next restricted growth string
      std::size_t i = block.size();
      bool advanced = false;
      while (i-- > 1) {
        const std::size_t mx = *std::max_element(block.begin(), block.begin() + static_cast<long>(i));
        if (block[i] <= mx) {
          ++block[i];
          std::fill(block.begin() + static_cast<long>(i) + 1, block.end(), 0);
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return out;
}

bool more_general_or_equal(const Term& g, const Term& s) { return match_term(g, s).has_value(); }

}  // namespace

TEST_CASE("parse_term examples") {
  const Term y = T("(+ (* r r) (* (f s) (f s)))");
  CHECK(y.size() == 9);
  CHECK(y.name() == "+");
  CHECK(y.arity() == 2);
  CHECK(y.depth() == 4);
  CHECK(y.is_ground());

  const Term a = T("?a");
  CHECK(a.is_var());
  CHECK(a.name() == "a");
  CHECK(a == Term::var("a"));
  CHECK(T("(f)") == T("f"));
  CHECK(T("  (g\n a\t?b ) ") == Term::node("g", {Term::node("a"), Term::var("b")}));
}

TEST_CASE("render_term examples") {
  CHECK(render_term(Term::var("a")) == "?a");
  CHECK(render_term(Term::node("f", {Term::var("x")})) == "(f ?x)");
  CHECK(render_term(Term::node("x y")) == "\"x y\"");
  CHECK(render_term(Term::node("?")) == "\"?\"");
  CHECK(T(render_term(Term::node("say \"hi\""))) == Term::node("say \"hi\""));
}

TEST_CASE("syntax errors carry a position") {
  auto position_of = [](std::string_view text) -> std::size_t {
    try {
      parse_term(text);
    } catch (const SyntaxError& e) {
      return e.position();
    }
    FAIL("expected SyntaxError for " << text);
    return 0;
  };
  CHECK(position_of("") == 0);
  CHECK(position_of("(f a") == 4);
  CHECK(position_of(")") == 0);
  CHECK(position_of("(f a) b") == 6);
  CHECK(position_of("(f ?)") == 4);
  CHECK(position_of("()") == 1);
  CHECK_THROWS_AS(parse_term("\"open"), SyntaxError);
}

TEST_CASE("render and parse round-trip on random terms") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Term t = support::random_term(rng, rng.between(1, 25), kLabels, kVars, 0.3);
    const std::string text = render_term(t);
    CHECK(parse_term(text) == t);
    CHECK(render_term(parse_term(text)) == text);
  }
}

TEST_CASE("structural equality and hashing") {
  CHECK(T("(f a b)") == T("(f a b)"));
  CHECK(T("(f a b)").hash() == T("(f a b)").hash());
  CHECK(T("(f a b)") != T("(f b a)"));
  CHECK(T("?a") != T("a"));
  CHECK(T("(f a)") < T("(g a)"));
}

TEST_CASE("instantiate") {
  const auto h = hypot();
  CHECK(instantiate(h, args({"r", "(f s)"})) == T("(+ (* r r) (* (f s) (f s)))"));
  CHECK(instantiate(h, args({"r", "(f (+ s 1))"})) == T("(+ (* r r) (* (f (+ s 1)) (f (+ s 1))))"));

  Abstraction constant{"k", {}, T("(g a)")};
  CHECK(instantiate(constant, {}) == T("(g a)"));

  CHECK_THROWS_AS(instantiate(h, args({"r"})), ArityMismatch);
  CHECK_THROWS_AS(validate(Abstraction{"bad", {"a", "a"}, T("?a")}), InvalidAbstraction);
  CHECK_THROWS_AS(validate(Abstraction{"bad", {"a"}, T("(f ?a ?z)")}), InvalidAbstraction);
}

TEST_CASE("abstraction files") {
  const auto h = hypot();
  CHECK(h.params == std::vector<std::string>{"a", "b"});
  CHECK(h.body == support::term_file("hypot/pattern.term"));
  CHECK(parse_abstraction(render_abstraction(h)).body == h.body);
  CHECK(render_abstraction(h) == "params: ?a ?b\n(+ (* ?a ?a) (* ?b ?b))\n");
  CHECK(parse_abstraction("params:\n(g a)").params.empty());
  CHECK_THROWS(parse_abstraction("(g ?a)"));
  CHECK_THROWS(parse_abstraction("params: ?a\n(g ?b)"));
}

TEST_CASE("match_term") {
  auto s = match_term(hypot().body, T("(+ (* r r) (* (f s) (f s)))"));
  REQUIRE(s);
  CHECK(*s == Substitution{{"a", T("r")}, {"b", T("(f s)")}});
  CHECK(render_substitution(*s) == "{?a -> r, ?b -> (f s)}");

  const Term t = T("(g (h a) b)");
  CHECK(match_term(T("?x"), t) == Substitution{{"x", t}});
  CHECK_FALSE(match_term(T("(* ?a ?a)"), T("(* r s)")));
  CHECK_FALSE(match_term(T("(f ?a)"), T("(f a b)")));
  CHECK_FALSE(match_term(T("(f ?a)"), T("(g a)")));
  CHECK(render_substitution({}) == "{}");
}

TEST_CASE("match_term counts node comparisons") {
  MatchStats st;
  const Term c = T("(f (g a) b)");
  REQUIRE(match_term(c, c, &st));
  CHECK(st.comparisons == c.size());

  st = {};
  CHECK_FALSE(match_term(T("(g a)"), c, &st));
  CHECK(st.comparisons == 1);
}

TEST_CASE("matching is sound") {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Term pattern = support::random_term(rng, rng.between(1, 12), kSmallLabels, kVars, 0.4);
    Substitution sigma;
    for (const auto& v : vars_of(pattern)) sigma.emplace(v, support::random_term(rng, rng.between(1, 5), kSmallLabels, {}, 0));
    const Term target = substitute(sigma, pattern);
    const auto got = match_term(pattern, target);
    REQUIRE(got);
    CHECK(*got == sigma);
    // Unrelated pairs: any success must reproduce the target.
    const Term other = support::random_term(rng, pattern.size(), kSmallLabels, {}, 0);
    if (auto s = match_term(pattern, other)) CHECK(substitute(*s, pattern) == other);
  }
}

TEST_CASE("unify examples") {
  const Term t = T("(f ?x (g a))");
  CHECK(unify(t, t) == Substitution{});
  CHECK_FALSE(unify(T("?x"), T("(f ?x)")));
  CHECK_FALSE(unify(T("(f ?x ?x)"), T("(f ?y (g ?y))")));
  CHECK_FALSE(unify(T("(f a)"), T("(g a)")));
  CHECK_FALSE(unify(T("(f a)"), T("(f a b)")));

  const Term l = T("(f ?x (g ?y))"), r = T("(f (h ?z) (g ?z))");
  auto s = unify(l, r);
  REQUIRE(s);
  CHECK(*s == Substitution{{"x", T("(h ?z)")}, {"y", T("?z")}});
  CHECK(substitute(*s, l) == substitute(*s, r));
  CHECK(unify(T("?x"), T("?x")) == Substitution{});
  CHECK(unify(T("?x"), T("a")) == Substitution{{"x", T("a")}});
}

TEST_CASE("unify returns an idempotent most general unifier") {
  Rng rng(5);
  int unified = 0;
  for (int i = 0; i < 500; ++i) {
    const Term g = support::random_term(rng, rng.between(1, 15), kSmallLabels, {}, 0);
    Substitution theta;
    std::map<Term, std::string> names;
    const Term t1 = support::generalize_randomly(rng, g, 0.25, theta, names, "l");
    names.clear();
    const Term t2 = support::generalize_randomly(rng, g, 0.25, theta, names, "r");
    const auto s = unify(t1, t2);
    REQUIRE(s);
    ++unified;
    const Term image = substitute(*s, t1);
    CHECK(image == substitute(*s, t2));
    CHECK(substitute(*s, image) == image);
    // The planted solution is an instance of the mgu.
    CHECK(match_term(image, substitute(theta, t1)));
    CHECK(unify(t2, t1).has_value());
  }
  CHECK(unified == 500);
}

TEST_CASE("unify is symmetric in success") {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const Term a = support::random_term(rng, rng.between(1, 6), {"f", "a"}, {"x", "y"}, 0.5, 2);
    const Term b = support::random_term(rng, rng.between(1, 6), {"f", "a"}, {"x", "y"}, 0.5, 2);
    const auto ab = unify(a, b), ba = unify(b, a);
    CHECK(ab.has_value() == ba.has_value());
    if (ab) {
      CHECK(substitute(*ab, a) == substitute(*ab, b));
      CHECK(match_term(substitute(*ab, a), substitute(*ba, a)));
      CHECK(match_term(substitute(*ba, a), substitute(*ab, a)));
    }
  }
}

TEST_CASE("normalize") {
  const Substitution s{{"x", T("(f ?y)")}, {"y", T("(g ?z)")}};
  const auto n = normalize(s);
  CHECK(n.at("x") == T("(f (g ?z))"));
  const Term t = T("(h ?x ?y)");
  CHECK(substitute(n, substitute(n, t)) == substitute(n, t));
}

TEST_CASE("variable helpers") {
  const Term t = T("(f ?b (g ?a ?b) ?c)");
  CHECK(vars_of(t) == std::vector<std::string>{"b", "a", "c"});
  CHECK(occurrences(t, "b") == 2);
  CHECK(occurrences(t, "z") == 0);
  CHECK(canonicalize_vars(t) == T("(f ?x1 (g ?x2 ?x1) ?x3)"));
}

TEST_CASE("lgg examples") {
  const Term t = T("(f (g a) b)");
  const auto same = lgg(std::vector<Term>{t, t});
  CHECK(same.params.empty());
  CHECK(same.body == t);

  const auto diff = lgg(std::vector<Term>{T("(f a b)"), T("(g a b)")});
  CHECK(diff.params.size() == 1);
  CHECK(diff.body.is_var());

  CHECK(lgg_pair(T("(f a a)"), T("(f b b)")) == T("(f ?x1 ?x1)"));
  CHECK(lgg_pair(T("(f a b)"), T("(f b a)")) == T("(f ?x1 ?x2)"));
  CHECK(lgg(std::vector<Term>{T("(h a)")}).body == T("(h a)"));
  CHECK_THROWS_AS(lgg(std::vector<Term>{}), std::invalid_argument);
}

TEST_CASE("lgg of the three summation loops") {
  const std::vector<Term> loops{encode_c(support::read("summation/sum_a.cpp")),
                                encode_c(support::read("summation/a/sum_int.cpp")),
                                encode_c(support::read("summation/a/sum_float.cpp"))};
  const auto g = generalize(loops);
  // One variable for the element type, one for the zero literal.
  REQUIRE(g.abstraction.params.size() == 2);
  const std::string type_var = g.abstraction.params[0];
  CHECK(occurrences(g.abstraction.body, type_var) == 3);
  CHECK(g.witnesses[0][0] == T("double"));
  CHECK(g.witnesses[1][0] == T("int"));
  CHECK(g.witnesses[2][0] == T("float"));
  CHECK(g.witnesses[2][1] == T("0.0f"));
  for (std::size_t i = 0; i < loops.size(); ++i) {
    CHECK(match_term(g.abstraction.body, loops[i]));
    CHECK(instantiate(g.abstraction, g.witnesses[i]) == loops[i]);
  }
}

TEST_CASE("instantiating the lgg with its witnesses gives back each input") {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    std::vector<Term> ts;
    const std::size_t k = rng.between(1, 4);
    for (std::size_t j = 0; j < k; ++j) ts.push_back(support::random_term(rng, rng.between(1, 10), kSmallLabels, {}, 0, 2));
    const auto g = generalize(ts);
    validate(g.abstraction);
    for (std::size_t j = 0; j < k; ++j) CHECK(instantiate(g.abstraction, g.witnesses[j]) == ts[j]);
  }
}

TEST_CASE("lgg is least general on small pairs") {
  Rng rng(21);
  for (int i = 0; i < 150; ++i) {
    const Term a = support::random_term(rng, rng.between(1, 6), {"f", "a", "b"}, {}, 0, 2);
    const Term b = support::random_term(rng, rng.between(1, 6), {"f", "a", "b"}, {}, 0, 2);
    const Term body = lgg_pair(a, b);
    REQUIRE(match_term(body, a));
    REQUIRE(match_term(body, b));
    for (const Term& cand : all_generalizations(a)) {
      if (!more_general_or_equal(cand, b)) continue;
      // Every common generalization is at least as general as the lgg.
      CHECK_MESSAGE(more_general_or_equal(cand, body), render_term(cand), " vs ", render_term(body));
    }
  }
}

TEST_CASE("C fragments encode as terms") {
  CHECK(encode_c("r*r + f(s)*f(s)") == T("(+ (* r r) (* (f s) (f s)))"));
  CHECK(encode_c("a = b = c") == T("(= a (= b c))"));
  CHECK(encode_c("a - b - c") == T("(- (- a b) c)"));
  CHECK(encode_c("x.next()->v[2]") == T("(index (-> (call (. x next)) v) 2)"));
  CHECK(encode_c("-*p++") == T("(neg (deref (post++ p)))"));
  CHECK(encode_c(support::read("hypot/hypot.cpp")) ==
        T("(fun hypot double (params (param double a) (param double b)) (block (return (+ (* a a) (* b b)))))"));
  CHECK(encode_c(support::read("summation/sum_b.cpp")).name() == "template");
  CHECK(encode_c(support::read("summation/sum_d.cpp")).name() == "template");
  CHECK_THROWS_AS(encode_c("f(a"), SyntaxError);
  CHECK_THROWS_AS(encode_c("int f( { }"), SyntaxError);
}
