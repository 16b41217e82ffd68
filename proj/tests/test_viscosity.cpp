#include "doctest.h"
#include "mdlgauge/viscosity.hpp"
#include "support.hpp"

using namespace mdlgauge;
using term::Term;
using support::T;

namespace {

term::Abstraction hypot() { return term::parse_abstraction(support::read("hypot/hypot.abs"), "hypot"); }

std::size_t max_occurrences(const term::Abstraction& a) {
  std::size_t m = 0;
  for (const auto& p : a.params) m = std::max(m, term::occurrences(a.body, p));
  return m;
}

}  // namespace

TEST_CASE("perturb is seeded and always changes the term") {
  rnd::Rng rng(4);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Term t = rnd::random_tree(rng, rng.between(1, 12), {"a", "b", "f"});
    const Term p = viscosity::perturb(t, seed);
    CHECK(p == viscosity::perturb(t, seed));
    CHECK(p != t);
    CHECK(treedist::ted(t, p) == 1);
  }
}

TEST_CASE("perturb on a single node") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Term p = viscosity::perturb(T("s"), seed);
    CHECK(treedist::ted(T("s"), p) == 1);
    CHECK(p.size() <= 2);
  }
}

TEST_CASE("several edits stay within that many units") {
  rnd::Rng rng(5);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Term t = rnd::random_tree(rng, rng.between(1, 10), {"a", "b", "f"});
    const std::size_t edits = rng.between(1, 4);
    const Term p = viscosity::perturb(t, seed, edits);
    CHECK(p != t);
    CHECK(treedist::ted(t, p) <= static_cast<double>(edits));
  }
}

TEST_CASE("two edits can produce the parameter change s to s+1") {
  const Term fs = T("(f s)"), target = T("(f (+ s 1))");
  bool found = false;
  for (std::uint64_t seed = 0; seed < 1'000'000 && !found; ++seed) {
    found = viscosity::perturb(fs, seed, 2) == target;
  }
  CHECK(found);
}

TEST_CASE("the hypot sample: parameters move by 2, instances by 4") {
  const auto h = hypot();
  const std::vector<Term> x{T("r"), T("(f s)")};
  const std::vector<Term> x2{T("r"), T("(f (+ s 1))")};
  const auto o = viscosity::observe(h, x, x2);
  CHECK(o.d_in == 2);
  CHECK(o.d_out == 4);
  CHECK(term::instantiate(h, x2) == support::term_file("hypot/y_prime.term"));
}

TEST_CASE("hypot estimate") {
  const auto est = viscosity::estimate_lipschitz(hypot(), 500, 1);
  CHECK(est.forward_k == 2);
  CHECK(est.inverse_ok);
  CHECK(est.samples == 500);
  CHECK(est.seed == 1);
  CHECK(est.unused_params.empty());
  bool hit_two = false;
  for (const auto& o : est.observations) {
    CHECK(o.d_out <= 2 * o.d_in);
    hit_two = hit_two || o.d_out == 2 * o.d_in;
  }
  CHECK(hit_two);
}

TEST_CASE("a single occurrence copies the edit") {
  const term::Abstraction f{"f", {"a"}, T("(f ?a)")};
  const auto est = viscosity::estimate_lipschitz(f, 300, 9);
  CHECK(est.forward_k == 1);
  for (const auto& o : est.observations) CHECK(o.d_in == o.d_out);
}

TEST_CASE("constant body") {
  const term::Abstraction k{"k", {}, T("(g a b)")};
  const auto est = viscosity::estimate_lipschitz(k, 50, 2);
  CHECK(est.forward_k == 0);
  for (const auto& o : est.observations) {
    CHECK(o.d_out == 0);
    CHECK(o.d_in == 0);
  }
}

TEST_CASE("unused parameters are flagged") {
  const term::Abstraction u{"u", {"a", "b"}, T("(g ?a)")};
  const auto est = viscosity::estimate_lipschitz(u, 200, 3);
  CHECK(est.unused_params == std::vector<std::string>{"b"});
  // Editing ?b alone leaves the instance untouched.
  CHECK_FALSE(est.inverse_ok);
}

TEST_CASE("errors and determinism") {
  CHECK_THROWS_AS(viscosity::estimate_lipschitz(hypot(), 0, 1), viscosity::ZeroSamples);
  const auto a = viscosity::estimate_lipschitz(hypot(), 100, 77);
  const auto b = viscosity::estimate_lipschitz(hypot(), 100, 77);
  CHECK(a.forward_k == b.forward_k);
  REQUIRE(a.observations.size() == b.observations.size());
  for (std::size_t i = 0; i < a.observations.size(); ++i) {
    CHECK(a.observations[i].d_in == b.observations[i].d_in);
    CHECK(a.observations[i].d_out == b.observations[i].d_out);
  }
  // A longer run extends a shorter one: samples use independent streams.
  const auto longer = viscosity::estimate_lipschitz(hypot(), 150, 77);
  CHECK(longer.observations[99].d_out == a.observations[99].d_out);
}

TEST_CASE("random abstractions use every parameter") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto a = viscosity::random_abstraction(seed, 1 + seed % 3, 4 + seed % 9);
    term::validate(a);
    CHECK(a.body.size() == 4 + seed % 9);
    for (const auto& p : a.params) CHECK(term::occurrences(a.body, p) >= 1);
  }
}

TEST_CASE("forward bound and inverse inequality over random abstractions") {
  std::size_t samples = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = viscosity::random_abstraction(seed, 1 + seed % 3, 5 + seed % 8);
    const auto est = viscosity::estimate_lipschitz(a, 20, seed);
    const double bound = static_cast<double>(max_occurrences(a));
    CHECK(est.inverse_ok);
    CHECK(est.forward_k <= bound);
    for (const auto& o : est.observations) {
      ++samples;
      CHECK(o.d_in <= o.d_out);
      CHECK(o.d_out <= bound * o.d_in);
    }
  }
  CHECK(samples == 1000);
}

TEST_CASE("editing two parameters at once can break the inverse inequality") {
  // Why samples perturb one parameter: a subtree can migrate between slots,
  // costing more in the tuple than in the instance.
  const term::Abstraction g{"g", {"a", "b"}, T("(g ?a ?b)")};
  const std::vector<Term> x{T("(k u v)"), T("w")};
  const std::vector<Term> x2{T("u"), T("(k v w)")};
  const auto o = viscosity::observe(g, x, x2);
  CHECK(o.d_in == 4);
  CHECK(o.d_out == 2);
}

TEST_CASE("cost model is honoured") {
  const treedist::CostModel heavy{3, 3, 3};
  const auto unit = viscosity::estimate_lipschitz(hypot(), 50, 4);
  const auto scaled = viscosity::estimate_lipschitz(hypot(), 50, 4, heavy);
  CHECK(scaled.forward_k == doctest::Approx(unit.forward_k));
  CHECK(scaled.observations[0].d_in == doctest::Approx(3 * unit.observations[0].d_in));
}
