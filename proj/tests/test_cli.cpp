#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "mdlgauge/cli.hpp"
#include "support.hpp"

using mdlgauge::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string path(const std::string& rel) { return (support::scenarios() / rel).string(); }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mdlgauge_cli_" + std::to_string(::getpid()) + "_" + name);
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("tokenize") {
  const auto r = cli({"tokenize", path("summation/sum_a.cpp")});
  CHECK(r.code == 0);
  CHECK(r.out == path("summation/sum_a.cpp") + "\t41\n");

  const auto two = cli({"tokenize", "--dialect", "generic", path("summation/sum_b.cpp"), path("summation/sum_d.cpp")});
  CHECK(two.code == 0);
  CHECK(std::count(two.out.begin(), two.out.end(), '\n') == 2);
}

TEST_CASE("mdl on the bundled scenario") {
  const auto r = cli({"mdl", path("summation/scenario.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nb,1,46,60,106,1\n") != std::string::npos);
  CHECK(r.out.find("u_shaped,true,min_index,1") != std::string::npos);
}

TEST_CASE("mdl --out writes the same report") {
  const auto out = temp_path("report.csv");
  const auto r = cli({"mdl", path("summation/scenario.json"), "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(mdlgauge::manifest::read_file(out) == cli({"mdl", path("summation/scenario.json")}).out);
  std::filesystem::remove(out);
}

TEST_CASE("invalid manifest leaves no report behind") {
  const auto bad = temp_path("bad.json");
  const auto out = temp_path("never.csv");
  write(bad, R"({"use_cases": [{"name": "u"}], "candidates": [{"name": "p", "chain_index": 0,
      "component_source": "missing.cpp", "adaptations": {}}]})");
  const auto r = cli({"mdl", bad.string(), "--out", out.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("missing.cpp") != std::string::npos);
  CHECK(r.err.find("'u'") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(out));
  CHECK_FALSE(std::filesystem::exists(out.string() + ".tmp"));
  std::filesystem::remove(bad);
}

TEST_CASE("match") {
  auto r = cli({"match", path("hypot/pattern.term"), path("hypot/y.term")});
  CHECK(r.code == 0);
  CHECK(r.out == "{?a -> r, ?b -> (f s)}\n");

  const auto other = temp_path("other.term");
  write(other, "(* r s)");
  r = cli({"match", path("hypot/pattern.term"), other.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "fail\n");
  r = cli({"match", "--strict", path("hypot/pattern.term"), other.string()});
  CHECK(r.code == 1);
  std::filesystem::remove(other);

  const auto c_src = temp_path("expr.c");
  write(c_src, "r*r + f(s)*f(s)");
  r = cli({"match", "--lang", "c", path("hypot/pattern.term"), c_src.string()});
  CHECK(r.out == "{?a -> r, ?b -> (f s)}\n");
  std::filesystem::remove(c_src);
}

TEST_CASE("unify") {
  auto r = cli({"unify", path("hypot/y.term"), path("hypot/y.term")});
  CHECK(r.code == 0);
  CHECK(r.out == "{}\n");
  r = cli({"unify", "--strict", path("hypot/y.term"), path("hypot/y_prime.term")});
  CHECK(r.code == 1);
  CHECK(r.out == "fail\n");
  r = cli({"unify", path("hypot/pattern.term"), path("hypot/y_prime.term")});
  CHECK(r.out == "{?a -> r, ?b -> (f (+ s 1))}\n");
}

TEST_CASE("lgg") {
  const auto r = cli({"lgg", path("hypot/y.term"), path("hypot/y_prime.term")});
  CHECK(r.code == 0);
  CHECK(r.out == "params: ?x1\n(+ (* r r) (* (f ?x1) (f ?x1)))\n");
}

TEST_CASE("ted") {
  auto r = cli({"ted", path("hypot/y.term"), path("hypot/y_prime.term")});
  CHECK(r.code == 0);
  CHECK(r.out == "4.000000\n");
  r = cli({"ted", path("hypot/y.term"), path("hypot/y_prime.term"), "--costs", "0.5,1,1"});
  CHECK(r.out == "2.000000\n");
  r = cli({"ted", path("hypot/y.term"), path("hypot/y_prime.term"), "--costs", "1,1"});
  CHECK(r.code == 2);
}

TEST_CASE("lipschitz") {
  const auto r = cli({"lipschitz", "--abstraction", path("hypot/hypot.abs"), "--samples", "200", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "forward_k,inverse_ok,samples,seed\n2.000000,true,200,3\n");
  CHECK(cli({"lipschitz", "--abstraction", path("hypot/hypot.abs"), "--samples", "0"}).code == 2);
}

TEST_CASE("MDLGAUGE_SEED sets the default seed") {
  ::setenv("MDLGAUGE_SEED", "3", 1);
  const auto r = cli({"lipschitz", "--abstraction", path("hypot/hypot.abs"), "--samples", "200"});
  CHECK(r.out == "forward_k,inverse_ok,samples,seed\n2.000000,true,200,3\n");
  ::setenv("MDLGAUGE_SEED", "oops", 1);
  CHECK(cli({"lipschitz", "--abstraction", path("hypot/hypot.abs")}).code == 2);
  ::unsetenv("MDLGAUGE_SEED");
}

TEST_CASE("tradeoff") {
  const std::vector<std::string> args{"tradeoff", "--seed", "5", "--programs", "8", "--size", "120",
                                      "--motifs", "2", "--motif-size", "10", "--rate", "0.4"};
  const auto r = cli(args);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("level,power,compression_ratio,inversion_cost\n0,0.000000,1.000000,0.000000\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
  CHECK(cli(args).out == r.out);

  const auto out = temp_path("points.csv");
  auto with_out = args;
  with_out.insert(with_out.end(), {"--out", out.string()});
  CHECK(cli(with_out).code == 0);
  CHECK(mdlgauge::manifest::read_file(out) == r.out);
  std::filesystem::remove(out);

  CHECK(cli({"tradeoff", "--size", "10", "--motif-size", "12"}).code == 2);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"ted", path("hypot/y.term")}).code == 2);
  CHECK(cli({"tokenize", "--dialect", "cobol", path("summation/sum_a.cpp")}).code == 2);

  const auto r = cli({"tokenize", "/nonexistent/file.cpp"});
  CHECK(r.code == 2);
  CHECK(r.err.find("/nonexistent/file.cpp") != std::string::npos);

  const auto broken = temp_path("broken.term");
  write(broken, "(f a");
  const auto s = cli({"ted", broken.string(), path("hypot/y.term")});
  CHECK(s.code == 2);
  CHECK(s.err.find(broken.string() + ": offset 4") != std::string::npos);
  std::filesystem::remove(broken);
}

TEST_CASE("help and version exit 0") {
  auto r = cli({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out == std::string(mdlgauge::cli::kVersion) + "\n");
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"ted", "--help"}).code == 0);
}

TEST_CASE("the installed binary honours the exit contract") {
  const std::string bin = MDLGAUGE_CLI;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("--version") == 0);
  CHECK(status("tokenize " + path("summation/sum_a.cpp")) == 0);
  CHECK(status("unify --strict " + path("hypot/y.term") + " " + path("hypot/y_prime.term")) == 1);
  CHECK(status("no-such-command") == 2);
}
