#include "mdlgauge/cli.hpp"

#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mdlgauge/cfrag.hpp"
#include "mdlgauge/csv.hpp"
#include "mdlgauge/lexcount.hpp"
#include "mdlgauge/manifest.hpp"
#include "mdlgauge/mdl.hpp"
#include "mdlgauge/term.hpp"
#include "mdlgauge/tradeoff.hpp"
#include "mdlgauge/treedist.hpp"
#include "mdlgauge/viscosity.hpp"

namespace mdlgauge::cli {

namespace {

// Bad input that names the offending file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  try {
    return manifest::read_file(path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

term::Term load_term(const std::string& path, const std::string& lang) {
  const std::string text = read_input(path);
  try {
    return lang == "c" ? term::encode_c(text) : term::parse_term(text);
  } catch (const term::SyntaxError& e) {
    const char* unit = lang == "c" ? "token " : "offset ";
    throw InputError(path + ": " + unit + std::to_string(e.position()) + ": " + e.what());
  } catch (const lex::LexError& e) {
    throw InputError(path + ": offset " + std::to_string(e.offset()) + ": " + e.what());
  }
}

term::Abstraction load_abstraction(const std::string& path) {
  const std::string text = read_input(path);
  try {
    return term::parse_abstraction(text, "f");
  } catch (const term::SyntaxError& e) {
    throw InputError(path + ": offset " + std::to_string(e.position()) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const std::string& out_path, const std::string& text, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    csv::write_atomically(out_path, text);
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("MDLGAUGE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (env[used] != '\0') throw std::invalid_argument(env);
    return v;
  } catch (const std::logic_error&) {
    throw InputError(std::string("MDLGAUGE_SEED is not an unsigned integer: ") + env);
  }
}

treedist::CostModel costs_from(const std::string& text) {
  if (text.empty()) return {};
  try {
    return treedist::parse_costs(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--costs: ") + e.what());
  }
}

void add_lang(CLI::App* cmd, std::string& lang) {
  cmd->add_option("--lang", lang, "Input notation of term files")
      ->check(CLI::IsMember({"term", "c"}))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Description-length and abstraction metrics for code", "mdlgauge"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::function<void()> action;

  // tokenize
  std::vector<std::string> tok_files;
  std::string dialect_name = "cpp-like";
  auto* tok = app.add_subcommand("tokenize", "Print path<TAB>token-count for each file");
  tok->add_option("files", tok_files)->required();
  tok->add_option("--dialect", dialect_name)->check(CLI::IsMember({"cpp-like", "cpp", "generic"}))
      ->capture_default_str();
  tok->callback([&] {
    action = [&] {
      const auto dialect = lex::parse_dialect(dialect_name);
      std::ostringstream ss;
      for (const auto& f : tok_files) {
        const std::string text = read_input(f);
        try {
          ss << f << '\t' << lex::count_tokens(lex::tokenize(text, dialect, f)) << '\n';
        } catch (const lex::LexError& e) {
          throw InputError(f + ": offset " + std::to_string(e.offset()) + ": " + e.what());
        }
      }
      out << ss.str();
    };
  });

  // mdl
  std::string scenario, mdl_out;
  auto* mdl_cmd = app.add_subcommand("mdl", "Score and rank the candidates of a scenario manifest");
  mdl_cmd->add_option("scenario", scenario)->required();
  mdl_cmd->add_option("--out", mdl_out, "Write the CSV here instead of standard output");
  mdl_cmd->callback([&] {
    action = [&] {
      manifest::ScenarioManifest m;
      try {
        m = manifest::load_manifest(scenario);
      } catch (const manifest::ManifestInvalid& e) {
        throw InputError(e.what());
      }
      try {
        emit(mdl_out, mdl::report_csv(mdl::rank_candidates(m.candidates, m.use_cases, m.dialect)), out);
      } catch (const lex::LexError& e) {
        throw InputError(scenario + ": a source fails to lex at offset " + std::to_string(e.offset()) + ": " +
                         e.what());
      }
    };
  });

  // match
  std::string pattern_file, target_file, term_lang = "term";
  bool strict = false;
  auto* match_cmd = app.add_subcommand("match", "Find a substitution turning a pattern into a target");
  match_cmd->add_option("pattern", pattern_file, "Pattern term (term notation)")->required();
  match_cmd->add_option("target", target_file)->required();
  match_cmd->add_flag("--strict", strict, "Exit 1 when there is no match");
  add_lang(match_cmd, term_lang);
  match_cmd->callback([&] {
    action = [&] {
      const auto p = load_term(pattern_file, "term");
      const auto t = load_term(target_file, term_lang);
      if (auto s = term::match_term(p, t)) {
        out << term::render_substitution(*s) << '\n';
      } else {
        out << "fail\n";
        if (strict) throw DomainFailure("no match");
      }
    };
  });

  // unify
  std::string left_file, right_file;
  auto* unify_cmd = app.add_subcommand("unify", "Most general unifier of two terms");
  unify_cmd->add_option("left", left_file)->required();
  unify_cmd->add_option("right", right_file)->required();
  unify_cmd->add_flag("--strict", strict, "Exit 1 when the terms do not unify");
  add_lang(unify_cmd, term_lang);
  unify_cmd->callback([&] {
    action = [&] {
      const auto a = load_term(left_file, term_lang);
      const auto b = load_term(right_file, term_lang);
      if (auto s = term::unify(a, b)) {
        out << term::render_substitution(*s) << '\n';
      } else {
        out << "fail\n";
        if (strict) throw DomainFailure("not unifiable");
      }
    };
  });

  // lgg
  std::vector<std::string> lgg_files;
  auto* lgg_cmd = app.add_subcommand("lgg", "Least general generalization of ground terms");
  lgg_cmd->add_option("terms", lgg_files)->required();
  add_lang(lgg_cmd, term_lang);
  lgg_cmd->callback([&] {
    action = [&] {
      std::vector<term::Term> ts;
      for (const auto& f : lgg_files) ts.push_back(load_term(f, term_lang));
      out << term::render_abstraction(term::lgg(ts));
    };
  });

  // ted
  std::string ted_a, ted_b, costs_text;
  auto* ted_cmd = app.add_subcommand("ted", "Tree edit distance between two terms");
  ted_cmd->add_option("a", ted_a)->required();
  ted_cmd->add_option("b", ted_b)->required();
  ted_cmd->add_option("--costs", costs_text, "insert,delete,relabel");
  add_lang(ted_cmd, term_lang);
  ted_cmd->callback([&] {
    action = [&] {
      const auto costs = costs_from(costs_text);
      out << csv::fixed6(treedist::ted(load_term(ted_a, term_lang), load_term(ted_b, term_lang), costs)) << '\n';
    };
  });

  // lipschitz
  std::string abs_file;
  std::size_t samples = 100;
  std::optional<std::uint64_t> seed;
  auto* lip = app.add_subcommand("lipschitz", "Sample parameter/instance distances of an abstraction");
  lip->add_option("--abstraction", abs_file)->required();
  lip->add_option("--samples", samples)->check(CLI::PositiveNumber)->capture_default_str();
  lip->add_option("--seed", seed, "Defaults to MDLGAUGE_SEED, else 0");
  lip->add_option("--costs", costs_text, "insert,delete,relabel");
  lip->callback([&] {
    action = [&] {
      const auto a = load_abstraction(abs_file);
      const auto costs = costs_from(costs_text);
      const std::uint64_t s = seed ? *seed : default_seed();
      const auto est = viscosity::estimate_lipschitz(a, samples, s, costs);
      for (const auto& p : est.unused_params) {
        err << "warning: parameter ?" << p << " does not occur in the body; inverse_ok is not meaningful\n";
      }
      csv::Writer w;
      w.row({"forward_k", "inverse_ok", "samples", "seed"});
      w.row({csv::fixed6(est.forward_k), est.inverse_ok ? "true" : "false", std::to_string(est.samples),
             std::to_string(est.seed)});
      out << w.str();
    };
  });

  // tradeoff
  tradeoff::DomainSpec spec;
  std::optional<std::uint64_t> spec_seed;
  std::string trade_out;
  auto* trade = app.add_subcommand("tradeoff", "Compression and inversion cost per abstraction level");
  trade->add_option("--seed", spec_seed, "Defaults to MDLGAUGE_SEED, else 0");
  trade->add_option("--programs", spec.program_count)->capture_default_str();
  trade->add_option("--size", spec.program_size)->capture_default_str();
  trade->add_option("--motifs", spec.motif_count)->capture_default_str();
  trade->add_option("--motif-size", spec.motif_size)->capture_default_str();
  trade->add_option("--rate", spec.motif_rate)->capture_default_str();
  trade->add_option("--alphabet", spec.alphabet_size)->capture_default_str();
  trade->add_option("--out", trade_out, "Write the CSV here instead of standard output");
  trade->callback([&] {
    action = [&] {
      spec.seed = spec_seed ? *spec_seed : default_seed();
      std::vector<tradeoff::TradeoffPoint> points;
      try {
        points = tradeoff::emit_tradeoff_points(spec);
      } catch (const tradeoff::InconsistentSpec& e) {
        throw InputError(e.what());
      }
      emit(trade_out, tradeoff::points_csv(points), out);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (action) action();
    return ok;
  } catch (const DomainFailure&) {
    return domain_failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
}

}  // namespace mdlgauge::cli
