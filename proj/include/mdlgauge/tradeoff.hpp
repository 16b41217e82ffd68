#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdlgauge/term.hpp"

namespace mdlgauge::tradeoff {

/// Synthetic problem domain: random programs with planted motif instances.
struct DomainSpec {
  std::uint64_t seed = 0;
  std::size_t program_count = 50;
  std::size_t program_size = 200;  // nodes per program
  std::size_t motif_count = 3;
  std::size_t motif_size = 12;     // body nodes, parameter slots included
  double motif_rate = 0.4;         // share of each program's nodes in motif instances
  std::size_t alphabet_size = 32;
};

class InconsistentSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate(const DomainSpec& spec);

struct PlantedInstance {
  std::size_t program = 0;
  std::size_t motif = 0;
  term::Term site;  // the instance as it appears in the program
};

struct GeneratedCorpus {
  std::vector<term::Term> programs;
  std::vector<term::Abstraction> motifs;
  std::vector<PlantedInstance> instances;

  std::size_t total_nodes() const;
  // Nodes saved by replacing every planted instance with a call carrying its
  // arguments, library cost not charged.
  std::size_t planted_savings() const;
  // total_nodes() - planted_savings(); no compressor that only exploits the
  // planted structure can go below it.
  std::size_t information_floor() const;
};

GeneratedCorpus generate(const DomainSpec& spec);
std::vector<term::Term> generate_corpus(const DomainSpec& spec);

/// Fixed ladder of abstraction mechanisms of increasing power.
enum class Level { none = 0, constants = 1, substitution = 2 };

inline constexpr std::size_t kLevelCount = 3;

struct MetalanguageLevel {
  Level level;
  std::size_t index() const { return static_cast<std::size_t>(level); }
  // Position on the [0,1] power axis. 1 is reserved for unrestricted program
  // generators, which have no effective inversion and are not run.
  double power() const { return static_cast<double>(index()) / kLevelCount; }
  std::string_view name() const;
};

struct Compression {
  std::vector<term::Abstraction> library;
  std::vector<term::Term> rewritten;
  std::size_t original_size = 0;
  // Remaining program nodes + library body nodes; every reuse costs one call
  // node plus its argument nodes.
  std::size_t compressed_size = 0;
  std::size_t rewrites = 0;
  std::size_t comparisons = 0;

  double ratio() const {
    return original_size == 0 ? 1.0 : static_cast<double>(compressed_size) / original_size;
  }
};

struct CompressOptions {
  std::uint64_t seed = 0;          // pair sampling for substitution discovery
  std::size_t max_rounds = 48;     // library entries at most
  std::size_t pairs_per_group = 6;
  std::size_t min_window = 3;      // subterm sizes considered for discovery
  std::size_t max_window = 64;
};

/// none:         corpus unchanged, empty library.
/// constants:    greedily names repeated ground subterms (size >= 2) while
///               that shrinks the total.
/// substitution: greedily adds parameterized patterns found by pairwise lgg
///               over subterms sharing a shape fingerprint, rewriting
///               matches into calls.
Compression compress_with_level(const std::vector<term::Term>& corpus, Level level,
                                const CompressOptions& opts = {});

/// Replays `library` over `corpus` in order and returns node comparisons per
/// successful rewrite (0 when nothing was rewritten). Constants are found by
/// hash lookup and then verified node by node; substitution patterns are
/// tried by match_term on every subterm with the same root label.
double measure_inversion_cost(const std::vector<term::Term>& corpus,
                              const std::vector<term::Abstraction>& library, Level level);

struct TradeoffPoint {
  MetalanguageLevel level;
  double compression_ratio = 1.0;
  double inversion_cost = 0.0;
  std::size_t compressed_size = 0;
  std::size_t library_entries = 0;
};

std::vector<TradeoffPoint> emit_tradeoff_points(const DomainSpec& spec);

// level,power,compression_ratio,inversion_cost
std::string points_csv(const std::vector<TradeoffPoint>& points);

}  // namespace mdlgauge::tradeoff
