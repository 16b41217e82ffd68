#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdlgauge/lexcount.hpp"

namespace mdlgauge::mdl {

struct UseCase {
  std::string name;
  std::string description;
};

// One point on the least-to-most-general chain, with the code needed to
// apply it to every use case.
struct Candidate {
  std::string name;
  std::size_t chain_index = 0;
  std::string component_source;
  // Glue shared by all use cases (e.g. a functor), counted once.
  std::vector<std::string> shared_adaptation;
  // Use-case name -> adaptation code, or a from-scratch implementation when
  // the component cannot serve that use case.
  std::map<std::string, std::string> adaptations;
  std::set<std::string> inapplicable;
};

struct MdlScore {
  std::size_t component_tokens = 0;
  std::size_t adaptation_tokens = 0;
  std::size_t total = 0;

  friend bool operator==(const MdlScore&, const MdlScore&) = default;
};

struct CandidateScore {
  std::string name;
  std::size_t chain_index = 0;
  MdlScore score;
  std::set<std::string> inapplicable;
};

struct MdlReport {
  // Sorted by chain_index.
  std::vector<CandidateScore> scores;
  std::string winner;
  bool u_shaped = false;
  // Position of the first global minimum in chain order.
  std::size_t min_index = 0;

  const CandidateScore* find(const std::string& name) const;
};

class MdlError : public std::invalid_argument {
 public:
  enum class Kind { missing_adaptation, empty_candidate_list, duplicate_chain_index };

  MdlError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

MdlScore score_candidate(const Candidate& c, const std::vector<UseCase>& uses,
                         lex::Dialect dialect = lex::Dialect::cpp_like);

// Winner is the minimal total; ties go to the smaller chain_index. The input
// order of `cands` does not matter.
MdlReport rank_candidates(const std::vector<Candidate>& cands, const std::vector<UseCase>& uses,
                          lex::Dialect dialect = lex::Dialect::cpp_like);

struct Unimodality {
  bool u_shaped = false;
  std::size_t min_index = 0;

  friend bool operator==(const Unimodality&, const Unimodality&) = default;
};

// Non-increasing then non-decreasing, plateaus allowed. Throws
// std::invalid_argument on an empty sequence.
Unimodality check_unimodal(const std::vector<std::size_t>& totals);

// name,chain_index,component_tokens,adaptation_tokens,total,winner_flag rows
// plus the u_shaped/min_index summary line.
std::string report_csv(const MdlReport& report);

}  // namespace mdlgauge::mdl
