#include "mdlgauge/mdl.hpp"

#include <algorithm>

#include "mdlgauge/csv.hpp"

namespace mdlgauge::mdl {

namespace {

std::size_t tokens_in(const std::string& source, lex::Dialect dialect) {
  return lex::count_tokens(lex::tokenize(source, dialect));
}

}  // namespace

const CandidateScore* MdlReport::find(const std::string& name) const {
  auto it = std::find_if(scores.begin(), scores.end(),
                         [&](const CandidateScore& s) { return s.name == name; });
  return it == scores.end() ? nullptr : &*it;
}

MdlScore score_candidate(const Candidate& c, const std::vector<UseCase>& uses,
                         lex::Dialect dialect) {
  MdlScore s;
  s.component_tokens = tokens_in(c.component_source, dialect);
  if (!uses.empty()) {
    for (const auto& shared : c.shared_adaptation) s.adaptation_tokens += tokens_in(shared, dialect);
  }
  for (const auto& u : uses) {
    auto it = c.adaptations.find(u.name);
    if (it == c.adaptations.end()) {
      throw MdlError(MdlError::Kind::missing_adaptation,
                     "candidate '" + c.name + "' has no adaptation for use case '" + u.name + "'");
    }
    s.adaptation_tokens += tokens_in(it->second, dialect);
  }
  s.total = s.component_tokens + s.adaptation_tokens;
  return s;
}

MdlReport rank_candidates(const std::vector<Candidate>& cands, const std::vector<UseCase>& uses,
                          lex::Dialect dialect) {
  if (cands.empty()) {
    throw MdlError(MdlError::Kind::empty_candidate_list, "no candidates to rank");
  }
  MdlReport report;
  report.scores.reserve(cands.size());
  for (const auto& c : cands) {
    report.scores.push_back({c.name, c.chain_index, score_candidate(c, uses, dialect), c.inapplicable});
  }
  std::sort(report.scores.begin(), report.scores.end(),
            [](const CandidateScore& a, const CandidateScore& b) { return a.chain_index < b.chain_index; });
  for (std::size_t i = 1; i < report.scores.size(); ++i) {
    if (report.scores[i].chain_index == report.scores[i - 1].chain_index) {
      throw MdlError(MdlError::Kind::duplicate_chain_index,
                     "candidates '" + report.scores[i - 1].name + "' and '" + report.scores[i].name +
                         "' share chain_index " + std::to_string(report.scores[i].chain_index));
    }
  }

  std::vector<std::size_t> totals;
  for (const auto& s : report.scores) totals.push_back(s.score.total);
  const auto shape = check_unimodal(totals);
  report.u_shaped = shape.u_shaped;
  report.min_index = shape.min_index;
  report.winner = report.scores[shape.min_index].name;
  return report;
}

Unimodality check_unimodal(const std::vector<std::size_t>& totals) {
  if (totals.empty()) throw std::invalid_argument("check_unimodal: empty sequence");
  const auto min_it = std::min_element(totals.begin(), totals.end());
  Unimodality r;
  r.min_index = static_cast<std::size_t>(min_it - totals.begin());

  std::size_t i = 1;
  while (i < totals.size() && totals[i] <= totals[i - 1]) ++i;
  while (i < totals.size() && totals[i] >= totals[i - 1]) ++i;
  r.u_shaped = i == totals.size();
  return r;
}

std::string report_csv(const MdlReport& report) {
  csv::Writer w;
  w.row({"name", "chain_index", "component_tokens", "adaptation_tokens", "total", "winner_flag"});
  for (const auto& s : report.scores) {
    w.row({s.name, std::to_string(s.chain_index), std::to_string(s.score.component_tokens),
           std::to_string(s.score.adaptation_tokens), std::to_string(s.score.total),
           s.name == report.winner ? "1" : "0"});
  }
  w.row({"u_shaped", report.u_shaped ? "true" : "false", "min_index", std::to_string(report.min_index)});
  return w.str();
}

}  // namespace mdlgauge::mdl
