#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdlgauge/lexcount.hpp"
#include "mdlgauge/mdl.hpp"

namespace mdlgauge::manifest {

/// A scenario file with its sources already read. Paths in the JSON are
/// relative to the directory holding it.
///
///   {
///     "tokenizer_dialect": "cpp-like",
///     "use_cases": [{"name": "...", "description": "..."}],
///     "candidates": [{
///       "name": "...", "chain_index": 0, "component_source": "x.cpp",
///       "adaptations": {"<use case>": "path"},
///       "shared_adaptation": ["path"],   // optional
///       "inapplicable": ["<use case>"]   // optional
///     }]
///   }
struct ScenarioManifest {
  lex::Dialect dialect = lex::Dialect::cpp_like;
  std::vector<mdl::UseCase> use_cases;
  std::vector<mdl::Candidate> candidates;
};

/// Every problem found in a manifest, one per line of what().
class ManifestInvalid : public std::runtime_error {
 public:
  explicit ManifestInvalid(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

ScenarioManifest load_manifest(const std::filesystem::path& path);

// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string read_file(const std::filesystem::path& path);

}  // namespace mdlgauge::manifest
