#include "mdlgauge/manifest.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mdlgauge::manifest {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid scenario manifest:";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

class Loader {
 public:
  explicit Loader(std::filesystem::path base) : base_(std::move(base)) {}

  std::optional<std::string> source(const nlohmann::json& v, const std::string& where) {
    if (!v.is_string()) {
      problem(where + ": expected a file path string");
      return std::nullopt;
    }
    const auto path = base_ / v.get<std::string>();
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      problem(where + ": cannot read " + path.string());
      return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void problem(std::string p) { problems.push_back(std::move(p)); }

  std::vector<std::string> problems;

 private:
  std::filesystem::path base_;
};

std::vector<std::string> string_list(const nlohmann::json& c, const char* key, const std::string& where,
                                     Loader& ld) {
  std::vector<std::string> out;
  if (!c.contains(key)) return out;
  const auto& v = c.at(key);
  if (!v.is_array()) {
    ld.problem(where + ": '" + key + "' must be an array");
    return out;
  }
  for (const auto& e : v) {
    if (e.is_string()) {
      out.push_back(e.get<std::string>());
    } else {
      ld.problem(where + ": '" + key + "' entries must be strings");
    }
  }
  return out;
}

}  // namespace

ManifestInvalid::ManifestInvalid(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioManifest load_manifest(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ManifestInvalid({path.string() + ": " + e.what()});
  } catch (const std::runtime_error& e) {
    throw ManifestInvalid({e.what()});
  }
  if (!doc.is_object()) throw ManifestInvalid({path.string() + ": top level must be an object"});

  Loader ld(path.parent_path());
  ScenarioManifest m;

  if (doc.contains("tokenizer_dialect")) {
    const auto& d = doc["tokenizer_dialect"];
    try {
      m.dialect = lex::parse_dialect(d.is_string() ? d.get<std::string>() : d.dump());
    } catch (const std::invalid_argument&) {
      ld.problem("tokenizer_dialect: unsupported value " + d.dump());
    }
  }

  std::set<std::string> use_names;
  if (!doc.contains("use_cases") || !doc["use_cases"].is_array()) {
    ld.problem("use_cases: missing or not an array");
  } else {
    for (const auto& u : doc["use_cases"]) {
      if (!u.is_object() || !u.contains("name") || !u["name"].is_string()) {
        ld.problem("use_cases: every entry needs a string 'name'");
        continue;
      }
      mdl::UseCase uc{u["name"].get<std::string>(), u.value("description", std::string{})};
      if (!use_names.insert(uc.name).second) ld.problem("use case '" + uc.name + "' is listed twice");
      m.use_cases.push_back(std::move(uc));
    }
  }

  std::map<std::size_t, std::string> chain;
  if (!doc.contains("candidates") || !doc["candidates"].is_array() || doc["candidates"].empty()) {
    ld.problem("candidates: missing, empty, or not an array");
  } else {
    for (const auto& c : doc["candidates"]) {
      if (!c.is_object() || !c.contains("name") || !c["name"].is_string()) {
        ld.problem("candidates: every entry needs a string 'name'");
        continue;
      }
      mdl::Candidate cand;
      cand.name = c["name"].get<std::string>();
      const std::string where = "candidate '" + cand.name + "'";

      if (!c.contains("chain_index") || !c["chain_index"].is_number_unsigned()) {
        ld.problem(where + ": chain_index must be a nonnegative integer");
      } else {
        cand.chain_index = c["chain_index"].get<std::size_t>();
        auto [it, fresh] = chain.emplace(cand.chain_index, cand.name);
        if (!fresh) {
          ld.problem(where + ": chain_index " + std::to_string(cand.chain_index) + " duplicates candidate '" +
                     it->second + "'");
        }
      }

      if (!c.contains("component_source")) {
        ld.problem(where + ": missing component_source");
      } else if (auto s = ld.source(c["component_source"], where + " component_source")) {
        cand.component_source = *s;
      }

      for (const auto& p : string_list(c, "shared_adaptation", where, ld)) {
        if (auto s = ld.source(p, where + " shared_adaptation")) cand.shared_adaptation.push_back(*s);
      }

      const nlohmann::json adaptations = c.value("adaptations", nlohmann::json::object());
      if (!adaptations.is_object()) ld.problem(where + ": adaptations must be an object");
      for (const auto& uc : m.use_cases) {
        if (!adaptations.is_object() || !adaptations.contains(uc.name)) {
          ld.problem(where + ": no adaptation for use case '" + uc.name + "'");
          continue;
        }
        if (auto s = ld.source(adaptations[uc.name], where + " use case '" + uc.name + "'")) {
          cand.adaptations.emplace(uc.name, *s);
        }
      }
      if (adaptations.is_object()) {
        for (const auto& [key, _] : adaptations.items()) {
          if (!use_names.contains(key)) ld.problem(where + ": adaptation for unknown use case '" + key + "'");
        }
      }

      for (const auto& u : string_list(c, "inapplicable", where, ld)) {
        if (!use_names.contains(u)) ld.problem(where + ": inapplicable names unknown use case '" + u + "'");
        cand.inapplicable.insert(u);
      }
      m.candidates.push_back(std::move(cand));
    }
  }

  if (!ld.problems.empty()) throw ManifestInvalid(std::move(ld.problems));
  return m;
}

}  // namespace mdlgauge::manifest
