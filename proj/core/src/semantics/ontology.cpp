#include <algorithm>
#include <set>

#include "docstruct/errors.hpp"
#include "docstruct/semantics.hpp"
#include "docstruct/text.hpp"
#include "json.hpp"

namespace docstruct {

using nlohmann::json;

namespace {

struct AliasGroup {
  const char* cls;
  std::vector<const char*> aliases;
};

const std::vector<AliasGroup>& scholarly_aliases() {
  static const std::vector<AliasGroup> groups = {
      {"Introduction", {"introduction", "overview", "motivation", "introduction and motivation",
                        "motivation and overview", "general introduction"}},
      {"Conclusion", {"conclusion", "conclusions", "concluding remarks", "summary and conclusions",
                      "summary and conclusion", "conclusions and outlook", "final remarks", "summary",
                      "conclusion and future work", "conclusions and future work"}},
      {"Discussion", {"discussion", "discussions", "general discussion", "remarks", "results and discussion"}},
      {"References", {"references", "bibliography", "literature cited", "works cited", "reference"}},
      {"Acknowledgments", {"acknowledgments", "acknowledgements", "acknowledgment", "acknowledgement",
                           "funding", "funding information"}},
      {"Results", {"results", "main results", "experimental results", "numerical results", "findings",
                   "empirical results", "result"}},
      {"Abstract", {"abstract", "executive summary"}},
      {"Appendix", {"appendix", "appendices", "supplementary material", "supplementary materials",
                    "supplemental material", "supplementary information"}},
      {"RelatedWork", {"related work", "related works", "prior work", "previous work", "literature review",
                       "related literature", "state of the art", "related research", "review of literature"}},
      {"Experiments", {"experiments", "experiment", "experimental setup", "experimental design",
                       "experimental settings", "simulations", "numerical experiments", "experimental study"}},
      {"Methodology", {"methodology", "methods", "method", "materials and methods", "research methodology",
                       "methods and materials"}},
      {"Preliminary", {"preliminaries", "preliminary", "notation", "notations", "definitions",
                       "problem formulation", "problem statement", "problem definition", "setup and notation"}},
      {"ProofOfTheorem", {"proof of theorem", "proof", "proofs", "proof of lemma", "proof of the main theorem",
                          "proofs of main results", "proof of proposition", "proof of corollary"}},
      {"Evaluation", {"evaluation", "performance evaluation", "empirical evaluation", "experimental evaluation",
                      "analysis", "performance analysis", "evaluation metrics", "evaluation and results"}},
      {"FutureWork", {"future work", "future works", "future directions", "future research", "outlook",
                      "open problems", "open questions", "limitations and future work"}},
      {"Datasets", {"datasets", "dataset", "data", "data collection", "data sets", "data description",
                    "data set", "corpus", "benchmark datasets"}},
      {"Contribution", {"contribution", "contributions", "our contributions", "main contributions",
                        "summary of contributions"}},
      {"Background", {"background", "theoretical background", "basic concepts", "background and motivation",
                      "technical background", "fundamentals"}},
      {"Implementation", {"implementation", "implementation details", "system implementation", "architecture",
                          "system architecture", "system design", "software", "system overview"}},
      {"Approach", {"approach", "proposed approach", "our approach", "proposed method", "the model", "model",
                    "framework", "proposed framework", "algorithm", "proposed model", "our method"}},
  };
  return groups;
}

}  // namespace

OntologyClassSet OntologyClassSet::scholarly() {
  OntologyClassSet ont;
  for (const auto& g : scholarly_aliases()) {
    ont.classes.emplace_back(g.cls);
    for (const char* a : g.aliases) ont.alias_map.emplace(text::normalize_header(a), g.cls);
  }
  return ont;
}

OntologyClassSet OntologyClassSet::rfp() {
  OntologyClassSet ont;
  const std::vector<AliasGroup> groups = {
      {"Introduction", {"introduction", "purpose", "overview", "background"}},
      {"Requirement", {"requirements", "requirement", "technical requirements", "scope of work",
                       "statement of work", "specifications"}},
      {"Deliverable", {"deliverables", "deliverable", "work products", "milestones"}},
      {"ContractClauses", {"contract clauses", "terms and conditions", "special provisions",
                           "general provisions", "clauses"}},
      {"Evaluation", {"evaluation criteria", "evaluation", "proposal evaluation", "award criteria"}},
      {"Submission", {"submission instructions", "proposal submission", "instructions to offerors",
                      "proposal format"}},
      {"Schedule", {"schedule", "timeline", "period of performance", "key dates"}},
      {"Pricing", {"pricing", "cost proposal", "price schedule", "budget"}},
      {"Appendix", {"appendix", "attachments", "exhibits"}},
  };
  for (const auto& g : groups) {
    ont.classes.emplace_back(g.cls);
    for (const char* a : g.aliases) ont.alias_map.emplace(text::normalize_header(a), g.cls);
  }
  return ont;
}

std::optional<std::size_t> OntologyClassSet::index_of(std::string_view cls) const {
  auto it = std::find(classes.begin(), classes.end(), cls);
  if (it == classes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - classes.begin());
}

void OntologyClassSet::validate() const {
  std::set<std::string> unique(classes.begin(), classes.end());
  if (unique.size() != classes.size()) throw SchemaError("ontology class names must be unique");
  for (const auto& [alias, cls] : alias_map) {
    if (!unique.count(cls)) throw SchemaError("alias '" + alias + "' maps to unknown class '" + cls + "'");
  }
}

std::string OntologyClassSet::to_json() const {
  json aliases = json::object();
  for (const auto& cls : classes) aliases[cls] = json::array();
  for (const auto& [alias, cls] : alias_map) aliases[cls].push_back(alias);
  json j = {{"format", "docstruct.ontology"}, {"version", 1}, {"classes", classes}, {"aliases", aliases}};
  return j.dump(2) + "\n";
}

OntologyClassSet OntologyClassSet::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("ontology config: ") + e.what(), 1, e.byte);
  }
  OntologyClassSet ont;
  try {
    ont.classes = j.at("classes").get<std::vector<std::string>>();
    for (const auto& [cls, list] : j.at("aliases").items()) {
      for (const auto& alias : list) {
        auto key = text::normalize_header(alias.get<std::string>());
        auto [it, inserted] = ont.alias_map.emplace(key, cls);
        if (!inserted && it->second != cls)
          throw SchemaError("alias '" + key + "' maps to both " + it->second + " and " + cls);
      }
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("ontology config: ") + e.what());
  }
  ont.validate();
  return ont;
}

std::optional<std::string> map_header_to_class(std::string_view header, const OntologyClassSet& ont) {
  const std::string key = text::normalize_header(header);
  if (key.empty()) return std::nullopt;
  if (auto it = ont.alias_map.find(key); it != ont.alias_map.end()) return it->second;

  auto class_rank = [&](const std::string& cls) { return ont.index_of(cls).value_or(ont.classes.size()); };

  // longest alias occurring as whole words inside the header
  const std::string padded = " " + key + " ";
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : ont.alias_map) {
    if (padded.find(" " + entry.first + " ") == std::string::npos) continue;
    if (!best || entry.first.size() > best->first.size() ||
        (entry.first.size() == best->first.size() && class_rank(entry.second) < class_rank(best->second)))
      best = &entry;
  }
  if (best) return best->second;

  auto content_tokens = [](std::string_view s) {
    std::set<std::string> out;
    for (auto& t : text::word_tokens(s)) {
      if (!text::default_stoplist().count(t)) out.insert(std::move(t));
    }
    return out;
  };
  const auto header_tokens = content_tokens(key);
  if (header_tokens.empty()) return std::nullopt;
  double best_overlap = 0;
  std::optional<std::string> best_class;
  for (const auto& [alias, cls] : ont.alias_map) {
    const auto alias_tokens = content_tokens(alias);
    if (alias_tokens.empty()) continue;
    std::size_t common = 0;
    for (const auto& t : alias_tokens) common += header_tokens.count(t);
    const double overlap =
        static_cast<double>(common) / static_cast<double>(std::max(alias_tokens.size(), header_tokens.size()));
    if (overlap < 0.5) continue;
    if (overlap > best_overlap || (overlap == best_overlap && best_class && class_rank(cls) < class_rank(*best_class))) {
      best_overlap = overlap;
      best_class = cls;
    }
  }
  return best_class;
}

}  // namespace docstruct
