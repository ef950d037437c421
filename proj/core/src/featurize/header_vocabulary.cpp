#include <algorithm>
#include <cctype>

#include "docstruct/errors.hpp"
#include "docstruct/featurize.hpp"
#include "json.hpp"

namespace docstruct {

using nlohmann::json;

HeaderVocabulary build_header_vocabulary(const std::vector<std::string>& headers, int min_frequency,
                                         const std::set<std::string>& stoplist) {
  std::map<std::string, int> counts;
  for (const auto& header : headers) {
    for (auto& tok : text::word_tokens(header)) {
      bool numeric = std::all_of(tok.begin(), tok.end(),
                                 [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
      if (numeric || stoplist.count(tok)) continue;
      ++counts[tok];
    }
  }
  HeaderVocabulary vocab;
  vocab.min_frequency = min_frequency;
  vocab.stoplist = stoplist;
  for (const auto& [term, count] : counts) {
    if (count >= min_frequency) {
      vocab.terms.insert(term);
      vocab.frequencies[term] = count;
    }
  }
  return vocab;
}

std::vector<std::pair<std::string, int>> HeaderVocabulary::ranked() const {
  std::vector<std::pair<std::string, int>> out(frequencies.begin(), frequencies.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::string HeaderVocabulary::to_json() const {
  json j;
  j["format"] = "docstruct.header_vocabulary";
  j["version"] = 1;
  j["min_frequency"] = min_frequency;
  j["frequencies"] = frequencies;
  j["stoplist"] = stoplist;
  return j.dump(1) + "\n";
}

HeaderVocabulary HeaderVocabulary::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("header vocabulary: ") + e.what(), 1, e.byte);
  }
  if (j.value("format", "") != "docstruct.header_vocabulary")
    throw SchemaError("not a header vocabulary file");
  if (j.value("version", 0) != 1) throw VersionError("unsupported header vocabulary version");
  HeaderVocabulary v;
  try {
    v.min_frequency = j.at("min_frequency").get<int>();
    v.frequencies = j.at("frequencies").get<std::map<std::string, int>>();
    v.stoplist = j.at("stoplist").get<std::set<std::string>>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("header vocabulary: ") + e.what());
  }
  for (const auto& [term, _] : v.frequencies) v.terms.insert(term);
  return v;
}

}  // namespace docstruct
