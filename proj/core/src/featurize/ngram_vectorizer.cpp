#include <cmath>
#include <set>

#include "docstruct/errors.hpp"
#include "docstruct/featurize.hpp"
#include "json.hpp"

namespace docstruct {

using nlohmann::json;

std::vector<std::string> NgramVectorizer::ngrams(std::string_view text, int n_min, int n_max) {
  const auto tokens = text::word_tokens(text);
  std::vector<std::string> out;
  for (int n = n_min; n <= n_max; ++n) {
    const auto width = static_cast<std::size_t>(n);
    if (width == 0 || tokens.size() < width) continue;
    for (std::size_t i = 0; i + width <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t j = 1; j < width; ++j) {
        gram += ' ';
        gram += tokens[i + j];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

NgramVectorizer NgramVectorizer::fit(const std::vector<std::string>& texts, int n_min, int n_max,
                                     int min_df) {
  if (n_min < 1 || n_max < n_min) throw ContractError("invalid n-gram range");
  std::map<std::string, int> df;
  for (const auto& t : texts) {
    auto grams = ngrams(t, n_min, n_max);
    std::set<std::string> unique(grams.begin(), grams.end());
    for (const auto& g : unique) ++df[g];
  }
  NgramVectorizer v;
  v.n_min_ = n_min;
  v.n_max_ = n_max;
  v.corpus_size_ = static_cast<int>(texts.size());
  for (const auto& [gram, count] : df) {
    if (count < min_df) continue;
    v.vocabulary_.emplace(gram, static_cast<std::uint32_t>(v.terms_.size()));
    v.terms_.push_back(gram);
    v.df_.push_back(count);
  }
  return v;
}

int NgramVectorizer::document_frequency(std::string_view term) const {
  auto it = vocabulary_.find(std::string(term));
  return it == vocabulary_.end() ? 0 : df_[it->second];
}

SparseVector NgramVectorizer::transform(std::string_view text) const {
  std::map<std::uint32_t, double> tf;
  for (const auto& g : ngrams(text, n_min_, n_max_)) {
    auto it = vocabulary_.find(g);
    if (it != vocabulary_.end()) tf[it->second] += 1.0;
  }
  SparseVector out;
  double norm2 = 0;
  for (const auto& [id, count] : tf) {
    const double idf = 1.0 + std::log(static_cast<double>(corpus_size_) / (1.0 + df_[id]));
    const double w = count * idf;
    out.push(id, w);
    norm2 += w * w;
  }
  if (norm2 > 0) {
    const double norm = std::sqrt(norm2);
    for (auto& [_, w] : out.entries) w /= norm;
  }
  return out;
}

std::string NgramVectorizer::to_json() const {
  json j;
  j["format"] = "docstruct.ngram_vectorizer";
  j["version"] = 1;
  j["corpus_size"] = corpus_size_;
  j["n_min"] = n_min_;
  j["n_max"] = n_max_;
  json df = json::object();
  for (std::size_t i = 0; i < terms_.size(); ++i) df[terms_[i]] = df_[i];
  j["document_frequency"] = std::move(df);
  return j.dump(1) + "\n";
}

NgramVectorizer NgramVectorizer::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("n-gram vectorizer: ") + e.what(), 1, e.byte);
  }
  if (j.value("format", "") != "docstruct.ngram_vectorizer")
    throw SchemaError("not an n-gram vectorizer file");
  if (j.value("version", 0) != 1) throw VersionError("unsupported n-gram vectorizer version");
  NgramVectorizer v;
  try {
    v.corpus_size_ = j.at("corpus_size").get<int>();
    v.n_min_ = j.at("n_min").get<int>();
    v.n_max_ = j.at("n_max").get<int>();
    // std::map iteration is lexicographic, matching the ids assigned by fit
    auto df = j.at("document_frequency").get<std::map<std::string, int>>();
    for (const auto& [term, count] : df) {
      v.vocabulary_.emplace(term, static_cast<std::uint32_t>(v.terms_.size()));
      v.terms_.push_back(term);
      v.df_.push_back(count);
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("n-gram vectorizer: ") + e.what());
  }
  return v;
}

}  // namespace docstruct
