#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// LDA over section texts with collapsed Gibbs sampling.
namespace docstruct {

// Dictionary flavours: unigrams, bigrams, or uni+bi+trigram phrases.
enum class TokenMode { word, bigram, phrase };

TokenMode parse_token_mode(std::string_view name);

// Lowercased content words (stopwords, numbers and 1-char tokens removed),
// expanded to n-grams for the bigram and phrase modes.
std::vector<std::string> topic_tokens(std::string_view text, TokenMode mode = TokenMode::word);

struct DictionaryOptions {
  int min_sections = 20;      // keep terms present in at least this many sections
  double max_fraction = 0.10; // ... and in at most this fraction of them
  std::size_t cap = 100000;   // most frequent terms kept
};

struct TopicDictionary {
  std::map<std::string, std::uint32_t> ids;
  std::vector<std::string> terms;       // id -> term
  std::vector<int> section_frequency;   // id -> number of sections containing the term
  int section_count = 0;

  std::size_t size() const { return terms.size(); }
  std::optional<std::uint32_t> find(std::string_view term) const;
  std::vector<std::uint32_t> encode(const std::vector<std::string>& tokens) const;
};

// Term ids are assigned in lexicographic order of the kept terms.
TopicDictionary build_dictionary(const std::vector<std::vector<std::string>>& sections,
                                 const DictionaryOptions& options = {});

struct LdaOptions {
  int topics = 10;
  double alpha = -1;  // <= 0 selects 50 / topics
  double beta = 0.01;
  int iterations = 500;
  std::uint64_t seed = 0;
};

class TopicModel {
 public:
  TopicDictionary dictionary;
  int topics = 0;
  double alpha = 0, beta = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> topic_word;  // [topic][term]
  std::vector<int> topic_totals;             // [topic]
  std::vector<std::vector<int>> doc_topic;   // [training doc][topic]
  std::vector<double> log_likelihood;        // log p(w | z) after each sweep

  // Smoothed (n_kw + beta) / (n_k + V beta).
  double word_probability(std::size_t topic, std::uint32_t term) const;
  std::vector<double> topic_word_distribution(std::size_t topic) const;
  // Highest-probability terms of a topic, ties lexicographic.
  std::vector<std::string> top_terms(std::size_t topic, std::size_t n) const;
  // Joint log p(w | z) of the current training state.
  double corpus_log_likelihood() const;
};

// Per-sweep observer: (sweep index, model state, token assignments).
using LdaObserver =
    std::function<void(int sweep, const TopicModel& model, const std::vector<std::vector<int>>& assignments)>;

// Throws ContractError when topics < 1 or DataError when no section has an
// in-dictionary token.
TopicModel train_lda(const std::vector<std::vector<std::string>>& sections, const TopicDictionary& dictionary,
                     const LdaOptions& options = {}, const LdaObserver& observer = {});

inline constexpr int kDefaultInferenceIterations = 50;

// Fold-in Gibbs with frozen topic-word counts; uniform when the section has
// no in-dictionary token (diagnostic set).
std::vector<double> infer_topics(const TopicModel& m, const std::vector<std::string>& tokens,
                                 int iterations = kDefaultInferenceIterations, std::uint64_t seed = 0,
                                 std::string* diagnostic = nullptr);

// Top n_terms of the section's most probable topic.
std::vector<std::string> semantic_concepts(const TopicModel& m, const std::vector<std::string>& tokens,
                                           std::size_t n_terms, int iterations = kDefaultInferenceIterations,
                                           std::uint64_t seed = 0);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

struct ChunkSimilarity {
  double intra = 0;  // mean cosine between the halves of one section
  double inter = 0;  // mean cosine between halves of two different sections
  std::size_t sections = 0;
  std::size_t skipped = 0;  // sections shorter than two tokens
};

// Sections are divided into `chunks` contiguous chunks in input order.
std::vector<ChunkSimilarity> half_split_similarity_eval(const TopicModel& m,
                                                        const std::vector<std::vector<std::string>>& sections,
                                                        int chunks, std::uint64_t seed,
                                                        int iterations = kDefaultInferenceIterations);

// Mean per-token held-out log-likelihood under fold-in topic estimates.
// Throws DataError when the held-out set has no in-dictionary token.
double log_perplexity(const TopicModel& m, const std::vector<std::vector<std::string>>& held_out,
                      int iterations = kDefaultInferenceIterations, std::uint64_t seed = 0);

// Same measure with every section's topic mixture fixed to uniform.
double log_perplexity_uniform(const TopicModel& m, const std::vector<std::vector<std::string>>& held_out);

// Rows "Topic k: term, term, ..." for each topic.
std::string top_terms_table(const TopicModel& m, std::size_t n_terms);

inline constexpr int kTopicModelFormatVersion = 1;
void save_topic_model(const TopicModel& m, std::ostream& out);
TopicModel load_topic_model(std::istream& in);

}  // namespace docstruct
