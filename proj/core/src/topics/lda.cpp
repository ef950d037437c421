#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "docstruct/errors.hpp"
#include "docstruct/rng.hpp"
#include "docstruct/text.hpp"
#include "docstruct/topics.hpp"
#include "json.hpp"

namespace docstruct {

using nlohmann::json;

double TopicModel::word_probability(std::size_t topic, std::uint32_t term) const {
  const double v = static_cast<double>(dictionary.size());
  return (topic_word[topic][term] + beta) / (topic_totals[topic] + v * beta);
}

std::vector<double> TopicModel::topic_word_distribution(std::size_t topic) const {
  std::vector<double> phi(dictionary.size());
  for (std::uint32_t w = 0; w < phi.size(); ++w) phi[w] = word_probability(topic, w);
  return phi;
}

std::vector<std::string> TopicModel::top_terms(std::size_t topic, std::size_t n) const {
  // Term ids follow lexicographic order, so a stable sort on counts breaks
  // ties lexicographically.
  std::vector<std::uint32_t> order(dictionary.size());
  std::iota(order.begin(), order.end(), 0u);
  const auto& row = topic_word.at(topic);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return row[a] > row[b]; });
  order.resize(std::min(n, order.size()));
  std::vector<std::string> out;
  for (auto w : order) out.push_back(dictionary.terms[w]);
  return out;
}

double TopicModel::corpus_log_likelihood() const {
  const double v = static_cast<double>(dictionary.size());
  double ll = 0;
  for (int k = 0; k < topics; ++k) {
    ll += std::lgamma(v * beta) - v * std::lgamma(beta);
    for (int c : topic_word[static_cast<std::size_t>(k)]) ll += std::lgamma(c + beta);
    ll -= std::lgamma(topic_totals[static_cast<std::size_t>(k)] + v * beta);
  }
  return ll;
}

namespace {

std::size_t sample(const std::vector<double>& cumulative, Rng& rng) {
  const double u = rng.uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

}  // namespace

TopicModel train_lda(const std::vector<std::vector<std::string>>& sections, const TopicDictionary& dictionary,
                     const LdaOptions& options, const LdaObserver& observer) {
  if (options.topics < 1) throw ContractError("topic count must be at least 1");
  if (options.iterations < 0) throw ContractError("iteration count must be non-negative");
  if (!(options.beta > 0)) throw ContractError("beta must be positive");

  TopicModel m;
  m.dictionary = dictionary;
  m.topics = options.topics;
  m.alpha = options.alpha > 0 ? options.alpha : 50.0 / options.topics;
  m.beta = options.beta;
  m.seed = options.seed;

  const auto k_count = static_cast<std::size_t>(m.topics);
  const std::size_t v = dictionary.size();
  std::vector<std::vector<std::uint32_t>> docs;
  docs.reserve(sections.size());
  std::size_t total = 0;
  for (const auto& s : sections) {
    docs.push_back(dictionary.encode(s));
    total += docs.back().size();
  }
  if (total == 0) throw DataError("no section contains an in-dictionary token");

  m.topic_word.assign(k_count, std::vector<int>(v, 0));
  m.topic_totals.assign(k_count, 0);
  m.doc_topic.assign(docs.size(), std::vector<int>(k_count, 0));
  std::vector<std::vector<int>> z(docs.size());

  Rng rng(options.seed);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    z[d].resize(docs[d].size());
    for (std::size_t i = 0; i < docs[d].size(); ++i) {
      const auto k = rng.below(k_count);
      z[d][i] = static_cast<int>(k);
      ++m.doc_topic[d][k];
      ++m.topic_word[k][docs[d][i]];
      ++m.topic_totals[k];
    }
  }

  const double vbeta = static_cast<double>(v) * m.beta;
  std::vector<double> cumulative(k_count);
  for (int it = 0; it < options.iterations; ++it) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      auto& nd = m.doc_topic[d];
      for (std::size_t i = 0; i < docs[d].size(); ++i) {
        const auto w = docs[d][i];
        auto k = static_cast<std::size_t>(z[d][i]);
        --nd[k];
        --m.topic_word[k][w];
        --m.topic_totals[k];
        double acc = 0;
        for (std::size_t t = 0; t < k_count; ++t) {
          acc += (nd[t] + m.alpha) * (m.topic_word[t][w] + m.beta) / (m.topic_totals[t] + vbeta);
          cumulative[t] = acc;
        }
        k = sample(cumulative, rng);
        z[d][i] = static_cast<int>(k);
        ++nd[k];
        ++m.topic_word[k][w];
        ++m.topic_totals[k];
      }
    }
    m.log_likelihood.push_back(m.corpus_log_likelihood());
    if (observer) observer(it, m, z);
  }
  return m;
}

std::vector<double> infer_topics(const TopicModel& m, const std::vector<std::string>& tokens, int iterations,
                                 std::uint64_t seed, std::string* diagnostic) {
  const auto k_count = static_cast<std::size_t>(m.topics);
  if (k_count == 0) throw ContractError("topic model is not trained");
  const auto words = m.dictionary.encode(tokens);
  if (words.empty()) {
    if (diagnostic) *diagnostic = "section has no in-dictionary tokens; returning the uniform topic distribution";
    return std::vector<double>(k_count, 1.0 / static_cast<double>(k_count));
  }
  iterations = std::max(iterations, 1);

  Rng rng(seed);
  std::vector<int> z(words.size());
  std::vector<int> nd(k_count, 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    z[i] = static_cast<int>(rng.below(k_count));
    ++nd[static_cast<std::size_t>(z[i])];
  }

  // phi is frozen, so cache it per distinct token.
  std::map<std::uint32_t, std::vector<double>> phi;
  for (auto w : words)
    if (!phi.count(w)) {
      auto& col = phi[w];
      for (std::size_t k = 0; k < k_count; ++k) col.push_back(m.word_probability(k, w));
    }

  // The estimate averages the post-burn-in half of the chain.
  const int burn_in = iterations / 2;
  std::vector<double> theta(k_count, 0.0);
  std::vector<double> cumulative(k_count);
  const double n = static_cast<double>(words.size());
  int kept = 0;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      --nd[static_cast<std::size_t>(z[i])];
      const auto& col = phi[words[i]];
      double acc = 0;
      for (std::size_t k = 0; k < k_count; ++k) {
        acc += (nd[k] + m.alpha) * col[k];
        cumulative[k] = acc;
      }
      const auto k = sample(cumulative, rng);
      z[i] = static_cast<int>(k);
      ++nd[k];
    }
    if (it >= burn_in) {
      for (std::size_t k = 0; k < k_count; ++k) theta[k] += (nd[k] + m.alpha) / (n + k_count * m.alpha);
      ++kept;
    }
  }
  double sum = 0;
  for (auto& t : theta) sum += (t /= kept);
  for (auto& t : theta) t /= sum;
  return theta;
}

std::vector<std::string> semantic_concepts(const TopicModel& m, const std::vector<std::string>& tokens,
                                           std::size_t n_terms, int iterations, std::uint64_t seed) {
  if (n_terms == 0) return {};
  auto theta = infer_topics(m, tokens, iterations, seed);
  const auto best = static_cast<std::size_t>(std::max_element(theta.begin(), theta.end()) - theta.begin());
  return m.top_terms(best, n_terms);
}

std::string top_terms_table(const TopicModel& m, std::size_t n_terms) {
  std::ostringstream out;
  for (int k = 0; k < m.topics; ++k)
    out << "Topic " << k << ": " << text::join(m.top_terms(static_cast<std::size_t>(k), n_terms), ", ") << '\n';
  return out.str();
}

namespace {

constexpr std::string_view kMagic = "DSLD";

}  // namespace

void save_topic_model(const TopicModel& m, std::ostream& out) {
  json j;
  j["topics"] = m.topics;
  j["alpha"] = m.alpha;
  j["beta"] = m.beta;
  j["seed"] = m.seed;
  j["terms"] = m.dictionary.terms;
  j["section_frequency"] = m.dictionary.section_frequency;
  j["section_count"] = m.dictionary.section_count;
  j["topic_word"] = m.topic_word;
  j["doc_topic"] = m.doc_topic;
  j["log_likelihood"] = m.log_likelihood;
  out << kMagic << kTopicModelFormatVersion << '\n' << j.dump() << '\n';
  if (!out) throw IoError("failed writing topic model");
}

TopicModel load_topic_model(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.compare(0, kMagic.size(), kMagic) != 0)
    throw SchemaError("not a docstruct topic model (bad magic)");
  auto version = text::parse_int(std::string_view(header).substr(kMagic.size()));
  if (!version) throw SchemaError("topic model: unreadable format version");
  if (*version != kTopicModelFormatVersion)
    throw VersionError("topic model format version " + std::to_string(*version) + " is not supported");
  std::ostringstream body;
  body << in.rdbuf();
  try {
    json j = json::parse(body.str());
    TopicModel m;
    m.topics = j.at("topics").get<int>();
    m.alpha = j.at("alpha").get<double>();
    m.beta = j.at("beta").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.dictionary.terms = j.at("terms").get<std::vector<std::string>>();
    m.dictionary.section_frequency = j.at("section_frequency").get<std::vector<int>>();
    m.dictionary.section_count = j.at("section_count").get<int>();
    for (std::size_t i = 0; i < m.dictionary.terms.size(); ++i)
      m.dictionary.ids.emplace(m.dictionary.terms[i], static_cast<std::uint32_t>(i));
    m.topic_word = j.at("topic_word").get<std::vector<std::vector<int>>>();
    m.doc_topic = j.at("doc_topic").get<std::vector<std::vector<int>>>();
    m.log_likelihood = j.at("log_likelihood").get<std::vector<double>>();
    if (m.topics < 1 || m.topic_word.size() != static_cast<std::size_t>(m.topics))
      throw SchemaError("topic model: topic_word has the wrong number of rows");
    m.topic_totals.assign(m.topic_word.size(), 0);
    for (std::size_t k = 0; k < m.topic_word.size(); ++k) {
      if (m.topic_word[k].size() != m.dictionary.size())
        throw SchemaError("topic model: topic_word row " + std::to_string(k) + " does not match the dictionary");
      for (int c : m.topic_word[k]) {
        if (c < 0) throw SchemaError("topic model: negative count");
        m.topic_totals[k] += c;
      }
    }
    return m;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("topic model body: ") + e.what(), 2, e.byte);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("topic model: ") + e.what());
  }
}

}  // namespace docstruct
