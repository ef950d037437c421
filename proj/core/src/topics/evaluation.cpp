#include <cmath>

#include "docstruct/errors.hpp"
#include "docstruct/rng.hpp"
#include "docstruct/topics.hpp"

namespace docstruct {

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ContractError("cosine_similarity: dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<ChunkSimilarity> half_split_similarity_eval(const TopicModel& m,
                                                        const std::vector<std::vector<std::string>>& sections,
                                                        int chunks, std::uint64_t seed, int iterations) {
  if (chunks < 1) throw ContractError("chunk count must be positive");
  const auto n_chunks = static_cast<std::size_t>(chunks);
  if (sections.size() < n_chunks) throw ContractError("fewer sections than chunks; every chunk must be nonempty");

  std::vector<ChunkSimilarity> out(n_chunks);
  Rng pairing(seed);
  for (std::size_t c = 0; c < n_chunks; ++c) {
    const std::size_t begin = c * sections.size() / n_chunks;
    const std::size_t end = (c + 1) * sections.size() / n_chunks;
    auto& r = out[c];

    std::vector<std::vector<double>> first, second;
    for (std::size_t s = begin; s < end; ++s) {
      std::vector<std::string> kept;
      for (const auto& t : sections[s])
        if (m.dictionary.find(t)) kept.push_back(t);
      if (kept.size() < 2) {
        ++r.skipped;
        continue;
      }
      const auto half = static_cast<std::ptrdiff_t>(kept.size() / 2);
      std::vector<std::string> a(kept.begin(), kept.begin() + half), b(kept.begin() + half, kept.end());
      first.push_back(infer_topics(m, a, iterations, Rng::derive(seed, 2 * s)));
      second.push_back(infer_topics(m, b, iterations, Rng::derive(seed, 2 * s + 1)));
    }

    r.sections = first.size();
    if (first.empty()) continue;
    double intra = 0, inter = 0;
    for (std::size_t i = 0; i < first.size(); ++i) {
      intra += cosine_similarity(first[i], second[i]);
      if (first.size() > 1) {
        std::size_t j = pairing.below(first.size() - 1);
        if (j >= i) ++j;
        inter += cosine_similarity(first[i], second[j]);
      }
    }
    r.intra = intra / static_cast<double>(first.size());
    r.inter = first.size() > 1 ? inter / static_cast<double>(first.size()) : 0.0;
  }
  return out;
}

namespace {

double held_out_log_likelihood(const TopicModel& m, const std::vector<std::vector<std::string>>& held_out,
                               bool uniform, int iterations, std::uint64_t seed) {
  const auto k_count = static_cast<std::size_t>(m.topics);
  double ll = 0;
  std::size_t tokens = 0;
  for (std::size_t s = 0; s < held_out.size(); ++s) {
    const auto words = m.dictionary.encode(held_out[s]);
    if (words.empty()) continue;
    std::vector<double> theta = uniform ? std::vector<double>(k_count, 1.0 / static_cast<double>(k_count))
                                        : infer_topics(m, held_out[s], iterations, Rng::derive(seed, s));
    for (auto w : words) {
      double p = 0;
      for (std::size_t k = 0; k < k_count; ++k) p += theta[k] * m.word_probability(k, w);
      ll += std::log(p);
    }
    tokens += words.size();
  }
  if (tokens == 0) throw DataError("held-out set has no in-dictionary tokens");
  return ll / static_cast<double>(tokens);
}

}  // namespace

double log_perplexity(const TopicModel& m, const std::vector<std::vector<std::string>>& held_out, int iterations,
                      std::uint64_t seed) {
  return held_out_log_likelihood(m, held_out, false, iterations, seed);
}

double log_perplexity_uniform(const TopicModel& m, const std::vector<std::vector<std::string>>& held_out) {
  return held_out_log_likelihood(m, held_out, true, 0, 0);
}

}  // namespace docstruct
