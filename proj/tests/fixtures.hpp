#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "docstruct/corpus.hpp"
#include "docstruct/ingest.hpp"
#include "docstruct/rng.hpp"
#include "docstruct/sparse.hpp"
#include "docstruct/topics.hpp"

namespace fixture {

// Four short documents over the vocabulary
// {a, cat, introduction, results, sat, the}, as raw term counts.
// Labels: 1 = header, 0 = regular text.
inline docstruct::LabeledDataset nb_hand_corpus() {
  using docstruct::SparseVector;
  docstruct::LabeledDataset ds;
  ds.dimension = 6;
  auto vec = [](std::vector<double> dense) { return SparseVector::from_dense(dense); };
  ds.add(vec({0, 0, 1, 0, 0, 0}), 1);  // introduction
  ds.add(vec({0, 0, 1, 1, 0, 0}), 1);  // introduction results
  ds.add(vec({0, 1, 0, 0, 0, 1}), 0);  // the cat
  ds.add(vec({1, 1, 0, 0, 1, 0}), 0);  // a cat sat
  ds.refresh_alphabet();
  return ds;
}

inline const std::vector<std::string>& vocabulary_a() {
  static const std::vector<std::string> v = {"quark",  "gluon",   "hadron",  "boson",  "lepton",
                                             "meson",  "photon",  "neutrino", "muon",  "pion",
                                             "kaon",   "baryon",  "fermion", "collider", "detector",
                                             "jet",    "vertex",  "decay",   "spin",   "parity"};
  return v;
}

inline const std::vector<std::string>& vocabulary_b() {
  static const std::vector<std::string> v = {"galaxy", "nebula",  "pulsar",  "quasar",  "comet",
                                             "orbit",  "stellar", "planet",  "asteroid", "telescope",
                                             "redshift", "halo",  "cluster", "supernova", "dust",
                                             "emission", "gas",   "stars",   "corona",  "eclipse"};
  return v;
}

// Sections drawn from exactly one of two disjoint vocabularies, alternating
// A, B, A, B, ... so every contiguous chunk holds both kinds.
inline std::vector<std::vector<std::string>> two_topic_sections(std::size_t n, std::size_t length,
                                                                std::uint64_t seed) {
  docstruct::Rng rng(seed);
  std::vector<std::vector<std::string>> out;
  for (std::size_t s = 0; s < n; ++s) {
    const auto& vocab = s % 2 == 0 ? vocabulary_a() : vocabulary_b();
    std::vector<std::string> tokens;
    for (std::size_t t = 0; t < length; ++t) tokens.push_back(vocab[rng.below(vocab.size())]);
    out.push_back(std::move(tokens));
  }
  return out;
}

inline docstruct::TopicDictionary permissive_dictionary(const std::vector<std::vector<std::string>>& sections) {
  docstruct::DictionaryOptions opts;
  opts.min_sections = 1;
  opts.max_fraction = 1.0;
  return docstruct::build_dictionary(sections, opts);
}

inline docstruct::LineRecord line(std::string text, double y, double size = 10, double weight = 400,
                                  int page = 1) {
  docstruct::LineRecord r;
  r.text = std::move(text);
  r.page_number = page;
  r.font_size = size;
  r.font_weight = weight;
  r.font_family = weight >= 700 ? "Times-Bold" : "Times-Roman";
  r.x_left = 72;
  r.x_right = 72 + 5.0 * static_cast<double>(r.text.size());
  r.y_top = y - size;
  r.y_bottom = y;
  return r;
}

}  // namespace fixture
