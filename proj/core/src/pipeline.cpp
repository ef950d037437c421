#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "docstruct/corpus.hpp"
#include "docstruct/errors.hpp"
#include "docstruct/pipeline.hpp"
#include "docstruct/rng.hpp"
#include "docstruct/summarize.hpp"
#include "docstruct/text.hpp"
#include "json.hpp"

namespace docstruct {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string_view token_mode_name(TokenMode m) {
  switch (m) {
    case TokenMode::word: return "word";
    case TokenMode::bigram: return "bigram";
    case TokenMode::phrase: return "phrase";
  }
  return "word";
}

std::string_view model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::naive_bayes: return "nb";
    case ModelKind::decision_tree: return "dt";
    case ModelKind::linear_svm: return "svm";
  }
  return "nb";
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ContractError("config key '" + std::string(key) + "': invalid value '" + std::string(value) + "'");
}

int to_int(std::string_view key, std::string_view v) {
  auto n = text::parse_int(v);
  if (!n || *n < std::numeric_limits<int>::min() || *n > std::numeric_limits<int>::max()) bad_value(key, v);
  return static_cast<int>(*n);
}

double to_double(std::string_view key, std::string_view v) {
  auto d = text::parse_double(v);
  if (!d) bad_value(key, v);
  return *d;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v);
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + p.string());
  out << content;
  if (!out) throw IoError("failed writing " + p.string());
}

enum class Target { binary, level, four_class };

LabeledDataset line_dataset(const std::vector<Document>& docs, const std::vector<std::vector<FeatureVector>>& fv,
                            VectorMode mode, Target target) {
  LabeledDataset ds;
  ds.dimension = model_dimension(mode, fv.empty() || fv.front().empty() ? 0 : fv.front().front().text_dimension);
  std::size_t id = 0;
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (std::size_t l = 0; l < docs[d].lines.size(); ++l, ++id) {
      const int label = std::min(docs[d].lines[l].label.value_or(0), 3);
      if (target == Target::level && label == 0) continue;
      ds.add(model_input(fv[d][l], mode), target == Target::binary ? (label > 0 ? 1 : 0) : label, id);
    }
  ds.refresh_alphabet();
  return ds;
}

}  // namespace

void PipelineConfig::set(std::string_view key, std::string_view raw) {
  const std::string value(text::trim(raw));
  if (key == "input_format") {
    if (value != "auto") parse_input_format(value);
    input_format = value;
  } else if (key == "model_dir") {
    model_dir = value;
  } else if (key == "out_dir") {
    out_dir = value;
  } else if (key == "mode") {
    mode = parse_vector_mode(value);
  } else if (key == "classifier") {
    classifier = parse_model_kind(value);
  } else if (key == "ontology") {
    ontology = value;
  } else if (key == "seed") {
    auto n = text::parse_int(value);
    if (!n || *n < 0) bad_value(key, value);
    seed = static_cast<std::uint64_t>(*n);
  } else if (key == "threads") {
    threads = to_int(key, value);
    if (threads < 1) bad_value(key, value);
  } else if (key == "oracle") {
    oracle = to_bool(key, value);
  } else if (key == "classification") {
    if (value == "pipeline") {
      four_class = false;
    } else if (value == "four_class") {
      four_class = true;
    } else {
      bad_value(key, value);
    }
  } else if (key == "balance") {
    balance = to_bool(key, value);
  } else if (key == "similarity_threshold") {
    similarity_threshold = to_double(key, value);
  } else if (key == "ngram_min") {
    ngram_min = to_int(key, value);
  } else if (key == "ngram_max") {
    ngram_max = to_int(key, value);
  } else if (key == "min_df") {
    min_df = to_int(key, value);
  } else if (key == "vocab_min_frequency") {
    vocab_min_frequency = to_int(key, value);
  } else if (key == "nb_alpha") {
    hp.nb_alpha = to_double(key, value);
  } else if (key == "max_depth") {
    hp.max_depth = to_int(key, value);
  } else if (key == "min_samples_leaf") {
    hp.min_samples_leaf = to_int(key, value);
  } else if (key == "svm_c") {
    hp.svm_c = to_double(key, value);
  } else if (key == "svm_epochs") {
    hp.svm_epochs = to_int(key, value);
  } else if (key == "semantic_classifier") {
    semantic_classifier = parse_model_kind(value);
  } else if (key == "semantic_truncation") {
    semantic_truncation = to_int(key, value);
  } else if (key == "semantic_min_df") {
    semantic_min_df = to_int(key, value);
  } else if (key == "sequence_max_length") {
    sequence_max_length = to_int(key, value);
  } else if (key == "lda_topics" || key == "k_topics") {
    lda_topics = to_int(key, value);
    if (lda_topics < 1) bad_value(key, value);
  } else if (key == "lda_alpha") {
    lda_alpha = value == "auto" ? -1 : to_double(key, value);
  } else if (key == "lda_beta") {
    lda_beta = to_double(key, value);
  } else if (key == "lda_iterations") {
    lda_iterations = to_int(key, value);
  } else if (key == "lda_token_mode") {
    lda_token_mode = parse_token_mode(value);
  } else if (key == "dictionary_min_sections") {
    dictionary.min_sections = to_int(key, value);
  } else if (key == "dictionary_max_fraction") {
    dictionary.max_fraction = to_double(key, value);
  } else if (key == "dictionary_cap") {
    auto n = text::parse_int(value);
    if (!n || *n < 0) bad_value(key, value);
    dictionary.cap = static_cast<std::size_t>(*n);
  } else if (key == "concept_terms") {
    concept_terms = to_int(key, value);
  } else if (key == "inference_iterations") {
    inference_iterations = to_int(key, value);
  } else if (key == "summary_ratio" || key == "ratio") {
    summary_ratio = to_double(key, value);
    if (!(summary_ratio > 0 && summary_ratio <= 1)) bad_value(key, value);
  } else if (key == "textrank_damping") {
    textrank_damping = to_double(key, value);
  } else if (key == "textrank_tol") {
    textrank_tol = to_double(key, value);
  } else if (key == "textrank_max_iter") {
    textrank_max_iter = to_int(key, value);
  } else {
    throw ContractError("unknown config key '" + std::string(key) + "'");
  }
}

std::string PipelineConfig::to_text() const {
  std::ostringstream o;
  auto num = [](double v) { return text::shortest(v); };
  o << "# docstruct pipeline configuration\n"
    << "input_format = " << input_format << "\n"
    << "model_dir = " << model_dir << "\n"
    << "out_dir = " << out_dir << "\n"
    << "mode = " << to_string(mode) << "\n"
    << "classifier = " << model_kind_name(classifier) << "\n"
    << "ontology = " << ontology << "\n"
    << "seed = " << seed << "\n"
    << "threads = " << threads << "\n"
    << "oracle = " << (oracle ? "true" : "false") << "\n"
    << "classification = " << (four_class ? "four_class" : "pipeline") << "\n"
    << "balance = " << (balance ? "true" : "false") << "\n"
    << "similarity_threshold = " << num(similarity_threshold) << "\n"
    << "\n# features\n"
    << "ngram_min = " << ngram_min << "\n"
    << "ngram_max = " << ngram_max << "\n"
    << "min_df = " << min_df << "\n"
    << "vocab_min_frequency = " << vocab_min_frequency << "\n"
    << "\n# classifiers\n"
    << "nb_alpha = " << num(hp.nb_alpha) << "\n"
    << "max_depth = " << hp.max_depth << "\n"
    << "min_samples_leaf = " << hp.min_samples_leaf << "\n"
    << "svm_c = " << num(hp.svm_c) << "\n"
    << "svm_epochs = " << hp.svm_epochs << "\n"
    << "\n# semantics\n"
    << "semantic_classifier = " << model_kind_name(semantic_classifier) << "\n"
    << "semantic_truncation = " << semantic_truncation << "\n"
    << "semantic_min_df = " << semantic_min_df << "\n"
    << "sequence_max_length = " << sequence_max_length << "\n"
    << "\n# topics\n"
    << "lda_topics = " << lda_topics << "\n"
    << "lda_alpha = " << (lda_alpha > 0 ? num(lda_alpha) : std::string("auto")) << "\n"
    << "lda_beta = " << num(lda_beta) << "\n"
    << "lda_iterations = " << lda_iterations << "\n"
    << "lda_token_mode = " << token_mode_name(lda_token_mode) << "\n"
    << "dictionary_min_sections = " << dictionary.min_sections << "\n"
    << "dictionary_max_fraction = " << num(dictionary.max_fraction) << "\n"
    << "dictionary_cap = " << dictionary.cap << "\n"
    << "concept_terms = " << concept_terms << "\n"
    << "inference_iterations = " << inference_iterations << "\n"
    << "\n# summaries\n"
    << "summary_ratio = " << num(summary_ratio) << "\n"
    << "textrank_damping = " << num(textrank_damping) << "\n"
    << "textrank_tol = " << num(textrank_tol) << "\n"
    << "textrank_max_iter = " << textrank_max_iter << "\n";
  return o.str();
}

PipelineConfig PipelineConfig::from_text(std::string_view content) {
  PipelineConfig c;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = text::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("config line is not 'key = value'", number);
    c.set(text::trim(body.substr(0, eq)), text::trim(body.substr(eq + 1)));
  }
  return c;
}

OntologyClassSet PipelineConfig::load_ontology() const {
  if (ontology == "scholarly") return OntologyClassSet::scholarly();
  if (ontology == "rfp") return OntologyClassSet::rfp();
  auto ont = OntologyClassSet::from_json(read_text(ontology));
  ont.validate();
  return ont;
}

std::vector<ClassifiedSection> alias_labeled_sections(const Document& doc, const OntologyClassSet& ont) {
  const TocTree tree = detect_section_boundaries(doc, headers_from_labels(doc));
  std::vector<ClassifiedSection> out;
  for (const auto& root : tree.roots)
    if (auto cls = map_header_to_class(root.header.text, ont)) out.push_back({root.text(), *cls});
  return out;
}

ModelBundle train_bundle(const std::vector<Document>& docs, const PipelineConfig& config) {
  if (docs.empty()) throw DataError("no training documents");
  std::vector<std::string> headers, texts;
  for (const auto& d : docs)
    for (std::size_t l = 0; l < d.lines.size(); ++l) {
      const auto& line = d.lines[l];
      if (!line.label) throw DataError("document '" + d.doc_id + "' line " + std::to_string(l) + " has no label");
      texts.push_back(line.text);
      if (*line.label > 0) headers.push_back(line.text);
    }

  ModelBundle b;
  b.mode = config.mode;
  b.extractor.vocab = build_header_vocabulary(headers, config.vocab_min_frequency);
  b.extractor.vectorizer = NgramVectorizer::fit(texts, config.ngram_min, config.ngram_max, config.min_df);
  std::vector<std::vector<FeatureVector>> fv;
  fv.reserve(docs.size());
  for (const auto& d : docs) fv.push_back(b.extractor(d));

  LabeledDataset lines = line_dataset(docs, fv, config.mode, Target::binary);
  LabeledDataset levels = line_dataset(docs, fv, config.mode, Target::level);
  if (config.balance) {
    lines = balance_classes(lines, config.seed);
    if (levels.class_alphabet.size() > 1) levels = balance_classes(levels, config.seed);
  }
  b.line_model = train(config.classifier, lines, config.hp, config.seed);
  if (levels.class_alphabet.size() < 2) throw DataError("header-level training needs at least two header levels");
  b.level_model = train(config.classifier, levels, config.hp, config.seed);
  if (config.four_class) {
    LabeledDataset all = line_dataset(docs, fv, config.mode, Target::four_class);
    if (config.balance) all = balance_classes(all, config.seed);
    b.four_class_model = train(config.classifier, all, config.hp, config.seed);
  }

  b.ontology = config.load_ontology();
  std::vector<std::string> section_texts, section_classes;
  std::vector<std::vector<std::string>> sequences;
  std::vector<std::vector<std::string>> topic_docs;
  for (const auto& d : docs) {
    std::vector<std::string> seq;
    for (auto& s : alias_labeled_sections(d, b.ontology)) {
      seq.push_back(s.ontology_class);
      section_texts.push_back(std::move(s.text));
      section_classes.push_back(std::move(s.ontology_class));
    }
    if (!seq.empty()) sequences.push_back(std::move(seq));
    const TocTree tree = detect_section_boundaries(d, headers_from_labels(d));
    for (const SectionNode* s : flatten_sections(tree)) topic_docs.push_back(topic_tokens(s->text(), config.lda_token_mode));
  }
  std::set<std::string> distinct(section_classes.begin(), section_classes.end());
  if (distinct.size() >= 2)
    b.semantic = train_section_classifier(section_texts, section_classes, b.ontology, config.semantic_classifier,
                                          config.hp, config.seed, config.semantic_truncation, config.semantic_min_df);
  if (!sequences.empty()) b.sequence = SequenceModel::fit(sequences, b.ontology.classes, config.sequence_max_length);

  const TopicDictionary dict = build_dictionary(topic_docs, config.dictionary);
  if (dict.size() > 0) {
    LdaOptions lda;
    lda.topics = config.lda_topics;
    lda.alpha = config.lda_alpha;
    lda.beta = config.lda_beta;
    lda.iterations = config.lda_iterations;
    lda.seed = config.seed;
    b.topics = train_lda(topic_docs, dict, lda);
  }
  return b;
}

void ModelBundle::save(const std::string& dir) const {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw IoError("cannot create model directory " + dir + ": " + ec.message());
  json features = {{"mode", std::string(to_string(mode))},
                   {"vocab", json::parse(extractor.vocab.to_json())},
                   {"vectorizer", json::parse(extractor.vectorizer.to_json())}};
  write_text(root / "features.json", features.dump() + "\n");
  save_model_file(line_model, (root / "line.model").string());
  save_model_file(level_model, (root / "level.model").string());
  write_text(root / "ontology.json", ontology.to_json());
  const std::vector<std::string> optional_files = {"4class.model", "semantic.json", "sequence.json", "topics.lda"};
  for (const auto& f : optional_files) fs::remove(root / f, ec);
  if (four_class_model) save_model_file(*four_class_model, (root / "4class.model").string());
  if (semantic) write_text(root / "semantic.json", semantic->to_json());
  if (sequence) write_text(root / "sequence.json", sequence->to_json());
  if (topics) {
    std::ostringstream out;
    save_topic_model(*topics, out);
    write_text(root / "topics.lda", out.str());
  }
}

ModelBundle ModelBundle::load(const std::string& dir) {
  const fs::path root(dir);
  for (const char* required : {"features.json", "line.model", "level.model", "ontology.json"})
    if (!fs::exists(root / required)) throw IoError("model directory " + dir + " lacks " + required);
  ModelBundle b;
  try {
    const json features = json::parse(read_text(root / "features.json"));
    b.mode = parse_vector_mode(features.at("mode").get<std::string>());
    b.extractor.vocab = HeaderVocabulary::from_json(features.at("vocab").dump());
    b.extractor.vectorizer = NgramVectorizer::from_json(features.at("vectorizer").dump());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("features.json: ") + e.what(), 1, e.byte);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("features.json: ") + e.what());
  }
  b.line_model = load_model_file((root / "line.model").string());
  b.level_model = load_model_file((root / "level.model").string());
  b.ontology = OntologyClassSet::from_json(read_text(root / "ontology.json"));
  if (fs::exists(root / "4class.model")) b.four_class_model = load_model_file((root / "4class.model").string());
  if (fs::exists(root / "semantic.json")) b.semantic = SectionClassifier::from_json(read_text(root / "semantic.json"));
  if (fs::exists(root / "sequence.json")) b.sequence = SequenceModel::from_json(read_text(root / "sequence.json"));
  if (fs::exists(root / "topics.lda")) {
    std::ifstream in(root / "topics.lda", std::ios::binary);
    b.topics = load_topic_model(in);
  }
  return b;
}

PipelineResult run_pipeline(const Document& doc, const ModelBundle& bundle, const PipelineConfig& config) {
  PipelineResult r;
  const auto features = bundle.extractor(doc);

  std::vector<HeaderAssignment> headers;
  if (config.oracle) {
    for (std::size_t l = 0; l < doc.lines.size(); ++l)
      if (!doc.lines[l].label)
        throw DataError("oracle mode needs labels; document '" + doc.doc_id + "' line " + std::to_string(l) +
                        " has none");
    headers = headers_from_labels(doc);
  } else if (config.four_class) {
    if (!bundle.four_class_model)
      throw ContractError("four-class mode needs a bundle trained with classification = four_class");
    for (std::size_t l = 0; l < features.size(); ++l) {
      const int label = bundle.four_class_model->predict(model_input(features[l], bundle.mode)).label;
      if (label > 0) headers.push_back({l, label});
    }
  } else {
    const auto lines = classify_lines(features, bundle.line_model, bundle.mode);
    std::vector<FeatureVector> header_features;
    std::vector<std::size_t> header_ids;
    for (std::size_t l = 0; l < lines.labels.size(); ++l)
      if (lines.labels[l] == 1) {
        header_ids.push_back(l);
        header_features.push_back(features[l]);
      }
    const auto levels = classify_header_levels(header_features, bundle.level_model, bundle.mode);
    for (std::size_t i = 0; i < header_ids.size(); ++i) headers.push_back({header_ids[i], levels[i]});
  }

  r.tree = detect_section_boundaries(doc, headers);
  if (!conserves_lines(r.tree)) r.diagnostics.push_back("line conservation check failed");

  const SectionClassifier* clf = bundle.semantic ? &*bundle.semantic : nullptr;
  std::size_t index = 0;
  for (SectionNode* s : flatten_sections(r.tree)) {
    std::string diag;
    if (auto label = classify_section_semantic(*s, clf, bundle.ontology, &diag)) {
      s->ontology_class = label->ontology_class;
    } else {
      r.diagnostics.push_back(diag);
    }
    if (bundle.topics && config.concept_terms > 0) {
      const auto tokens = topic_tokens(s->text(), config.lda_token_mode);
      if (bundle.topics->dictionary.encode(tokens).empty()) {
        r.diagnostics.push_back("section '" + s->header.text + "' has no in-dictionary tokens; no concepts");
      } else {
        s->concepts = semantic_concepts(*bundle.topics, tokens, static_cast<std::size_t>(config.concept_terms),
                                        config.inference_iterations, Rng::derive(config.seed, index));
      }
    }
    if (!s->body_text.empty())
      s->summary = summarize_section(s->body_text, config.summary_ratio, config.textrank_damping,
                                     config.textrank_tol, config.textrank_max_iter);
    ++index;
  }
  r.toc = build_toc(r.tree);
  r.triples = emit_ontology_annotation(r.tree, bundle.ontology);
  return r;
}

std::vector<PipelineResult> run_pipeline_batch(const std::vector<Document>& docs, const ModelBundle& bundle,
                                               const PipelineConfig& config) {
  std::vector<PipelineResult> results(docs.size());
  std::vector<std::exception_ptr> errors(docs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      try {
        results[i] = run_pipeline(docs[i], bundle, config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, config.threads));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(n, docs.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

void write_pipeline_outputs(const PipelineResult& result, const std::string& dir) {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  const std::string& id = result.tree.doc_id;
  write_text(root / (id + ".structure.json"), structure_to_json(result.tree));
  write_text(root / (id + ".toc.txt"), toc_to_text(result.toc));
  write_text(root / (id + ".nt"), to_ntriples(result.triples));
  const fs::path diag = root / (id + ".diagnostics.json");
  if (result.diagnostics.empty()) {
    fs::remove(diag, ec);
  } else {
    json j = {{"doc_id", id}, {"diagnostics", result.diagnostics}};
    write_text(diag, j.dump(2) + "\n");
  }
}

std::vector<Document> load_documents(const std::string& path, std::string_view format) {
  std::string fmt(format);
  if (fmt == "auto") {
    const std::string ext = text::to_lower(fs::path(path).extension().string());
    if (ext == ".csv") {
      fmt = "line_csv";
    } else if (ext == ".xml" || ext == ".tetml") {
      fmt = "tetml";
    } else {
      throw ContractError("cannot infer the input format of " + path + "; pass --format");
    }
  }
  if (parse_input_format(fmt) == InputFormat::line_csv) return load_line_record_corpus_file(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string stem = fs::path(path).stem().string();
  if (stem.size() > 6 && stem.substr(stem.size() - 6) == ".tetml") stem.resize(stem.size() - 6);
  std::vector<Document> docs;
  docs.push_back(parse_positional_document(in, InputFormat::tetml, stem));
  return docs;
}

}  // namespace docstruct
