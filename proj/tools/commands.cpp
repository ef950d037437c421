#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "docstruct/corpus.hpp"
#include "docstruct/errors.hpp"
#include "docstruct/experiments.hpp"
#include "docstruct/rng.hpp"
#include "docstruct/summarize.hpp"
#include "docstruct/synthgen.hpp"
#include "docstruct/text.hpp"
#include "json.hpp"

namespace docstruct::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::string in_dir(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::vector<Document> load_all(const std::vector<std::string>& inputs, const PipelineConfig& config) {
  if (inputs.empty()) throw ContractError("no input files given");
  std::vector<Document> docs;
  for (const auto& path : inputs) {
    if (!fs::exists(path)) throw IoError("input not found: " + path);
    for (auto& d : load_documents(path, config.input_format)) docs.push_back(std::move(d));
  }
  return docs;
}

ModelBundle load_bundle(const PipelineConfig& config) {
  if (!fs::is_directory(config.model_dir)) throw IoError("model directory not found: " + config.model_dir);
  return ModelBundle::load(config.model_dir);
}

CvOptions cv_options(const PipelineConfig& config, int folds) {
  CvOptions o;
  o.folds = folds;
  o.seed = config.seed;
  o.hp = config.hp;
  o.ngram_min = config.ngram_min;
  o.ngram_max = config.ngram_max;
  o.min_df = config.min_df;
  o.vocab_min_frequency = config.vocab_min_frequency;
  return o;
}

std::vector<std::string> level_names(const std::vector<int>& alphabet) {
  std::vector<std::string> names;
  for (int c : alphabet) names.push_back(c == 0 ? "body" : "level " + std::to_string(c));
  return names;
}

void emit_reports(const std::string& out_dir, const json& reports, const std::string& tables) {
  ensure_dir(out_dir);
  write_file(in_dir(out_dir, "eval.json"), reports.dump(2) + "\n");
  write_file(in_dir(out_dir, "eval.txt"), tables);
  std::cout << tables;
}

std::string run_key(ModelKind kind, VectorMode mode) {
  const char* k = kind == ModelKind::naive_bayes ? "nb" : (kind == ModelKind::decision_tree ? "dt" : "svm");
  return std::string(k) + "/" + std::string(to_string(mode));
}

void annotate_semantics(TocTree& tree, const ModelBundle& bundle, const PipelineConfig& config,
                        std::vector<std::string>& diagnostics) {
  const SectionClassifier* clf = bundle.semantic ? &*bundle.semantic : nullptr;
  std::size_t index = 0;
  for (SectionNode* s : flatten_sections(tree)) {
    std::string diag;
    if (auto label = classify_section_semantic(*s, clf, bundle.ontology, &diag)) {
      s->ontology_class = label->ontology_class;
    } else {
      diagnostics.push_back(diag);
    }
    if (bundle.topics && config.concept_terms > 0) {
      const auto tokens = topic_tokens(s->text(), config.lda_token_mode);
      if (!bundle.topics->dictionary.encode(tokens).empty())
        s->concepts = semantic_concepts(*bundle.topics, tokens, static_cast<std::size_t>(config.concept_terms),
                                        config.inference_iterations, Rng::derive(config.seed, index));
    }
    ++index;
  }
}

}  // namespace

PipelineConfig resolve_config(const CommonFlags& flags) {
  PipelineConfig c;
  if (!flags.config_path.empty()) {
    if (!fs::exists(flags.config_path)) throw IoError("config file not found: " + flags.config_path);
    c = PipelineConfig::from_text(read_file(flags.config_path));
  }
  for (const auto& kv : flags.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ContractError("--set expects key=value, got '" + kv + "'");
    c.set(text::trim(std::string_view(kv).substr(0, eq)), std::string_view(kv).substr(eq + 1));
  }
  if (flags.seed) c.seed = *flags.seed;
  if (flags.mode) c.set("mode", *flags.mode);
  if (flags.classifier) c.set("classifier", *flags.classifier);
  if (flags.ratio) c.set("summary_ratio", text::shortest(*flags.ratio));
  if (flags.k_topics) c.set("lda_topics", std::to_string(*flags.k_topics));
  if (flags.threads) c.set("threads", std::to_string(*flags.threads));
  if (flags.out_dir) c.out_dir = *flags.out_dir;
  if (flags.model_dir) c.model_dir = *flags.model_dir;
  if (flags.format) c.set("input_format", *flags.format);
  return c;
}

int cmd_gen(const CommonFlags& flags, const GenOptions& opt) {
  const PipelineConfig config = resolve_config(flags);
  CorpusSpec spec = opt.noisy ? CorpusSpec::noisy() : CorpusSpec::standard();
  if (!opt.spec_path.empty()) {
    if (!fs::exists(opt.spec_path)) throw IoError("corpus spec not found: " + opt.spec_path);
    spec = CorpusSpec::from_json(read_file(opt.spec_path));
  }
  if (opt.n_docs) spec.n_docs = *opt.n_docs;
  if (flags.seed) spec.seed = *flags.seed;
  spec.validate();

  const auto corpus = generate_corpus(spec);
  const std::string& out = config.out_dir;
  ensure_dir(in_dir(out, "truth"));
  std::vector<Document> docs;
  std::size_t lines = 0;
  json classes = json::object();
  for (const auto& g : corpus) {
    docs.push_back(g.document);
    lines += g.document.lines.size();
    write_file(in_dir(out, "truth/" + g.document.doc_id + ".toc.json"), bookmarks_to_json(*g.document.toc));
    write_file(in_dir(out, "truth/" + g.document.doc_id + ".toc.txt"), toc_to_text(g.planted_toc));
    classes[g.document.doc_id] = g.section_classes;
  }
  save_line_records_file(docs, in_dir(out, "corpus.csv"));
  write_file(in_dir(out, "truth/section_classes.json"), classes.dump(2) + "\n");
  if (opt.write_spec) write_file(in_dir(out, "spec.json"), spec.to_json() + "\n");
  if (opt.tetml) {
    ensure_dir(in_dir(out, "tetml"));
    for (const auto& d : docs) {
      std::ofstream f(in_dir(out, "tetml/" + d.doc_id + ".tetml.xml"), std::ios::binary);
      if (!f) throw IoError("cannot write TETML for " + d.doc_id);
      write_tetml(d, f);
    }
  }
  std::cout << "generated " << docs.size() << " documents (" << lines << " lines) in " << out << "\n";
  return 0;
}

int cmd_ingest(const CommonFlags& flags, const IngestOptions& opt) {
  const PipelineConfig config = resolve_config(flags);
  auto docs = load_all(opt.inputs, config);
  if (!opt.bookmarks.empty()) {
    if (docs.size() != 1) throw ContractError("--bookmarks applies to exactly one input document");
    if (!fs::exists(opt.bookmarks)) throw IoError("bookmark file not found: " + opt.bookmarks);
    docs[0].toc = parse_bookmarks_json(read_file(opt.bookmarks));
    auto mapping = map_bookmarks_to_labels(docs[0], opt.threshold.value_or(config.similarity_threshold));
    docs[0] = std::move(mapping.document);
    if (!mapping.unmatched.empty()) std::cerr << bookmark_diagnostics_json(mapping) << "\n";
  }
  const std::string output = opt.output.empty() ? in_dir(config.out_dir, "lines.csv") : opt.output;
  if (auto parent = fs::path(output).parent_path(); !parent.empty()) ensure_dir(parent.string());
  save_line_records_file(docs, output);
  std::size_t lines = 0;
  for (const auto& d : docs) lines += d.lines.size();
  std::cout << "ingested " << docs.size() << " documents (" << lines << " lines) into " << output << "\n";
  return 0;
}

int cmd_featurize(const CommonFlags& flags, const std::vector<std::string>& inputs, const std::string& output) {
  const PipelineConfig config = resolve_config(flags);
  const auto docs = load_all(inputs, config);
  FeatureExtractor extractor;
  if (fs::is_directory(config.model_dir) && fs::exists(fs::path(config.model_dir) / "features.json")) {
    extractor = ModelBundle::load(config.model_dir).extractor;
  } else {
    std::vector<std::string> headers, texts;
    for (const auto& d : docs)
      for (const auto& l : d.lines) {
        texts.push_back(l.text);
        if (l.label.value_or(0) > 0) headers.push_back(l.text);
      }
    extractor.vocab = build_header_vocabulary(headers, config.vocab_min_frequency);
    extractor.vectorizer = NgramVectorizer::fit(texts, config.ngram_min, config.ngram_max, config.min_df);
  }
  const std::string path = output.empty() ? in_dir(config.out_dir, "features.jsonl") : output;
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) ensure_dir(parent.string());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& d : docs) {
    const auto fv = extractor(d);
    for (std::size_t i = 0; i < fv.size(); ++i) {
      json text = json::array();
      for (const auto& [id, v] : fv[i].text.entries) text.push_back(json::array({id, std::stod(text::fixed(v, 6))}));
      json row = {{"doc_id", d.doc_id},
                  {"line", i},
                  {"label", d.lines[i].label ? json(*d.lines[i].label) : json(nullptr)},
                  {"layout", fv[i].layout},
                  {"text", text}};
      out << row.dump() << "\n";
    }
  }
  std::cout << "wrote features for " << docs.size() << " documents to " << path << "\n";
  return 0;
}

int cmd_train(const CommonFlags& flags, const std::vector<std::string>& inputs) {
  const PipelineConfig config = resolve_config(flags);
  const auto docs = load_all(inputs, config);
  const ModelBundle bundle = train_bundle(docs, config);
  bundle.save(config.model_dir);
  std::cout << "trained " << to_string(config.classifier) << " (" << to_string(config.mode) << ") on " << docs.size()
            << " documents; models in " << config.model_dir << "\n";
  if (!bundle.semantic) std::cerr << "warning: fewer than two alias-mapped section classes; no semantic classifier\n";
  if (!bundle.sequence) std::cerr << "warning: no alias-mapped section sequences; no sequence model\n";
  if (!bundle.topics)
    std::cerr << "warning: topic dictionary is empty after filtering (dictionary_min_sections = "
              << config.dictionary.min_sections << "); no topic model, sections get no concepts\n";
  return 0;
}

int cmd_eval(const CommonFlags& flags, const EvalOptions& opt) {
  const PipelineConfig config = resolve_config(flags);
  const auto docs = load_all(opt.inputs, config);
  json reports = json::object();
  std::ostringstream tables;

  if (opt.cv > 0) {
    const std::vector<ModelKind> kinds = opt.all ? std::vector<ModelKind>{ModelKind::naive_bayes, ModelKind::decision_tree,
                                                                          ModelKind::linear_svm}
                                                 : std::vector<ModelKind>{config.classifier};
    const std::vector<VectorMode> modes =
        opt.all ? std::vector<VectorMode>{VectorMode::text, VectorMode::layout, VectorMode::combined}
                : std::vector<VectorMode>{config.mode};
    const auto options = cv_options(config, opt.cv);
    for (const auto& r : line_classification_cv(docs, kinds, modes, options)) {
      reports["line"][run_key(r.kind, r.mode)] = json::parse(r.report.to_json());
      tables << "Line classification " << run_key(r.kind, r.mode) << " (" << opt.cv << "-fold CV)\n"
             << r.report.to_table({"body", "header"}) << "\n";
    }
    for (const auto& r : header_level_cv(docs, kinds, modes, options)) {
      reports["level"][run_key(r.kind, r.mode)] = json::parse(r.report.to_json());
      tables << "Header level " << run_key(r.kind, r.mode) << " (" << opt.cv << "-fold CV)\n"
             << r.report.to_table(level_names(r.report.class_alphabet)) << "\n";
    }
  } else {
    const ModelBundle bundle = load_bundle(config);
    std::vector<int> truth, predicted, level_truth, level_predicted;
    for (const auto& d : docs) {
      const auto fv = bundle.extractor(d);
      const auto lines = classify_lines(fv, bundle.line_model, bundle.mode);
      std::vector<FeatureVector> header_fv;
      for (std::size_t i = 0; i < d.lines.size(); ++i) {
        if (!d.lines[i].label) throw DataError("eval needs labeled input; " + d.doc_id + " line " + std::to_string(i));
        const int label = *d.lines[i].label;
        truth.push_back(label > 0 ? 1 : 0);
        predicted.push_back(lines.labels[i]);
        if (label > 0) {
          header_fv.push_back(fv[i]);
          level_truth.push_back(std::min(label, 3));
        }
      }
      for (int l : classify_header_levels(header_fv, bundle.level_model, bundle.mode)) level_predicted.push_back(l);
    }
    const auto line_report = evaluate_predictions({0, 1}, truth, predicted);
    std::vector<int> levels = bundle.level_model.class_alphabet;
    for (int l : level_truth)
      if (std::find(levels.begin(), levels.end(), l) == levels.end()) levels.push_back(l);
    std::sort(levels.begin(), levels.end());
    const auto level_report = evaluate_predictions(levels, level_truth, level_predicted);
    reports["line"] = json::parse(line_report.to_json());
    reports["level"] = json::parse(level_report.to_json());
    tables << "Line classification\n" << line_report.to_table({"body", "header"}) << "\nHeader level\n"
           << level_report.to_table(level_names(levels));
  }
  emit_reports(config.out_dir, reports, tables.str());
  return 0;
}

int cmd_structure(const CommonFlags& flags, const std::vector<std::string>& inputs, bool oracle) {
  const PipelineConfig config = resolve_config(flags);
  const auto docs = load_all(inputs, config);
  std::optional<ModelBundle> bundle;
  if (!oracle && !config.oracle) bundle = load_bundle(config);
  ensure_dir(config.out_dir);
  for (const auto& d : docs) {
    TocTree tree;
    if (bundle) {
      const auto fv = bundle->extractor(d);
      const auto lines = classify_lines(fv, bundle->line_model, bundle->mode);
      std::vector<FeatureVector> header_fv;
      std::vector<std::size_t> ids;
      for (std::size_t i = 0; i < lines.labels.size(); ++i)
        if (lines.labels[i] == 1) {
          ids.push_back(i);
          header_fv.push_back(fv[i]);
        }
      const auto levels = classify_header_levels(header_fv, bundle->level_model, bundle->mode);
      std::vector<HeaderAssignment> headers;
      for (std::size_t i = 0; i < ids.size(); ++i) headers.push_back({ids[i], levels[i]});
      tree = detect_section_boundaries(d, headers);
    } else {
      tree = detect_section_boundaries(d, headers_from_labels(d));
    }
    if (!conserves_lines(tree)) throw DataError("line conservation failed for " + d.doc_id);
    write_file(in_dir(config.out_dir, d.doc_id + ".structure.json"), structure_to_json(tree));
    write_file(in_dir(config.out_dir, d.doc_id + ".toc.txt"), toc_to_text(build_toc(tree)));
  }
  std::cout << "wrote structure for " << docs.size() << " documents to " << config.out_dir << "\n";
  return 0;
}

int cmd_semantics(const CommonFlags& flags, const std::vector<std::string>& structures) {
  const PipelineConfig config = resolve_config(flags);
  if (structures.empty()) throw ContractError("no structure files given");
  const ModelBundle bundle = load_bundle(config);
  for (const auto& path : structures) {
    if (!fs::exists(path)) throw IoError("structure file not found: " + path);
    TocTree tree = structure_from_json(read_file(path));
    std::vector<std::string> diagnostics;
    annotate_semantics(tree, bundle, config, diagnostics);
    write_file(path, structure_to_json(tree));
    std::string nt = path;
    if (auto pos = nt.rfind(".structure.json"); pos != std::string::npos) nt.resize(pos);
    write_file(nt + ".nt", to_ntriples(emit_ontology_annotation(tree, bundle.ontology)));
    std::vector<std::string> sequence;
    for (const auto& r : tree.roots)
      if (r.ontology_class && bundle.ontology.index_of(*r.ontology_class)) sequence.push_back(*r.ontology_class);
    json report = {{"doc_id", tree.doc_id}, {"sections", sequence}, {"diagnostics", diagnostics}};
    if (bundle.sequence && !sequence.empty()) {
      report["sequence_score"] = std::stod(text::fixed(bundle.sequence->score(sequence)));
      report["canonical_order"] = bundle.sequence->canonical_order(sequence);
    }
    std::cout << report.dump() << "\n";
  }
  return 0;
}

int cmd_topics(const CommonFlags& flags, const TopicsOptions& opt) {
  const PipelineConfig config = resolve_config(flags);
  if (opt.inputs.empty()) {
    const ModelBundle bundle = load_bundle(config);
    if (!bundle.topics) throw DataError("model bundle in " + config.model_dir + " has no topic model");
    std::cout << top_terms_table(*bundle.topics, static_cast<std::size_t>(opt.top));
    return 0;
  }
  const auto docs = load_all(opt.inputs, config);
  std::vector<std::vector<std::string>> sections;
  for (const auto& d : docs) {
    for (std::size_t i = 0; i < d.lines.size(); ++i)
      if (!d.lines[i].label) throw DataError("topics needs labeled input; " + d.doc_id + " line " + std::to_string(i));
    const TocTree tree = detect_section_boundaries(d, headers_from_labels(d));
    for (const SectionNode* s : flatten_sections(tree)) sections.push_back(topic_tokens(s->text(), config.lda_token_mode));
  }
  const TopicDictionary dict = build_dictionary(sections, config.dictionary);
  if (dict.size() == 0) throw DataError("dictionary is empty after filtering; lower dictionary_min_sections");
  LdaOptions lda;
  lda.topics = config.lda_topics;
  lda.alpha = config.lda_alpha;
  lda.beta = config.lda_beta;
  lda.iterations = config.lda_iterations;
  lda.seed = config.seed;
  const TopicModel model = train_lda(sections, dict, lda);

  ensure_dir(config.out_dir);
  {
    std::ofstream f(in_dir(config.out_dir, "topics.lda"), std::ios::binary);
    if (!f) throw IoError("cannot write topics.lda");
    save_topic_model(model, f);
  }
  const std::string table = top_terms_table(model, static_cast<std::size_t>(opt.top));
  write_file(in_dir(config.out_dir, "topics.txt"), table);

  json report = {{"topics", model.topics},
                 {"dictionary_size", dict.size()},
                 {"sections", sections.size()},
                 {"log_perplexity", std::stod(text::fixed(log_perplexity(model, sections, config.inference_iterations,
                                                                         config.seed)))},
                 {"uniform_baseline", std::stod(text::fixed(log_perplexity_uniform(model, sections)))}};
  if (static_cast<int>(sections.size()) >= opt.chunks && opt.chunks > 0) {
    json chunks = json::array();
    for (const auto& c : half_split_similarity_eval(model, sections, opt.chunks, config.seed, config.inference_iterations))
      chunks.push_back({{"intra", std::stod(text::fixed(c.intra))},
                        {"inter", std::stod(text::fixed(c.inter))},
                        {"sections", c.sections},
                        {"skipped", c.skipped}});
    report["half_split"] = chunks;
  }
  write_file(in_dir(config.out_dir, "topics_eval.json"), report.dump(2) + "\n");
  std::cout << table;
  return 0;
}

int cmd_summarize(const CommonFlags& flags, const std::vector<std::string>& structures) {
  const PipelineConfig config = resolve_config(flags);
  if (structures.empty()) throw ContractError("no structure files given");
  for (const auto& path : structures) {
    if (!fs::exists(path)) throw IoError("structure file not found: " + path);
    TocTree tree = structure_from_json(read_file(path));
    for (SectionNode* s : flatten_sections(tree)) {
      if (s->body_text.empty()) {
        s->summary.reset();
      } else {
        s->summary = summarize_section(s->body_text, config.summary_ratio, config.textrank_damping,
                                       config.textrank_tol, config.textrank_max_iter);
      }
    }
    write_file(path, structure_to_json(tree));
  }
  std::cout << "summarized " << structures.size() << " structure files\n";
  return 0;
}

int cmd_pipeline(const CommonFlags& flags, const std::vector<std::string>& inputs, bool oracle) {
  PipelineConfig config = resolve_config(flags);
  if (oracle) config.oracle = true;
  const auto docs = load_all(inputs, config);
  const ModelBundle bundle = load_bundle(config);
  const auto results = run_pipeline_batch(docs, bundle, config);
  std::size_t diagnostics = 0;
  for (const auto& r : results) {
    if (!conserves_lines(r.tree)) throw DataError("line conservation failed for " + r.tree.doc_id);
    write_pipeline_outputs(r, config.out_dir);
    diagnostics += r.diagnostics.size();
  }
  std::cout << "processed " << results.size() << " documents into " << config.out_dir << " (" << diagnostics
            << " diagnostics)\n";
  return 0;
}

int cmd_config(const CommonFlags& flags) {
  std::cout << resolve_config(flags).to_text();
  return 0;
}

}  // namespace docstruct::cli
