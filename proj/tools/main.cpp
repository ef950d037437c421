#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "docstruct/errors.hpp"
#include "json.hpp"

namespace {

using namespace docstruct;

void add_common(CLI::App* app, cli::CommonFlags& f) {
  app->add_option("--config", f.config_path, "Flat key = value configuration file");
  app->add_option("--seed", f.seed, "Random seed");
  app->add_option("--mode", f.mode, "Vector mode: layout | text | combined");
  app->add_option("--classifier", f.classifier, "Classifier: nb | dt | svm");
  app->add_option("--ratio", f.ratio, "Summary ratio in (0, 1]");
  app->add_option("--k-topics", f.k_topics, "Number of LDA topics");
  app->add_option("--threads", f.threads, "Worker threads for per-document work");
  app->add_option("--out-dir", f.out_dir, "Output directory");
  app->add_option("--model-dir", f.model_dir, "Model bundle directory");
  app->add_option("--format", f.format, "Input format: auto | tetml | line_csv");
  app->add_option("--set", f.set, "Extra config override key=value (repeatable)");
}

int report_error(const std::string& kind, const std::string& message, int code) {
  nlohmann::json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logical and semantic structure recovery for positional-text documents"};
  app.require_subcommand(1);
  cli::CommonFlags flags;

  std::vector<std::string> inputs;
  std::string output;
  bool oracle = false;

  cli::GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic labeled corpus");
  gen_cmd->add_option("--spec", gen.spec_path, "Corpus spec JSON");
  gen_cmd->add_option("--n-docs", gen.n_docs, "Number of documents");
  gen_cmd->add_flag("--noisy", gen.noisy, "Use the noisy standard spec");
  gen_cmd->add_flag("--tetml", gen.tetml, "Also write TETML files");
  gen_cmd->add_flag("--write-spec", gen.write_spec, "Write the effective spec to spec.json");

  cli::IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse TETML or line CSV into labeled line records");
  ingest_cmd->add_option("inputs", ingest.inputs, "Input files")->required();
  ingest_cmd->add_option("--bookmarks", ingest.bookmarks, "Bookmark JSON used to label header lines");
  ingest_cmd->add_option("--threshold", ingest.threshold, "Bookmark similarity threshold");
  ingest_cmd->add_option("-o,--output", ingest.output, "Output CSV (default <out-dir>/lines.csv)");

  auto* featurize_cmd = app.add_subcommand("featurize", "Write per-line feature vectors as JSON lines");
  featurize_cmd->add_option("inputs", inputs, "Input files")->required();
  featurize_cmd->add_option("-o,--output", output, "Output file (default <out-dir>/features.jsonl)");

  auto* train_cmd = app.add_subcommand("train", "Train the model bundle from labeled documents");
  train_cmd->add_option("inputs", inputs, "Labeled input files")->required();

  cli::EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model bundle or run cross-validation");
  eval_cmd->add_option("inputs", eval.inputs, "Labeled input files")->required();
  eval_cmd->add_option("--cv", eval.cv, "Run k-fold cross-validation instead of evaluating saved models");
  eval_cmd->add_flag("--all", eval.all, "With --cv: every classifier in every vector mode");

  auto* structure_cmd = app.add_subcommand("structure", "Detect headers and build section trees");
  structure_cmd->add_option("inputs", inputs, "Input files")->required();
  structure_cmd->add_flag("--oracle", oracle, "Use ground-truth labels instead of the classifiers");

  std::vector<std::string> structures;
  auto* semantics_cmd = app.add_subcommand("semantics", "Label sections of structure JSON files with ontology classes");
  semantics_cmd->add_option("structures", structures, "Structure JSON files (updated in place)")->required();

  cli::TopicsOptions topics;
  auto* topics_cmd = app.add_subcommand("topics", "Train an LDA model on labeled sections or print a bundle's topics");
  topics_cmd->add_option("inputs", topics.inputs, "Labeled input files");
  topics_cmd->add_option("--top", topics.top, "Terms per topic in the table");
  topics_cmd->add_option("--chunks", topics.chunks, "Chunks for the half-split evaluation");

  auto* summarize_cmd = app.add_subcommand("summarize", "Add TextRank summaries to structure JSON files");
  summarize_cmd->add_option("structures", structures, "Structure JSON files (updated in place)")->required();

  auto* pipeline_cmd = app.add_subcommand("pipeline", "Run the full pipeline and write all outputs");
  pipeline_cmd->add_option("inputs", inputs, "Input files")->required();
  pipeline_cmd->add_flag("--oracle", oracle, "Use ground-truth labels instead of the line classifiers");

  auto* config_cmd = app.add_subcommand("config", "Print the effective configuration");

  for (auto* sub : {gen_cmd, ingest_cmd, featurize_cmd, train_cmd, eval_cmd, structure_cmd, semantics_cmd, topics_cmd,
                    summarize_cmd, pipeline_cmd, config_cmd})
    add_common(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen_cmd) return cli::cmd_gen(flags, gen);
    if (*ingest_cmd) return cli::cmd_ingest(flags, ingest);
    if (*featurize_cmd) return cli::cmd_featurize(flags, inputs, output);
    if (*train_cmd) return cli::cmd_train(flags, inputs);
    if (*eval_cmd) return cli::cmd_eval(flags, eval);
    if (*structure_cmd) return cli::cmd_structure(flags, inputs, oracle);
    if (*semantics_cmd) return cli::cmd_semantics(flags, structures);
    if (*topics_cmd) return cli::cmd_topics(flags, topics);
    if (*summarize_cmd) return cli::cmd_summarize(flags, structures);
    if (*pipeline_cmd) return cli::cmd_pipeline(flags, inputs, oracle);
    if (*config_cmd) return cli::cmd_config(flags);
  } catch (const ContractError& e) {
    return report_error("usage", e.what(), 2);
  } catch (const IoError& e) {
    return report_error("io", e.what(), 2);
  } catch (const ParseError& e) {
    return report_error("parse", e.what(), 1);
  } catch (const SchemaError& e) {
    return report_error("schema", e.what(), 1);
  } catch (const VersionError& e) {
    return report_error("version", e.what(), 1);
  } catch (const Error& e) {
    return report_error("data", e.what(), 1);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), 1);
  }
  return 2;
}
