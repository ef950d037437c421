#pragma once

#include <optional>
#include <string>
#include <vector>

#include "docstruct/pipeline.hpp"

namespace docstruct::cli {

// Flags shared by every subcommand; unset optionals leave the config value.
struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> classifier;
  std::optional<double> ratio;
  std::optional<int> k_topics;
  std::optional<int> threads;
  std::optional<std::string> out_dir;
  std::optional<std::string> model_dir;
  std::optional<std::string> format;
  std::vector<std::string> set;  // extra key=value overrides
};

PipelineConfig resolve_config(const CommonFlags& flags);

struct GenOptions {
  std::string spec_path;
  std::optional<int> n_docs;
  bool noisy = false;
  bool tetml = false;
  bool write_spec = false;
};
int cmd_gen(const CommonFlags& flags, const GenOptions& opt);

struct IngestOptions {
  std::vector<std::string> inputs;
  std::string bookmarks;
  std::optional<double> threshold;
  std::string output;
};
int cmd_ingest(const CommonFlags& flags, const IngestOptions& opt);

int cmd_featurize(const CommonFlags& flags, const std::vector<std::string>& inputs, const std::string& output);
int cmd_train(const CommonFlags& flags, const std::vector<std::string>& inputs);

struct EvalOptions {
  std::vector<std::string> inputs;
  int cv = 0;
  bool all = false;  // every classifier in every vector mode
};
int cmd_eval(const CommonFlags& flags, const EvalOptions& opt);

int cmd_structure(const CommonFlags& flags, const std::vector<std::string>& inputs, bool oracle);
int cmd_semantics(const CommonFlags& flags, const std::vector<std::string>& structures);

struct TopicsOptions {
  std::vector<std::string> inputs;
  int top = 10;
  int chunks = 10;
};
int cmd_topics(const CommonFlags& flags, const TopicsOptions& opt);

int cmd_summarize(const CommonFlags& flags, const std::vector<std::string>& structures);
int cmd_pipeline(const CommonFlags& flags, const std::vector<std::string>& inputs, bool oracle);
int cmd_config(const CommonFlags& flags);

}  // namespace docstruct::cli
