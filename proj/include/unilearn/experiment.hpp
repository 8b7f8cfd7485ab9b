#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unilearn/corpus.hpp"
#include "unilearn/evaluation.hpp"
#include "unilearn/learner.hpp"

namespace unilearn {

struct ExperimentInputs {
  Grammar grammar;
  Lexicon lexicon;
  ModelConfig model;
  LabelMap label_map;
  Corpus corpus;
};

struct ExperimentOptions {
  std::vector<LearnerKind> kinds{LearnerKind::A, LearnerKind::B, LearnerKind::C, LearnerKind::D};
  LearnerConfig learner;
  // Without a seed the corpus split file is used; with one, a fresh split.
  std::optional<std::uint64_t> seed;
  SplitSizes sizes;
  std::size_t subset_size = 15;
  std::size_t sample_k = 10;
};

struct ExperimentRow {
  LearnerKind kind = LearnerKind::A;
  std::string grammar;
  std::size_t size = 0;
  CoverageResult coverage;
  std::optional<double> plausibility;
  std::vector<double> plausibility_scores;
};

struct ExperimentReport {
  ExperimentOptions options;
  std::string split_source;  // "file" or "seed=N"
  CorpusSplit split;
  std::vector<ExperimentRow> rows;
  std::vector<std::string> plausible;
  std::vector<std::string> yardstick;
  std::vector<TrainingRun> runs;
  std::vector<std::string> warnings;
};

ExperimentReport run_experiment(const ExperimentInputs& in, const ExperimentOptions& opts);

std::string format_table(const ExperimentReport& r);
// Line-oriented key=value records; stable across runs with equal inputs.
std::string format_records(const ExperimentReport& r);

}  // namespace unilearn
