#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unilearn/chart_parser.hpp"
#include "unilearn/corpus.hpp"
#include "unilearn/evaluation.hpp"
#include "unilearn/grammar.hpp"
#include "unilearn/mdp.hpp"
#include "unilearn/model_filter.hpp"

namespace unilearn {

// Where pretraining counts come from.
enum class MdpSource { bench, parses };
std::string_view to_string(MdpSource s);
MdpSource parse_mdp_source(std::string_view text);

struct LearnerConfig {
  bool model_on = true;
  bool data_on = true;
  double theta = 0.0;
  double epsilon = MdpTable::kDefaultFloor;
  ParserBounds bounds;
  bool use_unary = false;
  MdpSource mdp_source = MdpSource::bench;
  // Applied to parser labels before MDP lookup and training.
  LabelMap label_map;
  Category start = ChartParser::default_start();
  // Cap on candidate assignments tried per completed parse.
  std::size_t search_limit = 20000;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

enum class Verdict { parsed_with_grammar, learnt, ungrammatical };
std::string_view to_string(Verdict v);

struct LearnOutcome {
  std::string id;
  Verdict verdict = Verdict::ungrammatical;
  std::vector<Rule> rules;   // accepted instantiations, children first
  std::size_t added = 0;     // of those, rules new to the grammar
  ParseTreePtr tree;         // the accepted parse, super nodes replaced
  std::size_t edges = 0;     // plain parse attempt
  std::size_t completion_edges = 0;
  HaltReason halted = HaltReason::exhausted;
  std::size_t parses_examined = 0;
  std::size_t candidates = 0;
  FilterTally rejected;
};

struct LearnStep {
  Grammar grammar;
  LearnOutcome outcome;
};

// Parse with g; failing that, complete with super rules and keep a parse
// whose every super node has a surviving refinement. The table is trained
// on the accepted parse when data_on.
LearnStep learn_sentence(const Grammar& g, const Lexicon& lexicon, const LearnerConfig& cfg,
                         const ModelConfig& model, MdpTable& table,
                         const TaggedSentence& sentence);

enum class LearnerKind { A, B, C, D };
std::string_view to_string(LearnerKind k);
LearnerKind parse_learner_kind(std::string_view text);
// A: none; B: data (plus X-bar); C: model; D: both.
LearnerConfig configure(LearnerKind kind, LearnerConfig base);
std::string grammar_name_for(LearnerKind kind, std::string_view base_name);

struct TrainingRun {
  LearnerKind kind = LearnerKind::A;
  Grammar grammar;
  MdpTable table;
  std::vector<LearnOutcome> outcomes;
};

struct PretrainData {
  std::span<const TaggedSentence> sentences;
  std::span<const LabelTree> bench;  // parallel to sentences
};

MdpTable pretrain_table(const Grammar& g, const Lexicon& lexicon, const LearnerConfig& cfg,
                        const PretrainData& data);

// One run per kind, in the order given; runs execute concurrently.
std::vector<TrainingRun> run_training(const Grammar& g, const Lexicon& lexicon,
                                      const ModelConfig& model, const LearnerConfig& base,
                                      std::span<const LearnerKind> kinds,
                                      const PretrainData& pretrain,
                                      std::span<const TaggedSentence> train);

// `key=value` record per sentence.
std::string format_outcome(const LearnOutcome& o);

}  // namespace unilearn
