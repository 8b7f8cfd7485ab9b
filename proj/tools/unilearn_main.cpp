#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "unilearn/chart_parser.hpp"
#include "unilearn/corpus.hpp"
#include "unilearn/error.hpp"
#include "unilearn/evaluation.hpp"
#include "unilearn/experiment.hpp"
#include "unilearn/learner.hpp"
#include "unilearn/mdp.hpp"
#include "unilearn/model_filter.hpp"

#ifndef UNILEARN_DATA_DIR
#define UNILEARN_DATA_DIR "data"
#endif

namespace {

using namespace unilearn;

constexpr int kOk = 0;
constexpr int kNoParse = 1;
constexpr int kUsage = 2;

const std::string kData = UNILEARN_DATA_DIR;

struct Paths {
  std::string grammar = kData + "/grammar/seed.gram";
  std::string lexicon = kData + "/grammar/claws.lex";
  std::string model = kData + "/grammar/model.cfg";
  std::string labelmap = kData + "/grammar/labels.map";
  std::string corpus = kData + "/corpus";
  std::string input;
  std::string trees;
  std::string table;
  std::string out;
  std::string log;
};

struct Knobs {
  std::size_t max_parses = 1;
  std::size_t max_edges = 3000;
  double theta = 0.0;
  double epsilon = MdpTable::kDefaultFloor;
  bool unary = false;
  std::string mdp_source = "bench";
  std::string start = "S";
};

void add_bounds(CLI::App* cmd, Knobs& k) {
  cmd->add_option("--max-parses,-n", k.max_parses, "Stop after this many complete parses")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-edges,-m", k.max_edges, "Stop after this many chart edges")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--start", k.start, "Start category");
}

void add_learning(CLI::App* cmd, Knobs& k) {
  cmd->add_option("--threshold", k.theta, "Daughter score threshold")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--epsilon", k.epsilon, "Score for unseen mother-daughter pairs")
      ->check(CLI::Range(1e-300, 1.0));
  cmd->add_flag("--unary", k.unary, "Also complete with the unary super rule");
}

ParserBounds bounds_of(const Knobs& k) { return {k.max_parses, k.max_edges}; }

Grammar read_grammar(const std::string& path) {
  std::vector<Diagnostic> warnings;
  Grammar g = load_grammar(read_file(path), &warnings);
  for (const auto& w : warnings)
    std::cerr << path << ": line " << w.line << ": warning: " << w.message << "\n";
  return g;
}

LabelMap read_label_map(const std::string& path) {
  return path.empty() ? LabelMap{} : load_label_map(read_file(path));
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

int cmd_parse(const Paths& p, const Knobs& k, bool completing) {
  Lexicon lex = load_lexicon(read_file(p.lexicon));
  auto tags = lex.tags();
  auto sentences = load_tagged(read_file(p.input), &tags);
  ChartParser parser(read_grammar(p.grammar), lex, category_from_label(k.start));
  int status = kOk;
  std::string out;
  for (const auto& s : sentences) {
    auto res = completing ? parser.parse_completing(s.tags, bounds_of(k), k.unary)
                          : parser.parse(s.tags, bounds_of(k));
    if (res.trees.empty()) {
      out += "NO PARSE " + s.id + "\n";
      status = kNoParse;
    }
    for (const auto& t : res.trees) out += "#" + s.id + " " + to_bracketed(to_label_tree(*t, s.words)) + "\n";
    out += "stats id=" + s.id + " trees=" + std::to_string(res.trees.size()) +
           " edges=" + std::to_string(res.edges) + " halted=" + std::string(to_string(res.halted)) + "\n";
  }
  emit(p.out, out);
  return status;
}

int cmd_pretrain(const Paths& p, const Knobs& k) {
  LearnerConfig cfg;
  cfg.epsilon = k.epsilon;
  cfg.bounds = bounds_of(k);
  cfg.mdp_source = parse_mdp_source(k.mdp_source);
  cfg.label_map = read_label_map(p.labelmap);
  cfg.start = category_from_label(k.start);
  std::vector<TaggedSentence> sentences;
  std::vector<LabelTree> bench;
  Grammar g;
  Lexicon lex;
  if (cfg.mdp_source == MdpSource::bench) {
    if (p.trees.empty()) throw CLI::ValidationError("--trees", "required with --source bench");
    for (auto& t : load_trees(read_file(p.trees))) bench.push_back(std::move(t.tree));
  } else {
    if (p.input.empty()) throw CLI::ValidationError("--input", "required with --source parses");
    g = read_grammar(p.grammar);
    lex = load_lexicon(read_file(p.lexicon));
    auto tags = lex.tags();
    sentences = load_tagged(read_file(p.input), &tags);
  }
  MdpTable table = pretrain_table(g, lex, cfg, {sentences, bench});
  emit(p.out, save_table(table));
  return kOk;
}

int cmd_learn(const Paths& p, const Knobs& k, const std::string& config) {
  Lexicon lex = load_lexicon(read_file(p.lexicon));
  auto tags = lex.tags();
  auto sentences = load_tagged(read_file(p.input), &tags);
  Grammar g = read_grammar(p.grammar);
  ModelConfig model = load_model_config(read_file(p.model));
  model.add_lexicon_types(lex);
  model.validate_features(feature_names(g, lex));
  LearnerConfig base;
  base.theta = k.theta;
  base.epsilon = k.epsilon;
  base.bounds = bounds_of(k);
  base.use_unary = k.unary;
  base.label_map = read_label_map(p.labelmap);
  base.start = category_from_label(k.start);
  LearnerKind kind = parse_learner_kind(config);
  LearnerConfig cfg = configure(kind, base);
  cfg.validate();
  MdpTable table = p.table.empty() ? MdpTable(cfg.epsilon) : load_table(read_file(p.table), cfg.epsilon);
  std::string log;
  std::size_t failed = 0;
  if (kind != LearnerKind::A) {
    for (const auto& s : sentences) {
      auto step = learn_sentence(g, lex, cfg, model, table, s);
      g = std::move(step.grammar);
      if (step.outcome.verdict == Verdict::ungrammatical) ++failed;
      log += format_outcome(step.outcome) + "\n";
    }
  }
  g.set_name(grammar_name_for(kind, g.name()));
  emit(p.out, save_grammar(g));
  if (!p.log.empty()) write_file(p.log, log);
  else std::cerr << log;
  return failed ? kNoParse : kOk;
}

int cmd_eval(const Paths& p, const Knobs& k, std::size_t sample) {
  Lexicon lex = load_lexicon(read_file(p.lexicon));
  auto tags = lex.tags();
  auto sentences = load_tagged(read_file(p.input), &tags);
  auto trees = load_trees(read_file(p.trees));
  check_alignment(sentences, trees);
  std::map<std::string, LabelTree> by_id;
  for (auto& t : trees) by_id.emplace(t.id, std::move(t.tree));
  ChartParser parser(read_grammar(p.grammar), lex, category_from_label(k.start));
  LabelMap map = read_label_map(p.labelmap);
  auto cov = coverage(parser, sentences, bounds_of(k));
  std::vector<TaggedSentence> parsed;
  std::vector<LabelTree> bench;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto it = by_id.find(sentences[i].id);
    if (cov.per_sentence[i] && it != by_id.end()) {
      parsed.push_back(sentences[i]);
      bench.push_back(it->second);
    }
  }
  auto pl = plausibility(parser, parsed, bench, bounds_of(k), sample, map);
  char buf[64];
  std::string out;
  std::snprintf(buf, sizeof buf, "%.1f", cov.percent);
  out += "coverage percent=" + std::string(buf) + " parsed=" + std::to_string(cov.parsed) +
         " total=" + std::to_string(cov.total) + "\n";
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", pl.best[i]);
    out += "score id=" + parsed[i].id + " closeness=" + buf + "\n";
  }
  std::snprintf(buf, sizeof buf, "%.6f", pl.mean);
  out += "plausibility mean=" + std::string(parsed.empty() ? "absent" : buf) +
         " sentences=" + std::to_string(parsed.size()) + "\n";
  emit(p.out, out);
  return cov.parsed == cov.total ? kOk : kNoParse;
}

int cmd_experiment(const Paths& p, const Knobs& k, const std::vector<std::string>& configs,
                   std::optional<std::uint64_t> seed, std::size_t subset, std::size_t sample) {
  ExperimentInputs in;
  in.lexicon = load_lexicon(read_file(p.lexicon));
  in.grammar = read_grammar(p.grammar);
  in.model = load_model_config(read_file(p.model));
  in.model.validate_features(feature_names(in.grammar, in.lexicon));
  in.label_map = read_label_map(p.labelmap);
  auto tags = in.lexicon.tags();
  in.corpus = load_corpus_dir(p.corpus, &tags);

  ExperimentOptions opts;
  opts.kinds.clear();
  for (const auto& c : configs) opts.kinds.push_back(parse_learner_kind(c));
  opts.learner.theta = k.theta;
  opts.learner.epsilon = k.epsilon;
  opts.learner.bounds = bounds_of(k);
  opts.learner.use_unary = k.unary;
  opts.learner.mdp_source = parse_mdp_source(k.mdp_source);
  opts.learner.start = category_from_label(k.start);
  opts.seed = seed;
  opts.subset_size = subset;
  opts.sample_k = sample;

  ExperimentReport report = run_experiment(in, opts);
  std::cout << format_table(report);
  std::string records = format_records(report);
  if (!p.out.empty()) write_file(p.out, records);
  if (!p.log.empty()) write_file(p.log, records);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grammar learning by interleaved parsing, model filtering and MDP statistics"};
  app.require_subcommand(1);
  Paths p;
  Knobs k;

  auto* parse = app.add_subcommand("parse", "Parse tagged sentences and print bracketed trees");
  bool completing = false;
  parse->add_option("--grammar,-g", p.grammar, "Grammar file");
  parse->add_option("--lexicon,-l", p.lexicon, "Lexicon file");
  parse->add_option("input", p.input, "Tagged sentence file")->required();
  parse->add_option("--out,-o", p.out, "Output file (default stdout)");
  parse->add_flag("--completing", completing, "Add the binary super rule");
  parse->add_flag("--unary", k.unary, "With --completing, add the unary super rule too");
  add_bounds(parse, k);

  auto* pretrain = app.add_subcommand("pretrain", "Build a mother-daughter pair table");
  pretrain->add_option("--trees,-t", p.trees, "Benchmark tree file");
  pretrain->add_option("--source", k.mdp_source, "bench or parses")
      ->check(CLI::IsMember({"bench", "parses"}));
  pretrain->add_option("--input", p.input, "Tagged sentences (with --source parses)");
  pretrain->add_option("--grammar,-g", p.grammar, "Grammar file");
  pretrain->add_option("--lexicon,-l", p.lexicon, "Lexicon file");
  pretrain->add_option("--labelmap", p.labelmap, "Label map file");
  pretrain->add_option("--epsilon", k.epsilon, "Score for unseen pairs");
  pretrain->add_option("--out,-o", p.out, "Table file (default stdout)");
  add_bounds(pretrain, k);

  auto* learn = app.add_subcommand("learn", "Learn rules from tagged sentences");
  std::string config = "D";
  learn->add_option("input", p.input, "Tagged sentence file")->required();
  learn->add_option("--grammar,-g", p.grammar, "Grammar file");
  learn->add_option("--lexicon,-l", p.lexicon, "Lexicon file");
  learn->add_option("--model", p.model, "Model configuration file");
  learn->add_option("--labelmap", p.labelmap, "Label map file");
  learn->add_option("--table", p.table, "Initial pair table");
  learn->add_option("--config,-c", config, "A, B, C or D")->check(CLI::IsMember({"A", "B", "C", "D"}));
  learn->add_option("--out,-o", p.out, "Learnt grammar file (default stdout)");
  learn->add_option("--log", p.log, "Per-sentence log file (default stderr)");
  add_bounds(learn, k);
  add_learning(learn, k);

  auto* eval = app.add_subcommand("eval", "Coverage and plausibility of a grammar");
  std::size_t sample = 10;
  eval->add_option("input", p.input, "Tagged sentence file")->required();
  eval->add_option("--trees,-t", p.trees, "Benchmark tree file")->required();
  eval->add_option("--grammar,-g", p.grammar, "Grammar file");
  eval->add_option("--lexicon,-l", p.lexicon, "Lexicon file");
  eval->add_option("--labelmap", p.labelmap, "Label map file");
  eval->add_option("--sample", sample, "Parses sampled per sentence")->check(CLI::PositiveNumber);
  eval->add_option("--out,-o", p.out, "Output file (default stdout)");
  add_bounds(eval, k);

  auto* exp = app.add_subcommand("experiment", "Run configurations A-D over a corpus");
  std::vector<std::string> configs{"A", "B", "C", "D"};
  std::optional<std::uint64_t> seed;
  std::size_t subset = 15;
  exp->add_option("--corpus", p.corpus, "Directory with .tag, .tre and .split files");
  exp->add_option("--grammar,-g", p.grammar, "Seed grammar file");
  exp->add_option("--lexicon,-l", p.lexicon, "Lexicon file");
  exp->add_option("--model", p.model, "Model configuration file");
  exp->add_option("--labelmap", p.labelmap, "Label map file");
  exp->add_option("--configs", configs, "Configurations to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"A", "B", "C", "D"}));
  exp->add_option("--seed", seed, "Draw a fresh split with this seed instead of the split file");
  exp->add_option("--subset", subset, "Size of the plausible and yardstick sets")
      ->check(CLI::PositiveNumber);
  exp->add_option("--sample", sample, "Parses sampled per sentence")->check(CLI::PositiveNumber);
  exp->add_option("--mdp-source", k.mdp_source, "Pretraining counts from bench trees or parses")
      ->check(CLI::IsMember({"bench", "parses"}));
  exp->add_option("--out,-o", p.out, "Machine-readable report file");
  exp->add_option("--log", p.log, "Copy of the machine-readable report");
  add_bounds(exp, k);
  add_learning(exp, k);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(p, k, completing);
    if (*pretrain) return cmd_pretrain(p, k);
    if (*learn) return cmd_learn(p, k, config);
    if (*eval) return cmd_eval(p, k, sample);
    if (*exp) return cmd_experiment(p, k, configs, seed, subset, sample);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
