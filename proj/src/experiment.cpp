#include "unilearn/experiment.hpp"

#include <cstdio>
#include <stdexcept>

namespace unilearn {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::vector<LabelTree> bench_for(const Corpus& c, const std::vector<std::string>& ids) {
  std::vector<LabelTree> out;
  for (const auto& id : ids) {
    auto it = c.trees.find(id);
    if (it == c.trees.end()) throw std::runtime_error("no benchmark tree for sentence '" + id + "'");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentInputs& in, const ExperimentOptions& opts) {
  opts.learner.validate();
  if (opts.kinds.empty()) throw std::invalid_argument("no configurations requested");
  ExperimentReport report;
  report.options = opts;

  if (opts.seed || !in.corpus.has_split) {
    std::uint64_t seed = opts.seed.value_or(1);
    auto ids = in.corpus.ids();
    report.split = make_split(ids, opts.sizes, seed);
    report.split_source = "seed=" + std::to_string(seed);
  } else {
    report.split = in.corpus.split;
    report.split_source = "file";
  }

  auto pre_sentences = in.corpus.select(report.split.pretrain);
  auto pre_bench = bench_for(in.corpus, report.split.pretrain);
  auto train = in.corpus.select(report.split.train);
  auto test = in.corpus.select(report.split.test);

  ModelConfig model = in.model;
  model.add_lexicon_types(in.lexicon);
  LearnerConfig base = opts.learner;
  base.label_map = in.label_map;

  report.runs = run_training(in.grammar, in.lexicon, model, base, opts.kinds,
                             {pre_sentences, pre_bench}, train);

  const ParserBounds& bounds = base.bounds;
  ChartParser seed_parser(in.grammar, in.lexicon, base.start);
  auto seed_cov = coverage(seed_parser, test, bounds);

  std::vector<CoverageResult> covs;
  for (const auto& run : report.runs) {
    if (run.kind == LearnerKind::A) {
      covs.push_back(seed_cov);
    } else {
      ChartParser p(run.grammar, in.lexicon, base.start);
      covs.push_back(coverage(p, test, bounds));
    }
  }

  bool any_learner = false;
  for (const auto& run : report.runs) any_learner |= run.kind != LearnerKind::A;
  if (any_learner) {
    for (std::size_t i = 0; i < test.size() && report.plausible.size() < opts.subset_size; ++i) {
      if (seed_cov.per_sentence[i]) continue;
      bool all = true;
      for (std::size_t r = 0; r < report.runs.size(); ++r)
        if (report.runs[r].kind != LearnerKind::A) all = all && covs[r].per_sentence[i];
      if (all) report.plausible.push_back(test[i].id);
    }
  }
  for (std::size_t i = 0; i < test.size() && report.yardstick.size() < report.plausible.size(); ++i)
    if (seed_cov.per_sentence[i]) report.yardstick.push_back(test[i].id);
  if (report.plausible.empty())
    report.warnings.push_back("no test sentence needs a learnt rule in every learnt grammar; "
                              "plausibility not computed");

  auto plaus_sent = in.corpus.select(report.plausible);
  auto plaus_bench = bench_for(in.corpus, report.plausible);
  auto yard_sent = in.corpus.select(report.yardstick);
  auto yard_bench = bench_for(in.corpus, report.yardstick);

  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const auto& run = report.runs[r];
    ExperimentRow row;
    row.kind = run.kind;
    row.grammar = run.grammar.name();
    row.size = run.grammar.size();
    row.coverage = covs[r];
    bool is_seed = run.kind == LearnerKind::A;
    const auto& sents = is_seed ? yard_sent : plaus_sent;
    const auto& bench = is_seed ? yard_bench : plaus_bench;
    if (!report.plausible.empty() && !sents.empty()) {
      ChartParser p(run.grammar, in.lexicon, base.start);
      auto pl = plausibility(p, sents, bench, bounds, opts.sample_k, in.label_map);
      row.plausibility = pl.mean;
      row.plausibility_scores = pl.best;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_table(const ExperimentReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %-8s %6s %9s %13s\n", "Configuration", "Grammar", "Size",
                "Coverage", "Plausibility");
  out += buf;
  for (const auto& row : r.rows) {
    std::string pl = row.plausibility ? fixed(*row.plausibility, 3) : "-";
    std::snprintf(buf, sizeof buf, "%-14s %-8s %6zu %9s %13s\n", std::string(to_string(row.kind)).c_str(),
                  row.grammar.c_str(), row.size, fixed(row.coverage.percent, 1).c_str(), pl.c_str());
    out += buf;
  }
  out += "plausible: " + std::to_string(r.plausible.size()) +
         " sentences, yardstick: " + std::to_string(r.yardstick.size()) + " sentences\n";
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string format_records(const ExperimentReport& r) {
  const auto& o = r.options;
  const auto& l = o.learner;
  std::string out;
  std::vector<std::string> kinds;
  for (auto k : o.kinds) kinds.emplace_back(to_string(k));
  out += "options configs=" + join(kinds, ',') + " threshold=" + fixed(l.theta, 6) +
         " epsilon=" + fixed(l.epsilon, 12) + " max_parses=" + std::to_string(l.bounds.max_parses) +
         " max_edges=" + std::to_string(l.bounds.max_edges) +
         " unary=" + (l.use_unary ? "1" : "0") + " mdp_source=" + std::string(to_string(l.mdp_source)) +
         " subset=" + std::to_string(o.subset_size) + " sample=" + std::to_string(o.sample_k) + "\n";
  out += "split source=" + r.split_source + " pretrain=" + join(r.split.pretrain, ',') +
         " train=" + join(r.split.train, ',') + " test=" + join(r.split.test, ',') + "\n";
  out += "subset name=plausible ids=" + join(r.plausible, ',') + "\n";
  out += "subset name=yardstick ids=" + join(r.yardstick, ',') + "\n";
  for (const auto& row : r.rows) {
    out += "row config=" + std::string(to_string(row.kind)) + " grammar=" + row.grammar +
           " size=" + std::to_string(row.size) + " coverage=" + fixed(row.coverage.percent, 1) +
           " parsed=" + std::to_string(row.coverage.parsed) + " test=" +
           std::to_string(row.coverage.total) +
           " plausibility=" + (row.plausibility ? fixed(*row.plausibility, 6) : "absent") + "\n";
    for (std::size_t i = 0; i < row.plausibility_scores.size(); ++i) {
      const auto& ids = row.kind == LearnerKind::A ? r.yardstick : r.plausible;
      out += "score config=" + std::string(to_string(row.kind)) + " id=" + ids[i] +
             " closeness=" + fixed(row.plausibility_scores[i], 6) + "\n";
    }
  }
  for (const auto& run : r.runs) {
    for (const auto& oc : run.outcomes)
      out += "sentence config=" + std::string(to_string(run.kind)) + " " + format_outcome(oc) + "\n";
    for (const auto& rule : run.grammar.rules())
      if (rule->origin == RuleOrigin::learnt)
        out += "learnt grammar=" + run.grammar.name() + " rule=\"" + to_string(*rule) + "\"\n";
  }
  for (const auto& w : r.warnings) out += "warning text=\"" + w + "\"\n";
  return out;
}

}  // namespace unilearn
