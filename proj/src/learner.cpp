#include "unilearn/learner.hpp"

#include <algorithm>
#include <future>
#include <memory>
#include <stdexcept>

namespace unilearn {

std::string_view to_string(MdpSource s) { return s == MdpSource::bench ? "bench" : "parses"; }

MdpSource parse_mdp_source(std::string_view text) {
  if (text == "bench") return MdpSource::bench;
  if (text == "parses") return MdpSource::parses;
  throw std::invalid_argument("MDP source must be 'bench' or 'parses'");
}

void LearnerConfig::validate() const {
  bounds.validate();
  if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("threshold must lie in [0, 1]");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (search_limit == 0) throw std::invalid_argument("search limit must be positive");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::parsed_with_grammar: return "parsed";
    case Verdict::learnt: return "learnt";
    case Verdict::ungrammatical: return "ungrammatical";
  }
  return "?";
}

namespace {

struct Site {
  const ParseTree* node;
  const ParseTree* parent;
  std::size_t slot;
};

void collect_sites(const ParseTree& t, const ParseTree* parent, std::size_t slot,
                   std::vector<Site>& out) {
  for (std::size_t i = 0; i < t.children.size(); ++i) collect_sites(*t.children[i], &t, i, out);
  if (t.provenance == Provenance::super) out.push_back({&t, parent, slot});
}

// Chooses one refinement per super node of a completed parse, children
// before parents, backtracking when a node has no acceptable option.
class Search {
 public:
  Search(const ParseTree& root, const LearnerConfig& cfg, const ModelConfig& model,
         const MdpTable& table, LearnOutcome& out)
      : cfg_(cfg), model_(model), table_(table), out_(out) {
    collect_sites(root, nullptr, 0, sites_);
    for (std::size_t i = 0; i < sites_.size(); ++i) index_.emplace_back(sites_[i].node, i);
    chosen_.resize(sites_.size());
  }

  bool run() { return step(0); }
  std::size_t sites() const { return sites_.size(); }
  const std::vector<Rule>& chosen() const { return chosen_; }

  const Rule* choice_for(const ParseTree* node) const {
    for (const auto& [n, i] : index_)
      if (n == node) return &chosen_[i];
    return nullptr;
  }

  const Category& category_of(const ParseTree& t) const {
    if (const Rule* r = t.provenance == Provenance::super ? choice_for(&t) : nullptr) return r->lhs;
    return t.category;
  }

  LabelTree labels(const ParseTree& t) const {
    LabelTree out = LabelTree::node(label_of(category_of(t)), {});
    if (t.is_lexical()) {
      out.children.push_back(LabelTree::leaf(to_string(t.tag)));
      return out;
    }
    for (const auto& c : t.children) out.children.push_back(labels(*c));
    return out;
  }

 private:
  Category expectation(const Site& s) const {
    if (!s.parent) return cfg_.start;
    if (s.parent->provenance == Provenance::super) return {};
    return s.parent->instantiation.at(s.slot + 1);
  }

  bool step(std::size_t k) {
    if (k == sites_.size()) return true;
    if (++steps_ > cfg_.search_limit) return false;
    const Site& site = sites_[k];
    Rule candidate;
    candidate.lhs = expectation(site);
    for (const auto& c : site.node->children) candidate.rhs.push_back(category_of(*c));
    candidate.origin = RuleOrigin::learnt;
    ++out_.candidates;
    static const ModelConfig xbar_base = ModelConfig::xbar_only();
    ModelConfig xbar_model = xbar_base;
    xbar_model.xbar = model_.xbar;
    auto options = refine_candidate(candidate, cfg_.model_on ? model_ : xbar_model, &out_.rejected);
    for (Rule& option : options) {
      chosen_[k] = option;
      if (cfg_.data_on) {
        LabelTree local = LabelTree::node(label_of(option.lhs), {});
        for (const auto& c : site.node->children)
          local.children.push_back(normalize(labels(*c), cfg_.label_map));
        if (!passes_threshold(table_, local, cfg_.theta)) {
          ++out_.rejected.data;
          continue;
        }
      }
      if (step(k + 1)) return true;
      if (steps_ > cfg_.search_limit) return false;
    }
    return false;
  }

  const LearnerConfig& cfg_;
  const ModelConfig& model_;
  const MdpTable& table_;
  LearnOutcome& out_;
  std::vector<Site> sites_;
  std::vector<std::pair<const ParseTree*, std::size_t>> index_;
  std::vector<Rule> chosen_;
  std::size_t steps_ = 0;
};

RulePtr find_rule(const Grammar& g, const Rule& r) {
  for (const auto& p : g.rules())
    if (p->same_categories(r)) return p;
  return nullptr;
}

ParseTreePtr rebuild(const ParseTreePtr& t, const Search& search, const Grammar& g) {
  if (t->is_lexical()) return t;
  auto node = std::make_shared<ParseTree>(*t);
  node->children.clear();
  for (const auto& c : t->children) node->children.push_back(rebuild(c, search, g));
  if (t->provenance == Provenance::super) {
    node->rule = find_rule(g, *search.choice_for(t.get()));
    node->provenance = Provenance::grammar;
  }
  node->category = node->rule->lhs;
  node->instantiation.assign(1, node->rule->lhs);
  for (std::size_t i = 0; i < node->children.size(); ++i) {
    auto u = unify(node->rule->rhs[i], node->children[i]->category);
    if (!u) throw std::logic_error("refined parse does not unify");
    node->instantiation.push_back(std::move(*u));
  }
  return node;
}

LabelTree training_tree(const ParseTree& t, const LearnerConfig& cfg) {
  return normalize(to_label_tree(t), cfg.label_map);
}

}  // namespace

LearnStep learn_sentence(const Grammar& g, const Lexicon& lexicon, const LearnerConfig& cfg,
                         const ModelConfig& model, MdpTable& table,
                         const TaggedSentence& sentence) {
  LearnStep step{g, {}};
  LearnOutcome& out = step.outcome;
  out.id = sentence.id;
  ChartParser parser(g, lexicon, cfg.start);
  ParserBounds first = cfg.bounds;
  first.max_parses = 1;
  auto plain = parser.parse(sentence.tags, first);
  out.edges = plain.edges;
  out.halted = plain.halted;
  if (!plain.trees.empty()) {
    out.verdict = Verdict::parsed_with_grammar;
    out.tree = plain.trees.front();
    if (cfg.data_on) table.train(training_tree(*out.tree, cfg));
    return step;
  }

  auto completed = parser.parse_completing(sentence.tags, cfg.bounds, cfg.use_unary);
  out.completion_edges = completed.edges;
  out.halted = completed.halted;

  std::unique_ptr<Search> best;
  ParseTreePtr best_tree;
  double best_score = -1.0;
  for (const auto& tree : completed.trees) {
    if (tree->super_count() == 0) continue;
    ++out.parses_examined;
    auto search = std::make_unique<Search>(*tree, cfg, model, table, out);
    if (!search->run()) continue;
    double score = cfg.bounds.max_parses > 1
                       ? score_tree(table, normalize(search->labels(*tree), cfg.label_map))
                       : 0.0;
    if (score > best_score) {
      best_score = score;
      best = std::move(search);
      best_tree = tree;
    }
    if (cfg.bounds.max_parses <= 1) break;
  }
  if (!best) {
    out.verdict = Verdict::ungrammatical;
    return step;
  }

  for (const Rule& r : best->chosen()) {
    if (step.grammar.add(r) == AddOutcome::added) ++out.added;
  }
  out.verdict = Verdict::learnt;
  out.rules = best->chosen();
  out.tree = rebuild(best_tree, *best, step.grammar);
  if (cfg.data_on) table.train(training_tree(*out.tree, cfg));
  return step;
}

std::string_view to_string(LearnerKind k) {
  switch (k) {
    case LearnerKind::A: return "A";
    case LearnerKind::B: return "B";
    case LearnerKind::C: return "C";
    case LearnerKind::D: return "D";
  }
  return "?";
}

LearnerKind parse_learner_kind(std::string_view text) {
  if (text == "A") return LearnerKind::A;
  if (text == "B") return LearnerKind::B;
  if (text == "C") return LearnerKind::C;
  if (text == "D") return LearnerKind::D;
  throw std::invalid_argument("configuration must be one of A, B, C, D");
}

LearnerConfig configure(LearnerKind kind, LearnerConfig base) {
  base.model_on = kind == LearnerKind::C || kind == LearnerKind::D;
  base.data_on = kind == LearnerKind::B || kind == LearnerKind::D;
  return base;
}

std::string grammar_name_for(LearnerKind kind, std::string_view base_name) {
  std::string name(base_name);
  switch (kind) {
    case LearnerKind::A: return name;
    case LearnerKind::B: return name + "1";
    case LearnerKind::C: return name + "2";
    case LearnerKind::D: return name + "3";
  }
  return name;
}

MdpTable pretrain_table(const Grammar& g, const Lexicon& lexicon, const LearnerConfig& cfg,
                        const PretrainData& data) {
  MdpTable table(cfg.epsilon);
  if (cfg.mdp_source == MdpSource::bench) {
    for (const auto& t : data.bench) table.train(normalize(t, cfg.label_map));
    return table;
  }
  ChartParser parser(g, lexicon, cfg.start);
  ParserBounds b = cfg.bounds;
  b.max_parses = 1;
  for (const auto& s : data.sentences) {
    auto res = parser.parse(s.tags, b);
    if (!res.trees.empty()) table.train(training_tree(*res.trees.front(), cfg));
  }
  return table;
}

std::vector<TrainingRun> run_training(const Grammar& g, const Lexicon& lexicon,
                                      const ModelConfig& model, const LearnerConfig& base,
                                      std::span<const LearnerKind> kinds,
                                      const PretrainData& pretrain,
                                      std::span<const TaggedSentence> train) {
  base.validate();
  auto one = [&](LearnerKind kind) {
    TrainingRun run;
    run.kind = kind;
    run.grammar = g;
    run.grammar.set_name(grammar_name_for(kind, g.name()));
    LearnerConfig cfg = configure(kind, base);
    run.table = cfg.data_on ? pretrain_table(g, lexicon, cfg, pretrain) : MdpTable(cfg.epsilon);
    if (kind == LearnerKind::A) return run;
    for (const auto& s : train) {
      auto step = learn_sentence(run.grammar, lexicon, cfg, model, run.table, s);
      run.grammar = std::move(step.grammar);
      run.outcomes.push_back(std::move(step.outcome));
    }
    return run;
  };
  std::vector<std::future<TrainingRun>> futures;
  for (LearnerKind k : kinds) futures.push_back(std::async(std::launch::async, one, k));
  std::vector<TrainingRun> runs;
  for (auto& f : futures) runs.push_back(f.get());
  return runs;
}

std::string format_outcome(const LearnOutcome& o) {
  std::string out = "id=" + o.id + " verdict=" + std::string(to_string(o.verdict)) +
                    " added=" + std::to_string(o.added) + " edges=" + std::to_string(o.edges) +
                    " completion_edges=" + std::to_string(o.completion_edges) +
                    " halted=" + std::string(to_string(o.halted)) +
                    " parses=" + std::to_string(o.parses_examined) +
                    " candidates=" + std::to_string(o.candidates) +
                    " rej_xbar=" + std::to_string(o.rejected.xbar) +
                    " rej_hfc=" + std::to_string(o.rejected.hfc) +
                    " rej_lp=" + std::to_string(o.rejected.lp) +
                    " rej_sem=" + std::to_string(o.rejected.semantics) +
                    " rej_data=" + std::to_string(o.rejected.data);
  for (const auto& r : o.rules) out += " rule=\"" + to_string(r) + "\"";
  return out;
}

}  // namespace unilearn
