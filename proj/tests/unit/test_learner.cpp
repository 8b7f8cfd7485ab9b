#include <doctest.h>

#include "unilearn/learner.hpp"

using namespace unilearn;

namespace {

Lexicon toy_lexicon() {
  return load_lexicon("tag n N\ntag v V\ntag d Det\ntag p P\ntag a A\n");
}

Grammar toy_grammar() { return load_grammar("S -> NP VP\nNP -> N1\nN1 -> N\nVP -> V\n"); }

TaggedSentence sentence(std::string id, std::initializer_list<const char*> tags) {
  TaggedSentence s;
  s.id = std::move(id);
  for (auto t : tags) {
    s.words.emplace_back(t);
    s.tags.emplace_back(t);
  }
  return s;
}

std::vector<TaggedSentence> toy_corpus() {
  return {sentence("1", {"n", "v"}),           sentence("2", {"n", "v", "n"}),
          sentence("3", {"d", "n", "v"}),      sentence("4", {"n", "v", "p", "n"}),
          sentence("5", {"a", "n", "v"}),      sentence("6", {"d", "a", "n", "v", "n"}),
          sentence("7", {"n", "v", "d", "n"}), sentence("8", {"d", "n", "v", "p", "d", "n"})};
}

LearnerConfig permissive() {
  LearnerConfig cfg;
  cfg.model_on = false;
  cfg.data_on = false;
  return cfg;
}

bool parses(const Grammar& g, const TaggedSentence& s) {
  ChartParser p(g, toy_lexicon());
  return !p.parse(s.tags, {1, 100000}).trees.empty();
}

}  // namespace

TEST_CASE("covered sentence is left alone") {
  MdpTable table;
  auto step = learn_sentence(toy_grammar(), toy_lexicon(), permissive(), ModelConfig::xbar_only(),
                             table, sentence("1", {"n", "v"}));
  CHECK(step.outcome.verdict == Verdict::parsed_with_grammar);
  CHECK(step.grammar.size() == toy_grammar().size());
  CHECK(step.outcome.rules.empty());
}

TEST_CASE("missing transitive rule is learnt") {
  MdpTable table;
  Grammar g = toy_grammar();
  auto s = sentence("2", {"n", "v", "n"});
  CHECK_FALSE(parses(g, s));
  auto step = learn_sentence(g, toy_lexicon(), permissive(), ModelConfig::xbar_only(), table, s);
  REQUIRE(step.outcome.verdict == Verdict::learnt);
  CHECK(step.grammar.size() >= g.size() + 1);
  CHECK(step.outcome.added >= 1);
  for (const Rule& r : step.outcome.rules) CHECK(step.grammar.contains(r));
  CHECK(parses(step.grammar, s));
  REQUIRE(step.outcome.tree);
  CHECK(validate(*step.outcome.tree));
  for (const auto& r : rules_used(*step.outcome.tree)) CHECK(r->origin != RuleOrigin::super);
  // Without the data filter the table is untouched.
  CHECK(table.empty());
}

TEST_CASE("rejection by every filter gives ungrammatical") {
  // Every category has type e, so no binary composition succeeds.
  ModelConfig model = ModelConfig::xbar_only();
  model.use_semantics = true;
  model.semtypes.assign(Category{}, parse_type("e"));
  LearnerConfig cfg = permissive();
  cfg.model_on = true;
  cfg.bounds = {50, 3000};
  MdpTable table;
  Grammar g = toy_grammar();
  auto step = learn_sentence(g, toy_lexicon(), cfg, model, table, sentence("2", {"n", "v", "n"}));
  CHECK(step.outcome.verdict == Verdict::ungrammatical);
  CHECK(step.grammar.size() == g.size());
  CHECK(step.outcome.rules.empty());
  CHECK(step.outcome.rejected.semantics > 0);
}

TEST_CASE("data filter trains the table on accepted parses") {
  LearnerConfig cfg = permissive();
  cfg.data_on = true;
  MdpTable table;
  auto step = learn_sentence(toy_grammar(), toy_lexicon(), cfg, ModelConfig::xbar_only(), table,
                             sentence("2", {"n", "v", "n"}));
  REQUIRE(step.outcome.verdict == Verdict::learnt);
  CHECK(table.total() == extract_mdps(to_label_tree(*step.outcome.tree)).size());
  // A threshold of 1 rejects every candidate.
  cfg.theta = 1.0;
  MdpTable fresh;
  auto none = learn_sentence(toy_grammar(), toy_lexicon(), cfg, ModelConfig::xbar_only(), fresh,
                             sentence("2", {"n", "v", "n"}));
  CHECK(none.outcome.verdict == Verdict::ungrammatical);
  CHECK(none.outcome.rejected.data > 0);
}

TEST_CASE("learning audit over a toy corpus") {
  auto corpus = toy_corpus();
  Grammar g = toy_grammar();
  MdpTable table;
  std::size_t learnt = 0;
  for (const auto& s : corpus) {
    Grammar before = g;
    auto step = learn_sentence(g, toy_lexicon(), permissive(), ModelConfig::xbar_only(), table, s);
    CHECK(step.grammar.size() >= before.size());
    if (step.outcome.verdict == Verdict::learnt) {
      ++learnt;
      REQUIRE(step.outcome.added >= 1);
      CHECK(parses(step.grammar, s));
      // Each newly added rule is needed for the sentence that introduced it.
      for (const Rule& r : step.outcome.rules) {
        if (before.contains(r)) continue;
        CHECK_MESSAGE(!parses(step.grammar.without(r), s), to_string(r));
      }
    }
    // Coverage only grows.
    for (const auto& t : corpus)
      if (parses(before, t)) CHECK(parses(step.grammar, t));
    g = step.grammar;
  }
  CHECK(learnt >= 4);
}

TEST_CASE("configuration runs") {
  auto corpus = toy_corpus();
  std::vector<LearnerKind> kinds{LearnerKind::A, LearnerKind::B, LearnerKind::C, LearnerKind::D};
  PretrainData pre{std::span<const TaggedSentence>(corpus).subspan(0, 1), {}};
  std::vector<LabelTree> bench{parse_bracketed("(S (NP (N1 (N n))) (VP (V v)))")};
  pre.bench = bench;
  ModelConfig model = ModelConfig::xbar_only();
  LearnerConfig base;
  auto runs = run_training(toy_grammar(), toy_lexicon(), model, base, kinds, pre,
                           std::span<const TaggedSentence>(corpus).subspan(1));
  REQUIRE(runs.size() == 4);
  CHECK(runs[0].kind == LearnerKind::A);
  CHECK(runs[0].grammar.size() == toy_grammar().size());
  CHECK(runs[0].grammar.name() == "G");
  CHECK(runs[1].grammar.name() == "G1");
  CHECK(runs[2].grammar.name() == "G2");
  CHECK(runs[3].grammar.name() == "G3");
  // A does no learning and so logs nothing.
  CHECK(runs[0].outcomes.empty());
  for (std::size_t k = 1; k < runs.size(); ++k) {
    CHECK(runs[k].grammar.size() >= toy_grammar().size());
    CHECK(runs[k].outcomes.size() == corpus.size() - 1);
  }
  // C keeps no table; B and D start from the pretrained counts.
  CHECK(runs[2].table.empty());
  CHECK(runs[1].table.total() >= 3);

  auto again = run_training(toy_grammar(), toy_lexicon(), model, base, kinds, pre,
                            std::span<const TaggedSentence>(corpus).subspan(1));
  for (std::size_t k = 0; k < runs.size(); ++k)
    CHECK(save_grammar(again[k].grammar) == save_grammar(runs[k].grammar));
}

TEST_CASE("configuration validation") {
  LearnerConfig cfg;
  cfg.theta = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.theta = 0.5;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  auto c = configure(LearnerKind::C, LearnerConfig{});
  CHECK(c.model_on);
  CHECK_FALSE(c.data_on);
  auto b = configure(LearnerKind::B, LearnerConfig{});
  CHECK_FALSE(b.model_on);
  CHECK(b.data_on);
  CHECK(parse_learner_kind("D") == LearnerKind::D);
  CHECK_THROWS(parse_learner_kind("E"));
}
