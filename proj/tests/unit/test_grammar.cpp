#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "unilearn/error.hpp"
#include "unilearn/grammar.hpp"

using namespace unilearn;

TEST_CASE("super rules have empty categories") {
  auto s = super_rules();
  CHECK(s.binary.arity() == 2);
  CHECK(s.unary.arity() == 1);
  CHECK(s.binary.lhs.empty());
  for (const auto& c : s.binary.rhs) CHECK(c.empty());
  for (const auto& c : s.unary.rhs) CHECK(c.empty());
  CHECK(s.binary.origin == RuleOrigin::super);
}

TEST_CASE("super rules unify with any binary rule") {
  std::mt19937_64 rng(3);
  auto s = super_rules();
  for (int i = 0; i < 1000; ++i) {
    Rule r{oracle::random_category(rng), {oracle::random_category(rng), oracle::random_category(rng)}, std::nullopt, std::nullopt};
    CHECK(unify(s.binary.lhs, r.lhs) == r.lhs);
    for (int d = 0; d < 2; ++d) CHECK(unify(s.binary.rhs[d], r.rhs[d]) == r.rhs[d]);
  }
}

TEST_CASE("rule syntax") {
  Rule r = parse_rule("S[] -> NP[] VP[] {head=2}");
  CHECK(r.arity() == 2);
  REQUIRE(r.head);
  CHECK(*r.head == 1);
  CHECK(r.origin == RuleOrigin::seed);
  CHECK_THROWS_AS(parse_rule("S[] -> NP[] VP[] PP[]"), FormatError);
  CHECK_THROWS_AS(parse_rule("S[] -> "), FormatError);
  CHECK_THROWS_AS(parse_rule("S[] NP[]"), FormatError);
  CHECK_THROWS_AS(parse_rule("S -> NP VP {head=3}"), FormatError);
  CHECK_THROWS_AS(parse_rule("S -> NP VP {colour=red}"), FormatError);
  CHECK_THROWS_AS(parse_rule("S -> NP[bar=7]"), FormatError);
  Rule l = parse_rule("VP -> VP PP {head=1, functor=2, origin=learnt}");
  CHECK(l.origin == RuleOrigin::learnt);
  CHECK(*l.functor == 1);
}

TEST_CASE("add_rule deduplicates by categories") {
  Grammar g;
  Rule r = parse_rule("VP -> VP PP");
  auto [g1, o1] = add_rule(g, r);
  CHECK(o1 == AddOutcome::added);
  CHECK(g1.size() == 1);
  Rule annotated = r;
  annotated.head = 0;
  annotated.origin = RuleOrigin::learnt;
  auto [g2, o2] = add_rule(g1, annotated);
  CHECK(o2 == AddOutcome::duplicate);
  CHECK(g2.size() == 1);
  CHECK(g.size() == 0);
  CHECK(g2.contains(parse_rule("VP[] -> VP[] PP[]")));
  CHECK(g2.without(r).size() == 0);
}

TEST_CASE("grammar size is monotone and adds are counted exactly") {
  std::mt19937_64 rng(11);
  Grammar g;
  std::size_t distinct = 0;
  std::vector<Rule> seen;
  for (int i = 0; i < 500; ++i) {
    Rule r{oracle::random_category(rng), {oracle::random_category(rng)}, std::nullopt, std::nullopt};
    if (rng() % 2) r.rhs.push_back(oracle::random_category(rng));
    bool fresh = std::none_of(seen.begin(), seen.end(), [&](const Rule& s) { return s.same_categories(r); });
    if (fresh) {
      ++distinct;
      seen.push_back(r);
    }
    std::size_t before = g.size();
    auto outcome = g.add(r);
    CHECK(g.size() >= before);
    CHECK((outcome == AddOutcome::added) == fresh);
  }
  CHECK(g.size() == distinct);
}

TEST_CASE("grammar files round-trip") {
  std::string text =
      "# seed\n"
      "S -> NP VP {head=2}\n"
      "NP -> Det N1 {head=2}\n"
      "N1 -> N\n"
      "VP -> V[subcat=be] AP {head=1}\n"
      "VP -> VP PP {head=1, functor=2, origin=learnt}\n"
      "\n"
      "S -> NP VP\n";
  std::vector<Diagnostic> warnings;
  Grammar g = load_grammar(text, &warnings);
  CHECK(g.size() == 5);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].line == 8);
  std::string once = save_grammar(g);
  CHECK(save_grammar(load_grammar(once)) == once);
  try {
    load_grammar("S -> NP\nS -> NP VP PP\n");
    FAIL("expected an error");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 12);
  }
}

TEST_CASE("lexicon") {
  Lexicon lex = load_lexicon("tag NN1 N[num=sg]\ntag VVZ V[num=sg] : <e,t>\n# note\n");
  CHECK(lex.size() == 2);
  REQUIRE(lex.find(Symbol("NN1")));
  CHECK(lex.find(Symbol("NN1"))->category == parse_category("N[num=sg]"));
  CHECK(lex.find(Symbol("VVZ"))->semtype == parse_type("<e,t>"));
  CHECK_THROWS_AS(lex.at(Symbol("XX"), 4), UnknownTagError);
  CHECK_THROWS(load_lexicon("tag A N\ntag A V\n"));
  CHECK(save_lexicon(load_lexicon(save_lexicon(lex))) == save_lexicon(lex));
}
