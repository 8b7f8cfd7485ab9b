#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "unilearn/chart_parser.hpp"
#include "unilearn/error.hpp"

using namespace unilearn;

namespace {

Lexicon toy_lexicon() {
  return load_lexicon("tag n N\ntag v V\ntag d Det\ntag p P\n");
}

std::vector<Symbol> tags(std::initializer_list<const char*> ts) {
  std::vector<Symbol> out;
  for (auto t : ts) out.emplace_back(t);
  return out;
}

std::vector<Symbol> repeat(const char* tag, std::size_t n) {
  return std::vector<Symbol>(n, Symbol(tag));
}

}  // namespace

TEST_CASE("toy grammar parses and fails as expected") {
  ChartParser parser(load_grammar("S -> NP VP\nNP -> N\nVP -> V\n"), toy_lexicon());
  auto ok = parser.parse(tags({"n", "v"}), {1, 3000});
  REQUIRE(ok.trees.size() == 1);
  CHECK(to_bracketed(to_label_tree(*ok.trees[0])) == "(S (NP (N n)) (VP (V v)))");
  CHECK(validate(*ok.trees[0]));
  CHECK(covers(*ok.trees[0], tags({"n", "v"})));

  auto none = parser.parse(tags({"n", "n"}), {1, 3000});
  CHECK(none.trees.empty());
  CHECK(none.halted == HaltReason::exhausted);

  auto tight = parser.parse(tags({"n", "v"}), {1, 1});
  CHECK(tight.trees.empty());
  CHECK(tight.edges <= 1);
  CHECK(tight.halted == HaltReason::edge_bound);
}

TEST_CASE("unknown tags are reported with their position") {
  ChartParser parser(load_grammar("S -> NP VP\n"), toy_lexicon());
  try {
    parser.parse(tags({"n", "zz"}), {});
    FAIL("expected UnknownTagError");
  } catch (const UnknownTagError& e) {
    CHECK(e.tag() == "zz");
    CHECK(e.position() == 1);
  }
}

TEST_CASE("bounds must be positive") {
  ChartParser parser(Grammar{}, toy_lexicon());
  CHECK_THROWS_AS(parser.parse(tags({"n"}), {0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(parser.parse(tags({"n"}), {1, 0}), std::invalid_argument);
}

TEST_CASE("binary completion over an empty grammar yields the Catalan series") {
  ChartParser parser(Grammar{}, toy_lexicon());
  for (std::size_t len = 2; len <= 7; ++len) {
    auto res = parser.parse_completing(repeat("n", len), ParserBounds::unbounded());
    CHECK(res.trees.size() == oracle::catalan(static_cast<unsigned>(len - 1)));
    std::set<std::string> shapes;
    for (const auto& t : res.trees) {
      std::size_t next = 0;
      shapes.insert(oracle::shape(to_label_tree(*t), next));
      CHECK(validate(*t));
      CHECK(t->super_count() == len - 1);
    }
    auto expected = oracle::bracketings(0, len);
    CHECK(shapes == std::set<std::string>(expected.begin(), expected.end()));
    CHECK(res.halted == HaltReason::exhausted);
  }
}

TEST_CASE("completion always finds a parse when unbounded") {
  Grammar g = load_grammar("S -> NP VP\nNP -> Det N\nVP -> V NP\n");
  ChartParser parser(g, toy_lexicon());
  for (auto seq : {tags({"n", "v"}), tags({"p", "p", "d"}), tags({"v", "n", "d", "n", "p"})}) {
    auto res = parser.parse_completing(seq, {1, static_cast<std::size_t>(-1)});
    CHECK(res.trees.size() == 1);
  }
}

TEST_CASE("completion contains every plain parse") {
  Grammar g = load_grammar("S -> NP VP\nNP -> N\nNP -> NP PP\nPP -> P NP\nVP -> V NP\nVP -> VP PP\n");
  ChartParser parser(g, toy_lexicon());
  auto seq = tags({"n", "v", "n", "p", "n"});
  auto plain = parser.parse(seq, ParserBounds::unbounded());
  auto full = parser.parse_completing(seq, ParserBounds::unbounded());
  CHECK(plain.trees.size() == 2);
  std::set<std::string> full_set;
  for (const auto& t : full.trees) full_set.insert(to_bracketed(to_label_tree(*t)));
  for (const auto& t : plain.trees) CHECK(full_set.count(to_bracketed(to_label_tree(*t))) == 1);
  // The plain parses use no super rule and so come first.
  CHECK(full.trees[0]->super_count() == 0);
}

TEST_CASE("bounds are respected and attributed") {
  Grammar g = load_grammar("S -> NP VP\nNP -> N\nNP -> NP PP\nPP -> P NP\nVP -> V NP\nVP -> VP PP\n");
  ChartParser parser(g, toy_lexicon());
  auto seq = tags({"n", "v", "n", "p", "n", "p", "n"});
  auto all = parser.parse(seq, ParserBounds::unbounded());
  REQUIRE(all.trees.size() == 5);
  auto two = parser.parse(seq, {2, 3000});
  CHECK(two.trees.size() == 2);
  CHECK(two.halted == HaltReason::parse_bound);
  for (std::size_t m = 1; m < all.edges + 2; ++m) {
    auto r = parser.parse(seq, {1, m});
    CHECK(r.edges <= m);
    CHECK(r.trees.size() <= 1);
    if (r.trees.empty()) CHECK(r.halted == HaltReason::edge_bound);
    else CHECK(r.halted == HaltReason::parse_bound);
  }
}

TEST_CASE("parsing is deterministic") {
  ChartParser parser(Grammar{}, toy_lexicon());
  auto seq = repeat("n", 6);
  auto a = parser.parse_completing(seq, {10, 3000});
  auto b = parser.parse_completing(seq, {10, 3000});
  REQUIRE(a.trees.size() == b.trees.size());
  for (std::size_t i = 0; i < a.trees.size(); ++i)
    CHECK(to_bracketed(to_label_tree(*a.trees[i])) == to_bracketed(to_label_tree(*b.trees[i])));
}

TEST_CASE("super nodes record their instantiation") {
  ChartParser parser(load_grammar("S -> NP VP\nNP -> N\n"), toy_lexicon());
  auto res = parser.parse_completing(tags({"n", "v", "n"}), {1, 3000});
  REQUIRE(res.trees.size() == 1);
  const ParseTree& root = *res.trees[0];
  CHECK(root.provenance == Provenance::grammar);
  const ParseTree& vp = *root.children[1];
  CHECK(vp.provenance == Provenance::super);
  REQUIRE(vp.instantiation.size() == 3);
  CHECK(vp.instantiation[1] == category_from_label("V"));
  CHECK(vp.instantiation[2] == category_from_label("NP"));
  CHECK(root.instantiation[2] == category_from_label("VP"));
}

TEST_CASE("unary cycles do not loop") {
  Grammar g = load_grammar("S -> NP VP\nNP -> N\nN -> NP\nVP -> V\n");
  ChartParser parser(g, toy_lexicon());
  auto res = parser.parse(tags({"n", "v"}), ParserBounds::unbounded());
  CHECK(!res.trees.empty());
  CHECK(res.halted == HaltReason::exhausted);
}
