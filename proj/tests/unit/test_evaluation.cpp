#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "unilearn/evaluation.hpp"

using namespace unilearn;

namespace {

std::vector<std::string> walk(std::initializer_list<const char*> labels) {
  return {labels.begin(), labels.end()};
}

std::vector<std::string> random_walk(std::mt19937_64& rng, std::size_t alphabet) {
  std::vector<std::string> out(1 + rng() % 10);
  for (auto& s : out) s = std::string(1, static_cast<char>('A' + rng() % alphabet));
  return out;
}

}  // namespace

TEST_CASE("closeness worked example") {
  auto bench = walk({"S", "NP", "N", "VP", "V"});
  auto d = closeness_walks(walk({"S", "NP", "N", "V", "VP"}), bench);
  REQUIRE(d.pieces.size() == 3);
  CHECK(d.pieces[0] == walk({"S", "NP", "N"}));
  CHECK(d.pieces[1].size() == 1);
  CHECK(d.pieces[2].size() == 1);
  CHECK(d.score == doctest::Approx(1.0 / 3.0));

  auto b = parse_bracketed("(S (NP (N Sam)) (VP (V laughs)))");
  auto t = parse_bracketed("(S (NP (N Sam) (V x)) (VP laughs))");
  CHECK(closeness(t, b) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("closeness edge cases") {
  auto t = parse_bracketed("(S (NP (Det the) (N1 (N dog))) (VP (V barks)))");
  CHECK(closeness(t, t) == 1.0);
  CHECK(closeness(parse_bracketed("(A (B x))"), parse_bracketed("(C (D x))")) == 0.0);
  // Deleting from test only: one bench region can match twice.
  auto d = closeness_walks(walk({"A", "B", "A", "B"}), walk({"A", "B"}));
  CHECK(d.pieces.size() == 2);
  CHECK(d.score == 1.0);
  // A shallow benchmark against a steeper parse.
  auto shallow = parse_bracketed("(S (NP the dog) (VP barks))");
  double c = closeness(t, shallow);
  CHECK(c > 0.0);
  CHECK(c <= 1.0);
}

TEST_CASE("closeness agrees with exhaustive search") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 20000; ++i) {
    std::size_t alphabet = 2 + rng() % 4;
    auto test = random_walk(rng, alphabet);
    auto bench = random_walk(rng, alphabet);
    std::vector<std::size_t> lengths;
    double expected = oracle::closeness(test, bench, &lengths);
    auto d = closeness_walks(test, bench);
    REQUIRE(d.pieces.size() == lengths.size());
    for (std::size_t k = 0; k < lengths.size(); ++k) CHECK(d.pieces[k].size() == lengths[k]);
    CHECK(d.score == doctest::Approx(expected).epsilon(1e-12));
    CHECK(d.score >= 0.0);
    CHECK(d.score <= 1.0);
    CHECK(closeness_walks(bench, bench).score == 1.0);
  }
}

TEST_CASE("closeness is invariant under consistent relabelling") {
  std::mt19937_64 rng(7);
  LabelMap swap{{"A", "Q"}, {"B", "R"}, {"C", "S"}, {"D", "T"}};
  for (int i = 0; i < 2000; ++i) {
    auto t = oracle::random_tree(rng, 8, 4);
    auto b = oracle::random_tree(rng, 8, 4);
    CHECK(closeness(normalize(t, swap), normalize(b, swap)) == closeness(t, b));
    CHECK(closeness(t, t) == 1.0);
  }
}

TEST_CASE("label maps") {
  auto m = load_label_map("# labels\nN1 N\nV1 V\n");
  CHECK(m.size() == 2);
  CHECK(load_label_map(save_label_map(m)) == m);
  auto t = parse_bracketed("(NP (N1 (N dog)))");
  auto n = normalize(t, m);
  CHECK(to_bracketed(n) == "(NP (N (N dog)))");
  CHECK(normalize(n, m) == n);
  CHECK(normalize(t, {}) == t);
  // Tokens keep their text even if it matches a label.
  CHECK(to_bracketed(normalize(parse_bracketed("(X N1)"), m)) == "(X N1)");
  CHECK_THROWS(load_label_map("N1\n"));
}

TEST_CASE("coverage and plausibility") {
  CHECK(round_percent(45, 60) == 75.0);
  CHECK(round_percent(0, 60) == 0.0);
  CHECK(round_percent(60, 60) == 100.0);
  CHECK(round_percent(1, 3) == doctest::Approx(33.3));

  ChartParser parser(load_grammar("S -> NP VP\nNP -> N\nVP -> V\nVP -> V NP\n"),
                     load_lexicon("tag n N\ntag v V\n"));
  std::vector<TaggedSentence> s(3);
  s[0] = {"1", {"n", "v"}, {Symbol("n"), Symbol("v")}};
  s[1] = {"2", {"n", "v", "n"}, {Symbol("n"), Symbol("v"), Symbol("n")}};
  s[2] = {"3", {"v", "n"}, {Symbol("v"), Symbol("n")}};
  auto cov = coverage(parser, s, {1, 3000});
  CHECK(cov.parsed == 2);
  CHECK(cov.percent == doctest::Approx(66.7));
  CHECK(cov.per_sentence == std::vector<bool>{true, true, false});

  std::vector<LabelTree> bench{parse_bracketed("(S (NP (N n)) (VP (V v)))"),
                               parse_bracketed("(X (Y n) (Z v n))")};
  auto pl = plausibility(parser, std::span(s).first(2), bench, {1, 3000});
  CHECK(pl.best[0] == 1.0);
  CHECK(pl.best[1] == 0.0);
  CHECK(pl.mean == 0.5);
  bench.push_back(bench[0]);
  CHECK_THROWS_AS(plausibility(parser, s, bench, {1, 3000}), std::runtime_error);
}
