#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "unilearn/error.hpp"
#include "unilearn/grammar.hpp"
#include "unilearn/model_filter.hpp"

using namespace unilearn;

namespace {

SemTypeMap basic_types() {
  SemTypeMap m;
  m.assign(category_from_label("VP"), parse_type("<<<e,t>,t>,t>"));
  m.assign(category_from_label("NP"), parse_type("<<e,t>,t>"));
  m.assign(category_from_label("S"), parse_type("t"));
  return m;
}

LPRule subcat_rule() { return parse_lp_rule("instantiated(subcat) < uninstantiated(subcat)"); }

}  // namespace

TEST_CASE("LP rules") {
  std::vector<LPRule> rules{subcat_rule()};
  std::vector<Category> v_np{parse_category("V[subcat=2]"), parse_category("NP")};
  CHECK_FALSE(check_lp(v_np, rules));
  std::vector<Category> np_v{parse_category("NP"), parse_category("V[subcat=2]")};
  auto bad = check_lp(np_v, rules);
  REQUIRE(bad);
  CHECK(bad->earlier == 0);
  CHECK(bad->later == 1);
  std::vector<Category> one{parse_category("V[subcat=2]")};
  CHECK_FALSE(check_lp(one, rules));
  auto eq = parse_lp_rule("cat=D < cat=A");
  std::vector<Category> a_d{parse_category("A"), parse_category("Det")};
  CHECK(check_lp(a_d, std::vector<LPRule>{eq}));
  CHECK(to_string(subcat_rule()) == "instantiated(subcat) < uninstantiated(subcat)");
  CHECK_THROWS_AS(parse_lp_rule("subcat"), FormatError);
  CHECK_THROWS_AS(parse_condition("frobbed(x)"), FormatError);
}

TEST_CASE("semantic composition check") {
  auto types = basic_types();
  Rule s = parse_rule("S -> NP VP");
  auto ok = check_semantics(s, types);
  CHECK(ok.kind == SemVerdict::Kind::ok);
  CHECK(ok.functor == std::optional<std::size_t>(1));
  Rule vpvp = parse_rule("VP -> VP VP");
  CHECK(check_semantics(vpvp, types).kind == SemVerdict::Kind::reject);
  Rule np = parse_rule("NP -> Det N1");
  CHECK(check_semantics(np, types).kind == SemVerdict::Kind::abstain);
  // The functor is found whichever daughter heads.
  Rule s2 = parse_rule("S -> NP VP {head=1}");
  CHECK(check_semantics(s2, types).functor == std::optional<std::size_t>(1));
  // Unary: types must agree.
  CHECK(check_semantics(parse_rule("NP -> NP"), types).kind == SemVerdict::Kind::ok);
  CHECK(check_semantics(parse_rule("NP -> VP"), types).kind == SemVerdict::Kind::reject);
}

TEST_CASE("type lookup prefers the most specific pattern") {
  SemTypeMap m;
  m.assign(category_from_label("V"), parse_type("e"));
  m.assign(parse_category("V[subcat=aux]"), parse_type("t"));
  CHECK(m.lookup(parse_category("V[subcat=aux, vform=fin]")) == parse_type("t"));
  CHECK(m.lookup(parse_category("V[subcat=v]")) == parse_type("e"));
  CHECK_FALSE(m.lookup(parse_category("N")));
}

TEST_CASE("head feature convention") {
  std::vector<Symbol> per{Symbol("per")};
  Rule r = parse_rule("[] -> V[per=3] NP");
  auto out = apply_hfc(r, 0, per);
  REQUIRE(out);
  CHECK(out->lhs.get(Symbol("per")) == Symbol("3"));
  Rule same = parse_rule("[per=3] -> V[per=3] NP");
  CHECK(apply_hfc(same, 0, per)->lhs == same.lhs);
  Rule clash = parse_rule("[per=1] -> V[per=3] NP");
  CHECK_FALSE(apply_hfc(clash, 0, per));
}

TEST_CASE("X-bar projection") {
  Rule r = parse_rule("[] -> Det N1");
  auto out = project_xbar(r);
  // Det (bar 0) may project to D1 or DP; N1 to NP.
  REQUIRE(out.size() == 3);
  CHECK(out[2].lhs == category_from_label("NP"));
  CHECK(*out[2].head == 1);
  auto unary = project_xbar(parse_rule("[] -> [cat=N, bar=0]"));
  REQUIRE(unary.size() == 2);
  CHECK(unary[0].lhs == category_from_label("N1"));
  CHECK(unary[1].lhs == category_from_label("NP"));
  CHECK(project_xbar(parse_rule("[] -> [num=sg] [per=3]")).empty());
  // An expectation on the LHS prunes conflicting projections.
  auto np_only = project_xbar(parse_rule("NP -> Det N1"));
  REQUIRE(np_only.size() == 1);
  CHECK(*np_only[0].head == 1);
}

TEST_CASE("filter pipeline") {
  ModelConfig m;
  m.semtypes = basic_types();
  m.lp_rules = {subcat_rule()};
  m.hfc_features = {Symbol("num")};
  CHECK(filter_instantiations(std::vector<Rule>{parse_rule("VP -> VP VP")}, m).empty());
  FilterTally tally;
  CHECK(filter_instantiations(std::vector<Rule>{parse_rule("[] -> NP V[subcat=v]")}, m, &tally).empty());
  CHECK(tally.lp >= 1);
  CHECK(filter_instantiations(std::vector<Rule>{}, m).empty());
  auto s = filter_instantiations(std::vector<Rule>{parse_rule("S -> NP VP")}, m);
  REQUIRE(s.empty());  // no daughter has cat S, so X-bar finds no head
  auto vp = filter_instantiations(std::vector<Rule>{parse_rule("[] -> V[subcat=v, num=sg] NP")}, m);
  REQUIRE(!vp.empty());
  CHECK(vp[0].lhs.get(Symbol("num")) == Symbol("sg"));
}

TEST_CASE("filtering only adds features and is idempotent") {
  std::mt19937_64 rng(5);
  ModelConfig m;
  m.semtypes = basic_types();
  m.lp_rules = {subcat_rule()};
  m.hfc_features = {Symbol("num"), Symbol("vform")};
  for (int i = 0; i < 3000; ++i) {
    Rule r{Category{}, {oracle::random_category(rng), oracle::random_category(rng)}, std::nullopt, std::nullopt};
    if (rng() % 4 == 0) r.lhs = oracle::random_category(rng);
    auto out = refine_candidate(r, m);
    for (const Rule& s : out) {
      CHECK(r.lhs.subsumes(s.lhs));
      for (std::size_t d = 0; d < 2; ++d) CHECK(r.rhs[d].subsumes(s.rhs[d]));
      auto again = refine_candidate(s, m);
      REQUIRE(again.size() == 1);
      CHECK(again[0].same_categories(s));
      CHECK(again[0].head == s.head);
    }
  }
}

TEST_CASE("X-bar alone equals plain projection") {
  std::mt19937_64 rng(8);
  auto m = ModelConfig::xbar_only();
  for (int i = 0; i < 2000; ++i) {
    Rule r{Category{}, {oracle::random_category(rng), oracle::random_category(rng)}, std::nullopt, std::nullopt};
    auto a = refine_candidate(r, m);
    auto b = project_xbar(r);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a[j].same_categories(b[j]));
      CHECK(a[j].head == b[j].head);
    }
  }
}

TEST_CASE("model configuration file") {
  auto m = load_model_config(
      "# model\n"
      "lp: instantiated(subcat) < uninstantiated(subcat)\n"
      "lp: cat=D < cat=A\n"
      "hfc: num, vform\n"
      "semtype VP = <<<e,t>,t>,t>\n"
      "semtype V[subcat=aux] = <t,t>\n"
      "xbar: N 0 -> 2\n"
      "disable: hfc\n");
  CHECK(m.lp_rules.size() == 2);
  CHECK(m.hfc_features.size() == 2);
  CHECK(m.semtypes.size() == 2);
  CHECK_FALSE(m.use_hfc);
  CHECK(m.xbar.mother_bars(Symbol("N"), 0) == std::vector<int>{2});
  CHECK(m.xbar.mother_bars(Symbol("V"), 0) == std::vector<int>{1, 2});
  CHECK_THROWS_AS(load_model_config("disable: xbar\n"), FormatError);
  CHECK_THROWS_AS(load_model_config("semtype VP = <e,t\n"), FormatError);
  CHECK_THROWS_AS(load_model_config("colour: red\n"), FormatError);
  CHECK_THROWS_AS(m.validate_features({Symbol("cat")}), std::invalid_argument);
}
