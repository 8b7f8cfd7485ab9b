#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "unilearn/category.hpp"
#include "unilearn/error.hpp"

using namespace unilearn;

TEST_CASE("unify merges compatible bundles") {
  auto np = Category::of({{"cat", "NP"}});
  CHECK(unify(Category{}, np) == np);
  auto a = Category::of({{"cat", "NP"}, {"per", "3"}});
  auto b = Category::of({{"cat", "NP"}, {"num", "sg"}});
  CHECK(unify(a, b) == Category::of({{"cat", "NP"}, {"per", "3"}, {"num", "sg"}}));
  CHECK_FALSE(unify(np, Category::of({{"cat", "VP"}})).has_value());
}

TEST_CASE("labels come from cat and bar") {
  CHECK(label_of(Category::of({{"cat", "N"}, {"bar", "2"}})) == "NP");
  CHECK(label_of(Category::of({{"cat", "N"}, {"bar", "1"}})) == "N1");
  CHECK(label_of(Category::of({{"cat", "V"}, {"bar", "0"}, {"per", "3"}})) == "V");
  CHECK(label_of(Category{}) == "?");
  CHECK(label_of(category_from_label("S")) == "S");
  CHECK(label_of(category_from_label("Det")) == "Det");
  CHECK(category_from_label("Foo") == Category::of({{"cat", "Foo"}}));
}

TEST_CASE("category text syntax") {
  CHECK(parse_category("[]") == Category{});
  CHECK(parse_category("NP") == category_from_label("NP"));
  CHECK(parse_category("NP[ num = sg ]") ==
        Category::of({{"cat", "N"}, {"bar", "2"}, {"num", "sg"}}));
  CHECK(parse_category("[per=3]") == Category::of({{"per", "3"}}));
  CHECK(parse_category("NP[bar=2]") == category_from_label("NP"));
  CHECK_THROWS_AS(parse_category("NP[bar=1]"), FormatError);
  CHECK_THROWS_AS(parse_category("[bar=3]"), FormatError);
  CHECK_THROWS_AS(parse_category("[a=1, a=2]"), FormatError);
  CHECK_THROWS_AS(parse_category("[a=1"), FormatError);
  CHECK_THROWS_AS(parse_category("NP extra"), FormatError);
  CHECK_THROWS_AS(Category::of({{"a", "1"}, {"a", "1"}}), std::invalid_argument);
}

TEST_CASE("printing round-trips") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Category c = oracle::random_category(rng);
    CAPTURE(to_string(c));
    CHECK(parse_category(to_string(c)) == c);
  }
}

TEST_CASE("symbols intern by identity") {
  Symbol a("num"), b(std::string("nu") + "m");
  CHECK(a == b);
  CHECK(Symbol("Num") != a);
  CHECK(Symbol("a") < Symbol("b"));
}

TEST_CASE("unification algebra on random pairs") {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 20000; ++i) {
    Category a = oracle::random_category(rng), b = oracle::random_category(rng),
             c = oracle::random_category(rng);
    auto ab = unify(a, b), ba = unify(b, a);
    REQUIRE(ab.has_value() == ba.has_value());
    if (ab) {
      CHECK(*ab == *ba);
      CHECK(a.subsumes(*ab));
      CHECK(b.subsumes(*ab));
      auto abc = unify(*ab, c);
      auto bc = unify(b, c);
      auto a_bc = bc ? unify(a, *bc) : std::nullopt;
      CHECK(abc.has_value() == a_bc.has_value());
      if (abc && a_bc) CHECK(*abc == *a_bc);
    }
    CHECK(unify(a, a) == a);
    CHECK(unify(a, Category{}) == a);
  }
}
