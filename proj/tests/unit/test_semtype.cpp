#include <doctest.h>

#include <random>

#include "unilearn/semtype.hpp"

using namespace unilearn;

namespace {

SemType random_type(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) return rng() % 2 ? SemType::entity() : SemType::truth();
  return SemType::function(random_type(rng, depth - 1), random_type(rng, depth - 1));
}

}  // namespace

TEST_CASE("function application") {
  auto vp = parse_type("<<<e,t>,t>,t>");
  auto np = parse_type("<<e,t>,t>");
  auto r = compose(vp, np);
  REQUIRE(r);
  CHECK(*r == SemType::truth());
  CHECK_FALSE(compose(vp, vp));
  CHECK(compose(parse_type("<e,t>"), SemType::entity()) == SemType::truth());
  CHECK_FALSE(compose(SemType::entity(), SemType::entity()));
  CHECK_FALSE(compose(SemType::truth(), SemType::truth()));
}

TEST_CASE("type syntax") {
  CHECK(parse_type("e") == SemType::entity());
  CHECK(parse_type("<<e,t>,t>") ==
        SemType::function(SemType::function(SemType::entity(), SemType::truth()), SemType::truth()));
  CHECK_THROWS_AS(parse_type("<e,t"), SemTypeSyntaxError);
  CHECK_THROWS_AS(parse_type(""), SemTypeSyntaxError);
  CHECK_THROWS_AS(parse_type("<e,t>>"), SemTypeSyntaxError);
  CHECK_THROWS_AS(parse_type("x"), SemTypeSyntaxError);
  try {
    parse_type("<e,x>");
    FAIL("expected a syntax error");
  } catch (const SemTypeSyntaxError& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("printing round-trips and application is exact") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 5000; ++i) {
    SemType a = random_type(rng, 4), b = random_type(rng, 4);
    CHECK(parse_type(to_string(a)) == a);
    auto r = compose(a, b);
    bool applies = !a.is_base() && a.argument() == b;
    CHECK(r.has_value() == applies);
    if (r) CHECK(*r == a.result());
  }
}
