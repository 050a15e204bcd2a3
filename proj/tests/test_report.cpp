#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eberlein/config.hpp"
#include "eberlein/report.hpp"

using namespace eberlein;

TEST_CASE("config parsing and validation") {
  nlohmann::json j = {{"kind", "dlo"}, {"scale", 16}, {"tuple_arity_cap", 3}};
  RunConfig cfg = parse_config(j);
  CHECK(cfg.kind == StructureKind::DLO);
  CHECK(cfg.scale == 16);
  CHECK(cfg.tuple_arity_cap == 3);
  CHECK(cfg.mode == ArithmeticMode::Exact);

  CHECK_THROWS_AS(parse_config({{"kind", "zfc"}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"scale", 0}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"tolerance", 0.5}}), ConfigError);
  CHECK_THROWS_AS(parse_config({{"mode", "float"}}), ConfigError);

  nlohmann::json f = {{"mode", "float"}, {"tolerance", 1e-9}};
  RunConfig cf = parse_config(f);
  CHECK(cf.mode == ArithmeticMode::Float);
}

TEST_CASE("reports serialize deterministically with sorted records") {
  RunConfig cfg;
  Report a, b;
  a.add("b_second", true, {{"n", 2}});
  a.add("a_first", true);
  a.add_status("c_third", CheckStatus::Inconclusive, {{"reason", "cap"}});
  b.add_status("c_third", CheckStatus::Inconclusive, {{"reason", "cap"}});
  b.add("a_first", true);
  b.add("b_second", true, {{"n", 2}});
  CHECK(a.to_json(cfg).dump() == b.to_json(cfg).dump());

  auto j = a.to_json(cfg);
  CHECK(j["checks"][0]["id"] == "a_first");
  CHECK(j["summary"]["pass"] == 2);
  CHECK(j["summary"]["inconclusive"] == 1);
  CHECK(!a.all_passed());  // inconclusive is not a pass

  Report ok;
  ok.add("x", true);
  CHECK(ok.all_passed());
  ok.add("y", false);
  CHECK(!ok.all_passed());
}

TEST_CASE("rationals round-trip through the p/q form") {
  CHECK(Rational(3, 6).str() == "1/2");
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational(5, -10) == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(2, 5));
}
