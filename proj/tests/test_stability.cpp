#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eberlein/stability.hpp"

using namespace eberlein;

namespace {
const Structure ps(StructureKind::PureSet);
const Structure dlo(StructureKind::DLO);
const Structure rado(StructureKind::RadoGraph);
}  // namespace

TEST_CASE("order ladders exist at every small length") {
  FormulaDescriptor order{dlo, FormulaKind::Order, 1};
  for (std::size_t n : {2ul, 5ul, 10ul}) {
    auto w = ladder_search(order, n, 64);
    REQUIRE(w.has_value());
    CHECK(w->length() == n);
    CHECK(w->verify(order));
  }
}

TEST_CASE("edge ladders embed the half graph") {
  FormulaDescriptor edge{rado, FormulaKind::Edge, 1};
  auto w = ladder_search(edge, 10, kDefaultWitnessCap);
  REQUIRE(w.has_value());
  CHECK(w->verify(edge));
}

TEST_CASE("equality admits no ladder of length two") {
  for (const Structure& s : {ps, dlo, rado}) {
    FormulaDescriptor eq{s, FormulaKind::Equality, 1};
    CHECK(!ladder_search(eq, 2, 30).has_value());
    CHECK(!ladder_search(eq, 7, 30).has_value());  // monotone in length
  }
  // arity-2 equality over a reduced window
  FormulaDescriptor eq2{ps, FormulaKind::Equality, 2};
  CHECK(!ladder_search(eq2, 2, 8).has_value());
}

TEST_CASE("formula evaluation dispatches and rejects mismatches") {
  FormulaDescriptor order{dlo, FormulaKind::Order, 1};
  CHECK(order.eval({1}, {0}));  // value(1)=1/4 < value(0)=1/2
  CHECK(!order.eval({0}, {1}));
  FormulaDescriptor bad{ps, FormulaKind::Order, 1};
  CHECK_THROWS_AS(bad.eval({0}, {1}), UnsupportedRelation);
}

TEST_CASE("the ladder translates into group avatars with the double-limit gap") {
  FormulaDescriptor order{dlo, FormulaKind::Order, 1};
  auto w = ladder_search(order, 10, 64);
  REQUIRE(w.has_value());
  LadderGroupData data = ladder_to_group_elements(dlo, *w);
  // f(g_i h_j) reproduces the ladder values
  auto fn = formula_function(order, data.anchor, data.base);
  for (std::size_t i = 0; i < data.rows.size(); ++i)
    for (std::size_t j = 0; j < data.cols.size(); ++j)
      CHECK(fn(compose(data.rows[i], data.cols[j])) == Rational(i <= j ? 1 : 0));
  DoubleLimitResult r = double_limit_table(fn, data.rows, data.cols);
  CHECK(r.row_then_col == Rational(1));
  CHECK(r.col_then_row == Rational(0));
  CHECK(!r.agree());
}

TEST_CASE("constant functions have agreeing limits") {
  std::vector<PartialIso> rows(8, PartialIso::identity_on(ps, {0, 1}));
  DoubleLimitResult r = double_limit_table(
      [](const PartialIso&) { return Rational(1, 3); }, rows, rows);
  CHECK(r.agree());
  CHECK(r.row_then_col == Rational(1, 3));
}

TEST_CASE("unsettled tails are inconclusive") {
  std::vector<PartialIso> elems;
  for (Elem i = 0; i < 8; ++i)
    elems.push_back(extend_over(ps, PartialIso(ps, MapGraph{{0, i}}), {0, 1}));
  // alternating values never settle
  auto fn = [](const PartialIso& p) {
    return Rational(*p.apply(0) % 2 == 0 ? 1 : 0);
  };
  CHECK_THROWS_AS(double_limit_table(fn, elems, elems), TailNotStabilized);
  // too-short samples are inconclusive, not wrong
  std::vector<PartialIso> tiny(2, PartialIso::identity_on(ps, {0}));
  CHECK_THROWS_AS(double_limit_table([](const PartialIso&) { return Rational(0); },
                                     tiny, tiny),
                  TailNotStabilized);
}
