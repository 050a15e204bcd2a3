#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eberlein/partial_iso.hpp"
#include "eberlein/semigroup.hpp"

using namespace eberlein;

namespace {
const Structure ps(StructureKind::PureSet);
const Structure dlo(StructureKind::DLO);
const Structure rado(StructureKind::RadoGraph);
}  // namespace

TEST_CASE("construction enforces the invariants") {
  CHECK_NOTHROW(PartialIso(ps, MapGraph{{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(PartialIso(ps, MapGraph{{0, 1}, {0, 2}}), InvariantViolation);
  CHECK_THROWS_AS(PartialIso(ps, MapGraph{{0, 1}, {2, 1}}), InvariantViolation);
  // value(1)=1/4 < value(0)=1/2, so 0->0, 1->2 reverses the order
  CHECK_THROWS_AS(PartialIso(dlo, MapGraph{{0, 0}, {1, 2}}), InvariantViolation);
  CHECK_NOTHROW(PartialIso(dlo, MapGraph{{0, 0}, {1, 1}}));
  // edge(0,1) holds, edge(0,2) does not
  CHECK_THROWS_AS(PartialIso(rado, MapGraph{{0, 0}, {1, 2}}), InvariantViolation);
}

TEST_CASE("compose chases points") {
  PartialIso p(ps, MapGraph{{1, 2}});
  PartialIso q(ps, MapGraph{{3, 1}});
  CHECK(compose(p, q).graph() == MapGraph{{3, 2}});

  CHECK(compose(PartialIso::empty(ps), p).is_empty_map());
  CHECK(compose(p, PartialIso::empty(ps)).is_empty_map());

  PartialIso a(ps, MapGraph{{0, 0}, {1, 2}});
  PartialIso b(ps, MapGraph{{0, 1}, {5, 0}});
  CHECK(compose(a, b).graph() == MapGraph{{0, 2}, {5, 0}});
}

TEST_CASE("star is the relational converse") {
  PartialIso p(ps, MapGraph{{1, 2}, {4, 5}});
  CHECK(star(p).graph() == MapGraph{{2, 1}, {5, 4}});
  CHECK(star(star(p)) == p);
  CHECK(star(PartialIso::empty(ps)).is_empty_map());
  PartialIso e = PartialIso::identity_on(ps, {0, 3});
  CHECK(star(e) == e);
}

TEST_CASE("idempotents are exactly the partial identities") {
  CHECK(is_idempotent(PartialIso::identity_on(ps, {0, 3})));
  CHECK(!is_idempotent(PartialIso(ps, MapGraph{{1, 2}})));
  int idempotents = 0;
  auto all3 = all_partial_injections(ps, 3);
  CHECK(all3.size() == 34);
  for (const auto& p : all3)
    if (is_idempotent(p)) {
      ++idempotents;
      for (const auto& [a, b] : p.graph()) CHECK(a == b);
    }
  CHECK(idempotents == 8);  // the 2^3 partial identities
}

TEST_CASE("every partial injection is regular with unique inverse = star") {
  auto all = all_partial_injections(ps, 4);
  CHECK(all.size() == 209);
  for (const auto& p : all) {
    CHECK(is_regular(p));
    CHECK(inverse_of(p) == star(p));
  }
  for (const auto& p : all) {
    int inverses = 0;
    for (const auto& q : all)
      if (compose(compose(p, q), p) == p && compose(compose(q, p), q) == q) ++inverses;
    CHECK(inverses == 1);
  }
}

TEST_CASE("involution laws hold exhaustively on 3 points") {
  auto all = all_partial_injections(ps, 3);
  for (const auto& p : all)
    for (const auto& q : all) CHECK(star(compose(p, q)) == compose(star(q), star(p)));
}

TEST_CASE("extension steps stay type-preserving on every structure") {
  for (const Structure& s : {ps, dlo, rado}) {
    PartialIso p = PartialIso::empty(s);
    for (Elem a : {Elem(3), Elem(0), Elem(5), Elem(2)}) {
      p = extend_embedding(s, p, a);
      CHECK(qf_type(s, p.domain()) == qf_type(s, p.image()));
    }
    CHECK(p.size() == 4);
    CHECK_THROWS_AS(extend_embedding(s, p, 3), InvariantViolation);
  }
}
