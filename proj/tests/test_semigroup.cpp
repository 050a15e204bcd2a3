#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "eberlein/semigroup.hpp"

using namespace eberlein;

namespace {

const Structure ps(StructureKind::PureSet);

// full (non-injective) transformations of {0..n-1}, quarantined here for the
// negative example: non-commuting idempotents break inverse uniqueness
using Transformation = std::vector<int>;
Transformation tmul(const Transformation& f, const Transformation& g) {
  Transformation out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = f[static_cast<std::size_t>(g[i])];
  return out;
}

}  // namespace

TEST_CASE("generate reaches the full symmetric inverse monoid on 3 points") {
  // composition never raises rank, so the permutations need a rank-2
  // companion (a partial identity) to reach the rank-2 layer
  std::vector<PartialIso> gens;
  for (Elem i = 0; i < 3; ++i)
    for (Elem j = 0; j < 3; ++j) gens.emplace_back(ps, MapGraph{{i, j}});
  gens.emplace_back(ps, MapGraph{{0, 1}, {1, 0}, {2, 2}});
  gens.emplace_back(ps, MapGraph{{0, 1}, {1, 2}, {2, 0}});
  gens.push_back(PartialIso::identity_on(ps, {0, 1}));
  SemigroupTable t = generate(ps, gens, {0, 1, 2});
  CHECK(!t.cayley.truncated);
  CHECK(t.elements.size() == 34);

  std::vector<PartialIso> sorted = t.elements;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == all_partial_injections(ps, 3));
}

TEST_CASE("rank-1 generators with permutations stop at the rank gap") {
  std::vector<PartialIso> gens;
  for (Elem i = 0; i < 3; ++i)
    for (Elem j = 0; j < 3; ++j) gens.emplace_back(ps, MapGraph{{i, j}});
  gens.emplace_back(ps, MapGraph{{0, 1}, {1, 0}, {2, 2}});
  gens.emplace_back(ps, MapGraph{{0, 1}, {1, 2}, {2, 0}});
  SemigroupTable t = generate(ps, gens, {0, 1, 2});
  CHECK(t.elements.size() == 16);  // 6 permutations + 9 rank-1 maps + empty
}

TEST_CASE("trivial generator sets") {
  PartialIso id = PartialIso::identity_on(ps, {0, 1, 2});
  SemigroupTable t1 = generate(ps, {id}, {0, 1, 2});
  CHECK(t1.elements.size() == 1);

  SemigroupTable t2 = generate(ps, {PartialIso::empty(ps)}, {0, 1, 2});
  CHECK(t2.elements.size() == 2);  // empty map and the adjoined identity
}

TEST_CASE("cap truncation is flagged, checks refuse truncated tables") {
  std::vector<PartialIso> gens;
  gens.emplace_back(ps, MapGraph{{0, 1}, {1, 2}, {2, 0}});
  gens.emplace_back(ps, MapGraph{{0, 0}, {1, 1}});
  SemigroupTable t = generate(ps, gens, {0, 1, 2}, 2);
  CHECK(t.cayley.truncated);
  CHECK_THROWS_AS(check_inverse_semigroup(t.cayley), IncompleteTable);
  CHECK_THROWS_AS(idempotents_self_adjoint(t), IncompleteTable);
}

TEST_CASE("generate is insensitive to generator order") {
  std::vector<PartialIso> gens = {
      PartialIso(ps, MapGraph{{0, 1}, {1, 0}, {2, 2}}),
      PartialIso(ps, MapGraph{{0, 0}, {1, 1}}),
      PartialIso(ps, MapGraph{{2, 0}}),
  };
  SemigroupTable a = generate(ps, gens, {0, 1, 2});
  std::reverse(gens.begin(), gens.end());
  SemigroupTable b = generate(ps, gens, {0, 1, 2});
  std::vector<PartialIso> ea = a.elements, eb = b.elements;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  CHECK(ea == eb);
}

TEST_CASE("inverse semigroup report on the symmetric inverse monoid") {
  auto elems = all_partial_injections(ps, 3);
  auto [closed, table] = close_under(
      elems, [](const PartialIso& a, const PartialIso& b) { return compose(a, b); }, 64);
  CHECK(!table.truncated);
  InverseSemigroupReport r = check_inverse_semigroup(table);
  CHECK(r.regular);
  CHECK(r.idempotents_commute);
  CHECK(r.unique_inverses);
  CHECK(((r.regular && r.idempotents_commute) == r.unique_inverses));

  SemigroupTable st{ps, closed, table};
  CHECK(idempotents_self_adjoint(st));
  CHECK(left_ideal_criterion_holds(st));
}

TEST_CASE("non-commuting idempotents break inverse uniqueness") {
  // constant maps on {0,1}: both idempotent, ef != fe, and each inverts the
  // other, so inverses are not unique
  Transformation e = {0, 0}, f = {1, 1};
  auto [elems, table] = close_under<Transformation>({e, f}, tmul, 16);
  CHECK(!table.truncated);
  CHECK(elems.size() == 2);
  InverseSemigroupReport r = check_inverse_semigroup(table);
  CHECK(r.regular);
  CHECK(!r.idempotents_commute);
  CHECK(!r.unique_inverses);
  CHECK(((r.regular && r.idempotents_commute) == r.unique_inverses));
}

TEST_CASE("trivial semigroup satisfies everything") {
  Transformation id = {0, 1};
  auto [elems, table] = close_under<Transformation>({id}, tmul, 4);
  InverseSemigroupReport r = check_inverse_semigroup(table);
  CHECK(r.regular);
  CHECK(r.idempotents_commute);
  CHECK(r.unique_inverses);
}

TEST_CASE("ef idempotent iff ef = fe, for idempotents of the monoid") {
  auto all = all_partial_injections(ps, 3);
  for (const auto& e : all) {
    if (!is_idempotent(e)) continue;
    for (const auto& f : all) {
      if (!is_idempotent(f)) continue;
      PartialIso ef = compose(e, f), fe = compose(f, e);
      CHECK(is_idempotent(ef) == (ef == fe));
      CHECK(ef == fe);  // partial identities commute outright
    }
  }
}

TEST_CASE("generators outside the window are rejected") {
  std::vector<PartialIso> gens = {PartialIso(ps, MapGraph{{0, 7}})};
  CHECK_THROWS_AS(generate(ps, gens, {0, 1, 2}), InvariantViolation);
}
