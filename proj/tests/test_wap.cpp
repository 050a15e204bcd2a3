#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eberlein/det_rng.hpp"
#include "eberlein/wap.hpp"

using namespace eberlein;

namespace {
const Structure ps(StructureKind::PureSet);
const Structure dlo(StructureKind::DLO);
const Structure rado(StructureKind::RadoGraph);

WapClass from_maps(const Structure& s, MapGraph x, MapGraph y) {
  return WapClass(EmbeddingChunk(s, std::move(x)), EmbeddingChunk(s, std::move(y)));
}
}  // namespace

TEST_CASE("stable independence is intersection containment") {
  for (const Structure& s : {ps, dlo, rado}) {
    CHECK(is_independent(s, {0, 1}, {0}, {0, 2}));
    CHECK(!is_independent(s, {0, 1}, {}, {1}));
    CHECK(is_independent(s, {0, 1}, {0, 1, 4}, {2, 3}));  // A inside C
    CHECK(is_independent(s, {}, {}, {0, 1, 2}));
  }
}

TEST_CASE("class equality is the canonical invariant") {
  WapClass p = from_maps(ps, {{0, 0}, {1, 1}}, {{0, 0}, {1, 2}});
  CHECK(p.canonical_invariant() == MapGraph{{0, 0}});
  // a different representative pair realizing the same matching
  WapClass q = from_maps(ps, {{0, 5}, {1, 7}}, {{0, 5}, {1, 9}});
  CHECK(p == q);
  WapClass r = from_maps(ps, {{0, 0}, {1, 1}}, {{0, 1}, {1, 2}});
  CHECK(r.canonical_invariant() == MapGraph{{1, 0}});
  CHECK(p != r);
}

TEST_CASE("wap_star swaps the chunks and transposes the matching") {
  WapClass p = from_maps(ps, {{0, 0}, {1, 1}}, {{0, 1}, {1, 4}});
  CHECK(wap_star(p).canonical_invariant() == MapGraph{{0, 1}});
  CHECK(p.canonical_invariant() == MapGraph{{1, 0}});
  WapClass e = from_maps(ps, {{0, 3}}, {{0, 3}});
  CHECK(wap_star(e) == e);

  DetRng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    StructureKind kind = static_cast<StructureKind>(rng.range(0, 2));
    Structure s(kind);
    Tuple sup = {0, 1, rng.range(2, 5)};
    std::sort(sup.begin(), sup.end());
    sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
    auto matchings = enumerate_matchings(s, sup);
    const MapGraph& m = matchings[static_cast<std::size_t>(
        rng.range(0, static_cast<std::int64_t>(matchings.size()) - 1))];
    WapClass p2 = canonical_class(s, sup, m);
    CHECK(wap_star(wap_star(p2)) == p2);
  }
}

TEST_CASE("products compose matchings") {
  // matching {a->b} times {b->c} gives {a->c}
  Tuple sup = {0, 1, 2};
  WapClass p = canonical_class(ps, sup, MapGraph{{0, 1}});
  WapClass q = canonical_class(ps, sup, MapGraph{{1, 2}});
  CHECK(wap_product(p, q).canonical_invariant() == MapGraph{{0, 2}});

  WapClass unit = canonical_class(ps, sup, MapGraph{{0, 0}, {1, 1}, {2, 2}});
  CHECK(wap_product(p, unit) == p);
  CHECK(wap_product(unit, q) == q);
}

TEST_CASE("wap_product is associative on canonical invariants") {
  for (const Structure& s : {ps, dlo, rado}) {
    Tuple sup = {0, 1};
    auto matchings = enumerate_matchings(s, sup);
    std::vector<WapClass> classes;
    for (const auto& m : matchings) classes.push_back(canonical_class(s, sup, m));
    for (const auto& a : classes)
      for (const auto& b : classes)
        for (const auto& c : classes)
          CHECK(wap_product(wap_product(a, b), c) == wap_product(a, wap_product(b, c)));
  }
}

TEST_CASE("products do not depend on the fragment size") {
  for (const Structure& s : {ps, dlo, rado}) {
    Tuple sup = {0, 1};
    auto matchings = enumerate_matchings(s, sup);
    for (const auto& mp : matchings)
      for (const auto& mq : matchings) {
        WapClass p = canonical_class(s, sup, mp);
        WapClass q = canonical_class(s, sup, mq);
        MapGraph small = wap_product(p, q).canonical_invariant();
        Tuple big_sup = {0, 1, 3, 4};
        WapClass pb = extend_to_support(p, big_sup);
        WapClass qb = extend_to_support(q, big_sup);
        CHECK(pb.canonical_invariant() == mp);  // extension adds no matches
        MapGraph big = wap_product(pb, qb).canonical_invariant();
        MapGraph restricted;
        for (const auto& [a, b] : big)
          if ((a == 0 || a == 1) && (b == 0 || b == 1)) restricted.push_back({a, b});
        CHECK(restricted == small);
      }
  }
}

TEST_CASE("rechunked product matches manual extension") {
  WapClass p = canonical_class(ps, {0, 1}, MapGraph{{0, 0}});
  WapClass q = canonical_class(ps, {1, 2}, MapGraph{{1, 1}});
  WapClass pq = wap_product_rechunked(p, q);
  CHECK(pq.support() == Tuple{0, 1, 2});
}

TEST_CASE("g_action composes contravariantly and preserves supports") {
  Tuple sup = {0, 1, 2};
  WapClass p = canonical_class(ps, sup, MapGraph{{0, 1}});
  PartialIso id = PartialIso::identity_on(ps, sup);
  CHECK(g_action(id, p) == p);

  PartialIso g(ps, MapGraph{{0, 1}, {1, 2}, {2, 0}});
  PartialIso h(ps, MapGraph{{0, 0}, {1, 2}, {2, 1}});
  CHECK(g_action(compose(g, h), p) == g_action(g, g_action(h, p)));
  // the invariant transforms: matching (a,b) becomes (g a, b)
  WapClass gp = g_action(g, p);
  CHECK(gp.canonical_invariant() == MapGraph{{1, 1}});

  PartialIso off_support(ps, MapGraph{{0, 5}, {1, 1}, {2, 2}});
  CHECK_THROWS_AS(g_action(off_support, p), NotBijectiveOnSupport);
}

TEST_CASE("model-theoretic idempotency follows the pinned examples") {
  // x = y: full intersection, equal types
  WapClass e = from_maps(ps, {{0, 0}, {1, 1}}, {{0, 0}, {1, 1}});
  CHECK(is_idempotent_mt(e));
  // x:(0,1)->(0,1), y:(0,1)->(0,2): C={0}, patterns agree
  WapClass f = from_maps(ps, {{0, 0}, {1, 1}}, {{0, 0}, {1, 2}});
  CHECK(is_idempotent_mt(f));
  // x:(0,1)->(0,1), y:(0,1)->(1,2): C={1}, patterns disagree
  WapClass g = from_maps(ps, {{0, 0}, {1, 1}}, {{0, 1}, {1, 2}});
  CHECK(!is_idempotent_mt(g));
}

TEST_CASE("regularity is independence over the intersection, always true here") {
  for (const Structure& s : {ps, dlo, rado}) {
    Tuple sup = {0, 1, 2};
    for (const auto& m : enumerate_matchings(s, sup)) {
      WapClass p = canonical_class(s, sup, m);
      CHECK(is_regular_mt(p));
      CHECK(wap_product(wap_product(p, wap_star(p)), p) == p);
    }
  }
}

TEST_CASE("to_partial_map is the transposed matching and a *-map") {
  WapClass e = from_maps(ps, {{0, 4}, {1, 6}}, {{0, 4}, {1, 6}});
  PartialIso m = to_partial_map(e);
  CHECK(m == PartialIso::identity_on(ps, {0, 1}));

  WapClass p = from_maps(ps, {{0, 0}, {1, 1}}, {{0, 1}, {1, 3}});
  // matching {(1,0)}: x(1) = y(0) = 1, so the partial map sends 0 to 1
  CHECK(to_partial_map(p).graph() == MapGraph{{0, 1}});
  CHECK(to_partial_map(wap_star(p)) == star(to_partial_map(p)));
}

TEST_CASE("factor map carries products to compositions, exhaustively small") {
  for (const Structure& s : {ps, dlo}) {
    Tuple sup = {0, 1, 2};
    auto matchings = enumerate_matchings(s, sup);
    std::vector<WapClass> classes;
    for (const auto& m : matchings) classes.push_back(canonical_class(s, sup, m));
    std::set<MapGraph> images;
    for (const auto& p : classes) CHECK(images.insert(to_partial_map(p).graph()).second);
    for (const auto& p : classes)
      for (const auto& q : classes)
        CHECK(to_partial_map(wap_product(p, q)) ==
              compose(to_partial_map(p), to_partial_map(q)));
  }
}

TEST_CASE("free_amalgam realizes the existence axiom") {
  for (const Structure& s : {ps, dlo, rado}) {
    EmbeddingChunk x(s, MapGraph{{0, 0}, {1, 1}, {2, 2}});
    EmbeddingChunk moved = free_amalgam(s, x, {0}, {0, 1, 2, 3});
    std::set<Elem> b = {0, 1, 2, 3};
    for (Elem v : moved.image())
      CHECK((b.count(v) ? v == 0 : true));
    Tuple joint_old = x.image(), joint_new = moved.image();
    joint_old.push_back(0);
    joint_new.push_back(0);
    CHECK(qf_type(s, joint_old) == qf_type(s, joint_new));
  }
}

TEST_CASE("mismatched supports are rejected") {
  WapClass p = canonical_class(ps, {0, 1}, {});
  WapClass q = canonical_class(ps, {0, 2}, {});
  CHECK_THROWS_AS(wap_product(p, q), RealignmentFailed);
  CHECK_THROWS_AS(from_maps(ps, {{0, 0}}, {{1, 1}}), InvariantViolation);
}
