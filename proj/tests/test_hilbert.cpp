#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eberlein/det_rng.hpp"
#include "eberlein/hilbert.hpp"

using namespace eberlein;

namespace {
const Structure ps(StructureKind::PureSet);
const Structure dlo(StructureKind::DLO);
const Structure rado(StructureKind::RadoGraph);

PartialIso total_map(const Structure& s, MapGraph seed, const std::vector<Elem>& window) {
  return extend_over(s, PartialIso(s, std::move(seed)), window);
}
}  // namespace

TEST_CASE("equivalence-relation coefficients are exact indicators") {
  // f(g) = [g(0) = 0]
  MatrixCoefficient f = eq_rel_coefficient(ps, RelKind::Equality, {0}, {0});
  CHECK(f.evaluate(PartialIso(ps, MapGraph{{0, 0}})) == Rational(1));
  CHECK(f.evaluate(PartialIso(ps, MapGraph{{0, 3}})) == Rational(0));

  // pair relation: a=(0,1), b=(2,3), g(2)=0, g(3)=1 gives 1
  MatrixCoefficient f2 = eq_rel_coefficient(ps, RelKind::Equality, {0, 1}, {2, 3});
  CHECK(f2.evaluate(PartialIso(ps, MapGraph{{2, 0}, {3, 1}})) == Rational(1));
  CHECK(f2.evaluate(PartialIso(ps, MapGraph{{2, 0}, {3, 4}})) == Rational(0));
  // f(identity) = [a related to b]
  CHECK(f2.evaluate(PartialIso::identity_on(ps, {2, 3})) == Rational(0));
  MatrixCoefficient f3 = eq_rel_coefficient(ps, RelKind::Equality, {5}, {5});
  CHECK(f3.evaluate(PartialIso::identity_on(ps, {5})) == Rational(1));
}

TEST_CASE("same-type coefficients quotient by the orbit") {
  // the avatar must cover the canonical class representative, here (0, 2)
  PartialIso id = PartialIso::identity_on(dlo, {0, 2, 3, 4});
  MatrixCoefficient f = eq_rel_coefficient(dlo, RelKind::SameType, {0, 1}, {3, 4});
  // value(0)=1/2 > value(1)=1/4; value(3)=1/8 < value(4)=3/8, so the types of
  // (0,1) and (3,4) differ and the classes never meet
  CHECK(f.evaluate(id) == Rational(0));
  MatrixCoefficient g = eq_rel_coefficient(dlo, RelKind::SameType, {1, 0}, {3, 4});
  CHECK(g.evaluate(id) == Rational(1));
}

TEST_CASE("vanishing coefficients evaluate the function along the orbit") {
  std::vector<std::pair<Tuple, Rational>> table = {{{5}, Rational(1)}};
  MatrixCoefficient f = vanishing_coefficient(ps, table, {3});
  CHECK(f.evaluate(PartialIso(ps, MapGraph{{3, 5}})) == Rational(1));
  CHECK(f.evaluate(PartialIso(ps, MapGraph{{3, 4}})) == Rational(0));

  MatrixCoefficient zero = vanishing_coefficient(ps, {}, {0});
  CHECK(zero.evaluate(PartialIso(ps, MapGraph{{0, 9}})) == Rational(0));

  std::vector<std::pair<Tuple, Rational>> harmonic;
  for (Elem b = 0; b < 100; ++b)
    harmonic.push_back({{b}, Rational(1, static_cast<std::int64_t>(b) + 1)});
  MatrixCoefficient h = vanishing_coefficient(ps, harmonic, {0});
  CHECK(h.evaluate(PartialIso(ps, MapGraph{{0, 9}})) == Rational(1, 10));
  CHECK(h.evaluate(PartialIso(ps, MapGraph{{0, 200}})) == Rational(0));
}

TEST_CASE("eq_rel coefficients equal the relation indicator on all window permutations") {
  std::vector<Elem> window = {0, 1, 2, 3};
  std::vector<PartialIso> perms;
  Tuple img = {0, 1, 2, 3};
  std::sort(img.begin(), img.end());
  do {
    MapGraph g;
    for (std::size_t i = 0; i < 4; ++i) g.emplace_back(window[i], img[i]);
    perms.emplace_back(ps, std::move(g));
  } while (std::next_permutation(img.begin(), img.end()));
  CHECK(perms.size() == 24);
  for (Elem a0 = 0; a0 < 4; ++a0)
    for (Elem b0 = 0; b0 < 4; ++b0) {
      MatrixCoefficient f = eq_rel_coefficient(ps, RelKind::Equality, {a0}, {b0});
      for (const PartialIso& g : perms) {
        Rational v = f.evaluate(g);
        CHECK((v == Rational(0) || v == Rational(1)));
        CHECK(v == Rational(*g.apply(b0) == a0 ? 1 : 0));
      }
    }
}

TEST_CASE("Cauchy-Schwarz bound holds exactly on sampled evaluations") {
  DetRng rng(11);
  std::vector<std::pair<Tuple, Rational>> table;
  for (Elem b = 0; b < 8; ++b) table.push_back({{b}, rng.rational(5, 3)});
  MatrixCoefficient f = vanishing_coefficient(ps, table, {0});
  Rational bound2 = f.norm2_product();
  for (Elem target = 0; target < 12; ++target) {
    Rational val = f.evaluate(PartialIso(ps, MapGraph{{0, target}}));
    CHECK(val * val <= bound2);
  }
}

TEST_CASE("coefficient algebra stays {0,1}-valued under negation and product") {
  MatrixCoefficient m0 = eq_rel_coefficient(ps, RelKind::Equality, {0}, {0});
  MatrixCoefficient m1 = eq_rel_coefficient(ps, RelKind::Equality, {1}, {1});
  MatrixCoefficient neg = coefficient_negation(m0);
  MatrixCoefficient prod = coefficient_product(m0, m1);
  std::vector<Elem> window = {0, 1, 2, 3};
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      if (a == b) continue;
      PartialIso g = total_map(ps, {{0, a}, {1, b}}, window);
      Rational v0 = m0.evaluate(g), v1 = m1.evaluate(g);
      CHECK(neg.evaluate(g) == Rational(1) - v0);
      CHECK(prod.evaluate(g) == v0 * v1);
    }
}

TEST_CASE("boolean reconstruction: the pinned constructions") {
  std::vector<Elem> window = {0, 1, 2, 3};
  std::vector<PartialIso> sample;
  for (Elem a = 0; a < 4; ++a)
    sample.push_back(total_map(ps, {{0, a}}, window));
  MatrixCoefficient m0 = eq_rel_coefficient(ps, RelKind::Equality, {0}, {0});

  // f = m0 itself
  std::vector<int> target;
  for (const auto& g : sample)
    target.push_back(m0.evaluate(g) == Rational(1) ? 1 : 0);
  MatrixCoefficient r0 = boolean_reconstruct(sample, target, {m0}, {Rational(1)});
  for (std::size_t i = 0; i < sample.size(); ++i)
    CHECK(r0.evaluate(sample[i]) == Rational(target[i]));

  // f = 1 - m0, as negation over {m0, 1}
  std::vector<int> neg_target;
  for (int v : target) neg_target.push_back(1 - v);
  MatrixCoefficient one = coefficient_one(ps);
  MatrixCoefficient r1 = boolean_reconstruct(sample, neg_target, {m0, one},
                                             {Rational(-1), Rational(1)});
  for (std::size_t i = 0; i < sample.size(); ++i)
    CHECK(r1.evaluate(sample[i]) == Rational(neg_target[i]));

  // f = m0 m1, the conjunction
  MatrixCoefficient m1 = eq_rel_coefficient(ps, RelKind::Equality, {1}, {1});
  std::vector<PartialIso> pair_sample;
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      if (a == b) continue;
      pair_sample.push_back(total_map(ps, {{0, a}, {1, b}}, window));
    }
  std::vector<int> conj_target;
  for (const auto& g : pair_sample)
    conj_target.push_back(
        m0.evaluate(g) == Rational(1) && m1.evaluate(g) == Rational(1) ? 1 : 0);
  MatrixCoefficient r2 = boolean_reconstruct(pair_sample, conj_target, {m0, m1},
                                             {Rational(1, 3), Rational(1, 3)});
  for (std::size_t i = 0; i < pair_sample.size(); ++i)
    CHECK(r2.evaluate(pair_sample[i]) == Rational(conj_target[i]));
}

TEST_CASE("boolean reconstruction rejects a coarse approximation") {
  std::vector<Elem> window = {0, 1, 2};
  std::vector<PartialIso> sample;
  for (Elem a = 0; a < 3; ++a) sample.push_back(total_map(ps, {{0, a}}, window));
  MatrixCoefficient m0 = eq_rel_coefficient(ps, RelKind::Equality, {0}, {0});
  // target differs on two sample points with the same pattern
  std::vector<int> target = {0, 1, 0};
  CHECK_THROWS_AS(boolean_reconstruct(sample, target, {m0}), ApproximationTooCoarse);
}

TEST_CASE("indiscernible samples validate and decompose exactly") {
  IndiscernibleSample pinned = standard_indiscernible_sample(
      {Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}, 4);
  CHECK(pinned.r2 == Rational(1));
  CHECK(pinned.c == Rational(1, 2));
  IndiscernibleDecomposition d = indiscernible_decompose(pinned);
  CHECK(d.predicted_norm2 == Rational(5, 8));
  CHECK(d.norm_identity_exact);
  CHECK(d.gram_identity_exact);

  // all vectors equal: residuals vanish
  IndiscernibleSample constant = standard_indiscernible_sample({Rational(2)}, {}, 5);
  IndiscernibleDecomposition dc = indiscernible_decompose(constant);
  CHECK(dc.predicted_norm2 == Rational(4));
  CHECK(dc.norm_identity_exact);
  for (const auto& row : dc.residual_gram)
    for (const Rational& x : row) CHECK(x == Rational(0));

  // orthonormal: norm 1/9 at n = 9
  IndiscernibleSample ortho = standard_indiscernible_sample({}, {Rational(1)}, 9);
  IndiscernibleDecomposition dn = indiscernible_decompose(ortho);
  CHECK(dn.norm2_w_bar == Rational(1, 9));
  CHECK(dn.gram_identity_exact);
}

TEST_CASE("a non-indiscernible list is rejected") {
  std::vector<std::vector<Rational>> vs = {{Rational(1)}, {Rational(2)}};
  CHECK_THROWS_AS(make_indiscernible_sample(std::move(vs)), NotIndiscernible);
}

TEST_CASE("decay along a chunk sequence, including the zero function") {
  std::vector<EmbeddingChunk> chunks;
  for (Elem i = 0; i < 64; ++i) chunks.emplace_back(ps, MapGraph{{0, i}});

  std::vector<std::pair<Tuple, Rational>> table;
  for (Elem k = 0; k < 64; ++k)
    table.push_back({{k}, Rational(1, static_cast<std::int64_t>(k) + 1)});
  MatrixCoefficient f = vanishing_coefficient(ps, table, {0});
  DecayReport r = decay_check(f, chunks, {0}, 64);
  CHECK(r.holds);
  CHECK(r.avg > 0.0L);

  MatrixCoefficient zero = vanishing_coefficient(ps, {}, {0});
  DecayReport rz = decay_check(zero, chunks, {0}, 64);
  CHECK(rz.holds);
  CHECK(rz.avg == 0.0L);

  // a constant sequence is rejected
  std::vector<EmbeddingChunk> constant(16, EmbeddingChunk(ps, MapGraph{{0, 3}}));
  CHECK_THROWS_AS(decay_check(f, constant, {0}, 16), SequenceNotIndiscernible);
}

TEST_CASE("the decay bound holds for randomized finitely-supported functions") {
  DetRng rng(31);
  std::vector<EmbeddingChunk> chunks;
  for (Elem i = 0; i < 512; ++i) chunks.emplace_back(ps, MapGraph{{0, i}});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<Tuple, Rational>> table;
    Elem support = rng.range(1, 40);
    for (Elem b = 0; b < support; ++b)
      table.push_back({{rng.range(0, 600)}, rng.rational(6, 4)});
    MatrixCoefficient f = vanishing_coefficient(ps, table, {0});
    for (std::size_t n : {1ul, 7ul, 64ul, 512ul}) {
      DecayReport r = decay_check(f, chunks, {0}, n);
      CHECK(r.holds);
    }
  }
}

TEST_CASE("inner value census stays within the double-coset bound") {
  for (const Structure& s : {ps, dlo, rado}) {
    PermRep rep(s, {RepBlock{RelKind::Equality, 1}});
    Vec eta = Vec::basis(rep.class_of(0, {0}));
    CensusReport r = inner_value_census(rep, eta, {0}, census_sample(s, {0}, 30));
    CHECK(r.holds);
    CHECK(r.values.size() <= 2);  // basis orbit: inner products 0 or 1
    if (s.kind() == StructureKind::PureSet) CHECK(r.double_cosets == 2);
    if (s.kind() == StructureKind::DLO) CHECK(r.double_cosets == 3);
    if (s.kind() == StructureKind::RadoGraph) CHECK(r.double_cosets == 3);
  }
  // the zero vector yields a single value
  PermRep rep(ps, {RepBlock{RelKind::Equality, 1}});
  CensusReport rz = inner_value_census(rep, Vec(), {0}, census_sample(ps, {0}, 10));
  CHECK(rz.values.size() == 1);
  CHECK(rz.holds);
}

TEST_CASE("census detects a moved eta") {
  PermRep rep(ps, {RepBlock{RelKind::Equality, 1}});
  Vec eta = Vec::basis(rep.class_of(0, {1}));  // not fixed by maps fixing (0)
  std::vector<PartialIso> sample = {
      PartialIso(ps, MapGraph{{0, 0}, {1, 2}, {2, 1}}),
  };
  CHECK_THROWS_AS(inner_value_census(rep, eta, {0}, sample), EtaNotFixed);
}
