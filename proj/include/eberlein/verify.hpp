#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eberlein/cb.hpp"
#include "eberlein/config.hpp"
#include "eberlein/det_rng.hpp"
#include "eberlein/hilbert.hpp"
#include "eberlein/partial_iso.hpp"
#include "eberlein/report.hpp"
#include "eberlein/semigroup.hpp"
#include "eberlein/stability.hpp"
#include "eberlein/wap.hpp"

namespace eberlein {

inline const std::vector<StructureKind>& bundled_kinds() {
  static const std::vector<StructureKind> kinds = {
      StructureKind::PureSet, StructureKind::DLO, StructureKind::RadoGraph};
  return kinds;
}

namespace detail {

inline std::string ld_str(long double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return buf;
}

inline std::vector<Elem> mask_to_set(unsigned mask, const std::vector<Elem>& window) {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < window.size(); ++i)
    if (mask & (1u << i)) out.push_back(window[i]);
  return out;
}

/// The 6-element window for the set-triple clauses.
inline std::vector<Elem> axiom_window(StructureKind) {
  return {0, 1, 2, 3, 4, 5};
}

/// Deterministic type-preserving re-embeddings of the window, used for the
/// invariance clause. The avoid sets are scattered rather than contiguous so
/// that BIT-graph relocations always keep a free low slot.
inline std::vector<PartialIso> window_reembeddings(const Structure& s,
                                                   const std::vector<Elem>& pts) {
  std::vector<PartialIso> maps;
  maps.push_back(PartialIso::identity_on(s, pts));
  const std::vector<std::vector<Elem>> avoids = {
      {0}, {1, 4}, {2, 5, 7}, {0, 3, 6, 9}};
  for (const auto& avoid : avoids)
    maps.emplace_back(s, relocate_off(s, {}, pts, avoid));
  return maps;
}

inline std::vector<Elem> apply_set(const PartialIso& g, const std::vector<Elem>& a) {
  std::vector<Elem> out;
  for (Elem x : a) out.push_back(*g.apply(x));
  std::sort(out.begin(), out.end());
  return out;
}

/// All supports of size 1..3 inside {0..7}: enough to realize every induced
/// substructure shape at this arity on each bundled structure.
inline std::vector<Tuple> small_supports() {
  std::vector<Tuple> out;
  for (unsigned mask = 1; mask < 256; ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    Tuple sup;
    for (int i = 0; i < 8; ++i)
      if (mask & (1u << i)) sup.push_back(i);
    out.push_back(std::move(sup));
  }
  return out;
}

inline WapClass canonical_class_avoiding(const Structure& s, const Tuple& support,
                                         const MapGraph& matching,
                                         const std::set<Elem>& avoid) {
  PartialIso x = extend_over(s, PartialIso::empty(s), support, avoid);
  MapGraph y0;
  for (const auto& [a, b] : matching) y0.emplace_back(b, *x.apply(a));
  PartialIso y_part(s, std::move(y0));
  std::set<Elem> avoid_y(avoid);
  for (Elem v : x.image()) avoid_y.insert(v);
  PartialIso y = extend_over(s, y_part, support, avoid_y);
  return WapClass(EmbeddingChunk(x), EmbeddingChunk(y));
}

}  // namespace detail

// --- criterion 1 ---------------------------------------------------------

inline void criterion_inverse_semigroup(Report& report, const RunConfig& cfg) {
  Structure s(StructureKind::PureSet);
  std::vector<PartialIso> elems = all_partial_injections(s, 4);
  bool pass = elems.size() == 209;

  auto [closed, table] = close_under(
      elems, [](const PartialIso& a, const PartialIso& b) { return compose(a, b); },
      512);
  pass = pass && !table.truncated && closed.size() == 209;

  std::map<PartialIso, int> index;
  for (std::size_t i = 0; i < closed.size(); ++i)
    index.emplace(closed[i], static_cast<int>(i));
  std::vector<int> star_idx(closed.size());
  for (std::size_t i = 0; i < closed.size(); ++i) {
    auto it = index.find(star(closed[i]));
    pass = pass && it != index.end();
    star_idx[i] = it->second;
  }
  int n = table.size();
  for (int i = 0; i < n && pass; ++i) {
    if (star_idx[static_cast<std::size_t>(star_idx[static_cast<std::size_t>(i)])] != i)
      pass = false;  // (p*)* = p
    for (int j = 0; j < n; ++j)
      if (star_idx[static_cast<std::size_t>(table.mul(i, j))] !=
          table.mul(star_idx[static_cast<std::size_t>(j)], star_idx[static_cast<std::size_t>(i)])) {
        pass = false;  // (pq)* = q* p*
        break;
      }
  }
  int idempotent_count = 0;
  for (int i = 0; i < n && pass; ++i) {
    // regular with star(p) the unique inverse
    std::vector<int> inverses;
    for (int j = 0; j < n; ++j)
      if (table.mul(table.mul(i, j), i) == i && table.mul(table.mul(j, i), j) == j)
        inverses.push_back(j);
    if (inverses.size() != 1 || inverses[0] != star_idx[static_cast<std::size_t>(i)])
      pass = false;
    if (table.is_idempotent(i)) {
      ++idempotent_count;
      if (star_idx[static_cast<std::size_t>(i)] != i) pass = false;  // self-adjoint
      if (!is_idempotent(closed[static_cast<std::size_t>(i)])) pass = false;
    }
  }
  pass = pass && idempotent_count == 16;  // the partial identities: 2^4
  for (int e = 0; e < n && pass; ++e) {
    if (!table.is_idempotent(e)) continue;
    for (int f = 0; f < n; ++f)
      if (table.is_idempotent(f) && table.mul(e, f) != table.mul(f, e)) {
        pass = false;
        break;
      }
  }
  InverseSemigroupReport r = check_inverse_semigroup(table);
  pass = pass && r.regular && r.idempotents_commute && r.unique_inverses;
  pass = pass && ((r.regular && r.idempotents_commute) == r.unique_inverses);

  report.add("01_inverse_semigroup_monoid",
             pass,
             {{"elements", closed.size()},
              {"idempotents", idempotent_count},
              {"regular", r.regular},
              {"idempotents_commute", r.idempotents_commute},
              {"unique_inverses", r.unique_inverses}});

  // cross-check: generators reach the same monoid (cap-sensitive)
  std::vector<Elem> pts = {0, 1, 2, 3};
  std::vector<PartialIso> gens;
  gens.emplace_back(s, MapGraph{{0, 1}, {1, 0}, {2, 2}, {3, 3}});
  gens.emplace_back(s, MapGraph{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  gens.emplace_back(s, MapGraph{{0, 0}, {1, 1}, {2, 2}});
  SemigroupTable generated = generate(s, gens, pts, cfg.semigroup_cap);
  if (generated.cayley.truncated) {
    report.add_status("01a_generators_reach_monoid", CheckStatus::Inconclusive,
                      {{"reason", "cap exceeded"}, {"cap", cfg.semigroup_cap}});
  } else {
    std::vector<PartialIso> sorted_gen = generated.elements;
    std::sort(sorted_gen.begin(), sorted_gen.end());
    report.add("01a_generators_reach_monoid", sorted_gen == elems,
               {{"generated", generated.elements.size()}});
  }
}

// --- criterion 2 ---------------------------------------------------------

inline void criterion_independence_axioms(Report& report, const RunConfig&) {
  constexpr unsigned kMasks = 64;
  bool pass = true;
  nlohmann::ordered_json evidence;

  auto ind_mask = [](unsigned a, unsigned c, unsigned b) { return (a & b & ~c) == 0; };

  for (StructureKind kind : bundled_kinds()) {
    Structure s(kind);
    std::vector<Elem> window = detail::axiom_window(kind);
    std::vector<std::vector<Elem>> sets(kMasks);
    for (unsigned m = 0; m < kMasks; ++m) sets[m] = detail::mask_to_set(m, window);

    bool route_match = true;   // mask route vs public route
    bool symmetry = true, nontrivial = true;
    for (unsigned a = 0; a < kMasks && pass; ++a)
      for (unsigned c = 0; c < kMasks; ++c)
        for (unsigned b = 0; b < kMasks; ++b) {
          bool pub = is_independent(s, sets[a], sets[c], sets[b]);
          if (pub != ind_mask(a, c, b)) route_match = false;
          // symmetry: y inside x cap z
          if ((c & a & b) == c && pub != is_independent(s, sets[b], sets[c], sets[a]))
            symmetry = false;
          // non-triviality: independence forces the intersection into the base
          if (pub && (a & b & ~c) != 0) nontrivial = false;
        }
    pass = pass && route_match && symmetry && nontrivial;

    // invariance under type-preserving re-embeddings
    bool invariance = true;
    for (const PartialIso& g : detail::window_reembeddings(s, window)) {
      for (unsigned a = 0; a < kMasks && invariance; ++a)
        for (unsigned c = 0; c < kMasks && invariance; ++c)
          for (unsigned b = 0; b < kMasks; ++b) {
            bool before = ind_mask(a, c, b);
            bool after = is_independent(s, detail::apply_set(g, sets[a]),
                                        detail::apply_set(g, sets[c]),
                                        detail::apply_set(g, sets[b]));
            if (before != after) {
              invariance = false;
              break;
            }
          }
    }
    pass = pass && invariance;

    // existence via the free amalgam: x' y' equivalent to x y, y' z' = y z,
    // and x' independent from z over y
    bool existence = true;
    for (unsigned xm = 0; xm < kMasks && existence; ++xm)
      for (unsigned ym = 0; ym < kMasks && existence; ++ym)
        for (unsigned zm = 0; zm < kMasks; ++zm) {
          std::vector<Elem> x = sets[xm], y = sets[ym], z = sets[zm];
          std::vector<Elem> xy(x);
          xy.insert(xy.end(), y.begin(), y.end());
          std::sort(xy.begin(), xy.end());
          xy.erase(std::unique(xy.begin(), xy.end()), xy.end());
          std::vector<Elem> yz(y);
          yz.insert(yz.end(), z.begin(), z.end());
          std::sort(yz.begin(), yz.end());
          yz.erase(std::unique(yz.begin(), yz.end()), yz.end());
          EmbeddingChunk chunk = EmbeddingChunk(PartialIso::identity_on(s, xy));
          EmbeddingChunk moved = free_amalgam(s, chunk, y, yz);
          // x' = image of x under the relocation
          std::vector<Elem> x_moved;
          Tuple x_tuple, x_moved_tuple;
          for (Elem v : x) {
            x_tuple.push_back(v);
            Elem mv = moved.apply(v);
            x_moved.push_back(mv);
            x_moved_tuple.push_back(mv);
          }
          std::sort(x_moved.begin(), x_moved.end());
          // x' y ~ x y as tuples over the fixed y
          Tuple joint_old(x_tuple), joint_new(x_moved_tuple);
          for (Elem v : y) {
            joint_old.push_back(v);
            joint_new.push_back(v);
          }
          if (!(qf_type(s, joint_old) == qf_type(s, joint_new))) existence = false;
          if (!is_independent(s, x_moved, y, z)) existence = false;
          if (!existence) break;
        }
    pass = pass && existence;

    if (kind == StructureKind::PureSet) {
      evidence["window"] = 6;
      evidence["triples"] = kMasks * kMasks * kMasks;
    }
  }

  // transitivity and stationarity run on the equality reduct shared by all
  // three structures; the mask route was verified against each one above
  bool transitivity = true;
  for (unsigned a = 0; a < kMasks && transitivity; ++a)
    for (unsigned c = 0; c < kMasks && transitivity; ++c)
      for (unsigned b = 0; b < kMasks; ++b)
        for (unsigned d = 0; d < kMasks; ++d) {
          bool lhs = (a & (b | d) & ~c) == 0;
          bool rhs = ((a & d & ~(c | b)) == 0) && ((a & b & ~c) == 0);
          if (lhs != rhs) {
            transitivity = false;
            break;
          }
        }
  pass = pass && transitivity;

  Structure ps(StructureKind::PureSet);
  std::vector<std::vector<Elem>> plain_sets(kMasks);
  for (unsigned m = 0; m < kMasks; ++m)
    plain_sets[m] = detail::mask_to_set(m, {0, 1, 2, 3, 4, 5});
  auto st_eq = [&](unsigned xm, unsigned zm, unsigned base) {
    Tuple x(plain_sets[xm].begin(), plain_sets[xm].end());
    Tuple z(plain_sets[zm].begin(), plain_sets[zm].end());
    return stable_type_equal(ps, x, z, plain_sets[base]);
  };
  bool stationarity = true;
  for (unsigned y = 0; y < kMasks && stationarity; ++y)
    for (unsigned w = 0; w < kMasks && stationarity; ++w)
      for (unsigned x = 0; x < kMasks && stationarity; ++x)
        for (unsigned z = 0; z < kMasks; ++z) {
          if (__builtin_popcount(x) != __builtin_popcount(z)) continue;
          bool xw = (x & w & ~y) == 0, zw = (z & w & ~y) == 0;
          if (!xw || !zw) continue;
          if (!st_eq(x, z, y)) continue;
          if (!st_eq(x, z, y | w)) {
            stationarity = false;
            break;
          }
        }
  pass = pass && stationarity;

  evidence["quadruples"] = kMasks * kMasks * kMasks * kMasks;
  report.add("02_independence_axioms", pass, evidence);
}

// --- criteria 3 and 4 ----------------------------------------------------

inline void criterion_wap_lemma_and_factor(Report& report, const RunConfig&) {
  bool lemma_pass = true;
  bool factor_pass = true;
  long long classes_checked = 0, products_checked = 0;
  long long unrepresentable = 0;
  // every skip must be a certified no-witness outcome on the BIT graph,
  // never a budget overrun and never another structure
  bool skips_certified = true;

  for (StructureKind kind : bundled_kinds()) {
    Structure s(kind);
    for (const Tuple& sup : detail::small_supports()) {
      std::vector<MapGraph> matchings = enumerate_matchings(s, sup);
      std::vector<WapClass> classes;
      for (const MapGraph& m : matchings) classes.push_back(canonical_class(s, sup, m));
      // iterated placements along bit-thin adjacency chains of the BIT graph
      // can outgrow any fixed-width value; a product whose placement is
      // certified witness-free in range is counted rather than forced
      auto product_or_skip = [&](const WapClass& a,
                                 const WapClass& b) -> std::optional<WapClass> {
        try {
          return wap_product(a, b);
        } catch (const NoWitnessInRange&) {
          ++unrepresentable;
          if (kind != StructureKind::RadoGraph) skips_certified = false;
          return std::nullopt;
        } catch (const WitnessCapExceeded&) {
          ++unrepresentable;
          skips_certified = false;
          return std::nullopt;
        }
      };

      // criterion 3: model-theoretic predicates match the algebraic routes,
      // on the canonical representative and on a displaced one
      for (std::size_t i = 0; i < classes.size(); ++i) {
        const WapClass& p = classes[i];
        bool idem_mt = is_idempotent_mt(p);
        bool reg_mt = is_regular_mt(p);
        if (!reg_mt) lemma_pass = false;
        if (auto pp = product_or_skip(p, p)) {
          if (idem_mt != (*pp == p)) lemma_pass = false;
        }
        if (auto ps = product_or_skip(p, wap_star(p))) {
          if (auto full = product_or_skip(*ps, p)) {
            if (reg_mt != (*full == p)) lemma_pass = false;
          }
        }
        // a displaced representative of the same class: moving the first
        // chunk off one canonical image point is enough to change the pair
        std::set<Elem> displaced_avoid = {p.x().image().front()};
        WapClass shifted = detail::canonical_class_avoiding(s, sup, matchings[i], displaced_avoid);
        if (!(shifted == p)) factor_pass = false;  // class is representative-free
        if (is_idempotent_mt(shifted) != idem_mt) lemma_pass = false;
        if (is_regular_mt(shifted) != reg_mt) lemma_pass = false;
        ++classes_checked;
      }

      // criterion 4: the factor map is injective per support, a
      // *-homomorphism, and carries idempotents onto partial identities
      std::set<MapGraph> images;
      for (const WapClass& p : classes) {
        PartialIso m = to_partial_map(p);
        if (!images.insert(m.graph()).second) factor_pass = false;
        if (!(to_partial_map(wap_star(p)) == star(m))) factor_pass = false;
        bool idem = is_idempotent_mt(p);
        if (idem != is_idempotent(m)) factor_pass = false;
      }
      if (images.size() != matchings.size()) factor_pass = false;
      for (const WapClass& p : classes)
        for (const WapClass& q : classes) {
          auto pq = product_or_skip(p, q);
          if (!pq) continue;
          if (!(to_partial_map(*pq) == compose(to_partial_map(p), to_partial_map(q))))
            factor_pass = false;
          if (is_idempotent_mt(p) && is_idempotent_mt(q)) {
            if (auto qp = product_or_skip(q, p)) {
              if (!(*pq == *qp)) factor_pass = false;  // idempotents commute
            }
          }
          ++products_checked;
        }
    }
  }
  lemma_pass = lemma_pass && skips_certified;
  factor_pass = factor_pass && skips_certified;
  report.add("03_wap_idempotent_regular_equivalence", lemma_pass,
             {{"classes", classes_checked},
              {"unrepresentable_products", unrepresentable},
              {"skips_certified_witness_free", skips_certified}});
  report.add("04_factor_map_injective_star_homomorphism", factor_pass,
             {{"products", products_checked}});
}

// --- criterion 5 ---------------------------------------------------------

inline void criterion_decay(Report& report, const RunConfig& cfg) {
  constexpr std::size_t kN = 10000;
  long double tol =
      cfg.mode == ArithmeticMode::Float ? cfg.tolerance : 1e-9L;
  const long double pi_over_sqrt6 =
      std::numbers::pi_v<long double> / std::sqrt(6.0L);

  Structure s(StructureKind::PureSet);
  // f(x_i) = F(x_i(0)) with F(k) = 1/(k+1) and x_i(0) = i
  std::vector<std::pair<Tuple, Rational>> f_table;
  for (std::size_t k = 0; k < kN; ++k)
    f_table.push_back({{static_cast<Elem>(k)}, Rational(1, static_cast<std::int64_t>(k) + 1)});
  MatrixCoefficient coeff = vanishing_coefficient(s, f_table, {0});

  bool harmonic_pass = true;
  long double worst_margin = 1e30L;
  long double coeff_norm = coeff.norm_product_ld();
  harmonic_pass = harmonic_pass && coeff_norm <= pi_over_sqrt6;
  long double partial = 0;
  for (std::size_t i = 0; i < kN; ++i) {
    // exact evaluation along the chunk sequence {0 -> i}
    Rational val = coeff.evaluate(PartialIso(s, MapGraph{{0, static_cast<Elem>(i)}}));
    if (val != Rational(1, static_cast<std::int64_t>(i) + 1)) harmonic_pass = false;
    partial += val.to_long_double();
    std::size_t n = i + 1;
    long double avg = partial / static_cast<long double>(n);
    long double bound = (pi_over_sqrt6 + tol) / std::sqrt(static_cast<long double>(n));
    if (avg > bound) harmonic_pass = false;
    worst_margin = std::min(worst_margin, bound - avg);
  }
  report.add("05a_decay_sqrt_bound_harmonic", harmonic_pass,
             {{"n_max", kN},
              {"coefficient_norm", detail::ld_str(coeff_norm)},
              {"worst_margin", detail::ld_str(worst_margin)}});

  // the slow-decay witness: averages of 1/(i+1)^(1/3) outstrip the bound that
  // any truncation-built coefficient could certify
  constexpr std::size_t kTrunc = 1000;
  long double trunc_norm2 = 0;
  for (std::size_t k = 0; k < kTrunc; ++k)
    trunc_norm2 += std::pow(static_cast<long double>(k + 1), -2.0L / 3.0L);
  long double trunc_norm = std::sqrt(trunc_norm2);
  std::optional<std::size_t> first_violation;
  partial = 0;
  for (std::size_t i = 0; i < kN; ++i) {
    partial += std::pow(static_cast<long double>(i + 1), -1.0L / 3.0L);
    std::size_t n = i + 1;
    long double avg = partial / static_cast<long double>(n);
    long double bound = trunc_norm / std::sqrt(static_cast<long double>(n));
    if (avg > bound + tol) {
      first_violation = n;
      break;
    }
  }
  report.add("05b_decay_witness_slow_average", first_violation.has_value(),
             {{"truncation", kTrunc},
              {"truncated_norm", detail::ld_str(trunc_norm)},
              {"first_violation_n",
               first_violation ? nlohmann::ordered_json(*first_violation)
                               : nlohmann::ordered_json(nullptr)}});
}

// --- criterion 6 ---------------------------------------------------------

inline void criterion_indiscernible_gram(Report& report, const RunConfig& cfg) {
  DetRng rng(cfg.seed ^ 0x6a09e667f3bcc908ull);
  bool pass = true;
  int trials = 200;
  for (int t = 0; t < trials && pass; ++t) {
    std::size_t common_dim = static_cast<std::size_t>(rng.range(0, 3));
    std::size_t block_dim = static_cast<std::size_t>(rng.range(0, 2));
    std::vector<Rational> common, block;
    for (std::size_t i = 0; i < common_dim; ++i) common.push_back(rng.rational(4, 4));
    for (std::size_t i = 0; i < block_dim; ++i) block.push_back(rng.rational(4, 4));
    std::size_t n = static_cast<std::size_t>(rng.range(2, 50));
    IndiscernibleSample sample = standard_indiscernible_sample(common, block, n);
    IndiscernibleDecomposition d = indiscernible_decompose(sample);
    if (!d.norm_identity_exact || !d.gram_identity_exact) pass = false;
  }
  // the pinned instance: r2 = 1, c = 1/2, n = 4 gives exactly 5/8
  IndiscernibleSample pinned = standard_indiscernible_sample(
      {Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}, 4);
  IndiscernibleDecomposition d = indiscernible_decompose(pinned);
  pass = pass && pinned.r2 == Rational(1) && pinned.c == Rational(1, 2) &&
         d.predicted_norm2 == Rational(5, 8) && d.norm_identity_exact &&
         d.gram_identity_exact;
  report.add("06_indiscernible_gram_identity", pass,
             {{"trials", trials}, {"pinned_norm2", d.predicted_norm2.str()}});
}

// --- criterion 7 ---------------------------------------------------------

inline void criterion_inner_value_census(Report& report, const RunConfig&) {
  bool pass = true;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (StructureKind kind : bundled_kinds()) {
    Structure s(kind);
    std::vector<Tuple> cs = {{0}, {0, 1}};
    for (const Tuple& c : cs) {
      PermRep rep(s, {RepBlock{RelKind::Equality, static_cast<int>(c.size())}});
      Vec eta = Vec::basis(rep.class_of(0, c));
      CensusReport r = inner_value_census(rep, eta, c, census_sample(s, c, 50));
      pass = pass && r.holds;
      rows.push_back({{"structure", kind_name(kind)},
                      {"arity", c.size()},
                      {"values", r.values.size()},
                      {"double_cosets", r.double_cosets}});
    }
  }
  report.add("07_inner_value_census", pass, {{"window", 50}, {"cases", rows}});
}

// --- criterion 8 ---------------------------------------------------------

inline void criterion_cb_rank(Report& report, const RunConfig& cfg) {
  bool pass = true;

  // the tower oracle
  for (int depth = 1; depth <= 4; ++depth) {
    PointCloud z = nested_tower(depth, Rational(1));
    if (cb_rank(z) != depth + 1) pass = false;
    if (static_cast<long long>(distance_set(z).size()) != 2 * depth + 1) pass = false;
    PointCloud cur = z;
    while (!cur.empty()) {
      PointCloud next = cb_derivative(cur);
      std::set<Rational> d_cur = distance_set(cur), d_next = distance_set(next);
      if (!next.empty()) {
        bool subset = std::includes(d_cur.begin(), d_cur.end(), d_next.begin(), d_next.end());
        if (!subset || d_next.size() >= d_cur.size()) pass = false;
      }
      if (cb_rank(cur) > static_cast<int>(d_cur.size())) pass = false;
      cur = next;
    }
  }

  // randomized clouds
  DetRng rng(cfg.seed ^ 0xbb67ae8584caa73bull);
  int trials = 100;
  for (int t = 0; t < trials && pass; ++t) {
    PointCloud z;
    int iso = static_cast<int>(rng.range(0, 3));
    int fams = static_cast<int>(rng.range(0, 3));
    if (iso + fams == 0) iso = 1;
    for (int i = 0; i < iso; ++i) {
      std::vector<Rational> p;
      for (int k = 0; k < 3; ++k) p.push_back(rng.rational(3, 2));
      z.isolated.push_back(std::move(p));
    }
    for (int i = 0; i < fams; ++i) {
      CloudFamily f;
      for (int k = 0; k < 3; ++k) f.limit.push_back(rng.rational(3, 2));
      f.rho2 = Rational(rng.range(1, 5), rng.range(1, 3));
      f.depth = static_cast<int>(rng.range(1, 4));
      z.families.push_back(std::move(f));
    }
    std::set<Rational> d = distance_set(z);
    if (cb_rank(z) > static_cast<int>(d.size())) pass = false;
    PointCloud dz = cb_derivative(z);
    if (!dz.empty()) {
      std::set<Rational> d2 = distance_set(dz);
      bool subset = std::includes(d.begin(), d.end(), d2.begin(), d2.end());
      if (!subset || d2.size() >= d.size()) pass = false;
    }
    // isometry invariance under a signed coordinate permutation
    PointCloud zi = z;
    auto twist = [](std::vector<Rational>& v) {
      if (v.size() >= 2) std::swap(v[0], v[1]);
      for (std::size_t k = 0; k < v.size(); ++k)
        if (k % 2 == 0) v[k] = -v[k];
    };
    for (auto& p : zi.isolated) twist(p);
    for (auto& f : zi.families) twist(f.limit);
    if (cb_rank(zi) != cb_rank(z)) pass = false;
  }

  // ambit rank bounds over the window
  Structure ps(StructureKind::PureSet);
  PermRep rep_ps(ps, {RepBlock{RelKind::Equality, 1}});
  AmbitReport a1 = ambit_rank_bound(ps, rep_ps, Vec::basis(rep_ps.class_of(0, {0})), {0}, 50);
  Structure dlo(StructureKind::DLO);
  PermRep rep_dlo(dlo, {RepBlock{RelKind::Equality, 1}});
  AmbitReport a2 =
      ambit_rank_bound(dlo, rep_dlo, Vec::basis(rep_dlo.class_of(0, {0})), {0}, 50);
  pass = pass && a1.rank == 2 && a1.coset_bound == 2 && a1.holds;
  pass = pass && a2.rank == 2 && a2.coset_bound == 3 && a2.holds;

  report.add("08_cb_rank_distance_bound", pass,
             {{"tower_depths", 4},
              {"random_clouds", trials},
              {"pure_set_ambit", {{"rank", a1.rank}, {"bound", a1.coset_bound}}},
              {"dlo_ambit", {{"rank", a2.rank}, {"bound", a2.coset_bound}}}});
}

// --- criterion 9 ---------------------------------------------------------

inline void criterion_stability(Report& report, const RunConfig&) {
  bool pass = true;
  nlohmann::ordered_json evidence;

  // order ladder on the DLO
  Structure dlo(StructureKind::DLO);
  FormulaDescriptor order{dlo, FormulaKind::Order, 1};
  auto order_ladder = ladder_search(order, 10, 64);
  pass = pass && order_ladder && order_ladder->verify(order);

  // edge ladder on the Rado graph
  Structure rado(StructureKind::RadoGraph);
  FormulaDescriptor edge{rado, FormulaKind::Edge, 1};
  auto edge_ladder = ladder_search(edge, 10, kDefaultWitnessCap);
  pass = pass && edge_ladder && edge_ladder->verify(edge);
  if (edge_ladder) {
    Elem max_vertex = 0;
    for (const Tuple& t : edge_ladder->rows) max_vertex = std::max(max_vertex, t[0]);
    for (const Tuple& t : edge_ladder->cols) max_vertex = std::max(max_vertex, t[0]);
    evidence["edge_ladder_max_vertex"] = elem_str(max_vertex);
  }

  // equality formulas: certified none at n = 2, window 30, on each structure
  for (StructureKind kind : bundled_kinds()) {
    Structure s(kind);
    FormulaDescriptor eq{s, FormulaKind::Equality, 1};
    if (ladder_search(eq, 2, 30).has_value()) pass = false;
  }
  evidence["equality_window"] = 30;

  // ladder-induced functions disagree across the two iterated limits
  if (order_ladder && edge_ladder) {
    std::vector<std::tuple<Structure, FormulaDescriptor, LadderWitness>> unstable = {
        {dlo, order, *order_ladder}, {rado, edge, *edge_ladder}};
    for (const auto& [s, phi, witness] : unstable) {
      LadderGroupData data = ladder_to_group_elements(s, witness);
      DoubleLimitResult r = double_limit_table(
          formula_function(phi, data.anchor, data.base), data.rows, data.cols);
      if (!(r.row_then_col == Rational(1) && r.col_then_row == Rational(0))) pass = false;
    }
  }

  // equivalence-relation coefficients agree on stabilized arrays
  for (StructureKind kind : bundled_kinds()) {
    Structure s(kind);
    MatrixCoefficient m = eq_rel_coefficient(s, RelKind::Equality, {0}, {0});
    auto fn = [&m](const PartialIso& p) { return m.evaluate(p); };
    std::vector<Elem> window_pts = {0, 1, 2, 3, 4, 5, 6, 7};
    PartialIso id = PartialIso::identity_on(s, window_pts);
    // three crafted arrays: eventually-missing, eventually-fixed, mixed tail
    std::vector<PartialIso> ids(12, id);
    std::vector<PartialIso> cols_miss, cols_fix, cols_mixed;
    for (Elem j = 0; j < 12; ++j) {
      cols_miss.emplace_back(s, MapGraph{{0, std::min<Elem>(j, 4) + 1}});
      cols_fix.emplace_back(s, MapGraph{{0, 0}});
      cols_mixed.emplace_back(s, MapGraph{{0, j < 3 ? j + 1 : 0}});
    }
    for (const auto& cols : {cols_miss, cols_fix, cols_mixed}) {
      DoubleLimitResult r = double_limit_table(fn, ids, cols);
      if (!r.agree()) pass = false;
    }
    // the ladder rows/cols feed the coefficient too: a WAP function must
    // still agree where the unstable formula disagreed
    if (kind == StructureKind::DLO) {
      LadderGroupData data = ladder_to_group_elements(s, *order_ladder);
      MatrixCoefficient eq_anchor =
          eq_rel_coefficient(s, RelKind::Equality, data.anchor, data.base);
      DoubleLimitResult r = double_limit_table(
          [&eq_anchor](const PartialIso& p) { return eq_anchor.evaluate(p); }, data.rows,
          data.cols);
      if (!r.agree()) pass = false;
    }
  }

  report.add("09_stability_certificates", pass, evidence);
}

// --- criterion 10 --------------------------------------------------------

inline void criterion_boolean_reconstruction(Report& report, const RunConfig& cfg) {
  DetRng rng(cfg.seed ^ 0x3c6ef372fe94f82bull);
  bool pass = true;
  int done = 0;
  const std::vector<Rational> lambda_pool = {
      Rational(1),      Rational(-1),     Rational(1, 3), Rational(2, 3),
      Rational(-1, 3),  Rational(-2, 3),  Rational(4, 3), Rational(1, 2)};

  while (done < 50 && pass) {
    StructureKind kind = bundled_kinds()[static_cast<std::size_t>(done % 3)];
    Structure s(kind);
    // sample of group-element avatars, total on the window
    std::vector<Elem> window_pts = {0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<PartialIso> sample;
    sample.push_back(PartialIso::identity_on(s, window_pts));
    int draws = 0;
    while (sample.size() < 12 && draws < 60) {
      // single-point seeds give varied but honest group-element avatars; a
      // seed whose extension leaves the representable range is skipped
      ++draws;
      Elem from = rng.range(0, 7), to = rng.range(0, 11);
      MapGraph seed{{from, to}};
      try {
        sample.push_back(extend_over(s, PartialIso(s, seed), window_pts));
      } catch (const WitnessCapExceeded&) {
        continue;
      }
    }
    int k = static_cast<int>(rng.range(1, 3));
    std::vector<MatrixCoefficient> atoms;
    for (int i = 0; i < k; ++i) {
      if (rng.range(0, 5) == 0) {
        atoms.push_back(coefficient_one(s));
        continue;
      }
      int arity = static_cast<int>(rng.range(1, 2));
      Tuple a, b;
      for (int j = 0; j < arity; ++j) a.push_back(rng.range(0, 7));
      for (int j = 0; j < arity; ++j) b.push_back(rng.range(0, 7));
      atoms.push_back(eq_rel_coefficient(s, RelKind::Equality, a, b));
    }
    if (atoms.empty()) continue;
    std::vector<Rational> lambdas;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      lambdas.push_back(lambda_pool[static_cast<std::size_t>(rng.range(0, 7))]);

    // the target is the rounding of the linear combination; keep the draw
    // only if every sampled value is strictly within 1/2 of {0,1}
    std::vector<int> target;
    bool usable = true;
    for (const PartialIso& g : sample) {
      Rational v(0);
      for (std::size_t i = 0; i < atoms.size(); ++i) v += lambdas[i] * atoms[i].evaluate(g);
      Rational d0 = v < Rational(0) ? -v : v;
      Rational d1 = v - Rational(1);
      if (d1 < Rational(0)) d1 = -d1;
      if (d0 < Rational(1, 2))
        target.push_back(0);
      else if (d1 < Rational(1, 2))
        target.push_back(1);
      else {
        usable = false;
        break;
      }
    }
    if (!usable) continue;
    try {
      MatrixCoefficient rebuilt = boolean_reconstruct(sample, target, atoms, lambdas);
      for (std::size_t g = 0; g < sample.size(); ++g)
        if (rebuilt.evaluate(sample[g]) != Rational(target[g])) pass = false;
    } catch (const ApproximationTooCoarse&) {
      pass = false;
    }
    ++done;
  }
  report.add("10_boolean_reconstruction", pass, {{"targets", done}});
}

// --- the full suite ------------------------------------------------------

/// Runs the selected suites. A check that throws is recorded as a failure
/// with the error text as evidence; the rest of the suite still runs.
inline Report run_verify(const RunConfig& cfg) {
  using Runner = void (*)(Report&, const RunConfig&);
  const std::vector<std::pair<std::string, Runner>> suites = {
      {"01", &criterion_inverse_semigroup},
      {"02", &criterion_independence_axioms},
      {"03", &criterion_wap_lemma_and_factor},  // also emits the 04 record
      {"05", &criterion_decay},
      {"06", &criterion_indiscernible_gram},
      {"07", &criterion_inner_value_census},
      {"08", &criterion_cb_rank},
      {"09", &criterion_stability},
      {"10", &criterion_boolean_reconstruction},
  };
  Report report;
  for (const auto& [id, runner] : suites) {
    bool wanted = cfg.suite_selected(id) || (id == "03" && cfg.suite_selected("04"));
    if (!wanted) continue;
    try {
      runner(report, cfg);
    } catch (const std::exception& e) {
      report.add(id + "_suite_error", false, {{"error", e.what()}});
    }
  }
  return report;
}

}  // namespace eberlein
