#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eberlein/errors.hpp"
#include "eberlein/partial_iso.hpp"
#include "eberlein/structures.hpp"

namespace eberlein {

/// A finite fragment of a self-embedding of the structure: a type-preserving
/// injection from a finite support into the universe.
class EmbeddingChunk {
public:
  EmbeddingChunk(Structure s, MapGraph graph) : map_(std::move(s), std::move(graph)) {}
  explicit EmbeddingChunk(PartialIso p) : map_(std::move(p)) {}

  const Structure& structure() const { return map_.structure(); }
  const PartialIso& as_map() const { return map_; }
  Tuple support() const { return map_.domain(); }
  Tuple image() const { return map_.image(); }

  Elem apply(Elem a) const {
    auto b = map_.apply(a);
    if (!b) throw InvariantViolation("EmbeddingChunk: point outside support");
    return *b;
  }

  std::optional<Elem> preimage(Elem b) const {
    for (const auto& [a, v] : map_.graph())
      if (v == b) return a;
    return std::nullopt;
  }

  friend bool operator==(const EmbeddingChunk& a, const EmbeddingChunk& b) {
    return a.map_ == b.map_;
  }

  std::string str() const { return map_.str(); }

private:
  PartialIso map_;
};

/// Stable independence of the bundled structures: acl(A) cap acl(B) inside
/// acl(C), which with trivial acl reads A cap B subset of C. Argument order
/// follows A independent from B over C with the over-set in the middle.
inline bool is_independent(const Structure& s, const std::vector<Elem>& a,
                           const std::vector<Elem>& c, const std::vector<Elem>& b) {
  std::vector<Elem> ca = acl(s, a), cb = acl(s, b), cc = acl(s, c);
  for (Elem x : ca)
    if (std::binary_search(cb.begin(), cb.end(), x) &&
        !std::binary_search(cc.begin(), cc.end(), x))
      return false;
  return true;
}

/// Equality-pattern stable type: tuples x and z have the same stable type
/// over `base` when their internal equality patterns agree and they meet each
/// base point at the same positions. For the bundled structures the stable
/// formulas are generated by equalities, so this is the whole stable type.
inline bool stable_type_equal(const Structure&, const Tuple& x, const Tuple& z,
                              const std::vector<Elem>& base) {
  if (x.size() != z.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if ((x[i] == x[j]) != (z[i] == z[j])) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (Elem b : base)
      if ((x[i] == b) != (z[i] == b)) return false;
  return true;
}

/// Deterministic realization of the existence axiom: a copy of `x` with the
/// same quantifier-free type over C whose image meets B exactly in C.
/// Pre: C is contained in image(x) and in B.
inline EmbeddingChunk free_amalgam(const Structure& s, const EmbeddingChunk& x,
                                   const std::vector<Elem>& c, const std::vector<Elem>& b) {
  Tuple img = x.image();
  std::set<Elem> img_set(img.begin(), img.end());
  std::set<Elem> b_set(b.begin(), b.end());
  for (Elem v : c)
    if (!img_set.count(v) || !b_set.count(v))
      throw InvariantViolation("free_amalgam: C must lie in image(x) and B");
  MapGraph tau = relocate_off(s, c, img, b);
  MapGraph out;
  for (const auto& [a, v] : x.as_map().graph()) {
    auto moved = map_apply(tau, v);
    out.emplace_back(a, *moved);
  }
  return EmbeddingChunk(s, std::move(out));
}

/// A WAP-semigroup element at desk scale: a pair of embedding fragments on a
/// common support. Two classes are equal iff their supports agree and their
/// matchings agree; for the bundled structures the WAP algebra is generated
/// by equality functions, so the matching is a complete invariant.
class WapClass {
public:
  WapClass(EmbeddingChunk x, EmbeddingChunk y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.structure().kind() != y_.structure().kind())
      throw InvariantViolation("WapClass: mixed structures");
    if (x_.support() != y_.support())
      throw InvariantViolation("WapClass: chunks must share a support");
  }

  const Structure& structure() const { return x_.structure(); }
  const EmbeddingChunk& x() const { return x_; }
  const EmbeddingChunk& y() const { return y_; }
  Tuple support() const { return x_.support(); }

  /// The matching relation {(a,b) : x(a) = y(b)}, sorted. Always the graph of
  /// a partial bijection of the support, since both chunks are injective.
  MapGraph canonical_invariant() const {
    MapGraph m;
    for (Elem a : support())
      for (Elem b : support())
        if (x_.apply(a) == y_.apply(b)) m.emplace_back(a, b);
    std::sort(m.begin(), m.end());
    return m;
  }

  friend bool operator==(const WapClass& p, const WapClass& q) {
    return p.structure().kind() == q.structure().kind() && p.support() == q.support() &&
           p.canonical_invariant() == q.canonical_invariant();
  }
  friend bool operator!=(const WapClass& p, const WapClass& q) { return !(p == q); }

  std::string str() const { return "[" + x_.str() + ", " + y_.str() + "]"; }

private:
  EmbeddingChunk x_, y_;
};

/// [x,y]* = [y,x].
inline WapClass wap_star(const WapClass& p) { return WapClass(p.y(), p.x()); }

/// Extends both chunks generically over a larger support: fresh points on
/// each side avoid the other side's image, so the matching is unchanged.
inline WapClass extend_to_support(const WapClass& p, const Tuple& new_support) {
  const Structure& s = p.structure();
  Tuple sup = p.support();
  std::set<Elem> have(sup.begin(), sup.end());
  for (Elem a : sup)
    if (!std::count(new_support.begin(), new_support.end(), a))
      throw InvariantViolation("extend_to_support: support must grow");
  Tuple ximg = p.x().image(), yimg = p.y().image();
  std::set<Elem> avoid_x(yimg.begin(), yimg.end());
  PartialIso xbar = extend_over(s, p.x().as_map(), new_support, avoid_x);
  Tuple xbar_img = xbar.image();
  std::set<Elem> avoid_y(xbar_img.begin(), xbar_img.end());
  PartialIso ybar = extend_over(s, p.y().as_map(), new_support, avoid_y);
  return WapClass(EmbeddingChunk(xbar), EmbeddingChunk(ybar));
}

/// The semigroup law via realignment and independent amalgamation: after
/// rewriting q so that its first chunk is p's second, the matched points of
/// q's second chunk land on p's second chunk and the unmatched ones are
/// placed fresh off both images of p, in one joint type-preserving step.
/// The resulting matching is the relational composition of the two matchings.
inline WapClass wap_product(const WapClass& p, const WapClass& q) {
  const Structure& s = p.structure();
  if (s.kind() != q.structure().kind())
    throw RealignmentFailed("wap_product: mixed structures");
  if (p.support() != q.support())
    throw RealignmentFailed("wap_product: supports differ; re-chunk first");
  Tuple sup = p.support();

  // transported matched part: x_q(a) = y_q(b) forces z'(b) = p.y(a)
  MapGraph matched;
  std::set<Elem> matched_pts;
  for (const auto& [a, b] : q.canonical_invariant()) {
    matched.emplace_back(b, p.y().apply(a));
    matched_pts.insert(b);
  }
  std::vector<Elem> moving;
  for (Elem t : sup)
    if (!matched_pts.count(t)) moving.push_back(t);
  Tuple py_img = p.y().image(), px_img = p.x().image();
  std::set<Elem> avoid(py_img.begin(), py_img.end());
  avoid.insert(px_img.begin(), px_img.end());
  AnchorList anchors(matched.begin(), matched.end());
  AnchorList placed = place_block(s, std::move(anchors), moving, avoid);
  MapGraph z_graph(placed.begin(), placed.end());
  EmbeddingChunk z_free(s, std::move(z_graph));

  return WapClass(p.x(), z_free);
}

/// Product after extending both factors generically to the union support.
inline WapClass wap_product_rechunked(const WapClass& p, const WapClass& q) {
  Tuple sup = p.support(), qs = q.support();
  sup.insert(sup.end(), qs.begin(), qs.end());
  std::sort(sup.begin(), sup.end());
  sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
  return wap_product(extend_to_support(p, sup), extend_to_support(q, sup));
}

/// g.[x,y] = [x o g^{-1}, y] for g bijective on the support.
inline WapClass g_action(const PartialIso& g, const WapClass& p) {
  Tuple sup = p.support();
  std::set<Elem> sup_set(sup.begin(), sup.end());
  MapGraph xg;
  for (Elem a : sup) {
    auto ga = g.apply(a);
    if (!ga || !sup_set.count(*ga))
      throw NotBijectiveOnSupport("g_action: g must map the support onto itself");
    xg.emplace_back(*ga, p.x().apply(a));
  }
  return WapClass(EmbeddingChunk(p.structure(), std::move(xg)), p.y());
}

/// Model-theoretic idempotency: with C the intersection of the two images,
/// the chunks have equal stable types over C and are independent over C.
inline bool is_idempotent_mt(const WapClass& p) {
  Tuple ximg = p.x().image(), yimg = p.y().image();
  std::vector<Elem> c;
  for (Elem v : ximg)
    if (std::count(yimg.begin(), yimg.end(), v)) c.push_back(v);
  std::sort(c.begin(), c.end());
  for (Elem v : c)
    if (p.x().preimage(v) != p.y().preimage(v)) return false;
  if (!stable_type_equal(p.structure(), ximg, yimg, c)) return false;
  return is_independent(p.structure(), ximg, c, yimg);
}

/// Model-theoretic regularity: independence of the two images over their
/// intersection. With trivial algebraic closure this always holds — the
/// one-basedness behind the factor map being injective.
inline bool is_regular_mt(const WapClass& p) {
  Tuple ximg = p.x().image(), yimg = p.y().image();
  std::vector<Elem> c;
  for (Elem v : ximg)
    if (std::count(yimg.begin(), yimg.end(), v)) c.push_back(v);
  std::sort(c.begin(), c.end());
  return is_independent(p.structure(), ximg, c, yimg);
}

/// The factor map onto the partial-map semigroup: b -> a whenever
/// x(a) = y(b). A *-homomorphism with respect to the class operations, with
/// composition read as apply-right-then-left.
inline PartialIso to_partial_map(const WapClass& p) {
  MapGraph g;
  for (const auto& [a, b] : p.canonical_invariant()) g.emplace_back(b, a);
  return PartialIso(p.structure(), std::move(g));
}

/// The least representative pair realizing a prescribed matching on a
/// support. Throws if the matching is not a type-preserving partial bijection
/// of the support.
inline WapClass canonical_class(const Structure& s, const Tuple& support,
                                const MapGraph& matching) {
  PartialIso x = extend_over(s, PartialIso::empty(s), support);
  MapGraph y0;
  for (const auto& [a, b] : matching) y0.emplace_back(b, *x.apply(a));
  PartialIso y_part(s, std::move(y0));
  Tuple x_img = x.image();
  std::set<Elem> avoid(x_img.begin(), x_img.end());
  PartialIso y = extend_over(s, y_part, support, avoid);
  return WapClass(EmbeddingChunk(x), EmbeddingChunk(y));
}

/// All type-preserving injections of `support` into [0, window).
inline std::vector<EmbeddingChunk> enumerate_embeddings(const Structure& s,
                                                        const Tuple& support,
                                                        Elem window) {
  std::vector<EmbeddingChunk> out;
  MapGraph acc;
  auto consistent = [&](Elem a, Elem b) {
    for (const auto& [x, y] : acc) {
      if (b == y) return false;
      switch (s.kind()) {
        case StructureKind::PureSet: break;
        case StructureKind::DLO:
          if (s.less(a, x) != s.less(b, y) || s.less(x, a) != s.less(y, b)) return false;
          break;
        case StructureKind::RadoGraph:
          if (Structure::rado_edge(a, x) != Structure::rado_edge(b, y)) return false;
          break;
      }
    }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == support.size()) {
      out.emplace_back(s, acc);
      return;
    }
    for (Elem b = 0; b < window; ++b) {
      if (!consistent(support[i], b)) continue;
      acc.emplace_back(support[i], b);
      rec(i + 1);
      acc.pop_back();
    }
  };
  rec(0);
  return out;
}

/// All matchings of a support realizable by some class: exactly the
/// type-preserving partial bijections of the support.
inline std::vector<MapGraph> enumerate_matchings(const Structure& s, const Tuple& support) {
  std::vector<MapGraph> out;
  int n = static_cast<int>(support.size());
  std::vector<int> target(static_cast<std::size_t>(n));
  // target[i] = -1 (unmatched) or index j meaning x(support[i]) = y(support[j])
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      MapGraph m;
      for (int k = 0; k < n; ++k)
        if (target[static_cast<std::size_t>(k)] >= 0)
          m.emplace_back(support[static_cast<std::size_t>(k)],
                         support[static_cast<std::size_t>(target[static_cast<std::size_t>(k)])]);
      std::sort(m.begin(), m.end());
      try {
        PartialIso check(s, m);
        out.push_back(std::move(m));
      } catch (const InvariantViolation&) {
        // matching not type-preserving: not realizable on this structure
      }
      return;
    }
    target[static_cast<std::size_t>(i)] = -1;
    rec(i + 1);
    for (int j = 0; j < n; ++j) {
      bool used = false;
      for (int k = 0; k < i; ++k)
        if (target[static_cast<std::size_t>(k)] == j) used = true;
      if (used) continue;
      target[static_cast<std::size_t>(i)] = j;
      rec(i + 1);
      target[static_cast<std::size_t>(i)] = -1;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace eberlein
