#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eberlein/errors.hpp"
#include "eberlein/structures.hpp"

namespace eberlein {

/// A finite type-preserving partial injection of the universe: the desk-scale
/// avatar of an element of P(M). The graph is kept sorted by domain element,
/// and injectivity plus type preservation are enforced at construction, so a
/// PartialIso can never hold an invalid map.
class PartialIso {
public:
  PartialIso(Structure s, MapGraph graph) : s_(s), graph_(std::move(graph)) {
    std::sort(graph_.begin(), graph_.end());
    graph_.erase(std::unique(graph_.begin(), graph_.end()), graph_.end());
    validate();
  }

  static PartialIso empty(Structure s) { return PartialIso(s, {}); }

  static PartialIso identity_on(Structure s, const std::vector<Elem>& points) {
    MapGraph g;
    for (Elem p : points) g.emplace_back(p, p);
    return PartialIso(s, std::move(g));
  }

  const Structure& structure() const { return s_; }
  const MapGraph& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }
  bool is_empty_map() const { return graph_.empty(); }

  Tuple domain() const {
    Tuple d;
    for (const auto& [a, b] : graph_) d.push_back(a);
    return d;
  }
  Tuple image() const {
    Tuple r;
    for (const auto& [a, b] : graph_) r.push_back(b);
    return r;
  }

  bool defined_at(Elem a) const { return map_apply(graph_, a).has_value(); }

  std::optional<Elem> apply(Elem a) const { return map_apply(graph_, a); }

  /// Coordinatewise image of a tuple; nullopt if any coordinate is undefined.
  std::optional<Tuple> apply_tuple(const Tuple& t) const {
    Tuple out;
    out.reserve(t.size());
    for (Elem a : t) {
      auto b = apply(a);
      if (!b) return std::nullopt;
      out.push_back(*b);
    }
    return out;
  }

  friend bool operator==(const PartialIso& p, const PartialIso& q) {
    return p.s_.kind() == q.s_.kind() && p.graph_ == q.graph_;
  }
  friend bool operator!=(const PartialIso& p, const PartialIso& q) { return !(p == q); }
  friend bool operator<(const PartialIso& p, const PartialIso& q) {
    if (p.s_.kind() != q.s_.kind()) return p.s_.kind() < q.s_.kind();
    return p.graph_ < q.graph_;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < graph_.size(); ++i) {
      if (i) out += ", ";
      out += elem_str(graph_[i].first) + "->" + elem_str(graph_[i].second);
    }
    return out + "}";
  }

private:
  void validate() const {
    std::set<Elem> dom, ran;
    for (const auto& [a, b] : graph_) {
      if (!dom.insert(a).second)
        throw InvariantViolation("PartialIso: domain element repeated: " + str());
      if (!ran.insert(b).second)
        throw InvariantViolation("PartialIso: not injective: " + str());
    }
    Tuple d = domain(), r = image();
    if (!(qf_type(s_, d) == qf_type(s_, r)))
      throw InvariantViolation("PartialIso: not type-preserving: " + str());
  }

  Structure s_;
  MapGraph graph_;
};

/// (p.q)(a) = p(q(a)) on the chased domain.
inline PartialIso compose(const PartialIso& p, const PartialIso& q) {
  if (p.structure().kind() != q.structure().kind())
    throw InvariantViolation("compose: mixed structures");
  MapGraph g;
  for (const auto& [a, b] : q.graph()) {
    auto c = p.apply(b);
    if (c) g.emplace_back(a, *c);
  }
  return PartialIso(p.structure(), std::move(g));
}

/// Relational converse; the involution of the symmetric inverse monoid.
inline PartialIso star(const PartialIso& p) {
  MapGraph g;
  for (const auto& [a, b] : p.graph()) g.emplace_back(b, a);
  return PartialIso(p.structure(), std::move(g));
}

inline bool is_idempotent(const PartialIso& p) { return compose(p, p) == p; }

/// pp*p = p. Holds for every element here; kept as an executable check.
inline bool is_regular(const PartialIso& p) {
  return compose(compose(p, star(p)), p) == p;
}

/// The unique inverse, which for partial injections is the converse.
inline PartialIso inverse_of(const PartialIso& p) { return star(p); }

/// One back-and-forth step: extends p by a -> b with the least b that keeps
/// the map type-preserving.
inline PartialIso extend_embedding(const Structure& s, const PartialIso& p, Elem a,
                                   const std::set<Elem>& avoid = {}) {
  if (p.defined_at(a))
    throw InvariantViolation("extend_embedding: point already in domain");
  AnchorList anchors(p.graph().begin(), p.graph().end());
  Elem b = least_witness(s, anchors, a, avoid);
  MapGraph g = p.graph();
  g.emplace_back(a, b);
  return PartialIso(s, std::move(g));
}

/// Extends p until its domain covers all of `points` (least witnesses,
/// ascending order; the BIT graph places the whole block jointly). Used when
/// an avatar of a group element must be total on an evaluation window.
inline PartialIso extend_over(const Structure& s, PartialIso p,
                              const std::vector<Elem>& points,
                              const std::set<Elem>& avoid = {}) {
  std::vector<Elem> todo;
  for (Elem a : points)
    if (!p.defined_at(a)) todo.push_back(a);
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  if (todo.empty()) return p;
  AnchorList anchors(p.graph().begin(), p.graph().end());
  AnchorList placed = place_block(s, std::move(anchors), todo, avoid);
  MapGraph g(placed.begin(), placed.end());
  return PartialIso(s, std::move(g));
}

}  // namespace eberlein
