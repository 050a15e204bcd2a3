#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eberlein/errors.hpp"
#include "eberlein/rational.hpp"

namespace eberlein {

/// Universe element. 128 bits: iterated extensions in the BIT graph need one
/// level of values near 2^70 (a fresh triangle avoiding a blocked low window
/// has its apex above 2^64), and nothing in the bundled constructions needs a
/// second level.
using Elem = __int128;
using Tuple = std::vector<Elem>;

inline std::string elem_str(Elem v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  std::string out;
  while (u > 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  return neg ? "-" + out : out;
}

enum class StructureKind { PureSet, DLO, RadoGraph };

inline std::string kind_name(StructureKind k) {
  switch (k) {
    case StructureKind::PureSet: return "pure_set";
    case StructureKind::DLO: return "dlo";
    case StructureKind::RadoGraph: return "rado";
  }
  return "?";
}

/// One of the three bundled homogeneous structures on the universe of
/// naturals.
///
///   PureSet    bare infinite set
///   DLO        dense linear order; element n is the dyadic rational
///              dyadic_value(n) in (0,1), enumerated breadth-first by level
///   RadoGraph  edge(i,j) iff bit min(i,j) of max(i,j) is 1, i != j
///
/// All relations are deterministic and total, so every construction below
/// admits a well-defined least witness.
class Structure {
public:
  explicit Structure(StructureKind k) : kind_(k) {}

  StructureKind kind() const { return kind_; }

  /// Dyadic encoding for the DLO universe: n=0 -> 1/2, then each level k
  /// lists the odd numerators (2j+1)/2^(k+1) left to right.
  static Rational dyadic_value(Elem n) {
    if (n < 0) throw InvariantViolation("dyadic_value: negative element");
    if (n > (Elem(1) << 60))
      throw InvariantViolation("dyadic_value: element too large for the order encoding");
    std::uint64_t m = static_cast<std::uint64_t>(n) + 1;
    int level = 63 - __builtin_clzll(m);
    std::uint64_t j = m - (std::uint64_t(1) << level);
    return Rational(static_cast<std::int64_t>(2 * j + 1),
                    static_cast<std::int64_t>(std::uint64_t(1) << (level + 1)));
  }

  /// Strict order on DLO elements (compares encoded dyadic values).
  bool less(Elem a, Elem b) const {
    return dyadic_value(a) < dyadic_value(b);
  }

  /// The BIT predicate. Symmetric, irreflexive, deterministic.
  static bool rado_edge(Elem a, Elem b) {
    if (a == b) return false;
    Elem lo = std::min(a, b), hi = std::max(a, b);
    if (lo >= 126) return false;  // hi < 2^126 has no bit that high
    return (static_cast<unsigned __int128>(hi) >> static_cast<int>(lo)) & 1u;
  }

  bool edge(Elem a, Elem b) const { return rado_edge(a, b); }

private:
  StructureKind kind_;
};

/// Canonical quantifier-free type of a tuple: by homogeneity of the bundled
/// structures, two tuples get equal QfType values iff some automorphism maps
/// one to the other.
struct QfType {
  StructureKind kind;
  int arity = 0;
  std::vector<int> eq;   // eq[i] = least j with t[j] == t[i]
  std::vector<int> rel;  // DLO: rank of t[i] among distinct values;
                         // RadoGraph: edge bits for pairs i<j; PureSet: empty

  friend bool operator==(const QfType& a, const QfType& b) {
    return a.kind == b.kind && a.arity == b.arity && a.eq == b.eq && a.rel == b.rel;
  }
  friend bool operator<(const QfType& a, const QfType& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.arity != b.arity) return a.arity < b.arity;
    if (a.eq != b.eq) return a.eq < b.eq;
    return a.rel < b.rel;
  }

  std::string str() const {
    std::string s = kind_name(kind) + "/" + std::to_string(arity) + ":e";
    for (int v : eq) s += std::to_string(v) + ",";
    s += ":r";
    for (int v : rel) s += std::to_string(v) + ",";
    return s;
  }
};

inline QfType qf_type(const Structure& s, const Tuple& t) {
  QfType ty;
  ty.kind = s.kind();
  ty.arity = static_cast<int>(t.size());
  ty.eq.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::size_t j = 0;
    while (t[j] != t[i]) ++j;
    ty.eq[i] = static_cast<int>(j);
  }
  switch (s.kind()) {
    case StructureKind::PureSet:
      break;
    case StructureKind::DLO: {
      std::vector<Elem> distinct(t.begin(), t.end());
      std::sort(distinct.begin(), distinct.end(),
                [&](Elem a, Elem b) { return s.less(a, b); });
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      ty.rel.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        ty.rel[i] = static_cast<int>(
            std::find(distinct.begin(), distinct.end(), t[i]) - distinct.begin());
      break;
    }
    case StructureKind::RadoGraph:
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
          ty.rel.push_back(Structure::rado_edge(t[i], t[j]) ? 1 : 0);
      break;
  }
  return ty;
}

/// Number of Aut-orbits of n-tuples, counted by enumerating the canonical
/// patterns directly (set partitions of positions, weighted per structure).
inline long long orbit_count(const Structure& s, int n) {
  if (n < 0) throw InvariantViolation("orbit_count: negative arity");
  // iterate restricted growth strings
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  long long total = 0;
  auto weight = [&](int blocks) -> long long {
    switch (s.kind()) {
      case StructureKind::PureSet: return 1;
      case StructureKind::DLO: {
        long long f = 1;
        for (int i = 2; i <= blocks; ++i) f *= i;
        return f;
      }
      case StructureKind::RadoGraph:
        return 1LL << (blocks * (blocks - 1) / 2);
    }
    return 0;
  };
  if (n == 0) return 1;
  while (true) {
    int blocks = *std::max_element(a.begin(), a.end()) + 1;
    total += weight(blocks);
    int i = n - 1;
    while (i > 0) {
      int mx = 0;
      for (int j = 0; j < i; ++j) mx = std::max(mx, a[static_cast<std::size_t>(j)]);
      if (a[static_cast<std::size_t>(i)] < mx + 1) break;
      --i;
    }
    if (i == 0) break;
    ++a[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) a[static_cast<std::size_t>(j)] = 0;
  }
  return total;
}

/// Algebraic closure. All bundled structures have trivial acl.
inline std::vector<Elem> acl(const Structure&, std::vector<Elem> a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

/// Number of realizations of tp(b / A) among the first `window` elements.
/// Used to certify, at scale, that points outside A are non-algebraic.
inline long long conjugate_count(const Structure& s, const std::vector<Elem>& a_set,
                                 Elem b, Elem window) {
  Tuple base(a_set.begin(), a_set.end());
  base.push_back(b);
  QfType target = qf_type(s, base);
  long long count = 0;
  for (Elem c = 0; c < window; ++c) {
    base.back() = c;
    if (qf_type(s, base) == target) ++count;
  }
  return count;
}

constexpr Elem kDefaultWitnessCap = Elem(1) << 22;

/// Least vertex of the BIT graph adjacent to every element of X and to none
/// of Y (and outside both), scanning below `bound`.
inline Elem rado_extension_witness(const std::vector<Elem>& x_adj,
                                   const std::vector<Elem>& y_non,
                                   Elem bound = kDefaultWitnessCap) {
  for (Elem v = 0; v < bound; ++v) {
    bool ok = true;
    for (Elem x : x_adj)
      if (v == x || !Structure::rado_edge(v, x)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (Elem y : y_non)
      if (v == y || Structure::rado_edge(v, y)) {
        ok = false;
        break;
      }
    if (ok) return v;
  }
  throw WitnessCapExceeded("rado_extension_witness: no witness below bound " +
                           elem_str(bound));
}

/// Anchor list for a one-point extension: pairs (source point, placed image).
using AnchorList = std::vector<std::pair<Elem, Elem>>;

namespace rado_detail {

constexpr Elem kScanWindow = 4096;

}  // namespace rado_detail

/// Joint image assignment for a block of points in the BIT graph: the first
/// tuple of images, in the canonical candidate order, realizing the
/// prescribed adjacencies; found by backtracking. Pointwise-greedy choices
/// can strand later points behind bit-thin vertices (adjacency to 2^k from
/// above needs a value of at least 2^(2^k)), so the block is solved as a
/// whole. Each level's candidates are the anchor-consistent values of the
/// scan window [0, 4096), followed by constructed bit-sums that set the
/// required adjacency bits plus two spare door bits; constructed candidates
/// exist whenever every value to be adjacent to is below 62.
inline std::vector<Elem> rado_joint_assign(const AnchorList& anchors,
                                           const std::vector<Elem>& moving_in,
                                           const std::set<Elem>& avoid,
                                           long long node_budget = 192000000) {
  std::set<Elem> blocked(avoid);
  for (const auto& [from, to] : anchors) blocked.insert(to);
  std::size_t k = moving_in.size();
  // Fresh values in [6, 62) are pairwise non-adjacent, as are constructed
  // values, so a block places as (independent low side, then high side).
  // When the internal pattern is bipartite, order one colour class before
  // the other; otherwise most-constrained-first.
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::vector<int> internal_deg(k, 0), anchor_deg(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && Structure::rado_edge(moving_in[i], moving_in[j])) ++internal_deg[i];
    for (const auto& [from, to] : anchors)
      if (Structure::rado_edge(moving_in[i], from)) ++anchor_deg[i];
  }
  std::vector<int> colour(k, -1);
  bool bipartite = true;
  for (std::size_t seed = 0; seed < k && bipartite; ++seed) {
    if (colour[seed] != -1) continue;
    colour[seed] = 0;
    std::vector<std::size_t> queue{seed};
    while (!queue.empty() && bipartite) {
      std::size_t cur = queue.back();
      queue.pop_back();
      for (std::size_t j = 0; j < k; ++j) {
        if (j == cur || !Structure::rado_edge(moving_in[cur], moving_in[j])) continue;
        if (colour[j] == -1) {
          colour[j] = 1 - colour[cur];
          queue.push_back(j);
        } else if (colour[j] == colour[cur]) {
          bipartite = false;
          break;
        }
      }
    }
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (bipartite && colour[a] != colour[b]) return colour[a] < colour[b];
    if (internal_deg[a] != internal_deg[b]) return internal_deg[a] > internal_deg[b];
    if (anchor_deg[a] != anchor_deg[b]) return anchor_deg[a] > anchor_deg[b];
    return moving_in[a] < moving_in[b];
  });
  std::vector<Elem> moving(k);
  for (std::size_t i = 0; i < k; ++i) moving[i] = moving_in[order[i]];
  std::vector<Elem> assign(k, -1);

  auto dynamic_ok = [&](std::size_t i, Elem v) {
    for (std::size_t j = 0; j < i; ++j) {
      if (assign[j] == v) return false;
      if (Structure::rado_edge(v, assign[j]) !=
          Structure::rado_edge(moving[i], moving[j]))
        return false;
    }
    return true;
  };
  auto anchors_ok = [&](std::size_t i, Elem v) {
    if (blocked.count(v)) return false;
    for (const auto& [from, to] : anchors)
      if (Structure::rado_edge(v, to) != Structure::rado_edge(moving[i], from))
        return false;
    return true;
  };
  // per-level memo of the anchor check over the scan window, built lazily the
  // first time a level's search passes the cheap low range
  std::vector<std::vector<bool>> scan_pass(k);
  auto scan_ok = [&](std::size_t i, Elem v) {
    if (v < 64) return anchors_ok(i, v);
    auto& memo = scan_pass[i];
    if (memo.empty()) {
      memo.resize(static_cast<std::size_t>(rado_detail::kScanWindow), false);
      for (Elem u = 64; u < rado_detail::kScanWindow; ++u)
        memo[static_cast<std::size_t>(u)] = anchors_ok(i, u);
    }
    return static_cast<bool>(memo[static_cast<std::size_t>(v)]);
  };
  // Constructed candidates: the required adjacency bits plus a pair of fresh
  // door positions (future entry points). Enumerated as: one anchor door 12
  // with an arbitrary partner, then consecutive pairs, then small-sum pairs,
  // so that both one-specific-door and two-small-door needs are reachable
  // early. A pair colliding with a required bit loses its door and is
  // skipped.
  static const std::vector<std::pair<int, int>> door_pairs = [] {
    std::vector<std::pair<int, int>> pairs;
    std::set<std::pair<int, int>> seen;
    auto add = [&](int m, int m2) {
      if (m > m2) std::swap(m, m2);
      if (m == m2) return;
      if (seen.insert({m, m2}).second) pairs.emplace_back(m, m2);
    };
    for (int m2 = 13; m2 <= 124; ++m2) add(12, m2);
    for (int m = 13; m <= 123; ++m) add(m, m + 1);
    std::vector<std::pair<int, int>> rest;
    for (int m = 13; m <= 61; ++m)
      for (int m2 = m + 1; m2 <= 62; ++m2)
        if (!seen.count({m, m2})) rest.emplace_back(m, m2);
    std::stable_sort(rest.begin(), rest.end(), [](auto a, auto b) {
      return a.first + a.second < b.first + b.second;
    });
    for (auto [m, m2] : rest) {
      if (pairs.size() >= 512) break;
      add(m, m2);
    }
    return pairs;
  }();
  const long long kDoorPairs = static_cast<long long>(door_pairs.size());
  constexpr Elem kSkip = -1;
  auto constructed = [&](std::size_t i, long long rank) -> std::optional<Elem> {
    auto [m, m2] = door_pairs[static_cast<std::size_t>(rank)];
    Elem v = (Elem(1) << static_cast<int>(m)) | (Elem(1) << static_cast<int>(m2));
    bool collided = false;
    auto set_bit = [&](Elem pos) {
      if (pos == m || pos == m2) collided = true;
      v |= Elem(1) << static_cast<int>(pos);
    };
    for (const auto& [from, to] : anchors)
      if (Structure::rado_edge(moving[i], from)) {
        if (to >= 125) return std::nullopt;
        set_bit(to);
      }
    for (std::size_t j = 0; j < i; ++j)
      if (Structure::rado_edge(moving[i], moving[j])) {
        if (assign[j] >= 125) return std::nullopt;
        set_bit(assign[j]);
      }
    return collided ? kSkip : v;
  };
  // A value of 8 or more whose every set bit is a blocked or already-used
  // position leaves no spare door: once it becomes an image, nothing fresh
  // can reach it from below. Each level therefore runs its candidate stream
  // in two phases: door-carrying values first, doorless ones as last resort.
  auto dynamic_spare = [&](std::size_t i, Elem v) {
    if (v < 8) return true;
    for (int p = 0; p < 125; ++p)
      if ((static_cast<unsigned __int128>(v) >> p) & 1u) {
        Elem pv = p;
        if (blocked.count(pv)) continue;
        bool used = false;
        for (std::size_t j = 0; j < i; ++j)
          if (assign[j] == pv) used = true;
        if (!used) return true;
      }
    return false;
  };
  const long long kSegment = rado_detail::kScanWindow + kDoorPairs;
  auto candidate_at = [&](std::size_t i, long long idx) -> std::optional<Elem> {
    long long phase = idx / kSegment;
    if (phase > 1) return std::nullopt;
    long long pos = idx % kSegment;
    std::optional<Elem> raw;
    if (pos < rado_detail::kScanWindow) {
      Elem v = pos;
      if (!scan_ok(i, v)) return kSkip;
      raw = v;
    } else {
      raw = constructed(i, pos - rado_detail::kScanWindow);
    }
    if (!raw || *raw == kSkip) return kSkip;  // dead rank, not end of stream
    if ((phase == 0) != dynamic_spare(i, *raw)) return kSkip;
    return raw;
  };

  auto context = [&]() {
    std::string msg = " (moving=";
    for (Elem m : moving) msg += elem_str(m) + " ";
    msg += ", anchors=";
    for (const auto& [from, to] : anchors)
      msg += elem_str(from) + "->" + elem_str(to) + " ";
    msg += ", avoid=";
    for (Elem v : avoid) msg += elem_str(v) + " ";
    msg += ")";
    return msg;
  };
  std::vector<long long> cursor(k, 0);
  std::size_t i = 0;
  long long nodes = 0;
  while (i < k) {
    bool placed = false;
    long long idx = cursor[i];
    for (;; ++idx) {
      if (++nodes > node_budget)
        throw WitnessCapExceeded("rado_joint_assign: budget exhausted" + context());
      auto v = candidate_at(i, idx);
      if (!v) break;
      if (*v == kSkip) continue;
      bool ok = dynamic_ok(i, *v);
      if (ok && idx % kSegment >= rado_detail::kScanWindow)
        ok = anchors_ok(i, *v);  // constructed candidates get the full check
      if (ok) {
        assign[i] = *v;
        cursor[i] = idx;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++i;
      if (i < k) cursor[i] = 0;
    } else {
      // backjump to the deepest earlier level this one is internally adjacent
      // to; intermediate levels cannot repair an adjacency dead end
      assign[i] = -1;
      if (i == 0)
        throw NoWitnessInRange("rado_joint_assign: no assignment found" + context());
      std::size_t target = i - 1;
      bool has_edge = false;
      for (std::size_t j = i; j-- > 0;)
        if (Structure::rado_edge(moving[i], moving[j])) {
          target = j;
          has_edge = true;
          break;
        }
      if (!has_edge) target = i - 1;
      while (i > target) {
        --i;
        if (i > target) assign[i] = -1;
      }
      ++cursor[i];
      assign[i] = -1;
    }
  }
  std::vector<Elem> out(k);
  for (std::size_t i = 0; i < k; ++i) out[order[i]] = assign[i];
  return out;
}

/// Least image b (excluding `avoid` and all anchor images) such that mapping
/// a -> b preserves the quantifier-free type relative to the anchors. This is
/// one back-and-forth step; existence is the extension property of the
/// structure, so a cap overrun indicates scale, not impossibility.
inline Elem least_witness(const Structure& s, const AnchorList& anchors, Elem a,
                          const std::set<Elem>& avoid,
                          Elem cap = kDefaultWitnessCap) {
  std::set<Elem> blocked(avoid);
  for (const auto& [from, to] : anchors) {
    if (from == a)
      throw InvariantViolation("least_witness: point already anchored");
    blocked.insert(to);
  }
  switch (s.kind()) {
    case StructureKind::PureSet: {
      for (Elem b = 0; b < cap; ++b)
        if (!blocked.count(b)) return b;
      break;
    }
    case StructureKind::DLO: {
      // the anchors are order-isomorphic, so the constraints collapse to an
      // open interval of dyadic values
      Rational av = Structure::dyadic_value(a);
      std::optional<Rational> lo, hi;
      for (const auto& [from, to] : anchors) {
        Rational fv = Structure::dyadic_value(from);
        Rational tv = Structure::dyadic_value(to);
        if (fv < av) {
          if (!lo || *lo < tv) lo = tv;
        } else {
          if (!hi || tv < *hi) hi = tv;
        }
      }
      for (Elem b = 0; b < cap; ++b) {
        if (blocked.count(b)) continue;
        Rational bv = Structure::dyadic_value(b);
        if (lo && !(*lo < bv)) continue;
        if (hi && !(bv < *hi)) continue;
        return b;
      }
      break;
    }
    case StructureKind::RadoGraph: {
      std::vector<Elem> block{a};
      return rado_joint_assign(anchors, block, blocked)[0];
    }
  }
  std::string detail = "least_witness: no witness below cap (kind=" + kind_name(s.kind()) +
                       ", point=" + elem_str(a) + ", anchors=";
  for (const auto& [from, to] : anchors)
    detail += elem_str(from) + "->" + elem_str(to) + " ";
  detail += ", avoid=" + std::to_string(avoid.size()) + ")";
  throw WitnessCapExceeded(detail);
}

/// Sorted, deduplicated map graph (a, tau(a)); the shared representation for
/// partial bijections and embedding fragments.
using MapGraph = std::vector<std::pair<Elem, Elem>>;

inline std::optional<Elem> map_apply(const MapGraph& g, Elem a) {
  for (const auto& [x, y] : g)
    if (x == a) return y;
  return std::nullopt;
}

/// Least images for a block of new points, anchored to an existing partial
/// assignment. PureSet and DLO extend greedily (an interval of fresh values
/// always remains); the BIT graph solves the block jointly.
inline AnchorList place_block(const Structure& s, AnchorList anchors,
                              const std::vector<Elem>& moving,
                              const std::set<Elem>& avoid,
                              long long node_budget = 192000000) {
  if (s.kind() == StructureKind::RadoGraph && !moving.empty()) {
    std::vector<Elem> images = rado_joint_assign(anchors, moving, avoid, node_budget);
    for (std::size_t i = 0; i < moving.size(); ++i)
      anchors.emplace_back(moving[i], images[i]);
    return anchors;
  }
  for (Elem p : moving) {
    Elem img = least_witness(s, anchors, p, avoid);
    anchors.emplace_back(p, img);
  }
  return anchors;
}

/// Moves the set `points` off `b_avoid` while fixing `c_fixed` pointwise and
/// preserving the quantifier-free type of (c_fixed, points). Points already in
/// c_fixed stay put; the rest are rebuilt in ascending order with least fresh
/// witnesses. Returns the relocation map defined on c_fixed and points.
inline MapGraph relocate_off(const Structure& s, const std::vector<Elem>& c_fixed,
                             const std::vector<Elem>& points,
                             const std::vector<Elem>& b_avoid) {
  AnchorList anchors;
  std::set<Elem> placed;
  for (Elem c : c_fixed) {
    anchors.emplace_back(c, c);
    placed.insert(c);
  }
  std::set<Elem> avoid(b_avoid.begin(), b_avoid.end());
  std::vector<Elem> moving;
  for (Elem p : points)
    if (!placed.count(p)) moving.push_back(p);
  std::sort(moving.begin(), moving.end());
  moving.erase(std::unique(moving.begin(), moving.end()), moving.end());
  AnchorList out_anchors = place_block(s, std::move(anchors), moving, avoid);
  MapGraph out(out_anchors.begin(), out_anchors.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace eberlein
