#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "eberlein/errors.hpp"
#include "eberlein/partial_iso.hpp"
#include "eberlein/rational.hpp"
#include "eberlein/structures.hpp"

namespace eberlein {

enum class FormulaKind { Equality, Order, Edge };

/// A two-variable formula with automorphism-invariant evaluation: tuple
/// equality (any structure), the order (DLO) or the edge relation (Rado).
struct FormulaDescriptor {
  Structure s;
  FormulaKind kind;
  int arity = 1;

  bool eval(const Tuple& u, const Tuple& v) const {
    switch (kind) {
      case FormulaKind::Equality:
        return u == v;
      case FormulaKind::Order:
        if (s.kind() != StructureKind::DLO)
          throw UnsupportedRelation("Order formula needs the DLO structure");
        return s.less(u.at(0), v.at(0));
      case FormulaKind::Edge:
        if (s.kind() != StructureKind::RadoGraph)
          throw UnsupportedRelation("Edge formula needs the Rado graph");
        return Structure::rado_edge(u.at(0), v.at(0));
    }
    return false;
  }
};

/// Rows and columns with phi(a_i, b_j) = 1 iff i <= j: the finite obstruction
/// to exchanging iterated limits.
struct LadderWitness {
  std::vector<Tuple> rows;
  std::vector<Tuple> cols;

  std::size_t length() const { return rows.size(); }

  bool verify(const FormulaDescriptor& phi) const {
    if (rows.size() != cols.size()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (phi.eval(rows[i], cols[j]) != (i <= j)) return false;
    return true;
  }
};

namespace detail {

inline std::optional<LadderWitness> order_ladder(const FormulaDescriptor& phi,
                                                 std::size_t n, Elem window) {
  if (static_cast<Elem>(2 * n) > window) return std::nullopt;
  // sort the first 2n elements by dyadic value and interleave a_0 < b_0 < ...
  std::vector<Elem> pts(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) pts[i] = static_cast<Elem>(i);
  std::sort(pts.begin(), pts.end(), [&](Elem a, Elem b) { return phi.s.less(a, b); });
  LadderWitness w;
  for (std::size_t i = 0; i < n; ++i) {
    w.rows.push_back({pts[2 * i]});
    w.cols.push_back({pts[2 * i + 1]});
  }
  if (!w.verify(phi)) throw InvariantViolation("order_ladder: construction failed");
  return w;
}

inline std::optional<LadderWitness> edge_ladder(const FormulaDescriptor& phi,
                                                std::size_t n, Elem window) {
  // alternate a_t, b_t; each pick is the least vertex meeting the pattern
  // against everything already chosen
  std::vector<Elem> rows, cols;
  std::set<Elem> used;
  auto pick = [&](const std::vector<Elem>& adj, const std::vector<Elem>& non)
      -> std::optional<Elem> {
    for (Elem v = 0; v < window; ++v) {
      if (used.count(v)) continue;
      bool ok = true;
      for (Elem x : adj)
        if (!Structure::rado_edge(v, x)) {
          ok = false;
          break;
        }
      for (Elem y : non)
        if (ok && Structure::rado_edge(v, y)) ok = false;
      if (ok) return v;
    }
    return std::nullopt;
  };
  for (std::size_t t = 0; t < n; ++t) {
    auto a = pick({}, cols);  // non-adjacent to b_0..b_{t-1}
    if (!a) return std::nullopt;
    rows.push_back(*a);
    used.insert(*a);
    auto b = pick(rows, {});  // adjacent to a_0..a_t
    if (!b) return std::nullopt;
    cols.push_back(*b);
    used.insert(*b);
  }
  LadderWitness w;
  for (Elem a : rows) w.rows.push_back({a});
  for (Elem b : cols) w.cols.push_back({b});
  if (!w.verify(phi)) throw InvariantViolation("edge_ladder: construction failed");
  return w;
}

/// Exhaustive scan for a length-2 ladder over all arity-k window tuples. A
/// length-n ladder restricts to its first two rows and columns, so absence at
/// length 2 certifies absence at every length >= 2.
inline std::optional<LadderWitness> equality_ladder_2(const FormulaDescriptor& phi,
                                                      Elem window) {
  std::vector<Tuple> tuples;
  Tuple acc(static_cast<std::size_t>(phi.arity), 0);
  std::function<void(std::size_t)> gen = [&](std::size_t i) {
    if (i == acc.size()) {
      tuples.push_back(acc);
      return;
    }
    for (Elem v = 0; v < window; ++v) {
      acc[i] = v;
      gen(i + 1);
    }
  };
  gen(0);
  double total = 1;
  for (int r = 0; r < 4; ++r) total *= static_cast<double>(tuples.size());
  if (total > 5e8)
    throw WitnessCapExceeded("equality ladder: window too large for exhaustive scan");
  for (const Tuple& a0 : tuples)
    for (const Tuple& b0 : tuples) {
      if (!(a0 == b0)) continue;  // need phi(a_0, b_0) = 1
      for (const Tuple& a1 : tuples) {
        if (a1 == b0) continue;  // need phi(a_1, b_0) = 0
        for (const Tuple& b1 : tuples)
          if (a0 == b1 && a1 == b1) {
            LadderWitness w;
            w.rows = {a0, a1};
            w.cols = {b0, b1};
            return w;  // unreachable: a0 = b1 = a1 contradicts a1 != b0 = a0
          }
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// Searches the first `window` elements for a ladder of length n, or
/// certifies none exist there. Order and edge ladders are built directly
/// (half-graphs embed); equality reduces to the exhaustive length-2 scan.
inline std::optional<LadderWitness> ladder_search(const FormulaDescriptor& phi,
                                                  std::size_t n, Elem window) {
  if (n < 2) throw InvariantViolation("ladder_search: n must be >= 2");
  switch (phi.kind) {
    case FormulaKind::Order:
      return detail::order_ladder(phi, n, window);
    case FormulaKind::Edge:
      return detail::edge_ladder(phi, n, window);
    case FormulaKind::Equality:
      return detail::equality_ladder_2(phi, window);
  }
  return std::nullopt;
}

struct DoubleLimitResult {
  Rational row_then_col;
  Rational col_then_row;
  bool agree() const { return row_then_col == col_then_row; }
};

namespace detail {

inline std::optional<Rational> tail_value(const std::vector<Rational>& seq,
                                          std::size_t tail) {
  if (seq.size() < tail) return std::nullopt;
  const Rational& last = seq.back();
  for (std::size_t i = seq.size() - tail; i < seq.size(); ++i)
    if (seq[i] != last) return std::nullopt;
  return last;
}

}  // namespace detail

/// Evaluates the array f(g_i h_j) and computes both iterated limits, where a
/// limit is read off a constant tail of length `tail`. The outer index only
/// runs over the first half of its range so that the inner index escapes far
/// beyond it, as the iterated limit requires. Throws TailNotStabilized
/// (inconclusive, not a counterexample) when a tail fails to settle.
inline DoubleLimitResult double_limit_table(
    const std::function<Rational(const PartialIso&)>& f,
    const std::vector<PartialIso>& g_rows, const std::vector<PartialIso>& h_cols,
    std::size_t tail = 3) {
  if (g_rows.size() < 2 * tail || h_cols.size() < 2 * tail)
    throw TailNotStabilized("double_limit_table: sample shorter than two tails");
  std::vector<std::vector<Rational>> table(g_rows.size());
  for (std::size_t i = 0; i < g_rows.size(); ++i)
    for (std::size_t j = 0; j < h_cols.size(); ++j)
      table[i].push_back(f(compose(g_rows[i], h_cols[j])));

  auto iterate = [&](bool rows_first) -> Rational {
    std::size_t outer_n = (rows_first ? g_rows.size() : h_cols.size()) / 2;
    std::size_t inner_n = rows_first ? h_cols.size() : g_rows.size();
    std::vector<Rational> outer;
    for (std::size_t o = 0; o < outer_n; ++o) {
      std::vector<Rational> inner_seq;
      for (std::size_t in = 0; in < inner_n; ++in)
        inner_seq.push_back(rows_first ? table[o][in] : table[in][o]);
      auto lim = detail::tail_value(inner_seq, tail);
      if (!lim)
        throw TailNotStabilized("double_limit_table: inner sequence does not settle");
      outer.push_back(*lim);
    }
    auto lim = detail::tail_value(outer, tail);
    if (!lim)
      throw TailNotStabilized("double_limit_table: outer sequence does not settle");
    return *lim;
  };

  DoubleLimitResult r;
  r.row_then_col = iterate(true);
  r.col_then_row = iterate(false);
  return r;
}

struct LadderGroupData {
  Tuple anchor;                  // fixed left parameter a
  Tuple base;                    // fixed right parameter b
  std::vector<PartialIso> rows;  // g_i with g_i(a_i) = a
  std::vector<PartialIso> cols;  // h_j with h_j(b) = b_j
};

/// Translates a ladder into group-element avatars: with g_i carrying the i-th
/// row to the anchor and h_j carrying the base to the j-th column,
/// phi(anchor, (g_i h_j)(base)) reproduces the ladder pattern [i <= j].
inline LadderGroupData ladder_to_group_elements(const Structure& s,
                                                const LadderWitness& w) {
  LadderGroupData out;
  out.anchor = w.rows.at(0);
  out.base = w.cols.at(0);
  std::vector<Elem> col_points;
  for (const Tuple& col : w.cols)
    col_points.insert(col_points.end(), col.begin(), col.end());
  for (const Tuple& row : w.rows) {
    MapGraph g;
    for (std::size_t k = 0; k < row.size(); ++k) g.emplace_back(row[k], out.anchor[k]);
    out.rows.push_back(extend_over(s, PartialIso(s, std::move(g)), col_points));
  }
  for (const Tuple& col : w.cols) {
    MapGraph h;
    for (std::size_t k = 0; k < col.size(); ++k) h.emplace_back(out.base[k], col[k]);
    out.cols.push_back(PartialIso(s, std::move(h)));
  }
  return out;
}

/// The function g -> phi(a, g b) as an exact 0/1-valued evaluation.
inline std::function<Rational(const PartialIso&)> formula_function(
    const FormulaDescriptor& phi, const Tuple& anchor, const Tuple& base) {
  return [phi, anchor, base](const PartialIso& p) -> Rational {
    auto moved = p.apply_tuple(base);
    if (!moved)
      throw InvariantViolation("formula_function: element undefined on the base");
    return phi.eval(anchor, *moved) ? Rational(1) : Rational(0);
  };
}

}  // namespace eberlein
