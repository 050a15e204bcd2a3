#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "eberlein/errors.hpp"
#include "eberlein/partial_iso.hpp"

namespace eberlein {

/// Index-level multiplication table. Everything the inverse-semigroup checks
/// need (regularity, commuting idempotents, inverse counts) is decidable from
/// the table alone, so the checks below work for any closed element list.
struct CayleyTable {
  std::vector<std::vector<int>> product;  // product[i][j] = index of e_i * e_j
  std::vector<int> generators;
  int identity = -1;  // index, or -1 if none was adjoined
  bool truncated = false;

  int size() const { return static_cast<int>(product.size()); }

  int mul(int i, int j) const {
    return product[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  bool is_idempotent(int i) const { return mul(i, i) == i; }

  void require_complete(const char* who) const {
    if (truncated) throw IncompleteTable(std::string(who) + ": table is truncated");
  }
};

/// Breadth-first closure of `gens` under `mul`, deduplicated by operator<.
/// Returns the element list (generators first, in discovery order) and the
/// full product table; `truncated` is set instead of failing when the closure
/// exceeds `cap`.
template <typename T, typename Mul>
std::pair<std::vector<T>, CayleyTable> close_under(const std::vector<T>& gens, Mul mul,
                                                   std::size_t cap) {
  std::vector<T> elems;
  std::map<T, int> index;
  CayleyTable table;
  auto intern = [&](const T& t) -> int {
    auto it = index.find(t);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(elems.size());
    elems.push_back(t);
    index.emplace(t, id);
    return id;
  };
  for (const T& g : gens) table.generators.push_back(intern(g));
  std::size_t next = 0;
  while (next < elems.size()) {
    if (elems.size() > cap) {
      table.truncated = true;
      return {std::move(elems), std::move(table)};
    }
    T cur = elems[next];
    for (const T& g : gens) intern(mul(cur, g));
    ++next;
  }
  int n = static_cast<int>(elems.size());
  table.product.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto it = index.find(mul(elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]));
      if (it == index.end()) {
        // cannot happen for closures reached from words in the generators
        table.truncated = true;
        return {std::move(elems), std::move(table)};
      }
      table.product[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = it->second;
    }
  return {std::move(elems), std::move(table)};
}

/// The enumerated subsemigroup of the symmetric inverse monoid.
struct SemigroupTable {
  Structure structure;
  std::vector<PartialIso> elements;
  CayleyTable cayley;

  int index_of(const PartialIso& p) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == p) return static_cast<int>(i);
    return -1;
  }
};

constexpr std::size_t kDefaultGenerateCap = 100000;

/// Closure of `gens` (with the identity on `window` adjoined) under
/// composition. Generator graphs must live inside the window so that the
/// adjoined identity is neutral.
inline SemigroupTable generate(const Structure& s, std::vector<PartialIso> gens,
                               const std::vector<Elem>& window,
                               std::size_t cap = kDefaultGenerateCap) {
  std::set<Elem> win(window.begin(), window.end());
  for (const auto& g : gens)
    for (const auto& [a, b] : g.graph())
      if (!win.count(a) || !win.count(b))
        throw InvariantViolation("generate: generator leaves the window");
  PartialIso id = PartialIso::identity_on(s, window);
  std::vector<PartialIso> seeds;
  seeds.push_back(id);
  for (auto& g : gens) seeds.push_back(std::move(g));
  auto [elems, table] =
      close_under(seeds, [](const PartialIso& a, const PartialIso& b) { return compose(a, b); }, cap);
  table.identity = 0;
  return SemigroupTable{s, std::move(elems), std::move(table)};
}

/// All partial injections of {0..n-1} over the pure set, enumerated directly
/// (domain subsets, then injective assignments). Independent of `generate`;
/// |result| = sum over k of C(n,k)^2 k!.
inline std::vector<PartialIso> all_partial_injections(const Structure& s, int n) {
  std::vector<PartialIso> out;
  std::vector<Elem> points(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) points[static_cast<std::size_t>(i)] = i;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<Elem> dom;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) dom.push_back(i);
    // iterate over all injections dom -> points
    std::vector<Elem> chosen;
    std::function<void(std::size_t, std::vector<Elem>&)> rec =
        [&](std::size_t i, std::vector<Elem>& acc) {
          if (i == dom.size()) {
            MapGraph g;
            for (std::size_t k = 0; k < dom.size(); ++k) g.emplace_back(dom[k], acc[k]);
            out.emplace_back(s, std::move(g));
            return;
          }
          for (Elem t : points) {
            if (std::find(acc.begin(), acc.end(), t) != acc.end()) continue;
            acc.push_back(t);
            rec(i + 1, acc);
            acc.pop_back();
          }
        };
    rec(0, chosen);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct InverseSemigroupReport {
  bool regular = false;
  bool idempotents_commute = false;
  bool unique_inverses = false;
};

/// The three defining booleans, from the table alone.
inline InverseSemigroupReport check_inverse_semigroup(const CayleyTable& t) {
  t.require_complete("check_inverse_semigroup");
  InverseSemigroupReport r;
  int n = t.size();
  r.regular = true;
  for (int i = 0; i < n && r.regular; ++i) {
    bool found = false;
    for (int j = 0; j < n && !found; ++j)
      if (t.mul(t.mul(i, j), i) == i) found = true;
    r.regular = found;
  }
  std::vector<int> idems;
  for (int i = 0; i < n; ++i)
    if (t.is_idempotent(i)) idems.push_back(i);
  r.idempotents_commute = true;
  for (int e : idems)
    for (int f : idems)
      if (t.mul(e, f) != t.mul(f, e)) {
        r.idempotents_commute = false;
        break;
      }
  r.unique_inverses = true;
  for (int i = 0; i < n && r.unique_inverses; ++i) {
    int count = 0;
    for (int j = 0; j < n; ++j)
      if (t.mul(t.mul(i, j), i) == i && t.mul(t.mul(j, i), j) == j) ++count;
    if (count != 1) r.unique_inverses = false;
  }
  return r;
}

/// star(e) == e for every idempotent element of the enumerated table.
inline bool idempotents_self_adjoint(const SemigroupTable& t) {
  t.cayley.require_complete("idempotents_self_adjoint");
  for (int i = 0; i < t.cayley.size(); ++i)
    if (t.cayley.is_idempotent(i)) {
      const PartialIso& e = t.elements[static_cast<std::size_t>(i)];
      if (!(star(e) == e)) return false;
    }
  return true;
}

/// Sq = Spq iff q = p*pq, tested inside the enumerated table (principal left
/// ideals computed by brute force).
inline bool left_ideal_criterion_holds(const SemigroupTable& t) {
  t.cayley.require_complete("left_ideal_criterion_holds");
  int n = t.cayley.size();
  auto left_ideal = [&](int q) {
    std::set<int> ideal;
    ideal.insert(q);  // monoid: identity included among multipliers
    for (int x = 0; x < n; ++x) ideal.insert(t.cayley.mul(x, q));
    return ideal;
  };
  for (int p = 0; p < n; ++p) {
    int p_star = t.index_of(star(t.elements[static_cast<std::size_t>(p)]));
    if (p_star < 0) return false;  // table not *-closed; criterion needs it
    for (int q = 0; q < n; ++q) {
      int pq = t.cayley.mul(p, q);
      bool same_ideal = left_ideal(q) == left_ideal(pq);
      bool algebraic = t.cayley.mul(t.cayley.mul(p_star, p), q) == q;
      if (same_ideal != algebraic) return false;
    }
  }
  return true;
}

}  // namespace eberlein
