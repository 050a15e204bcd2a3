#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "eberlein/errors.hpp"
#include "eberlein/hilbert.hpp"
#include "eberlein/rational.hpp"

namespace eberlein {

/// A convergent family: the limit point together with the points
/// limit + rho u_i for an orthonormal sequence (u_i) in directions fresh to
/// the rest of the cloud. depth > 1 nests a copy of the same family at every
/// point, giving the standard rank tower.
struct CloudFamily {
  std::vector<Rational> limit;
  Rational rho2;
  int depth = 1;
};

/// A finitely presented, weakly closed point cloud: isolated points with
/// exact coordinates plus convergent families. Every family limit is a member
/// of the set, so the presentation is closed by construction.
struct PointCloud {
  std::vector<std::vector<Rational>> isolated;
  std::vector<CloudFamily> families;

  bool empty() const { return isolated.empty() && families.empty(); }
};

namespace detail {

inline void pad_to(std::vector<Rational>& v, std::size_t dim) {
  v.resize(dim, Rational(0));
}

inline std::size_t common_dim(const PointCloud& z) {
  std::size_t dim = 0;
  for (const auto& p : z.isolated) dim = std::max(dim, p.size());
  for (const auto& f : z.families) dim = std::max(dim, f.limit.size());
  return dim;
}

inline Rational dist2(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    Rational ai = i < a.size() ? a[i] : Rational(0);
    Rational bi = i < b.size() ? b[i] : Rational(0);
    Rational d = ai - bi;
    s += d * d;
  }
  return s;
}

}  // namespace detail

/// Drops isolated points that coincide with a family limit (they are the same
/// member of the set) and deduplicates.
inline PointCloud canonicalize(PointCloud z) {
  std::size_t dim = detail::common_dim(z);
  for (auto& p : z.isolated) detail::pad_to(p, dim);
  for (auto& f : z.families) {
    detail::pad_to(f.limit, dim);
    if (!(Rational(0) < f.rho2))
      throw InvariantViolation("PointCloud: rho2 must be positive");
    if (f.depth < 1) throw InvariantViolation("PointCloud: depth must be >= 1");
  }
  std::sort(z.isolated.begin(), z.isolated.end(),
            [](const auto& a, const auto& b) {
              for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != b[i]) return a[i] < b[i];
              return false;
            });
  z.isolated.erase(std::unique(z.isolated.begin(), z.isolated.end()), z.isolated.end());
  std::vector<std::vector<Rational>> kept;
  for (const auto& p : z.isolated) {
    bool is_limit = false;
    for (const auto& f : z.families)
      if (f.limit == p) is_limit = true;
    if (!is_limit) kept.push_back(p);
  }
  z.isolated = std::move(kept);
  return z;
}

/// D(Z) as exact squared distances, computed from the presentation. Within a
/// family the realizable values are k rho2 for k = 0..2 depth (tree paths
/// through fresh orthonormal edges); across components the base distance adds
/// the two tree offsets.
inline std::set<Rational> distance_set(const PointCloud& cloud) {
  PointCloud z = canonicalize(cloud);
  std::set<Rational> d2;
  if (z.empty()) return d2;
  d2.insert(Rational(0));
  for (std::size_t i = 0; i < z.isolated.size(); ++i)
    for (std::size_t j = i + 1; j < z.isolated.size(); ++j)
      d2.insert(detail::dist2(z.isolated[i], z.isolated[j]));
  for (std::size_t fi = 0; fi < z.families.size(); ++fi) {
    const CloudFamily& f = z.families[fi];
    for (int k = 0; k <= 2 * f.depth; ++k) d2.insert(Rational(k) * f.rho2);
    for (const auto& p : z.isolated) {
      Rational base = detail::dist2(p, f.limit);
      for (int j = 0; j <= f.depth; ++j) d2.insert(base + Rational(j) * f.rho2);
    }
    for (std::size_t gi = fi + 1; gi < z.families.size(); ++gi) {
      const CloudFamily& g = z.families[gi];
      Rational base = detail::dist2(f.limit, g.limit);
      for (int j1 = 0; j1 <= f.depth; ++j1)
        for (int j2 = 0; j2 <= g.depth; ++j2)
          d2.insert(base + Rational(j1) * f.rho2 + Rational(j2) * g.rho2);
    }
  }
  return d2;
}

/// The Cantor-Bendixson derivative: leaves of every family tree vanish (they
/// are the isolated points), limits survive, and plain isolated points drop.
inline PointCloud cb_derivative(const PointCloud& cloud) {
  PointCloud z = canonicalize(cloud);
  PointCloud out;
  for (const auto& f : z.families) {
    if (f.depth >= 2)
      out.families.push_back(CloudFamily{f.limit, f.rho2, f.depth - 1});
    else
      out.isolated.push_back(f.limit);
  }
  return canonicalize(out);
}

/// Least n with the n-th derivative empty; bounded by |D(Z)|.
inline int cb_rank(const PointCloud& cloud) {
  PointCloud z = canonicalize(cloud);
  int rank = 0;
  while (!z.empty()) {
    z = cb_derivative(z);
    ++rank;
    if (rank > 1000) throw InvariantViolation("cb_rank: runaway derivative chain");
  }
  return rank;
}

/// The standard depth-k tower over the origin: rank k+1, |D| = 2k+1.
inline PointCloud nested_tower(int depth, const Rational& rho2 = Rational(1)) {
  PointCloud z;
  z.families.push_back(CloudFamily{{}, rho2, depth});
  return z;
}

struct AmbitReport {
  int rank = 0;
  long long coset_bound = 0;
  bool holds = false;
  Rational r2;          // common squared norm of the orbit
  Rational c;           // common cross inner product
  std::size_t orbit_size = 0;
};

/// Builds the orbit closure of eta over the window as a point cloud, using
/// the inner-product census to certify the family presentation, and compares
/// its rank with the double-coset count. The presentation is accepted only
/// when the exact identities |w'|^2 = c and <w', w_i> = c hold, so a wrong
/// guess for the weak limit surfaces as WindowTooSmall rather than a wrong
/// rank.
inline AmbitReport ambit_rank_bound(const Structure& s, const PermRep& rep,
                                    const Vec& eta, const Tuple& c, Elem window) {
  std::vector<PartialIso> sample = census_sample(s, c, window);
  CensusReport census = inner_value_census(rep, eta, c, sample);

  std::vector<Vec> orbit;
  for (const PartialIso& g : sample) {
    Vec out;
    for (const auto& [b, r] : eta.coords()) {
      auto moved = rep.act(g, b);
      if (moved) out.add(*moved, r);
    }
    bool seen = false;
    for (const Vec& u : orbit)
      if (u == out) seen = true;
    if (!seen) orbit.push_back(std::move(out));
  }
  AmbitReport rep_out;
  rep_out.coset_bound = census.double_cosets;
  rep_out.orbit_size = orbit.size();
  if (orbit.empty()) throw WindowTooSmall("ambit_rank_bound: empty orbit");

  if (orbit.size() == 1) {
    rep_out.r2 = orbit[0].norm2();
    rep_out.c = rep_out.r2;
    rep_out.rank = 1;  // a single point
    rep_out.holds = rep_out.rank <= rep_out.coset_bound;
    return rep_out;
  }

  Rational r2 = orbit[0].norm2();
  std::optional<Rational> cross;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    if (orbit[i].norm2() != r2)
      throw WindowTooSmall("ambit_rank_bound: orbit norms not constant");
    for (std::size_t j = i + 1; j < orbit.size(); ++j) {
      Rational ip = inner(orbit[i], orbit[j]);
      if (!cross) cross = ip;
      if (*cross != ip)
        throw WindowTooSmall("ambit_rank_bound: orbit is not a two-level system");
    }
  }
  if (orbit.size() < 5)
    throw WindowTooSmall("ambit_rank_bound: too few orbit points to certify a family");

  // candidate weak limit: coordinatewise value shared by at least 3/4 of the
  // orbit, then verified exactly against the census
  std::map<BasisIndex, std::map<Rational, std::size_t>> tallies;
  for (const Vec& u : orbit)
    for (const auto& [b, r] : u.coords()) tallies[b][r]++;
  Vec w_limit;
  for (const auto& [b, tally] : tallies)
    for (const auto& [val, count] : tally)
      if (4 * count >= 3 * orbit.size()) w_limit.add(b, val);
  if (w_limit.norm2() != *cross)
    throw WindowTooSmall("ambit_rank_bound: weak-limit candidate fails |w'|^2 = c");
  for (const Vec& u : orbit)
    if (inner(w_limit, u) != *cross)
      throw WindowTooSmall("ambit_rank_bound: weak-limit candidate fails <w',w_i> = c");
  Rational rho2 = r2 - *cross;
  if (!(Rational(0) < rho2))
    throw WindowTooSmall("ambit_rank_bound: degenerate residual norm");

  // certified: orbit = w' + rho u_i with (u_i) orthonormal and fresh
  std::vector<Rational> limit_dense;
  for (const auto& [b, r] : w_limit.coords()) limit_dense.push_back(r);
  PointCloud cloud;
  cloud.families.push_back(CloudFamily{std::move(limit_dense), rho2, 1});
  rep_out.r2 = r2;
  rep_out.c = *cross;
  rep_out.rank = cb_rank(cloud);
  rep_out.holds = rep_out.rank <= rep_out.coset_bound;
  return rep_out;
}

}  // namespace eberlein
