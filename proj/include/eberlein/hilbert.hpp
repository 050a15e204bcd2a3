#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eberlein/errors.hpp"
#include "eberlein/partial_iso.hpp"
#include "eberlein/rational.hpp"
#include "eberlein/structures.hpp"
#include "eberlein/wap.hpp"

namespace eberlein {

enum class RelKind {
  Equality,  // equality of n-tuples; basis = tuples themselves
  SameType   // same quantifier-free type; basis = type classes
};

/// One direct summand of a permutation representation. Tensor products of
/// Equality blocks are again Equality blocks (of summed arity), which keeps
/// the coefficient algebra closed without a general tensor index type.
struct RepBlock {
  RelKind rel;
  int arity;
};

/// A basis vector label: which summand, and the canonical representative
/// tuple of the underlying class.
struct BasisIndex {
  int block;
  Tuple rep;

  friend bool operator==(const BasisIndex& a, const BasisIndex& b) {
    return a.block == b.block && a.rep == b.rep;
  }
  friend bool operator<(const BasisIndex& a, const BasisIndex& b) {
    if (a.block != b.block) return a.block < b.block;
    return a.rep < b.rep;
  }
};

inline bool pair_bit(const QfType& t, int i, int j) {
  // rel of a RadoGraph type lists edge bits for pairs (p,q), p<q, row-major
  int n = t.arity, idx = 0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (p == i && q == j) return t.rel[static_cast<std::size_t>(idx)] != 0;
      ++idx;
    }
  throw InvariantViolation("pair_bit: bad pair");
}

/// Lexicographically least tuple with the given quantifier-free type.
inline Tuple least_realization(const Structure& s, const QfType& target,
                               Elem cap = 4096) {
  Tuple acc;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == static_cast<std::size_t>(target.arity)) return true;
    for (Elem v = 0; v < cap; ++v) {
      acc.push_back(v);
      Tuple prefix(acc);
      QfType have = qf_type(s, prefix);
      bool ok = true;
      for (std::size_t k = 0; k <= i && ok; ++k)
        if (have.eq[k] != target.eq[k]) ok = false;
      if (ok && s.kind() == StructureKind::DLO) {
        for (std::size_t k = 0; k < i && ok; ++k) {
          bool want_less = target.rel[k] < target.rel[i];
          bool want_gt = target.rel[k] > target.rel[i];
          if ((have.rel[k] < have.rel[i]) != want_less) ok = false;
          if ((have.rel[k] > have.rel[i]) != want_gt) ok = false;
        }
      }
      if (ok && s.kind() == StructureKind::RadoGraph) {
        // pair bits of the prefix must agree with the target's
        std::size_t idx = 0;
        for (std::size_t p = 0; p < i + 1 && ok; ++p)
          for (std::size_t q = p + 1; q < i + 1; ++q) {
            bool want = pair_bit(target, static_cast<int>(p), static_cast<int>(q));
            if ((Structure::rado_edge(acc[p], acc[q]) ? 1 : 0) != (want ? 1 : 0)) {
              ok = false;
              break;
            }
            ++idx;
          }
        (void)idx;
      }
      if (ok && rec(i + 1)) return true;
      acc.pop_back();
    }
    return false;
  };
  if (!rec(0)) throw WitnessCapExceeded("least_realization: cap reached");
  return acc;
}

/// A finitely-supported unitary permutation representation: a direct sum of
/// blocks, each acting on tuples or on type classes. Partial maps act with
/// the contraction convention: a basis vector whose representative leaves the
/// domain is sent to zero.
class PermRep {
public:
  PermRep(Structure s, std::vector<RepBlock> blocks)
      : s_(std::move(s)), blocks_(std::move(blocks)) {}

  const Structure& structure() const { return s_; }
  const std::vector<RepBlock>& blocks() const { return blocks_; }

  BasisIndex class_of(int block, const Tuple& t) const {
    const RepBlock& b = blocks_.at(static_cast<std::size_t>(block));
    if (static_cast<int>(t.size()) != b.arity)
      throw UnsupportedRelation("class_of: arity mismatch");
    switch (b.rel) {
      case RelKind::Equality: return BasisIndex{block, t};
      case RelKind::SameType: return BasisIndex{block, least_realization(s_, qf_type(s_, t))};
    }
    throw UnsupportedRelation("class_of: bad kind");
  }

  std::optional<BasisIndex> act(const PartialIso& g, const BasisIndex& b) const {
    const RepBlock& blk = blocks_.at(static_cast<std::size_t>(b.block));
    auto moved = g.apply_tuple(b.rep);
    if (!moved) return std::nullopt;
    if (blk.rel == RelKind::SameType) return b;  // classes are Aut-invariant
    return BasisIndex{b.block, *moved};
  }

private:
  Structure s_;
  std::vector<RepBlock> blocks_;
};

/// A finitely-supported vector with exact rational coordinates.
class Vec {
public:
  Vec() = default;

  static Vec basis(BasisIndex b) {
    Vec v;
    v.coords_[std::move(b)] = Rational(1);
    return v;
  }

  void add(const BasisIndex& b, const Rational& r) {
    if (r.is_zero()) return;
    auto it = coords_.find(b);
    if (it == coords_.end()) {
      coords_[b] = r;
      return;
    }
    it->second += r;
    if (it->second.is_zero()) coords_.erase(it);
  }

  Rational at(const BasisIndex& b) const {
    auto it = coords_.find(b);
    return it == coords_.end() ? Rational(0) : it->second;
  }

  const std::map<BasisIndex, Rational>& coords() const { return coords_; }
  std::size_t support_size() const { return coords_.size(); }

  Rational norm2() const {
    Rational n(0);
    for (const auto& [b, r] : coords_) n += r * r;
    return n;
  }

  long double norm2_ld() const {
    long double n = 0;
    for (const auto& [b, r] : coords_) {
      long double x = r.to_long_double();
      n += x * x;
    }
    return n;
  }

  friend Rational inner(const Vec& a, const Vec& b) {
    Rational s(0);
    for (const auto& [idx, r] : a.coords_) {
      auto it = b.coords_.find(idx);
      if (it != b.coords_.end()) s += r * it->second;
    }
    return s;
  }

  friend bool operator==(const Vec& a, const Vec& b) { return a.coords_ == b.coords_; }

private:
  std::map<BasisIndex, Rational> coords_;
};

/// f(g) = <v, pi(g) w>, evaluated exactly. Partial maps evaluate with the
/// contraction convention, which extends f to the partial-map semigroup.
struct MatrixCoefficient {
  PermRep rep;
  Vec v, w;

  Rational evaluate(const PartialIso& g) const {
    Rational out(0);
    for (const auto& [b, wb] : w.coords()) {
      auto moved = rep.act(g, b);
      if (!moved) continue;
      out += wb * v.at(*moved);
    }
    return out;
  }

  Rational norm2_product() const { return v.norm2() * w.norm2(); }
  long double norm_product_ld() const {
    return std::sqrt(v.norm2_ld() * w.norm2_ld());
  }
};

/// Indicator coefficient of a definable equivalence relation:
/// f(g) = 1 iff [a] = g[b]. Values are exactly 0 or 1.
inline MatrixCoefficient eq_rel_coefficient(const Structure& s, RelKind rel,
                                            const Tuple& a, const Tuple& b) {
  if (a.size() != b.size())
    throw UnsupportedRelation("eq_rel_coefficient: arity mismatch");
  PermRep rep(s, {RepBlock{rel, static_cast<int>(a.size())}});
  MatrixCoefficient m{rep, Vec::basis(rep.class_of(0, a)), Vec::basis(rep.class_of(0, b))};
  return m;
}

/// Coefficient of a finitely-supported scalar function: f(g) = F(g.a), with
/// v the sum of F(b) e_b and w = e_a.
inline MatrixCoefficient vanishing_coefficient(
    const Structure& s, const std::vector<std::pair<Tuple, Rational>>& f_table,
    const Tuple& a) {
  int arity = static_cast<int>(a.size());
  PermRep rep(s, {RepBlock{RelKind::Equality, arity}});
  Vec v;
  for (const auto& [t, val] : f_table) {
    if (static_cast<int>(t.size()) != arity)
      throw UnsupportedRelation("vanishing_coefficient: mixed arities");
    v.add(BasisIndex{0, t}, val);
  }
  return MatrixCoefficient{rep, std::move(v), Vec::basis(BasisIndex{0, a})};
}

/// The constant coefficient 1 on the trivial (arity-0 equality) block.
inline MatrixCoefficient coefficient_one(const Structure& s) {
  PermRep rep(s, {RepBlock{RelKind::Equality, 0}});
  return MatrixCoefficient{rep, Vec::basis(BasisIndex{0, {}}), Vec::basis(BasisIndex{0, {}})};
}

/// Direct sum: pointwise sum of coefficients.
inline MatrixCoefficient coefficient_sum(const MatrixCoefficient& m0,
                                         const MatrixCoefficient& m1) {
  std::vector<RepBlock> blocks = m0.rep.blocks();
  int shift = static_cast<int>(blocks.size());
  for (const RepBlock& b : m1.rep.blocks()) blocks.push_back(b);
  PermRep rep(m0.rep.structure(), std::move(blocks));
  Vec v, w;
  for (const auto& [b, r] : m0.v.coords()) v.add(b, r);
  for (const auto& [b, r] : m0.w.coords()) w.add(b, r);
  for (const auto& [b, r] : m1.v.coords()) v.add(BasisIndex{b.block + shift, b.rep}, r);
  for (const auto& [b, r] : m1.w.coords()) w.add(BasisIndex{b.block + shift, b.rep}, r);
  return MatrixCoefficient{rep, std::move(v), std::move(w)};
}

inline MatrixCoefficient coefficient_scale(const Rational& lambda, MatrixCoefficient m) {
  Vec v;
  for (const auto& [b, r] : m.v.coords()) v.add(b, lambda * r);
  m.v = std::move(v);
  return m;
}

/// Tensor product: pointwise product of coefficients. Only Equality blocks
/// tensor (the product of two tuple-equality relations is tuple equality on
/// the concatenation).
inline MatrixCoefficient coefficient_product(const MatrixCoefficient& m0,
                                             const MatrixCoefficient& m1) {
  for (const RepBlock& b : m0.rep.blocks())
    if (b.rel != RelKind::Equality)
      throw UnsupportedRelation("coefficient_product: Equality blocks only");
  for (const RepBlock& b : m1.rep.blocks())
    if (b.rel != RelKind::Equality)
      throw UnsupportedRelation("coefficient_product: Equality blocks only");
  int n1 = static_cast<int>(m1.rep.blocks().size());
  std::vector<RepBlock> blocks;
  for (const RepBlock& b0 : m0.rep.blocks())
    for (const RepBlock& b1 : m1.rep.blocks())
      blocks.push_back(RepBlock{RelKind::Equality, b0.arity + b1.arity});
  PermRep rep(m0.rep.structure(), std::move(blocks));
  auto tensor = [&](const Vec& a, const Vec& b) {
    Vec out;
    for (const auto& [ia, ra] : a.coords())
      for (const auto& [ib, rb] : b.coords()) {
        Tuple t(ia.rep);
        t.insert(t.end(), ib.rep.begin(), ib.rep.end());
        out.add(BasisIndex{ia.block * n1 + ib.block, std::move(t)}, ra * rb);
      }
    return out;
  };
  return MatrixCoefficient{rep, tensor(m0.v, m1.v), tensor(m0.w, m1.w)};
}

/// 1 - m, realized on the direct sum with the trivial block.
inline MatrixCoefficient coefficient_negation(const MatrixCoefficient& m) {
  return coefficient_sum(coefficient_one(m.rep.structure()),
                         coefficient_scale(Rational(-1), m));
}

/// Reconstructs a {0,1}-valued function on a sample as a Boolean combination
/// (disjunctive normal form) of {0,1}-valued coefficients. When lambdas are
/// supplied, the approximation premise |f - sum lambda_i m_i| < 1/2 is
/// verified on the sample first.
inline MatrixCoefficient boolean_reconstruct(
    const std::vector<PartialIso>& sample, const std::vector<int>& target,
    const std::vector<MatrixCoefficient>& atoms,
    const std::vector<Rational>& lambdas = {}) {
  if (sample.size() != target.size())
    throw InvariantViolation("boolean_reconstruct: sample/target size mismatch");
  std::size_t k = atoms.size();
  std::vector<std::vector<int>> patterns(sample.size(), std::vector<int>(k, 0));
  for (std::size_t g = 0; g < sample.size(); ++g)
    for (std::size_t i = 0; i < k; ++i) {
      Rational val = atoms[i].evaluate(sample[g]);
      if (val == Rational(0))
        patterns[g][i] = 0;
      else if (val == Rational(1))
        patterns[g][i] = 1;
      else
        throw UnsupportedRelation("boolean_reconstruct: atom not {0,1}-valued");
    }
  if (!lambdas.empty()) {
    if (lambdas.size() != k)
      throw InvariantViolation("boolean_reconstruct: lambda count mismatch");
    Rational half(1, 2);
    for (std::size_t g = 0; g < sample.size(); ++g) {
      Rational approx(0);
      for (std::size_t i = 0; i < k; ++i)
        if (patterns[g][i]) approx += lambdas[i];
      Rational err = Rational(target[g]) - approx;
      if (err < Rational(0)) err = -err;
      if (!(err < half))
        throw ApproximationTooCoarse("boolean_reconstruct: premise fails on sample");
    }
  }
  // the premise forces the pattern to determine the value
  std::map<std::vector<int>, int> value_of;
  for (std::size_t g = 0; g < sample.size(); ++g) {
    auto [it, fresh] = value_of.emplace(patterns[g], target[g]);
    if (!fresh && it->second != target[g])
      throw ApproximationTooCoarse("boolean_reconstruct: pattern conflicts with target");
  }
  const Structure& s = atoms.empty() ? Structure(StructureKind::PureSet)
                                     : atoms[0].rep.structure();
  std::optional<MatrixCoefficient> dnf;
  for (const auto& [pat, val] : value_of) {
    if (val != 1) continue;
    MatrixCoefficient minterm = coefficient_one(s);
    for (std::size_t i = 0; i < k; ++i)
      minterm = coefficient_product(
          minterm, pat[i] ? atoms[i] : coefficient_negation(atoms[i]));
    dnf = dnf ? coefficient_sum(*dnf, minterm) : minterm;
  }
  MatrixCoefficient out =
      dnf ? *dnf : coefficient_scale(Rational(0), coefficient_one(s));
  for (std::size_t g = 0; g < sample.size(); ++g)
    if (out.evaluate(sample[g]) != Rational(target[g]))
      throw ApproximationTooCoarse("boolean_reconstruct: reconstruction mismatch");
  return out;
}

/// A finite sample of an indiscernible sequence of Hilbert-space vectors:
/// constant norm, constant pairwise inner product.
struct IndiscernibleSample {
  std::vector<std::vector<Rational>> vectors;
  Rational r2;  // common squared norm
  Rational c;   // common pairwise inner product
};

inline Rational dense_inner(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) s += a[i] * b[i];
  return s;
}

/// Validates the sample invariants exactly and derives (r2, c).
inline IndiscernibleSample make_indiscernible_sample(
    std::vector<std::vector<Rational>> vectors) {
  if (vectors.size() < 2)
    throw NotIndiscernible("indiscernible sample needs at least two vectors");
  std::size_t dim = 0;
  for (const auto& v : vectors) dim = std::max(dim, v.size());
  for (auto& v : vectors) v.resize(dim, Rational(0));
  Rational r2 = dense_inner(vectors[0], vectors[0]);
  Rational c = dense_inner(vectors[0], vectors[1]);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i; j < vectors.size(); ++j) {
      Rational val = dense_inner(vectors[i], vectors[j]);
      if (i == j && val != r2) throw NotIndiscernible("norms not constant");
      if (i != j && val != c) throw NotIndiscernible("inner products not constant");
    }
  if (r2 < c) throw NotIndiscernible("inner product exceeds norm");
  return IndiscernibleSample{std::move(vectors), r2, c};
}

/// Builds w_i = u (+) block placed in the i-th fresh slot: an explicit sample
/// with c = |u|^2 and r2 = |u|^2 + |block|^2, exact by construction. Rational
/// blocks reach values of r2 - c that need not be rational squares.
inline IndiscernibleSample standard_indiscernible_sample(
    const std::vector<Rational>& common, const std::vector<Rational>& block,
    std::size_t n) {
  std::size_t bs = block.size();
  std::vector<std::vector<Rational>> vectors;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> w(common);
    w.resize(common.size() + n * bs, Rational(0));
    for (std::size_t k = 0; k < bs; ++k) w[common.size() + i * bs + k] = block[k];
    vectors.push_back(std::move(w));
  }
  return make_indiscernible_sample(std::move(vectors));
}

struct IndiscernibleDecomposition {
  std::vector<Rational> w_bar;
  Rational predicted_norm2;  // c + (r2 - c)/n
  Rational norm2_w_bar;
  std::vector<std::vector<Rational>> residual_gram;
  bool norm_identity_exact = false;
  bool gram_identity_exact = false;
};

/// The finite-sample shadow of the weak-limit decomposition: the average
/// vector has squared norm exactly c + (r2-c)/n and the residuals have Gram
/// matrix (r2-c)(I - J/n), both verified in exact arithmetic.
inline IndiscernibleDecomposition indiscernible_decompose(const IndiscernibleSample& s) {
  std::size_t n = s.vectors.size();
  std::size_t dim = s.vectors[0].size();
  IndiscernibleDecomposition d;
  d.w_bar.assign(dim, Rational(0));
  Rational inv_n(1, static_cast<std::int64_t>(n));
  for (const auto& w : s.vectors)
    for (std::size_t i = 0; i < dim; ++i) d.w_bar[i] += w[i] * inv_n;
  d.norm2_w_bar = dense_inner(d.w_bar, d.w_bar);
  d.predicted_norm2 = s.c + (s.r2 - s.c) * inv_n;
  d.norm_identity_exact = d.norm2_w_bar == d.predicted_norm2;
  d.residual_gram.assign(n, std::vector<Rational>(n, Rational(0)));
  d.gram_identity_exact = true;
  Rational spread = s.r2 - s.c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> ri(s.vectors[i]), rj(s.vectors[j]);
      for (std::size_t k = 0; k < dim; ++k) {
        ri[k] -= d.w_bar[k];
        rj[k] -= d.w_bar[k];
      }
      d.residual_gram[i][j] = dense_inner(ri, rj);
      Rational expected = spread * (Rational(i == j ? 1 : 0) - inv_n);
      if (d.residual_gram[i][j] != expected) d.gram_identity_exact = false;
    }
  return d;
}

struct DecayReport {
  long double avg = 0;
  long double bound = 0;
  bool holds = false;
};

/// Core of the decay check: |average of the first n values| against
/// norm_product / sqrt(n).
inline DecayReport decay_check_values(const std::vector<Rational>& values,
                                      std::size_t n, long double norm_product,
                                      long double tolerance) {
  if (n == 0 || n > values.size())
    throw InvariantViolation("decay_check_values: bad n");
  long double sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += values[i].to_long_double();
  DecayReport r;
  r.avg = std::fabs(sum / static_cast<long double>(n));
  r.bound = norm_product / std::sqrt(static_cast<long double>(n));
  r.holds = r.avg <= r.bound + tolerance;
  return r;
}

/// Verifies, at the pair level, that the chunk sequence is indiscernible and
/// that the moved point is non-constant, then evaluates the coefficient along
/// the sequence.
inline std::vector<Rational> coefficient_along_sequence(
    const MatrixCoefficient& f, const std::vector<EmbeddingChunk>& chunks,
    const Tuple& a, std::size_t n) {
  if (n > chunks.size())
    throw InvariantViolation("coefficient_along_sequence: not enough chunks");
  const Structure& s = f.rep.structure();
  std::optional<QfType> single, pair;
  bool nonconstant = false;
  std::optional<Tuple> first_image;
  std::size_t probe = std::min<std::size_t>(chunks.size(), 24);
  for (std::size_t i = 0; i < probe; ++i) {
    auto img_opt = chunks[i].as_map().apply_tuple(a);
    if (!img_opt)
      throw InvariantViolation("coefficient_along_sequence: chunk undefined on a");
    Tuple img_i = *img_opt;
    if (!first_image) first_image = img_i;
    if (img_i != *first_image) nonconstant = true;
    QfType t1 = qf_type(s, img_i);
    if (!single) single = t1;
    if (!(t1 == *single))
      throw SequenceNotIndiscernible("1-types along the sequence differ");
    for (std::size_t j = i + 1; j < probe; ++j) {
      Tuple joint = img_i;
      auto img_j_opt = chunks[j].as_map().apply_tuple(a);
      if (!img_j_opt)
        throw InvariantViolation("coefficient_along_sequence: chunk undefined on a");
      Tuple img_j = *img_j_opt;
      joint.insert(joint.end(), img_j.begin(), img_j.end());
      QfType t2 = qf_type(s, joint);
      if (!pair) pair = t2;
      if (!(t2 == *pair))
        throw SequenceNotIndiscernible("2-types along the sequence differ");
    }
  }
  if (!nonconstant)
    throw SequenceNotIndiscernible("moved point is constant along the sequence");
  std::vector<Rational> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    values.push_back(f.evaluate(chunks[i].as_map()));
  return values;
}

inline DecayReport decay_check(const MatrixCoefficient& f,
                               const std::vector<EmbeddingChunk>& chunks,
                               const Tuple& a, std::size_t n,
                               long double tolerance = 1e-9L) {
  std::vector<Rational> values = coefficient_along_sequence(f, chunks, a, n);
  return decay_check_values(values, n, f.norm_product_ld(), tolerance);
}

struct CensusReport {
  std::vector<Rational> values;  // sorted distinct inner products
  long long double_cosets = 0;
  bool holds = false;
};

/// The inner-product value census against the double-coset count: eta must be
/// fixed by the sampled stabilizer elements of c, and then the set of values
/// <pi(g1) eta, pi(g2) eta> over the sample is no larger than the number of
/// types of (c, g.c).
inline CensusReport inner_value_census(const PermRep& rep, const Vec& eta,
                                       const Tuple& c,
                                       const std::vector<PartialIso>& sample) {
  auto apply = [&](const PartialIso& g) {
    Vec out;
    for (const auto& [b, r] : eta.coords()) {
      auto moved = rep.act(g, b);
      if (moved) out.add(*moved, r);
    }
    return out;
  };
  for (const PartialIso& g : sample) {
    bool fixes_c = true;
    for (Elem x : c) {
      auto y = g.apply(x);
      if (!y || *y != x) {
        fixes_c = false;
        break;
      }
    }
    if (fixes_c && !(apply(g) == eta))
      throw EtaNotFixed("inner_value_census: eta moved by a stabilizer element");
  }
  std::vector<Vec> orbit;
  orbit.reserve(sample.size());
  for (const PartialIso& g : sample) orbit.push_back(apply(g));
  std::set<Rational> values;
  for (const Vec& u : orbit)
    for (const Vec& v : orbit) values.insert(inner(u, v));
  std::set<QfType> cosets;
  for (const PartialIso& g : sample) {
    auto gc = g.apply_tuple(c);
    if (!gc) throw InvariantViolation("inner_value_census: sample element undefined on c");
    Tuple joint(c);
    joint.insert(joint.end(), gc->begin(), gc->end());
    cosets.insert(qf_type(rep.structure(), joint));
  }
  CensusReport r;
  r.values.assign(values.begin(), values.end());
  r.double_cosets = static_cast<long long>(cosets.size());
  r.holds = static_cast<long long>(r.values.size()) <= r.double_cosets;
  return r;
}

/// One partial map c -> d per realization of tp(c) inside the window: a
/// deterministic stand-in for a double-coset-representative sample.
inline std::vector<PartialIso> census_sample(const Structure& s, const Tuple& c,
                                             Elem window) {
  std::vector<PartialIso> out;
  QfType target = qf_type(s, c);
  std::vector<Elem> d(c.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == c.size()) {
      MapGraph g;
      for (std::size_t k = 0; k < c.size(); ++k) g.emplace_back(c[k], d[k]);
      Tuple dt(d.begin(), d.end());
      if (qf_type(s, dt) == target) out.emplace_back(s, std::move(g));
      return;
    }
    for (Elem v = 0; v < window; ++v) {
      d[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace eberlein
