#ifndef COMMCALC_COMMUTATORS_HPP
#define COMMCALC_COMMUTATORS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"

namespace commcalc {

enum class CommutatorKind {
  HigginsBinary,
  Huq,
  Smith,
  TernaryObstruction,
  SmithNormalization,
  TernaryGroupExact,
  Associator,
  TernaryLowerBound
};

enum class Exactness { Exact, LowerBound };

inline char const *to_string(CommutatorKind k) {
  switch (k) {
  case CommutatorKind::HigginsBinary: return "higgins";
  case CommutatorKind::Huq: return "huq";
  case CommutatorKind::Smith: return "smith";
  case CommutatorKind::TernaryObstruction: return "ternary";
  case CommutatorKind::SmithNormalization: return "smith-normal";
  case CommutatorKind::TernaryGroupExact: return "ternary-group";
  case CommutatorKind::Associator: return "associator";
  case CommutatorKind::TernaryLowerBound: return "lower-bound";
  }
  return "?";
}

inline char const *to_string(Exactness e) {
  return e == Exactness::Exact ? "exact" : "lower-bound";
}

/// A witness element together with an optional certificate term and the
/// letter values used to evaluate it.
struct TermWitness {
  Elem value = 0;
  std::string term;
  std::vector<Elem> assignment;
};

/// Outcome of one commutator computation. Each witness lies in `result`;
/// `verify_witnesses` re-checks that.
struct CommutatorReport {
  CommutatorKind kind = CommutatorKind::HigginsBinary;
  std::vector<Subobject> inputs;
  Subobject result;
  std::vector<TermWitness> witnesses;
  Exactness exactness = Exactness::Exact;
  bool truncated = false;
  std::vector<std::string> notes;
};

inline bool verify_witnesses(CommutatorReport const &r) {
  for (auto const &w : r.witnesses)
    if (!r.result.contains(w.value))
      return false;
  return true;
}

/// Non-unit elements of `s` as plain witnesses.
inline std::vector<TermWitness> element_witnesses(Subobject const &s) {
  std::vector<TermWitness> out;
  for (Elem e : s.elements())
    if (e != 0)
      out.push_back({e, {}, {}});
  return out;
}

inline Subobject require_normal(FiniteAlgebra const &x, Subobject const &s,
                                std::string const &which) {
  Subobject c = classify_normality(x, s);
  if (c.normality() != Normality::Normal)
    throw NotNormal(which);
  return c;
}

// ---------------------------------------------------------------------------
// Higgins and Huq

/// Higgins commutator [K, L]: the fibre over (1, 1) of the subalgebra of
/// X×X×X generated by (k, k, 1) and (l, 1, l).
inline Subobject higgins_binary(FiniteAlgebra const &x, Subobject const &k,
                                Subobject const &l) {
  ProductView p({x, x, x});
  auto n = static_cast<Elem>(x.order());
  std::vector<Elem> seeds;
  for (Elem a : k.elements())
    seeds.push_back((a * n + a) * n);
  for (Elem b : l.elements())
    seeds.push_back(b * n * n + b);
  auto d = close_subset(p, std::span<Elem const>(seeds));
  std::vector<Elem> out;
  for (Elem code : d)
    if (code % (n * n) == 0)
      out.push_back(code / (n * n));
  return Subobject(x.order(), std::move(out));
}

/// Result of testing whether (k, l) -> k·l is a homomorphism K×L -> X.
struct CooperatorResult {
  bool ok = true;
  std::string op;              // first failing operation
  std::vector<Elem> witness;   // k1, l1[, k2, l2]
  Elem defect = 0;             // lhs / rhs at the witness
};

namespace detail {

/// Calls `f(op, witness, defect)` for every cooperator failure.
template <class F>
void for_each_cooperator_defect(FiniteAlgebra const &x, std::vector<Elem> const &ks,
                                std::vector<Elem> const &ls, F &&f) {
  for (Op op : signature_ops(x.kind())) {
    if (!is_binary(op)) {
      for (Elem a : ks)
        for (Elem b : ls) {
          Elem lhs = apply_op(x, op, x.mul(a, b));
          Elem rhs = x.mul(apply_op(x, op, a), apply_op(x, op, b));
          if (lhs != rhs && !f(op, std::vector<Elem>{a, b}, x.rdiv(lhs, rhs)))
            return;
        }
      continue;
    }
    for (Elem a1 : ks)
      for (Elem b1 : ls) {
        Elem p1 = x.mul(a1, b1);
        for (Elem a2 : ks)
          for (Elem b2 : ls) {
            Elem lhs = apply_op(x, op, p1, x.mul(a2, b2));
            Elem rhs = x.mul(apply_op(x, op, a1, a2), apply_op(x, op, b1, b2));
            if (lhs != rhs && !f(op, std::vector<Elem>{a1, b1, a2, b2}, x.rdiv(lhs, rhs)))
              return;
          }
      }
  }
}

} // namespace detail

inline CooperatorResult cooperator_check(FiniteAlgebra const &x, Subobject const &k,
                                         Subobject const &l) {
  CooperatorResult r;
  detail::for_each_cooperator_defect(
      x, k.elements(), l.elements(), [&](Op op, std::vector<Elem> w, Elem d) {
        r.ok = false;
        r.op = to_string(op);
        r.witness = std::move(w);
        r.defect = d;
        return false;
      });
  return r;
}

/// Huq commutator: smallest normal N such that K and L cooperate in X/N. Each
/// round collects cooperator defects in the current quotient and adds their
/// preimages to N.
inline Subobject huq_commutator(FiniteAlgebra const &x, Subobject const &k,
                                Subobject const &l) {
  Subobject n = Subobject::trivial(x.order());
  for (;;) {
    auto [q, proj] = quotient(x, denormalize(x, n));
    auto kq = hom_image_kernel(proj, k).image.elements();
    auto lq = hom_image_kernel(proj, l).image.elements();
    std::vector<char> hit(q.order(), 0);
    detail::for_each_cooperator_defect(q, kq, lq, [&](Op, std::vector<Elem> const &, Elem d) {
      hit[d] = 1;
      return true;
    });
    std::vector<Elem> seeds = n.elements();
    bool grew = false;
    for (Elem e = 0; e < x.order(); ++e)
      if (hit[proj(e)] && proj(e) != 0) {
        seeds.push_back(e);
        grew = true;
      }
    if (!grew)
      return n;
    n = normal_closure(x, seeds);
  }
}

// ---------------------------------------------------------------------------
// Smith commutator

/// Partial Mal'tsev operation on {(x,y,z) : x α y, y β z}.
struct ConnectorWitness {
  std::vector<std::array<Elem, 3>> domain;
  std::vector<Elem> values;
};

struct SmithResult {
  Congruence commutator;
  std::optional<ConnectorWitness> connector; // present iff commutator is discrete
};

/// Canonical Mal'tsev term: x·y⁻¹·z for groups, x·(y\z) for loops.
inline Elem maltsev(FiniteAlgebra const &x, Elem a, Elem b, Elem c) {
  if (x.kind() == Kind::Group)
    return x.mul(x.mul(a, x.inv(b)), c);
  return x.mul(a, x.ldiv(b, c));
}

namespace detail {

inline Congruence congruence_join(FiniteAlgebra const &x, Congruence const &a,
                                  Congruence const &b) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem e = 0; e < x.order(); ++e) {
    if (a.class_of(e) != e)
      pairs.emplace_back(e, a.class_of(e));
    if (b.class_of(e) != e)
      pairs.emplace_back(e, b.class_of(e));
  }
  return congruence_generate(x, pairs);
}

/// Checks that the Mal'tsev term restricted to the domain of α and β is a
/// connector: the two boundary identities on the whole domain, and
/// compatibility with every operation. Compatibility is tested on the
/// subalgebra of X⁴ generated by the graph of θ over generators of the
/// domain: θ is a homomorphism iff that subalgebra stays inside the graph.
inline bool verify_maltsev_connector(FiniteAlgebra const &x, Congruence const &alpha,
                                     Congruence const &beta,
                                     ConnectorWitness *out = nullptr) {
  auto n = static_cast<Elem>(x.order());
  ProductView p3({x, x, x});
  std::vector<char> in_domain(p3.order(), 0);
  std::vector<Elem> domain;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (!alpha.related(a, b))
        continue;
      for (Elem c = 0; c < n; ++c)
        if (beta.related(b, c)) {
          Elem code = (a * n + b) * n + c;
          in_domain[code] = 1;
          domain.push_back(code);
        }
    }
  for (Elem code : domain) {
    Elem a = code / (n * n), b = (code / n) % n, c = code % n;
    if (a == b && maltsev(x, a, b, c) != c)
      return false;
    if (b == c && maltsev(x, a, b, c) != a)
      return false;
  }

  // Greedy generators of the domain (a subalgebra of X³).
  std::vector<Elem> gens;
  std::vector<char> covered(p3.order(), 0);
  for (Elem code : domain) {
    if (covered[code])
      continue;
    gens.push_back(code);
    for (Elem c : close_subset(p3, std::span<Elem const>(gens))) {
      if (!in_domain[c])
        throw InternalInconsistency("connector domain is not closed under the operations");
      covered[c] = 1;
    }
  }

  ProductView p4({x, x, x, x});
  std::vector<Elem> seeds;
  for (Elem g : gens) {
    Elem a = g / (n * n), b = (g / n) % n, c = g % n;
    seeds.push_back(g * n + maltsev(x, a, b, c));
  }
  for (Elem code : close_subset(p4, std::span<Elem const>(seeds))) {
    Elem v = code % n, t = code / n;
    Elem a = t / (n * n), b = (t / n) % n, c = t % n;
    if (!in_domain[t] || maltsev(x, a, b, c) != v)
      return false;
  }
  if (out) {
    out->domain.clear();
    out->values.clear();
    for (Elem code : domain) {
      Elem a = code / (n * n), b = (code / n) % n, c = code % n;
      out->domain.push_back({a, b, c});
      out->values.push_back(maltsev(x, a, b, c));
    }
  }
  return true;
}

} // namespace detail

/// Re-verifies a connector witness pointwise against X, α and β: the domain
/// must be exactly the composable triples, the boundary identities must hold,
/// and θ must commute with every operation on all pairs of triples.
inline bool validate_connector(FiniteAlgebra const &x, Congruence const &alpha,
                               Congruence const &beta, ConnectorWitness const &w) {
  auto n = static_cast<Elem>(x.order());
  std::vector<std::int64_t> value(std::size_t(n) * n * n, -1);
  if (w.domain.size() != w.values.size())
    return false;
  for (std::size_t i = 0; i < w.domain.size(); ++i) {
    auto [a, b, c] = w.domain[i];
    if (a >= n || b >= n || c >= n || !alpha.related(a, b) || !beta.related(b, c))
      return false;
    value[(a * n + b) * n + c] = w.values[i];
  }
  std::size_t expected = 0;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        expected += alpha.related(a, b) && beta.related(b, c);
  if (expected != w.domain.size())
    return false;
  auto th = [&](Elem a, Elem b, Elem c) { return value[(a * n + b) * n + c]; };
  for (auto [a, b, c] : w.domain) {
    if (a == b && th(a, a, c) != c)
      return false;
    if (b == c && th(a, c, c) != a)
      return false;
  }
  for (Op op : signature_ops(x.kind())) {
    for (std::size_t i = 0; i < w.domain.size(); ++i) {
      auto [a, b, c] = w.domain[i];
      if (!is_binary(op)) {
        Elem ia = apply_op(x, op, a), ib = apply_op(x, op, b), ic = apply_op(x, op, c);
        if (th(ia, ib, ic) != apply_op(x, op, static_cast<Elem>(w.values[i])))
          return false;
        continue;
      }
      for (std::size_t j = 0; j < w.domain.size(); ++j) {
        auto [d, e, f] = w.domain[j];
        Elem r = apply_op(x, op, a, d), s = apply_op(x, op, b, e), t = apply_op(x, op, c, f);
        if (th(r, s, t) != apply_op(x, op, w.values[i], w.values[j]))
          return false;
      }
    }
  }
  return true;
}

/// Term-condition Smith commutator [α, β]. Builds A(β) ⊆ X×X, the congruence
/// Δ on A(β) generated by the diagonal pairs of α, and reads off
/// δ = {(x,y) : (x,y) Δ (y,y)}. The result is then checked: δ must be a
/// congruence and the Mal'tsev term must be a connector in X/δ. A failed
/// check throws InternalInconsistency.
inline SmithResult smith_commutator(FiniteAlgebra const &x, Congruence const &alpha,
                                    Congruence const &beta) {
  if (alpha.order() != x.order() || beta.order() != x.order())
    throw ShapeError("congruence order does not match the algebra");
  auto n = static_cast<Elem>(x.order());
  std::vector<Elem> pair_codes;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (beta.related(a, b))
        pair_codes.push_back(a * n + b);
  FiniteAlgebra xx = direct_product(x, x);
  Subalgebra ab = subalgebra(xx, Subobject(xx.order(), pair_codes));
  std::vector<Elem> index_of(xx.order(), 0);
  auto const &codes = ab.inclusion.map();
  for (Elem i = 0; i < codes.size(); ++i)
    index_of[codes[i]] = i;

  std::vector<std::pair<Elem, Elem>> diag;
  for (Elem a = 0; a < n; ++a)
    if (alpha.class_of(a) != a) {
      Elem r = alpha.class_of(a);
      diag.emplace_back(index_of[a * n + a], index_of[r * n + r]);
    }
  Congruence big = congruence_generate(ab.algebra, diag);

  auto in_delta = [&](Elem a, Elem b) {
    return beta.related(a, b) && big.related(index_of[a * n + b], index_of[b * n + b]);
  };
  std::vector<std::pair<Elem, Elem>> rel;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (a != b && in_delta(a, b))
        rel.emplace_back(a, b);
  Congruence delta = congruence_generate(x, rel);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (delta.related(a, b) && !in_delta(a, b))
        throw InternalInconsistency("term-condition relation is not a congruence");

  SmithResult result{delta, std::nullopt};
  auto [q, proj] = quotient(x, delta);
  auto push = [&](Congruence const &c) {
    Congruence j = detail::congruence_join(x, c, delta);
    auto reps = delta.representatives();
    std::vector<Elem> cls(q.order());
    for (Elem i = 0; i < q.order(); ++i)
      cls[i] = proj(j.class_of(reps[i]));
    // Class labels must be least members in Q.
    std::vector<Elem> first(q.order(), static_cast<Elem>(q.order()));
    for (Elem i = 0; i < q.order(); ++i) {
      if (first[cls[i]] == q.order())
        first[cls[i]] = i;
      cls[i] = first[cls[i]];
    }
    return Congruence(std::move(cls));
  };
  ConnectorWitness w;
  bool discrete = delta.is_discrete();
  if (!detail::verify_maltsev_connector(q, push(alpha), push(beta), discrete ? &w : nullptr))
    throw InternalInconsistency("Mal'tsev term is not a connector modulo the commutator");
  if (discrete)
    result.connector = std::move(w);
  return result;
}

/// Unit class of [R_K, R_L]; equals [K,L,X] ∨ [K,L].
inline Subobject smith_normalization(FiniteAlgebra const &x, Subobject const &k,
                                     Subobject const &l) {
  Subobject kn = require_normal(x, k, "K");
  Subobject ln = require_normal(x, l, "L");
  return normalize(x, smith_commutator(x, denormalize(x, kn), denormalize(x, ln)).commutator);
}

/// Ternary obstruction [K, L, X], exact when [K, L] vanishes.
inline Subobject ternary_obstruction(FiniteAlgebra const &x, Subobject const &k,
                                     Subobject const &l) {
  Subobject kn = require_normal(x, k, "K");
  Subobject ln = require_normal(x, l, "L");
  Subobject h = higgins_binary(x, kn, ln);
  if (!h.is_trivial())
    throw PreconditionFailed("binary commutator [K,L] is nonzero", {h.elements()[1]});
  return smith_normalization(x, kn, ln);
}

/// [K,L,M] = [K,[L,M]] ∨ [L,[M,K]] ∨ [M,[K,L]] for normal subgroups.
inline Subobject ternary_group_exact(FiniteAlgebra const &x, Subobject const &k,
                                     Subobject const &l, Subobject const &m) {
  if (x.kind() != Kind::Group)
    throw WrongKind("the ternary decomposition formula is for groups");
  Subobject kn = require_normal(x, k, "K");
  Subobject ln = require_normal(x, l, "L");
  Subobject mn = require_normal(x, m, "M");
  auto nested = [&](Subobject const &a, Subobject const &b, Subobject const &c) {
    return higgins_binary(x, a, higgins_binary(x, b, c));
  };
  Subobject r = join(x, nested(kn, ln, mn), nested(ln, mn, kn));
  r = join(x, r, nested(mn, kn, ln));
  return r.with_normality(Normality::Normal);
}

/// ⟦a,b,c⟧ = (ab·c)/(a·bc).
inline Elem associator(FiniteAlgebra const &x, Elem a, Elem b, Elem c) {
  return x.rdiv(x.mul(x.mul(a, b), c), x.mul(a, x.mul(b, c)));
}

/// Normal closure of `seeds` computed inside the subalgebra `j`.
inline Subobject normal_closure_within(FiniteAlgebra const &x, Subobject const &j,
                                       std::vector<Elem> const &seeds) {
  if (j.is_whole())
    return normal_closure(x, seeds);
  Subalgebra sj = subalgebra(x, j);
  std::vector<Elem> local;
  for (Elem s : seeds) {
    auto it = std::lower_bound(j.elements().begin(), j.elements().end(), s);
    if (it == j.elements().end() || *it != s)
      throw ShapeError("seed lies outside the ambient subobject");
    local.push_back(static_cast<Elem>(it - j.elements().begin()));
  }
  Subobject nc = normal_closure(sj.algebra, local);
  std::vector<Elem> out;
  for (Elem e : nc.elements())
    out.push_back(sj.inclusion(e));
  return Subobject(x.order(), std::move(out));
}

/// Associator subloop ⟦K,L,M⟧: normal closure in K∨L∨M of every associator
/// whose arguments are a permutation of a triple in K×L×M.
inline Subobject associator_subobject(FiniteAlgebra const &x, Subobject const &k,
                                      Subobject const &l, Subobject const &m) {
  if (x.kind() != Kind::Loop)
    throw WrongKind("associator subloops are defined for loops");
  Subobject j = join(x, join(x, k, l), m);
  std::vector<char> hit(x.order(), 0);
  for (Elem a : k.elements())
    for (Elem b : l.elements())
      for (Elem c : m.elements()) {
        hit[associator(x, a, b, c)] = 1;
        hit[associator(x, a, c, b)] = 1;
        hit[associator(x, b, a, c)] = 1;
        hit[associator(x, b, c, a)] = 1;
        hit[associator(x, c, a, b)] = 1;
        hit[associator(x, c, b, a)] = 1;
      }
  std::vector<Elem> seeds;
  for (Elem e = 0; e < x.order(); ++e)
    if (hit[e])
      seeds.push_back(e);
  return normal_closure_within(x, j, seeds);
}

// ---------------------------------------------------------------------------
// Smith is Huq scan

struct ShViolation {
  Subobject k, l;
  Subobject obstruction;
};

struct ShReport {
  std::vector<Subobject> normal_subobjects;
  std::size_t pairs_checked = 0;    // unordered pairs of normal subobjects
  std::size_t huq_commuting = 0;    // pairs with [K,L] = 0
  std::vector<ShViolation> violations;
};

/// Scans unordered pairs of normal subobjects; each pair with vanishing
/// binary commutator but nonzero ternary obstruction is a violation.
inline ShReport sh_check(FiniteAlgebra const &x) {
  ShReport r;
  r.normal_subobjects = normal_subobjects(x);
  auto const &ns = r.normal_subobjects;
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t j = i; j < ns.size(); ++j) {
      ++r.pairs_checked;
      if (!higgins_binary(x, ns[i], ns[j]).is_trivial())
        continue;
      ++r.huq_commuting;
      Subobject t = ternary_obstruction(x, ns[i], ns[j]);
      if (!t.is_trivial())
        r.violations.push_back({ns[i], ns[j], t});
    }
  return r;
}

} // namespace commcalc

#endif
