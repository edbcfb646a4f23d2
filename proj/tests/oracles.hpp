// Brute-force reference computations used to cross-check the library. They
// read only raw Cayley tables and share no code with the algorithms under test.
#ifndef COMMCALC_TEST_ORACLES_HPP
#define COMMCALC_TEST_ORACLES_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <vector>

#include "commcalc/algebra.hpp"

namespace oracle {

using commcalc::Elem;
using commcalc::FiniteAlgebra;
using commcalc::Kind;

using ElemSet = std::vector<Elem>;

inline Elem inverse_by_search(FiniteAlgebra const &x, Elem a) {
  for (Elem b = 0; b < x.order(); ++b)
    if (x.mul(a, b) == 0)
      return b;
  return 0;
}

/// Closure of `seeds ∪ {1}` under multiplication (enough for finite groups).
inline ElemSet group_closure(FiniteAlgebra const &x, ElemSet const &seeds) {
  std::vector<char> in(x.order(), 0);
  in[0] = 1;
  for (Elem s : seeds)
    in[s] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem a = 0; a < x.order(); ++a)
      for (Elem b = 0; b < x.order(); ++b)
        if (in[a] && in[b] && !in[x.mul(a, b)]) {
          in[x.mul(a, b)] = 1;
          grew = true;
        }
  }
  ElemSet out;
  for (Elem a = 0; a < x.order(); ++a)
    if (in[a])
      out.push_back(a);
  return out;
}

/// Classical ⟨k l k⁻¹ l⁻¹⟩.
inline ElemSet commutator_subgroup(FiniteAlgebra const &x, ElemSet const &k, ElemSet const &l) {
  ElemSet gens;
  for (Elem a : k)
    for (Elem b : l)
      gens.push_back(x.mul(x.mul(a, b), x.mul(inverse_by_search(x, a), inverse_by_search(x, b))));
  return group_closure(x, gens);
}

/// Every normal subgroup, by testing all subsets that contain the unit.
inline std::vector<ElemSet> normal_subgroups(FiniteAlgebra const &x) {
  std::size_t n = x.order();
  std::vector<ElemSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::vector<char> in(n, 0);
    in[0] = 1;
    for (std::size_t i = 1; i < n; ++i)
      in[i] = (mask >> (i - 1)) & 1;
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b)
        if (in[a] && in[b] && !in[x.mul(a, b)])
          ok = false;
    for (Elem g = 0; g < n && ok; ++g) {
      Elem gi = inverse_by_search(x, g);
      for (Elem a = 0; a < n && ok; ++a)
        if (in[a] && !in[x.mul(x.mul(g, a), gi)])
          ok = false;
    }
    if (!ok)
      continue;
    ElemSet s;
    for (Elem a = 0; a < n; ++a)
      if (in[a])
        s.push_back(a);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Tests a partition (class label per element) against every basic
/// operation of the signature.
inline bool is_congruence(FiniteAlgebra const &x, std::vector<Elem> const &cls) {
  std::size_t n = x.order();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (cls[a] != cls[b])
        continue;
      if (x.kind() == Kind::Group && cls[inverse_by_search(x, a)] != cls[inverse_by_search(x, b)])
        return false;
      for (Elem c = 0; c < n; ++c)
        for (Elem d = 0; d < n; ++d) {
          if (cls[c] != cls[d])
            continue;
          if (cls[x.mul(a, c)] != cls[x.mul(b, d)])
            return false;
          if (x.kind() == Kind::Loop &&
              (cls[x.ldiv(a, c)] != cls[x.ldiv(b, d)] || cls[x.rdiv(a, c)] != cls[x.rdiv(b, d)]))
            return false;
        }
    }
  return true;
}

/// Calls `f` on every set partition of {0..n-1} as a restricted growth string.
inline void for_each_partition(std::size_t n, std::function<void(std::vector<Elem> const &)> const &f) {
  std::vector<Elem> rgs(n, 0);
  std::function<void(std::size_t, Elem)> rec = [&](std::size_t i, Elem max_label) {
    if (i == n) {
      f(rgs);
      return;
    }
    for (Elem c = 0; c <= max_label + 1; ++c) {
      rgs[i] = c;
      rec(i + 1, std::max(max_label, c));
    }
  };
  if (n == 0)
    return;
  rgs[0] = 0;
  rec(1, 0);
}

/// Canonical labels (least member of each class).
inline std::vector<Elem> canonical(std::vector<Elem> const &cls) {
  std::vector<Elem> out(cls.size());
  for (Elem a = 0; a < cls.size(); ++a)
    for (Elem b = 0; b <= a; ++b)
      if (cls[b] == cls[a]) {
        out[a] = b;
        break;
      }
  return out;
}

/// All congruences by partition enumeration (orders up to about 9).
inline std::vector<std::vector<Elem>> congruences(FiniteAlgebra const &x) {
  std::vector<std::vector<Elem>> out;
  for_each_partition(x.order(), [&](std::vector<Elem> const &p) {
    if (is_congruence(x, p))
      out.push_back(canonical(p));
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline bool finer(std::vector<Elem> const &a, std::vector<Elem> const &b) {
  for (Elem u = 0; u < a.size(); ++u)
    for (Elem v = 0; v < a.size(); ++v)
      if (a[u] == a[v] && b[u] != b[v])
        return false;
  return true;
}

inline std::vector<Elem> partition_meet(std::vector<Elem> const &a, std::vector<Elem> const &b) {
  std::vector<Elem> out(a.size());
  for (Elem u = 0; u < a.size(); ++u)
    for (Elem v = 0; v <= u; ++v)
      if (a[u] == a[v] && b[u] == b[v]) {
        out[u] = v;
        break;
      }
  return out;
}

/// Join of equivalence relations; congruences form a sublattice.
inline std::vector<Elem> partition_join(std::vector<Elem> const &a, std::vector<Elem> const &b) {
  std::vector<Elem> lab(a.size());
  for (Elem u = 0; u < a.size(); ++u)
    lab[u] = u;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem u = 0; u < a.size(); ++u)
      for (Elem v = 0; v < a.size(); ++v)
        if ((a[u] == a[v] || b[u] == b[v]) && lab[u] != lab[v]) {
          Elem m = std::min(lab[u], lab[v]);
          lab[u] = lab[v] = m;
          changed = true;
        }
  }
  return canonical(lab);
}

/// Least congruence containing `pairs`, by scanning all congruences.
inline std::vector<Elem> generated_congruence(FiniteAlgebra const &x,
                                              std::vector<std::pair<Elem, Elem>> const &pairs) {
  std::vector<Elem> best(x.order(), 0);
  for (auto const &c : congruences(x)) {
    bool ok = std::all_of(pairs.begin(), pairs.end(),
                          [&](auto const &p) { return c[p.first] == c[p.second]; });
    if (ok)
      best = partition_meet(best, c);
  }
  return best;
}

/// Whether the Mal'tsev term induces a connector between the images of
/// alpha and beta in X/gamma. All three arguments are class-label vectors.
inline bool maltsev_connects(FiniteAlgebra const &x, std::vector<Elem> const &alpha,
                             std::vector<Elem> const &beta, std::vector<Elem> const &gamma) {
  std::size_t n = x.order();
  auto p = [&](Elem a, Elem b, Elem c) {
    return x.kind() == Kind::Group ? x.mul(x.mul(a, inverse_by_search(x, b)), c)
                                   : x.mul(a, x.ldiv(b, c));
  };
  // Images of alpha, beta in the quotient, read modulo gamma.
  std::vector<Elem> a = partition_join(alpha, gamma), b = partition_join(beta, gamma);
  // Representatives of the triples x a y b z modulo gamma.
  std::vector<std::array<Elem, 3>> dom;
  std::vector<Elem> reps;
  for (Elem u = 0; u < n; ++u)
    if (gamma[u] == u)
      reps.push_back(u);
  for (Elem u : reps)
    for (Elem v : reps)
      for (Elem w : reps)
        if (a[u] == a[v] && b[v] == b[w])
          dom.push_back({u, v, w});
  // Well-definedness on classes and compatibility with every operation.
  for (Elem u = 0; u < n; ++u)
    for (Elem v = 0; v < n; ++v)
      for (Elem w = 0; w < n; ++w) {
        if (!(a[u] == a[v] && b[v] == b[w]))
          continue;
        Elem val = gamma[p(u, v, w)];
        if (val != gamma[p(gamma[u], gamma[v], gamma[w])])
          return false;
      }
  for (auto const &s : dom)
    for (auto const &t : dom) {
      auto check = [&](auto op) {
        return gamma[p(op(s[0], t[0]), op(s[1], t[1]), op(s[2], t[2]))] ==
               gamma[op(p(s[0], s[1], s[2]), p(t[0], t[1], t[2]))];
      };
      if (!check([&](Elem l, Elem r) { return x.mul(l, r); }))
        return false;
      if (x.kind() == Kind::Loop &&
          (!check([&](Elem l, Elem r) { return x.ldiv(l, r); }) ||
           !check([&](Elem l, Elem r) { return x.rdiv(l, r); })))
        return false;
    }
  if (x.kind() == Kind::Group)
    for (auto const &s : dom)
      if (gamma[p(inverse_by_search(x, s[0]), inverse_by_search(x, s[1]), inverse_by_search(x, s[2]))] !=
          gamma[inverse_by_search(x, p(s[0], s[1], s[2]))])
        return false;
  return true;
}

/// Smith commutator as the least congruence modulo which the images commute.
inline std::vector<Elem> smith_commutator(FiniteAlgebra const &x, std::vector<Elem> const &alpha,
                                          std::vector<Elem> const &beta) {
  std::vector<Elem> best(x.order(), 0);
  for (auto const &g : congruences(x))
    if (maltsev_connects(x, alpha, beta, g))
      best = partition_meet(best, g);
  return best;
}

} // namespace oracle

#endif
