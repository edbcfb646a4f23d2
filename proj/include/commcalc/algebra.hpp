#ifndef COMMCALC_ALGEBRA_HPP
#define COMMCALC_ALGEBRA_HPP

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

/**
 * @file algebra.hpp
 * @brief Finite pointed algebras (groups and loops) together with their
 *        subobjects, congruences, quotients and homomorphisms.
 *
 * Every algebra stores its unit at index 0. Algebras are immutable once
 * validated and share their tables, so copies are cheap and safe to hand to
 * several threads.
 */

namespace commcalc {

using Elem = std::uint32_t;

enum class Kind { Group, Loop };

/// Operation symbols. Groups use {Mul, Inv}, loops use {Mul, LDiv, RDiv}.
enum class Op { Mul, LDiv, RDiv, Inv };

inline char const *to_string(Kind k) { return k == Kind::Group ? "group" : "loop"; }

inline char const *to_string(Op op) {
  switch (op) {
  case Op::Mul: return "mul";
  case Op::LDiv: return "ldiv";
  case Op::RDiv: return "rdiv";
  case Op::Inv: return "inv";
  }
  return "?";
}

inline bool is_binary(Op op) { return op != Op::Inv; }

inline std::span<Op const> signature_ops(Kind k) {
  static constexpr Op group_ops[] = {Op::Mul, Op::Inv};
  static constexpr Op loop_ops[] = {Op::Mul, Op::LDiv, Op::RDiv};
  if (k == Kind::Group)
    return group_ops;
  return loop_ops;
}

/// Anything that can evaluate the basic operations on an index range
/// [0, order()). Implemented by FiniteAlgebra and by lazy product views.
template <class A>
concept OperationSource = requires(A const &a, Elem x, Elem y) {
  { a.kind() } -> std::same_as<Kind>;
  { a.order() } -> std::convertible_to<std::size_t>;
  { a.mul(x, y) } -> std::convertible_to<Elem>;
  { a.ldiv(x, y) } -> std::convertible_to<Elem>;
  { a.rdiv(x, y) } -> std::convertible_to<Elem>;
  { a.inv(x) } -> std::convertible_to<Elem>;
};

template <OperationSource A> Elem apply_op(A const &a, Op op, Elem x, Elem y = 0) {
  switch (op) {
  case Op::Mul: return a.mul(x, y);
  case Op::LDiv: return a.ldiv(x, y);
  case Op::RDiv: return a.rdiv(x, y);
  case Op::Inv: return a.inv(x);
  }
  return 0;
}

class FiniteAlgebra;

namespace detail {
struct Trusted {};
FiniteAlgebra make_trusted(Kind kind, std::vector<std::string> names,
                           std::vector<Elem> mul);
} // namespace detail

/// A validated finite group or loop given by Cayley tables.
///
/// Division tables are always present: for loops they are derived from `mul`,
/// for groups they are the term operations x\y = x⁻¹y and x/y = xy⁻¹. `inv` is
/// always present as well (for loops it is the left inverse x\1), but only the
/// operations returned by `signature_ops(kind())` belong to the signature.
class FiniteAlgebra {
public:
  FiniteAlgebra() = default;

  Kind kind() const noexcept { return data_->kind; }
  std::size_t order() const noexcept { return data_->n; }
  static constexpr Elem unit() noexcept { return 0; }

  Elem mul(Elem x, Elem y) const noexcept { return data_->mul[x * data_->n + y]; }
  Elem ldiv(Elem x, Elem y) const noexcept { return data_->ldiv[x * data_->n + y]; }
  Elem rdiv(Elem x, Elem y) const noexcept { return data_->rdiv[x * data_->n + y]; }
  Elem inv(Elem x) const noexcept { return data_->inv[x]; }

  std::string const &name(Elem x) const { return data_->names[x]; }
  std::vector<std::string> const &names() const noexcept { return data_->names; }
  std::vector<Elem> const &mul_table() const noexcept { return data_->mul; }
  std::vector<Elem> const &ldiv_table() const noexcept { return data_->ldiv; }
  std::vector<Elem> const &rdiv_table() const noexcept { return data_->rdiv; }
  std::vector<Elem> const &inv_table() const noexcept { return data_->inv; }

  std::optional<Elem> find(std::string const &name) const {
    auto const &ns = data_->names;
    auto it = std::find(ns.begin(), ns.end(), name);
    if (it == ns.end())
      return std::nullopt;
    return static_cast<Elem>(it - ns.begin());
  }

  bool is_commutative() const {
    for (Elem x = 0; x < order(); ++x)
      for (Elem y = x + 1; y < order(); ++y)
        if (mul(x, y) != mul(y, x))
          return false;
    return true;
  }

  bool is_associative() const {
    auto n = static_cast<Elem>(order());
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (Elem z = 0; z < n; ++z)
          if (mul(mul(x, y), z) != mul(x, mul(y, z)))
            return false;
    return true;
  }

  /// Abelian objects in both varieties are exactly the abelian groups.
  bool is_abelian() const { return is_commutative() && is_associative(); }

  friend bool operator==(FiniteAlgebra const &a, FiniteAlgebra const &b) {
    if (a.data_ == b.data_)
      return true;
    return a.kind() == b.kind() && a.names() == b.names() &&
           a.mul_table() == b.mul_table();
  }

  FiniteAlgebra(detail::Trusted, Kind kind, std::vector<std::string> names,
                std::vector<Elem> mul) {
    auto d = std::make_shared<Data>();
    d->kind = kind;
    d->n = names.size();
    d->names = std::move(names);
    d->mul = std::move(mul);
    derive_divisions(*d);
    data_ = std::move(d);
  }

private:
  struct Data {
    Kind kind = Kind::Group;
    std::size_t n = 0;
    std::vector<std::string> names;
    std::vector<Elem> mul, ldiv, rdiv, inv;
  };

  static void derive_divisions(Data &d) {
    std::size_t n = d.n;
    d.ldiv.assign(n * n, 0);
    d.rdiv.assign(n * n, 0);
    d.inv.assign(n, 0);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        Elem p = d.mul[x * n + y];
        d.ldiv[x * n + p] = y; // x\(xy) = y
        d.rdiv[p * n + y] = x; // (xy)/y = x
      }
    for (Elem x = 0; x < n; ++x)
      d.inv[x] = d.ldiv[x * n + 0];
  }

  std::shared_ptr<Data const> data_;
};

namespace detail {

inline FiniteAlgebra make_trusted(Kind kind, std::vector<std::string> names,
                                  std::vector<Elem> mul) {
  return FiniteAlgebra(Trusted{}, kind, std::move(names), std::move(mul));
}

} // namespace detail

/// Validates Cayley tables and builds an algebra. For loops the division
/// tables are derived from `mul`; if they are supplied they must agree with
/// the derived ones. For groups an explicit inverse table is checked.
inline FiniteAlgebra validate_algebra(Kind kind, std::vector<std::string> names,
                                      std::vector<Elem> mul,
                                      std::optional<std::vector<Elem>> inv = {},
                                      std::optional<std::vector<Elem>> ldiv = {},
                                      std::optional<std::vector<Elem>> rdiv = {}) {
  std::size_t n = names.size();
  if (n == 0)
    throw ShapeError("algebra must have at least one element");
  if (mul.size() != n * n)
    throw ShapeError("mul table must have " + std::to_string(n * n) + " entries");
  for (Elem v : mul)
    if (v >= n)
      throw ShapeError("mul entry " + std::to_string(v) + " out of range");
  if (inv && kind == Kind::Loop)
    throw ShapeError("loops take no inverse table");
  if ((ldiv || rdiv) && kind == Kind::Group)
    throw ShapeError("groups take no division tables");

  // Latin square: each row and column of mul is a permutation.
  std::vector<char> seen(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t y = 0; y < n; ++y) {
      Elem v = mul[x * n + y];
      if (seen[v])
        throw NonQuasigroup(true, x, v);
      seen[v] = 1;
    }
  }
  for (std::size_t y = 0; y < n; ++y) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t x = 0; x < n; ++x) {
      Elem v = mul[x * n + y];
      if (seen[v])
        throw NonQuasigroup(false, y, v);
      seen[v] = 1;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (mul[x * n] != x)
      throw AxiomViolation("x*1=x", {x});
    if (mul[x] != x)
      throw AxiomViolation("1*x=x", {x});
  }

  FiniteAlgebra a = detail::make_trusted(kind, std::move(names), std::move(mul));
  auto N = static_cast<Elem>(n);

  if (kind == Kind::Group) {
    for (Elem x = 0; x < N; ++x)
      for (Elem y = 0; y < N; ++y) {
        Elem xy = a.mul(x, y);
        for (Elem z = 0; z < N; ++z)
          if (a.mul(xy, z) != a.mul(x, a.mul(y, z)))
            throw AxiomViolation("associativity", {x, y, z});
      }
    if (inv) {
      if (inv->size() != n)
        throw ShapeError("inv table must have " + std::to_string(n) + " entries");
      for (Elem x = 0; x < N; ++x) {
        Elem i = (*inv)[x];
        if (i >= n)
          throw ShapeError("inv entry out of range");
        if (a.mul(x, i) != 0 || a.mul(i, x) != 0)
          throw AxiomViolation("inverse", {x});
      }
    }
    return a;
  }

  // Loops: check supplied division tables and the four quasigroup identities.
  auto check_supplied = [&](std::optional<std::vector<Elem>> const &t,
                            std::vector<Elem> const &derived, char const *op) {
    if (!t)
      return;
    if (t->size() != n * n)
      throw ShapeError(std::string(op) + " table has wrong size");
    for (std::size_t i = 0; i < n * n; ++i)
      if ((*t)[i] != derived[i])
        throw AxiomViolation(op, {i / n, i % n});
  };
  check_supplied(ldiv, a.ldiv_table(), "ldiv");
  check_supplied(rdiv, a.rdiv_table(), "rdiv");
  for (Elem x = 0; x < N; ++x)
    for (Elem y = 0; y < N; ++y) {
      if (a.mul(x, a.ldiv(x, y)) != y)
        throw AxiomViolation("y=x*(x\\y)", {x, y});
      if (a.ldiv(x, a.mul(x, y)) != y)
        throw AxiomViolation("y=x\\(x*y)", {x, y});
      if (a.mul(a.rdiv(x, y), y) != x)
        throw AxiomViolation("x=(x/y)*y", {x, y});
      if (a.rdiv(a.mul(x, y), y) != x)
        throw AxiomViolation("x=(x*y)/y", {x, y});
    }
  return a;
}

/// Reinterprets a group as a loop (same multiplication).
inline FiniteAlgebra as_loop(FiniteAlgebra const &g) {
  if (g.kind() == Kind::Loop)
    return g;
  return detail::make_trusted(Kind::Loop, g.names(), g.mul_table());
}

/// Reinterprets an associative loop as a group.
inline FiniteAlgebra as_group(FiniteAlgebra const &l) {
  if (l.kind() == Kind::Group)
    return l;
  if (!l.is_associative())
    throw WrongKind("loop is not associative, so it is not a group");
  return detail::make_trusted(Kind::Group, l.names(), l.mul_table());
}

// ---------------------------------------------------------------------------
// Subobjects and congruences

enum class Normality { Unknown, Normal, NotNormal };

/// A closed subset containing the unit. Elements are kept sorted; the parent
/// algebra is passed alongside to every operation that needs it.
class Subobject {
public:
  Subobject() = default;

  Subobject(std::size_t parent_order, std::vector<Elem> elements,
            Normality normality = Normality::Unknown)
      : elements_(std::move(elements)), mask_(parent_order, 0),
        normality_(normality) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (Elem e : elements_)
      mask_[e] = 1;
  }

  static Subobject trivial(std::size_t parent_order) {
    return Subobject(parent_order, {0}, Normality::Normal);
  }

  static Subobject whole(std::size_t parent_order) {
    std::vector<Elem> all(parent_order);
    std::iota(all.begin(), all.end(), Elem{0});
    return Subobject(parent_order, std::move(all), Normality::Normal);
  }

  std::vector<Elem> const &elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t parent_order() const noexcept { return mask_.size(); }
  bool contains(Elem e) const noexcept { return e < mask_.size() && mask_[e]; }
  bool is_trivial() const noexcept { return elements_.size() <= 1; }
  bool is_whole() const noexcept { return elements_.size() == mask_.size(); }
  Normality normality() const noexcept { return normality_; }

  bool subset_of(Subobject const &o) const {
    return std::all_of(elements_.begin(), elements_.end(),
                       [&](Elem e) { return o.contains(e); });
  }

  Subobject with_normality(Normality n) const {
    Subobject s = *this;
    s.normality_ = n;
    return s;
  }

  friend bool operator==(Subobject const &a, Subobject const &b) {
    return a.elements_ == b.elements_;
  }

private:
  std::vector<Elem> elements_;
  std::vector<char> mask_;
  Normality normality_ = Normality::Unknown;
};

/// An operation-compatible partition stored as a canonical class vector:
/// class_of[x] is the least element related to x.
class Congruence {
public:
  Congruence() = default;

  explicit Congruence(std::vector<Elem> class_of) : class_of_(std::move(class_of)) {}

  static Congruence discrete(std::size_t n) {
    std::vector<Elem> c(n);
    std::iota(c.begin(), c.end(), Elem{0});
    return Congruence(std::move(c));
  }

  static Congruence total(std::size_t n) { return Congruence(std::vector<Elem>(n, 0)); }

  std::size_t order() const noexcept { return class_of_.size(); }
  Elem class_of(Elem x) const noexcept { return class_of_[x]; }
  std::vector<Elem> const &class_vector() const noexcept { return class_of_; }
  bool related(Elem x, Elem y) const noexcept { return class_of_[x] == class_of_[y]; }

  bool is_discrete() const {
    for (Elem x = 0; x < class_of_.size(); ++x)
      if (class_of_[x] != x)
        return false;
    return true;
  }

  std::size_t num_classes() const {
    std::size_t k = 0;
    for (Elem x = 0; x < class_of_.size(); ++x)
      k += class_of_[x] == x;
    return k;
  }

  /// Canonical class representatives in increasing order.
  std::vector<Elem> representatives() const {
    std::vector<Elem> r;
    for (Elem x = 0; x < class_of_.size(); ++x)
      if (class_of_[x] == x)
        r.push_back(x);
    return r;
  }

  bool finer_than(Congruence const &o) const {
    for (Elem x = 0; x < class_of_.size(); ++x)
      if (!o.related(x, class_of_[x]))
        return false;
    return true;
  }

  friend bool operator==(Congruence const &, Congruence const &) = default;

private:
  std::vector<Elem> class_of_;
};

namespace detail {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Elem{0});
  }

  Elem find(Elem x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
    return true;
  }

  std::vector<Elem> canonical() {
    std::vector<Elem> c(parent_.size());
    for (Elem x = 0; x < parent_.size(); ++x)
      c[x] = find(x);
    return c;
  }

private:
  std::vector<Elem> parent_;
};

} // namespace detail

/// Smallest closed subset containing `seeds` and the unit. Groups are closed by
/// right multiplication with the seeds (a finite submonoid of a group is a
/// subgroup); loops by all three binary operations on all pairs.
template <OperationSource A>
std::vector<Elem> close_subset(A const &alg, std::span<Elem const> seeds) {
  std::size_t n = alg.order();
  std::vector<char> in(n, 0);
  std::vector<Elem> out;
  auto add = [&](Elem e) {
    if (!in[e]) {
      in[e] = 1;
      out.push_back(e);
    }
  };
  add(0);
  if (alg.kind() == Kind::Group) {
    std::vector<Elem> gens;
    for (Elem s : seeds)
      if (s != 0)
        gens.push_back(s);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
      Elem x = out[i];
      for (Elem g : gens)
        add(alg.mul(x, g));
    }
  } else {
    for (Elem s : seeds)
      add(s);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        Elem x = out[i], y = out[j];
        add(alg.mul(x, y));
        add(alg.mul(y, x));
        add(alg.ldiv(x, y));
        add(alg.ldiv(y, x));
        add(alg.rdiv(x, y));
        add(alg.rdiv(y, x));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Smallest congruence containing the given pairs. Union-find merges are
/// propagated through every basic translation until nothing changes.
template <OperationSource A>
Congruence congruence_generate(A const &alg,
                               std::span<std::pair<Elem, Elem> const> pairs) {
  auto n = static_cast<Elem>(alg.order());
  detail::UnionFind uf(n);
  std::vector<std::pair<Elem, Elem>> queue;
  auto unite = [&](Elem a, Elem b) {
    if (uf.unite(a, b))
      queue.emplace_back(a, b);
  };
  for (auto [a, b] : pairs)
    unite(a, b);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto [a, b] = queue[q];
    for (Op op : signature_ops(alg.kind())) {
      if (!is_binary(op)) {
        unite(apply_op(alg, op, a), apply_op(alg, op, b));
        continue;
      }
      for (Elem c = 0; c < n; ++c) {
        unite(apply_op(alg, op, a, c), apply_op(alg, op, b, c));
        unite(apply_op(alg, op, c, a), apply_op(alg, op, c, b));
      }
    }
  }
  return Congruence(uf.canonical());
}

inline Congruence congruence_generate(FiniteAlgebra const &alg,
                                      std::vector<std::pair<Elem, Elem>> const &pairs) {
  return congruence_generate<FiniteAlgebra>(alg, std::span<std::pair<Elem, Elem> const>(pairs));
}

inline Subobject subobject_generate(FiniteAlgebra const &x, std::span<Elem const> seeds) {
  for (Elem s : seeds)
    if (s >= x.order())
      throw ShapeError("seed element out of range");
  return Subobject(x.order(), close_subset(x, seeds));
}

inline Subobject subobject_generate(FiniteAlgebra const &x, std::vector<Elem> const &seeds) {
  return subobject_generate(x, std::span<Elem const>(seeds));
}

inline Subobject join(FiniteAlgebra const &x, Subobject const &a, Subobject const &b) {
  std::vector<Elem> seeds = a.elements();
  seeds.insert(seeds.end(), b.elements().begin(), b.elements().end());
  Subobject j = subobject_generate(x, seeds);
  // Joins of normal subobjects are normal (they correspond to joins of
  // congruences).
  if (a.normality() == Normality::Normal && b.normality() == Normality::Normal)
    return j.with_normality(Normality::Normal);
  return j;
}

inline Subobject meet(FiniteAlgebra const &x, Subobject const &a, Subobject const &b) {
  std::vector<Elem> m;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(m));
  Normality nn = (a.normality() == Normality::Normal && b.normality() == Normality::Normal)
                     ? Normality::Normal
                     : Normality::Unknown;
  return Subobject(x.order(), std::move(m), nn);
}

inline Congruence congruence_meet(Congruence const &a, Congruence const &b) {
  std::size_t n = a.order();
  std::vector<Elem> c(n);
  for (Elem x = 0; x < n; ++x) {
    c[x] = x;
    for (Elem y = 0; y < x; ++y)
      if (a.related(x, y) && b.related(x, y)) {
        c[x] = y;
        break;
      }
  }
  return Congruence(std::move(c));
}

/// Unit class of a congruence, marked Normal.
inline Subobject normalize(FiniteAlgebra const &x, Congruence const &theta) {
  std::vector<Elem> k;
  for (Elem e = 0; e < x.order(); ++e)
    if (theta.class_of(e) == 0)
      k.push_back(e);
  return Subobject(x.order(), std::move(k), Normality::Normal);
}

/// Congruence generated by N × {unit}.
inline Congruence denormalize(FiniteAlgebra const &x, Subobject const &n) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem e : n.elements())
    if (e != 0)
      pairs.emplace_back(e, 0);
  return congruence_generate(x, pairs);
}

/// Normality via the denormalize/normalize round trip.
inline bool is_normal(FiniteAlgebra const &x, Subobject const &n) {
  if (n.normality() != Normality::Unknown)
    return n.normality() == Normality::Normal;
  return normalize(x, denormalize(x, n)) == n;
}

/// Returns `n` with its normality resolved.
inline Subobject classify_normality(FiniteAlgebra const &x, Subobject const &n) {
  if (n.normality() != Normality::Unknown)
    return n;
  return n.with_normality(is_normal(x, n) ? Normality::Normal : Normality::NotNormal);
}

inline Subobject normal_closure(FiniteAlgebra const &x, std::span<Elem const> seeds) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem e : seeds) {
    if (e >= x.order())
      throw ShapeError("seed element out of range");
    if (e != 0)
      pairs.emplace_back(e, 0);
  }
  return normalize(x, congruence_generate(x, pairs));
}

inline Subobject normal_closure(FiniteAlgebra const &x, std::vector<Elem> const &seeds) {
  return normal_closure(x, std::span<Elem const>(seeds));
}

inline Subobject normal_closure(FiniteAlgebra const &x, Subobject const &s) {
  return normal_closure(x, std::span<Elem const>(s.elements()));
}

// ---------------------------------------------------------------------------
// Homomorphisms

class Homomorphism {
public:
  Homomorphism() = default;

  Homomorphism(FiniteAlgebra source, FiniteAlgebra target, std::vector<Elem> map,
               detail::Trusted)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {}

  FiniteAlgebra const &source() const noexcept { return source_; }
  FiniteAlgebra const &target() const noexcept { return target_; }
  std::vector<Elem> const &map() const noexcept { return map_; }
  Elem operator()(Elem x) const noexcept { return map_[x]; }

  bool is_surjective() const {
    std::vector<char> hit(target_.order(), 0);
    for (Elem v : map_)
      hit[v] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }

  bool is_injective() const {
    std::vector<char> hit(target_.order(), 0);
    for (Elem v : map_) {
      if (hit[v])
        return false;
      hit[v] = 1;
    }
    return true;
  }

  friend bool operator==(Homomorphism const &a, Homomorphism const &b) {
    return a.map_ == b.map_ && a.source_ == b.source_ && a.target_ == b.target_;
  }

private:
  FiniteAlgebra source_;
  FiniteAlgebra target_;
  std::vector<Elem> map_;
};

/// Checks that `map` preserves the unit and every signature operation.
inline Homomorphism hom_check(FiniteAlgebra const &source, FiniteAlgebra const &target,
                              std::vector<Elem> map) {
  if (map.size() != source.order())
    throw ShapeError("map length must equal the source order");
  if (source.kind() != target.kind())
    throw WrongKind("homomorphisms must connect algebras of the same kind");
  for (Elem v : map)
    if (v >= target.order())
      throw ShapeError("map value out of range");
  if (map[0] != 0)
    throw NotHomomorphism("unit", {0});
  auto n = static_cast<Elem>(source.order());
  for (Op op : signature_ops(source.kind())) {
    if (!is_binary(op)) {
      for (Elem x = 0; x < n; ++x)
        if (map[apply_op(source, op, x)] != apply_op(target, op, map[x]))
          throw NotHomomorphism(to_string(op), {x});
      continue;
    }
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (map[apply_op(source, op, x, y)] != apply_op(target, op, map[x], map[y]))
          throw NotHomomorphism(to_string(op), {x, y});
  }
  return Homomorphism(source, target, std::move(map), detail::Trusted{});
}

inline Homomorphism identity_hom(FiniteAlgebra const &x) {
  std::vector<Elem> m(x.order());
  std::iota(m.begin(), m.end(), Elem{0});
  return Homomorphism(x, x, std::move(m), detail::Trusted{});
}

inline Homomorphism zero_hom(FiniteAlgebra const &source, FiniteAlgebra const &target) {
  return Homomorphism(source, target, std::vector<Elem>(source.order(), 0),
                      detail::Trusted{});
}

inline Homomorphism compose(Homomorphism const &g, Homomorphism const &f) {
  std::vector<Elem> m(f.source().order());
  for (Elem x = 0; x < m.size(); ++x)
    m[x] = g(f(x));
  return Homomorphism(f.source(), g.target(), std::move(m), detail::Trusted{});
}

struct ImageKernel {
  Subobject image;
  Subobject kernel;
};

inline ImageKernel hom_image_kernel(Homomorphism const &f, Subobject const &s) {
  std::vector<Elem> img;
  for (Elem e : s.elements())
    img.push_back(f(e));
  std::vector<Elem> ker;
  for (Elem e = 0; e < f.source().order(); ++e)
    if (f(e) == 0)
      ker.push_back(e);
  return {Subobject(f.target().order(), std::move(img)),
          Subobject(f.source().order(), std::move(ker), Normality::Normal)};
}

/// Kernel pair of f as a congruence on its source.
inline Congruence kernel_congruence(Homomorphism const &f) {
  std::size_t n = f.source().order();
  std::vector<Elem> first(f.target().order(), static_cast<Elem>(n));
  std::vector<Elem> c(n);
  for (Elem x = 0; x < n; ++x) {
    Elem v = f(x);
    if (first[v] == n)
      first[v] = x;
    c[x] = first[v];
  }
  return Congruence(std::move(c));
}

// ---------------------------------------------------------------------------
// Derived algebras

struct Quotient {
  FiniteAlgebra algebra;
  Homomorphism projection;
};

/// X/θ on canonical class representatives; the unit class becomes index 0.
inline Quotient quotient(FiniteAlgebra const &x, Congruence const &theta) {
  auto reps = theta.representatives();
  std::size_t k = reps.size();
  std::vector<Elem> index_of(x.order());
  for (Elem i = 0; i < k; ++i)
    index_of[reps[i]] = i;
  std::vector<Elem> proj(x.order());
  for (Elem e = 0; e < x.order(); ++e)
    proj[e] = index_of[theta.class_of(e)];
  std::vector<Elem> mul(k * k);
  std::vector<std::string> names(k);
  for (Elem i = 0; i < k; ++i) {
    names[i] = x.name(reps[i]);
    for (Elem j = 0; j < k; ++j)
      mul[i * k + j] = proj[x.mul(reps[i], reps[j])];
  }
  FiniteAlgebra q = detail::make_trusted(x.kind(), std::move(names), std::move(mul));
  Homomorphism p(x, q, std::move(proj), detail::Trusted{});
  return {std::move(q), std::move(p)};
}

struct Subalgebra {
  FiniteAlgebra algebra;
  Homomorphism inclusion;
};

/// Materializes a subobject as an algebra in its own right, keeping the
/// parent's element order and names.
inline Subalgebra subalgebra(FiniteAlgebra const &x, Subobject const &s) {
  auto const &el = s.elements();
  std::size_t k = el.size();
  std::vector<Elem> index_of(x.order(), 0);
  for (Elem i = 0; i < k; ++i)
    index_of[el[i]] = i;
  std::vector<Elem> mul(k * k);
  std::vector<std::string> names(k);
  for (Elem i = 0; i < k; ++i) {
    names[i] = x.name(el[i]);
    for (Elem j = 0; j < k; ++j)
      mul[i * k + j] = index_of[x.mul(el[i], el[j])];
  }
  FiniteAlgebra a = detail::make_trusted(x.kind(), std::move(names), std::move(mul));
  Homomorphism inc(a, x, el, detail::Trusted{});
  return {std::move(a), std::move(inc)};
}

/// X × Y with element (i, j) stored at index i·|Y| + j.
inline FiniteAlgebra direct_product(FiniteAlgebra const &x, FiniteAlgebra const &y) {
  if (x.kind() != y.kind())
    throw WrongKind("direct product of algebras of different kinds");
  std::size_t n = x.order(), m = y.order(), nm = n * m;
  std::vector<Elem> mul(nm * nm);
  std::vector<std::string> names(nm);
  for (Elem a = 0; a < nm; ++a) {
    names[a] = "(" + x.name(a / m) + "," + y.name(a % m) + ")";
    for (Elem b = 0; b < nm; ++b)
      mul[a * nm + b] = x.mul(a / m, b / m) * m + y.mul(a % m, b % m);
  }
  return detail::make_trusted(x.kind(), std::move(names), std::move(mul));
}

/// Lazy view of a product of algebras with mixed-radix indexing (first factor
/// most significant). Lets closures run on X×X×X without materializing tables.
class ProductView {
public:
  explicit ProductView(std::vector<FiniteAlgebra> factors) : factors_(std::move(factors)) {
    kind_ = factors_.front().kind();
    order_ = 1;
    for (auto const &f : factors_) {
      if (f.kind() != kind_)
        throw WrongKind("product factors must share a kind");
      order_ *= f.order();
    }
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t arity() const noexcept { return factors_.size(); }

  Elem encode(std::span<Elem const> c) const {
    Elem e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      e = e * static_cast<Elem>(factors_[i].order()) + c[i];
    return e;
  }

  void decode(Elem e, std::span<Elem> out) const {
    for (std::size_t i = factors_.size(); i-- > 0;) {
      auto m = static_cast<Elem>(factors_[i].order());
      out[i] = e % m;
      e /= m;
    }
  }

  Elem mul(Elem x, Elem y) const { return binary(Op::Mul, x, y); }
  Elem ldiv(Elem x, Elem y) const { return binary(Op::LDiv, x, y); }
  Elem rdiv(Elem x, Elem y) const { return binary(Op::RDiv, x, y); }

  Elem inv(Elem x) const {
    Elem out = 0;
    Elem stride = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      auto m = static_cast<Elem>(factors_[i].order());
      out += factors_[i].inv(x % m) * stride;
      x /= m;
      stride *= m;
    }
    return out;
  }

private:
  Elem binary(Op op, Elem x, Elem y) const {
    Elem out = 0;
    Elem stride = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      auto m = static_cast<Elem>(factors_[i].order());
      out += apply_op(factors_[i], op, x % m, y % m) * stride;
      x /= m;
      y /= m;
      stride *= m;
    }
    return out;
  }

  std::vector<FiniteAlgebra> factors_;
  Kind kind_ = Kind::Group;
  std::size_t order_ = 0;
};

// ---------------------------------------------------------------------------
// Lattice of normal subobjects and isomorphism search

/// All normal subobjects: normal closures of single elements, then joins to a
/// fixpoint. Sorted by size, then lexicographically.
inline std::vector<Subobject> normal_subobjects(FiniteAlgebra const &x) {
  std::vector<Subobject> found;
  auto add = [&](Subobject s) {
    if (std::find(found.begin(), found.end(), s) == found.end()) {
      found.push_back(std::move(s));
      return true;
    }
    return false;
  };
  add(Subobject::trivial(x.order()));
  for (Elem e = 1; e < x.order(); ++e) {
    Elem seed[] = {e};
    add(normal_closure(x, seed));
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      add(join(x, found[i], found[j]));
  std::sort(found.begin(), found.end(), [](Subobject const &a, Subobject const &b) {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return found;
}

/// A small generating set found greedily (each element added is outside the
/// closure of the previous ones).
inline std::vector<Elem> generating_set(FiniteAlgebra const &x) {
  std::vector<Elem> gens;
  std::vector<Elem> closed = {0};
  for (Elem e = 1; e < x.order(); ++e) {
    if (std::binary_search(closed.begin(), closed.end(), e))
      continue;
    gens.push_back(e);
    closed = close_subset(x, std::span<Elem const>(gens));
  }
  return gens;
}

namespace detail {

/// Extends an assignment on generators to all of `source` by closure.
/// Returns nullopt on the first conflict or if some element stays unreached.
inline std::optional<std::vector<Elem>>
extend_by_closure(FiniteAlgebra const &source, FiniteAlgebra const &target,
                  std::vector<std::pair<Elem, Elem>> const &forced) {
  std::size_t n = source.order();
  auto unset = static_cast<Elem>(target.order());
  std::vector<Elem> map(n, unset);
  std::vector<Elem> known;
  auto assign = [&](Elem x, Elem v) {
    if (map[x] == unset) {
      map[x] = v;
      known.push_back(x);
      return true;
    }
    return map[x] == v;
  };
  if (!assign(0, 0))
    return std::nullopt;
  for (auto [x, v] : forced)
    if (!assign(x, v))
      return std::nullopt;
  auto ops = signature_ops(source.kind());
  for (std::size_t i = 0; i < known.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Elem a = known[i], b = known[j];
      for (Op op : ops) {
        if (!is_binary(op)) {
          if (j == 0 && !assign(apply_op(source, op, a), apply_op(target, op, map[a])))
            return std::nullopt;
          continue;
        }
        if (!assign(apply_op(source, op, a, b), apply_op(target, op, map[a], map[b])))
          return std::nullopt;
        if (!assign(apply_op(source, op, b, a), apply_op(target, op, map[b], map[a])))
          return std::nullopt;
      }
    }
  }
  if (known.size() != n)
    return std::nullopt;
  return map;
}

} // namespace detail

/// Backtracking search for an isomorphism X → Y over images of a generating
/// set. Intended for small algebras.
inline std::optional<Homomorphism> find_isomorphism(FiniteAlgebra const &x,
                                                    FiniteAlgebra const &y) {
  if (x.kind() != y.kind() || x.order() != y.order())
    return std::nullopt;
  auto gens = generating_set(x);
  std::vector<std::pair<Elem, Elem>> forced;
  std::optional<Homomorphism> result;
  auto rec = [&](auto &self, std::size_t i) -> bool {
    if (i == gens.size()) {
      auto m = detail::extend_by_closure(x, y, forced);
      if (!m)
        return false;
      Homomorphism h(x, y, *m, detail::Trusted{});
      if (!h.is_injective())
        return false;
      try {
        result = hom_check(x, y, *m);
      } catch (NotHomomorphism const &) {
        return false;
      }
      return true;
    }
    for (Elem v = 1; v < y.order(); ++v) {
      forced.emplace_back(gens[i], v);
      if (self(self, i + 1))
        return true;
      forced.pop_back();
    }
    return false;
  };
  if (gens.empty())
    return hom_check(x, y, std::vector<Elem>(x.order(), 0));
  rec(rec, 0);
  return result;
}

} // namespace commcalc

#endif
