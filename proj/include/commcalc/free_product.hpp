#ifndef COMMCALC_FREE_PRODUCT_HPP
#define COMMCALC_FREE_PRODUCT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "term.hpp"

namespace commcalc {

/// One syllable of a free-product word. For a finite factor `value` is an
/// element index; for an infinite cyclic factor it is an exponent.
struct Syllable {
  std::size_t factor = 0;
  std::int64_t value = 0;

  friend bool operator==(Syllable const &, Syllable const &) = default;
};

using FreeWord = std::vector<Syllable>;

/// A free factor: a finite group, or infinite cyclic when `group` is empty.
struct Factor {
  std::optional<FiniteAlgebra> group;

  static Factor infinite_cyclic() { return {}; }
  static Factor finite(FiniteAlgebra g) {
    if (g.kind() != Kind::Group)
      throw WrongKind("free-product factors must be groups");
    return {std::move(g)};
  }

  bool is_unit(std::int64_t v) const { return v == 0; }

  std::int64_t multiply(std::int64_t a, std::int64_t b) const {
    if (!group)
      return a + b;
    return group->mul(static_cast<Elem>(a), static_cast<Elem>(b));
  }

  std::int64_t inverse(std::int64_t a) const {
    if (!group)
      return -a;
    return group->inv(static_cast<Elem>(a));
  }
};

/// Appends `s` to a reduced word, merging with the last syllable when the
/// factors coincide and dropping units.
inline void freeword_push(FreeWord &w, Syllable s, std::vector<Factor> const &factors) {
  if (s.factor >= factors.size())
    throw ShapeError("syllable factor out of range");
  Factor const &f = factors[s.factor];
  if (f.is_unit(s.value))
    return;
  if (!w.empty() && w.back().factor == s.factor) {
    std::int64_t v = f.multiply(w.back().value, s.value);
    if (f.is_unit(v))
      w.pop_back();
    else
      w.back().value = v;
    return;
  }
  w.push_back(s);
}

/// Normal form in the free product: alternating factors, no unit syllables.
/// A single stack pass reaches the fixpoint of merge-and-delete.
inline FreeWord freeword_reduce(std::vector<Syllable> const &syllables,
                                std::vector<Factor> const &factors) {
  FreeWord w;
  for (Syllable const &s : syllables)
    freeword_push(w, s, factors);
  return w;
}

inline FreeWord freeword_multiply(FreeWord a, FreeWord const &b,
                                  std::vector<Factor> const &factors) {
  for (Syllable const &s : b)
    freeword_push(a, s, factors);
  return a;
}

inline FreeWord freeword_inverse(FreeWord const &w, std::vector<Factor> const &factors) {
  FreeWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back({it->factor, factors[it->factor].inverse(it->value)});
  return out;
}

/// Interprets a group term in a free product. `letter_value` returns the
/// syllable for a letter, or nullopt to send it to the unit.
template <class LetterFn>
FreeWord term_to_freeword(Term const &t, std::vector<Factor> const &factors,
                          LetterFn const &letter_value) {
  switch (t.tag()) {
  case Term::Tag::Unit: return {};
  case Term::Tag::Letter: {
    std::optional<Syllable> s = letter_value(t.sort(), t.id());
    if (!s)
      return {};
    return freeword_reduce({*s}, factors);
  }
  case Term::Tag::Inv:
    return freeword_inverse(term_to_freeword(t.left(), factors, letter_value), factors);
  case Term::Tag::Mul:
    return freeword_multiply(term_to_freeword(t.left(), factors, letter_value),
                             term_to_freeword(t.right(), factors, letter_value), factors);
  default: throw UnsupportedOperation("group terms may not use divisions");
  }
}

namespace detail {

/// Dense numbering of the letters of a term: (sort, id) -> factor index.
inline std::map<std::pair<std::size_t, std::size_t>, std::size_t> letter_index(Term const &t) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
  auto rec = [&](auto &self, Term const &u) -> void {
    if (u.is_letter()) {
      idx.emplace(std::pair{u.sort(), u.id()}, 0);
      return;
    }
    if (u.is_unit())
      return;
    self(self, u.left());
    if (u.tag() != Term::Tag::Inv)
      self(self, u.right());
  };
  rec(rec, t);
  std::size_t i = 0;
  for (auto &[k, v] : idx)
    v = i++;
  return idx;
}

} // namespace detail

/// Reduced word of a group term in the free group on its letters.
inline FreeWord free_group_word(Term const &t) {
  auto idx = detail::letter_index(t);
  std::vector<Factor> factors(idx.size());
  return term_to_freeword(t, factors, [&](std::size_t s, std::size_t id) {
    return std::optional<Syllable>(Syllable{idx.at({s, id}), 1});
  });
}

/// Symbolic co-smash membership for group terms with generic letters: for
/// every sort, sending that sort to the unit must give the empty word in the
/// free group on the remaining letters. With two sorts this is the pair of
/// single-sort conditions; with three it is the three two-sort conditions.
inline bool cosmash_membership_group(Term const &t, std::size_t n_sorts) {
  check_signature(t, Kind::Group);
  if (n_sorts < 2 || n_sorts > 3)
    throw ShapeError("co-smash membership needs 2 or 3 sorts");
  if (sort_count(t) > n_sorts)
    throw ShapeError("term uses a sort beyond n_sorts");
  auto idx = detail::letter_index(t);
  std::vector<Factor> factors(idx.size());
  for (std::size_t killed = 0; killed < n_sorts; ++killed) {
    FreeWord w = term_to_freeword(t, factors, [&](std::size_t s, std::size_t id) {
      if (s == killed)
        return std::optional<Syllable>();
      return std::optional<Syllable>(Syllable{idx.at({s, id}), 1});
    });
    if (!w.empty())
      return false;
  }
  return true;
}

/// Concrete variant: letters of sort s take the assigned values in the finite
/// group `factor_groups[s]`, and the word lives in the free product of those
/// groups.
inline bool cosmash_membership_group(Term const &t, std::size_t n_sorts,
                                     std::vector<FiniteAlgebra> const &factor_groups,
                                     Assignment const &assignment) {
  check_signature(t, Kind::Group);
  if (n_sorts < 2 || n_sorts > 3 || factor_groups.size() != n_sorts)
    throw ShapeError("co-smash membership needs 2 or 3 factor groups");
  std::vector<Factor> factors;
  for (auto const &g : factor_groups)
    factors.push_back(Factor::finite(g));
  for (std::size_t killed = 0; killed < n_sorts; ++killed) {
    FreeWord w = term_to_freeword(t, factors, [&](std::size_t s, std::size_t id) {
      if (s >= n_sorts)
        throw ShapeError("term uses a sort beyond n_sorts");
      if (s == killed)
        return std::optional<Syllable>();
      auto it = assignment.find({s, id});
      if (it == assignment.end())
        throw UnboundLetter("sort " + std::to_string(s) + " index " + std::to_string(id));
      return std::optional<Syllable>(Syllable{s, static_cast<std::int64_t>(it->second)});
    });
    if (!w.empty())
      return false;
  }
  return true;
}

} // namespace commcalc

#endif
