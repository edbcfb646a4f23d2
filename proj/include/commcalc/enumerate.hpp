#ifndef COMMCALC_ENUMERATE_HPP
#define COMMCALC_ENUMERATE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "free_product.hpp"
#include "term.hpp"

namespace commcalc {

/// Hash-consed store of loop terms in normal form. `mk` builds a node from
/// normal children and applies the single top rewrite, so every id denotes a
/// normal term and structural equality is id equality. Id 0 is the unit.
class LoopTermArena {
public:
  using Id = std::uint32_t;
  static constexpr Id unit_id = 0;

  LoopTermArena() { nodes_.push_back({Term::Tag::Unit, 0, 0, 0}); }

  Id letter(std::size_t sort, std::size_t id) {
    return intern(Term::Tag::Letter, static_cast<Id>(sort), static_cast<Id>(id), 1);
  }

  Id mk(Op op, Id a, Id b) {
    Node const &na = nodes_[a];
    Node const &nb = nodes_[b];
    switch (op) {
    case Op::Mul:
      if (b == unit_id)
        return a;
      if (a == unit_id)
        return b;
      if (nb.tag == Term::Tag::LDiv && nb.a == a)
        return nb.b;
      if (na.tag == Term::Tag::RDiv && na.b == b)
        return na.a;
      return intern(Term::Tag::Mul, a, b, na.leaves + nb.leaves);
    case Op::LDiv:
      if (nb.tag == Term::Tag::Mul && nb.a == a)
        return nb.b;
      if (a == b)
        return unit_id;
      if (a == unit_id)
        return b;
      return intern(Term::Tag::LDiv, a, b, na.leaves + nb.leaves);
    case Op::RDiv:
      if (na.tag == Term::Tag::Mul && na.b == b)
        return na.a;
      if (a == b)
        return unit_id;
      if (b == unit_id)
        return a;
      return intern(Term::Tag::RDiv, a, b, na.leaves + nb.leaves);
    case Op::Inv: break;
    }
    throw UnsupportedOperation("loop terms may not use inv");
  }

  /// Normal form of an arbitrary loop term.
  Id normalize(Term const &t) {
    switch (t.tag()) {
    case Term::Tag::Unit: return unit_id;
    case Term::Tag::Letter: return letter(t.sort(), t.id());
    case Term::Tag::Inv: throw UnsupportedOperation("loop terms may not use inv");
    default: return mk(t.op(), normalize(t.left()), normalize(t.right()));
    }
  }

  Term to_term(Id id) const {
    Node const &n = nodes_[id];
    switch (n.tag) {
    case Term::Tag::Unit: return Term::unit();
    case Term::Tag::Letter: return Term::letter(n.a, n.b);
    case Term::Tag::Mul: return Term::mul(to_term(n.a), to_term(n.b));
    case Term::Tag::LDiv: return Term::ldiv(to_term(n.a), to_term(n.b));
    default: return Term::rdiv(to_term(n.a), to_term(n.b));
    }
  }

  std::size_t leaves(Id id) const { return nodes_[id].leaves; }
  Term::Tag tag(Id id) const { return nodes_[id].tag; }
  Id left(Id id) const { return nodes_[id].a; }
  Id right(Id id) const { return nodes_[id].b; }
  std::size_t size() const { return nodes_.size(); }

private:
  struct Node {
    Term::Tag tag;
    Id a, b;
    std::uint32_t leaves;
  };

  Id intern(Term::Tag tag, Id a, Id b, std::uint32_t leaves) {
    std::uint64_t key = (static_cast<std::uint64_t>(tag) << 60) |
                        (static_cast<std::uint64_t>(a) << 30) | static_cast<std::uint64_t>(b);
    auto [it, inserted] = index_.try_emplace(key, static_cast<Id>(nodes_.size()));
    if (inserted)
      nodes_.push_back({tag, a, b, leaves});
    return it->second;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, Id> index_;
};

/// Partners B for which op(a, B) rewrites to the unit by a single top step.
/// Each candidate still has to be confirmed with `mk`.
inline std::vector<LoopTermArena::Id> unit_partners(LoopTermArena &arena, Op op,
                                                    LoopTermArena::Id a) {
  using Id = LoopTermArena::Id;
  if (op != Op::Mul)
    return {a}; // x\x, x/x; the other rules collapse to the same partner
  std::vector<Id> out;
  if (a == LoopTermArena::unit_id)
    out.push_back(LoopTermArena::unit_id);
  out.push_back(arena.mk(Op::LDiv, a, LoopTermArena::unit_id)); // x*(x\1)
  if (arena.tag(a) == Term::Tag::RDiv && arena.left(a) == LoopTermArena::unit_id)
    out.push_back(arena.right(a)); // (1/y)*y
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Breadth-first stream of co-smash terms over `letters_per_sort` letters in
/// each of `n_sorts` sorts, up to tree depth `depth`. Terms are deduplicated
/// by normal form (reduced free-group word for groups, rewriting normal form
/// for loops) and only members are yielded. Group membership is exact; loop
/// membership is the sound rewriting test.
///
/// Every term of depth below `depth` that survives deduplication is kept in
/// memory; once `budget` of them exist, further ones are dropped and
/// `truncated()` becomes true. Members of the last level are found by joining
/// on projections, so that level is never materialized.
class CosmashTermStream {
public:
  CosmashTermStream(Kind kind, std::size_t n_sorts, std::size_t letters_per_sort,
                    std::size_t depth, std::size_t budget = 250000)
      : kind_(kind), n_sorts_(n_sorts), letters_(letters_per_sort), depth_(depth),
        budget_(budget) {
    if (n_sorts < 1 || n_sorts > 3)
      throw ShapeError("enumeration supports 1 to 3 sorts");
    if (letters_per_sort < 1)
      throw ShapeError("need at least one letter per sort");
    level0();
  }

  std::optional<Term> next() {
    while (pending_.empty()) {
      if (level_ >= depth_)
        return std::nullopt;
      ++level_;
      if (level_ < depth_)
        grow();
      else
        final_level();
    }
    Term t = std::move(pending_.front());
    pending_.pop_front();
    return t;
  }

  bool truncated() const noexcept { return truncated_; }
  std::size_t materialized() const noexcept { return pool_.size(); }

private:
  using Key = std::vector<std::int64_t>;

  struct Entry {
    Term term;
    std::size_t depth;
    Key full;                          // group: word key, loop: {nf id}
    std::vector<Key> group_proj;       // group projections
    std::vector<LoopTermArena::Id> loop_proj;
    bool member;
  };

  static Key word_key(FreeWord const &w) {
    Key k;
    k.reserve(2 * w.size());
    for (auto const &s : w) {
      k.push_back(static_cast<std::int64_t>(s.factor));
      k.push_back(s.value);
    }
    return k;
  }

  FreeWord key_word(Key const &k) const {
    FreeWord w;
    for (std::size_t i = 0; i < k.size(); i += 2)
      w.push_back({static_cast<std::size_t>(k[i]), k[i + 1]});
    return w;
  }

  std::size_t n_letters() const { return n_sorts_ * letters_; }
  std::size_t letter_sort(std::size_t f) const { return f / letters_; }

  // Word of a letter with some sort killed.
  FreeWord letter_word(std::size_t sort, std::size_t id, std::optional<std::size_t> killed) {
    if (killed && *killed == sort)
      return {};
    return {{sort * letters_ + (id - 1), 1}};
  }

  void level0() {
    factors_.assign(n_letters(), Factor::infinite_cyclic());
    add(make_unit());
    for (std::size_t s = 0; s < n_sorts_; ++s)
      for (std::size_t i = 1; i <= letters_; ++i)
        add(make_letter(s, i));
  }

  Entry make_unit() {
    Entry e{Term::unit(), 0, {}, {}, {}, true};
    if (kind_ == Kind::Group) {
      e.group_proj.assign(n_sorts_, Key{});
    } else {
      e.full = {0};
      e.loop_proj.assign(n_sorts_, LoopTermArena::unit_id);
    }
    return e;
  }

  Entry make_letter(std::size_t s, std::size_t i) {
    Entry e{Term::letter(s, i), 0, {}, {}, {}, false};
    if (kind_ == Kind::Group) {
      e.full = word_key(letter_word(s, i, std::nullopt));
      for (std::size_t k = 0; k < n_sorts_; ++k)
        e.group_proj.push_back(word_key(letter_word(s, i, k)));
    } else {
      auto id = arena_.letter(s, i);
      e.full = {id};
      for (std::size_t k = 0; k < n_sorts_; ++k)
        e.loop_proj.push_back(k == s ? LoopTermArena::unit_id : id);
    }
    e.member = is_member(e);
    return e;
  }

  bool is_member(Entry const &e) const {
    if (kind_ == Kind::Group) {
      for (auto const &p : e.group_proj)
        if (!p.empty())
          return false;
      return true;
    }
    for (auto p : e.loop_proj)
      if (p != LoopTermArena::unit_id)
        return false;
    return true;
  }

  Entry combine(Op op, Entry const &a, Entry const *b) {
    Entry e;
    e.depth = 1 + std::max(a.depth, b ? b->depth : 0);
    e.term = op == Op::Inv ? Term::inv(a.term) : Term::apply(op, a.term, b->term);
    if (kind_ == Kind::Group) {
      auto f = [&](Key const &x, Key const *y) {
        if (op == Op::Inv)
          return word_key(freeword_inverse(key_word(x), factors_));
        return word_key(freeword_multiply(key_word(x), key_word(*y), factors_));
      };
      e.full = f(a.full, b ? &b->full : nullptr);
      for (std::size_t k = 0; k < n_sorts_; ++k)
        e.group_proj.push_back(f(a.group_proj[k], b ? &b->group_proj[k] : nullptr));
    } else {
      e.full = {arena_.mk(op, static_cast<LoopTermArena::Id>(a.full[0]),
                          static_cast<LoopTermArena::Id>(b->full[0]))};
      for (std::size_t k = 0; k < n_sorts_; ++k)
        e.loop_proj.push_back(arena_.mk(op, a.loop_proj[k], b->loop_proj[k]));
    }
    e.member = is_member(e);
    return e;
  }

  bool add(Entry e) {
    if (seen_.count(e.full))
      return false;
    if (pool_.size() >= budget_) {
      truncated_ = true;
      return false;
    }
    seen_.insert(e.full);
    if (e.member)
      pending_.push_back(e.term);
    if (kind_ == Kind::Group)
      group_index_[e.group_proj].push_back(pool_.size());
    else
      loop_index_[e.loop_proj].push_back(pool_.size());
    pool_.push_back(std::move(e));
    return true;
  }

  std::vector<Op> binary_ops() const {
    if (kind_ == Kind::Group)
      return {Op::Mul};
    return {Op::Mul, Op::LDiv, Op::RDiv};
  }

  // Materializes every deduplicated term of depth exactly level_.
  void grow() {
    std::size_t n = pool_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (kind_ == Kind::Group && pool_[i].depth + 1 == level_)
        add(combine(Op::Inv, pool_[i], nullptr));
      for (std::size_t j = 0; j < n; ++j) {
        if (std::max(pool_[i].depth, pool_[j].depth) + 1 != level_)
          continue;
        for (Op op : binary_ops())
          add(combine(op, pool_[i], &pool_[j]));
      }
    }
  }

  void emit(Entry const &e) {
    if (!e.member || seen_.count(e.full))
      return;
    seen_.insert(e.full);
    pending_.push_back(e.term);
  }

  // Members of depth exactly level_ = depth_, found by projection joins.
  void final_level() {
    std::size_t n = pool_.size();
    for (std::size_t i = 0; i < n; ++i) {
      Entry const &a = pool_[i];
      if (kind_ == Kind::Group) {
        if (a.member && a.depth + 1 == level_)
          emit(combine(Op::Inv, a, nullptr));
        std::vector<Key> want;
        for (auto const &p : a.group_proj)
          want.push_back(word_key(freeword_inverse(key_word(p), factors_)));
        auto it = group_index_.find(want);
        if (it == group_index_.end())
          continue;
        for (std::size_t j : it->second)
          if (std::max(a.depth, pool_[j].depth) + 1 == level_)
            emit(combine(Op::Mul, a, &pool_[j]));
        continue;
      }
      for (Op op : binary_ops()) {
        std::vector<std::vector<LoopTermArena::Id>> cands;
        for (auto p : a.loop_proj)
          cands.push_back(unit_partners(arena_, op, p));
        std::vector<LoopTermArena::Id> want(n_sorts_);
        auto rec = [&](auto &self, std::size_t k) -> void {
          if (k == n_sorts_) {
            auto it = loop_index_.find(want);
            if (it == loop_index_.end())
              return;
            for (std::size_t j : it->second)
              if (std::max(a.depth, pool_[j].depth) + 1 == level_)
                emit(combine(op, a, &pool_[j]));
            return;
          }
          for (auto c : cands[k]) {
            want[k] = c;
            self(self, k + 1);
          }
        };
        rec(rec, 0);
      }
    }
  }

  Kind kind_;
  std::size_t n_sorts_, letters_, depth_, budget_;
  std::size_t level_ = 0;
  bool truncated_ = false;
  std::vector<Factor> factors_;
  LoopTermArena arena_;
  std::vector<Entry> pool_;
  std::set<Key> seen_;
  std::map<std::vector<Key>, std::vector<std::size_t>> group_index_;
  std::map<std::vector<LoopTermArena::Id>, std::vector<std::size_t>> loop_index_;
  std::deque<Term> pending_;
};

inline CosmashTermStream enumerate_cosmash_terms(Kind kind, std::size_t n_sorts,
                                                 std::size_t letters_per_sort,
                                                 std::size_t depth,
                                                 std::size_t budget = 250000) {
  return CosmashTermStream(kind, n_sorts, letters_per_sort, depth, budget);
}

} // namespace commcalc

#endif
