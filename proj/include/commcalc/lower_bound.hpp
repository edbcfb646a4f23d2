#ifndef COMMCALC_LOWER_BOUND_HPP
#define COMMCALC_LOWER_BOUND_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"
#include "commutators.hpp"
#include "enumerate.hpp"
#include "term.hpp"

namespace commcalc {

/// Limits for ternary_lower_bound. Depth d admits group words of length at
/// most 2^(d-1), which is the reach of group terms of tree depth d once
/// inverses are pushed to the leaves.
struct LowerBoundOptions {
  /// Longest reduced projection kept while reading a group word.
  std::size_t group_projection_limit = 4;
  /// Largest normal-form projection (in leaves) kept for loop terms.
  std::size_t loop_projection_limit = 4;
  /// Per-assignment caps for loops; exceeding one marks the result truncated.
  std::size_t loop_state_budget = 6000;
  std::size_t loop_pair_budget = 4000000;
};

namespace detail {

/// Deterministic automaton tracking the three two-sort projections of a word
/// in letters k^±1, l^±1, m^±1, each reduced in the free group and cut off at
/// a fixed length. Letter code c: sort c/2, inverse iff c odd.
class ProjectionAutomaton {
public:
  explicit ProjectionAutomaton(std::size_t limit) : limit_(limit) {
    std::map<std::array<std::vector<std::uint8_t>, 3>, std::int32_t> id;
    std::vector<std::array<std::vector<std::uint8_t>, 3>> states;
    states.push_back({});
    id[states[0]] = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      std::array<std::int32_t, 6> row{};
      for (std::uint8_t c = 0; c < 6; ++c) {
        auto next = states[i];
        bool ok = true;
        for (std::size_t d = 0; d < 3 && ok; ++d) {
          if (d == c / 2u)
            continue;
          auto &st = next[d];
          if (!st.empty() && st.back() == (c ^ 1u))
            st.pop_back();
          else
            st.push_back(c);
          ok = st.size() <= limit_;
        }
        if (!ok) {
          row[c] = -1;
          continue;
        }
        auto [it, inserted] = id.try_emplace(next, static_cast<std::int32_t>(states.size()));
        if (inserted)
          states.push_back(next);
        row[c] = it->second;
      }
      delta_.push_back(row);
    }
  }

  std::size_t size() const noexcept { return delta_.size(); }
  std::int32_t step(std::size_t state, std::size_t code) const { return delta_[state][code]; }

  static ProjectionAutomaton const &shared(std::size_t limit) {
    static ProjectionAutomaton const p4(4);
    if (limit == 4)
      return p4;
    thread_local std::map<std::size_t, ProjectionAutomaton> cache;
    return cache.try_emplace(limit, limit).first->second;
  }

private:
  std::size_t limit_;
  std::vector<std::array<std::int32_t, 6>> delta_;
};

inline std::string word_string(std::vector<std::uint8_t> const &w) {
  static char const *const names[6] = {"k1", "inv(k1)", "l1", "inv(l1)", "m1", "inv(m1)"};
  if (w.empty())
    return "1";
  std::string s = names[w[0]];
  for (std::size_t i = 1; i < w.size(); ++i)
    s = (i == 1 ? s : "(" + s + ")") + "*" + names[w[i]];
  return s;
}

struct Assignment3 {
  Elem a, b, c;
};

inline std::vector<Assignment3> nonunit_assignments(Subobject const &k, Subobject const &l,
                                                    Subobject const &m) {
  std::vector<Assignment3> out;
  for (Elem a : k.elements())
    for (Elem b : l.elements())
      for (Elem c : m.elements())
        if (a && b && c)
          out.push_back({a, b, c});
  return out;
}

struct ValueSink {
  std::vector<char> seen_short, seen;
  std::vector<TermWitness> witnesses;
  bool grew = false, grew_short = false;

  explicit ValueSink(std::size_t n) : seen_short(n, 0), seen(n, 0) {
    seen_short[0] = seen[0] = 1;
  }

  std::vector<Elem> values(bool short_only) const {
    std::vector<Elem> out;
    auto const &s = short_only ? seen_short : seen;
    for (Elem e = 0; e < s.size(); ++e)
      if (s[e])
        out.push_back(e);
    return out;
  }
};

inline void group_lower_bound(FiniteAlgebra const &x, std::vector<Assignment3> const &as,
                              std::size_t max_len, std::size_t short_len, std::size_t limit,
                              ValueSink &sink, Subobject const &j,
                              std::optional<Subobject> const &bound) {
  auto const &aut = ProjectionAutomaton::shared(limit);
  auto n = static_cast<std::uint32_t>(x.order());
  std::size_t total = aut.size() * n;
  std::vector<std::uint32_t> stamp(total, 0);
  std::vector<std::int32_t> parent(total, -1);
  std::vector<std::uint8_t> via(total, 0);
  std::uint32_t gen = 0;
  std::vector<std::uint32_t> frontier, next;
  for (auto const &asg : as) {
    ++gen;
    Elem val[6] = {asg.a, x.inv(asg.a), asg.b, x.inv(asg.b), asg.c, x.inv(asg.c)};
    frontier.assign(1, 0);
    stamp[0] = gen;
    for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
      next.clear();
      for (std::uint32_t code : frontier) {
        std::uint32_t st = code / n, v = code % n;
        for (std::uint8_t c = 0; c < 6; ++c) {
          std::int32_t s2 = aut.step(st, c);
          if (s2 < 0)
            continue;
          std::uint32_t nc = static_cast<std::uint32_t>(s2) * n + x.mul(v, val[c]);
          if (stamp[nc] == gen)
            continue;
          stamp[nc] = gen;
          parent[nc] = static_cast<std::int32_t>(code);
          via[nc] = c;
          next.push_back(nc);
          if (s2 != 0)
            continue;
          Elem value = nc % n;
          bool is_short = len <= short_len;
          if (is_short && !sink.seen_short[value]) {
            sink.seen_short[value] = 1;
            sink.grew_short = true;
          }
          if (!sink.seen[value]) {
            sink.seen[value] = 1;
            sink.grew = true;
            std::vector<std::uint8_t> w;
            for (std::uint32_t p = nc; p != 0; p = static_cast<std::uint32_t>(parent[p]))
              w.push_back(via[p]);
            std::reverse(w.begin(), w.end());
            sink.witnesses.push_back({value, word_string(w), {asg.a, asg.b, asg.c}});
          }
        }
      }
      frontier.swap(next);
    }
    // Once the shorter words already reach the upper bound nothing can grow.
    if (bound && sink.grew_short) {
      sink.grew_short = false;
      if (normal_closure_within(x, j, sink.values(true)) == *bound)
        return;
    }
  }
}

struct LoopState {
  std::array<LoopTermArena::Id, 3> proj;
  Elem value;
  std::uint32_t depth;
  std::int32_t a, b; // parents, -1 for leaves
  Op op;
  std::uint8_t leaf; // 0 unit, 1..3 letter of sort leaf-1
};

inline Term loop_state_term(std::vector<LoopState> const &st, std::size_t i) {
  auto rec = [&](auto &self, std::size_t u) -> Term {
    LoopState const &s = st[u];
    if (s.a < 0)
      return s.leaf == 0 ? Term::unit() : Term::letter(s.leaf - 1u, 1);
    return Term::apply(s.op, self(self, static_cast<std::size_t>(s.a)),
                       self(self, static_cast<std::size_t>(s.b)));
  };
  return rec(rec, i);
}

/// Loop route: per assignment, closure of terms keyed by (normal forms of the
/// three projections, value). Members of the top level are found by joining
/// on projections that rewrite to the unit in one step.
inline bool loop_lower_bound(FiniteAlgebra const &x, std::vector<Assignment3> const &as,
                             std::size_t depth, LowerBoundOptions const &opt,
                             ValueSink &sink) {
  static constexpr Op ops[3] = {Op::Mul, Op::LDiv, Op::RDiv};
  bool truncated = false;
  LoopTermArena arena;
  LoopTermArena::Id letter_id[3] = {arena.letter(0, 1), arena.letter(1, 1), arena.letter(2, 1)};
  for (auto const &asg : as) {
    Elem val[3] = {asg.a, asg.b, asg.c};
    std::vector<LoopState> st;
    std::map<std::pair<std::array<LoopTermArena::Id, 3>, Elem>, std::uint32_t> key;
    std::map<std::array<LoopTermArena::Id, 3>, std::vector<std::uint32_t>> by_proj;
    auto insert = [&](LoopState s) {
      auto [it, inserted] = key.try_emplace({s.proj, s.value}, static_cast<std::uint32_t>(st.size()));
      if (!inserted)
        return;
      by_proj[s.proj].push_back(it->second);
      st.push_back(s);
    };
    insert({{0, 0, 0}, 0, 0, -1, -1, Op::Mul, 0});
    for (std::uint8_t s = 0; s < 3; ++s) {
      std::array<LoopTermArena::Id, 3> p{letter_id[s], letter_id[s], letter_id[s]};
      p[s] = LoopTermArena::unit_id;
      insert({p, val[s], 0, -1, -1, Op::Mul, static_cast<std::uint8_t>(s + 1)});
    }
    std::size_t pairs = 0;
    auto note_member = [&](Elem value, auto const &make_term) {
      if (!sink.seen[value]) {
        sink.seen[value] = 1;
        sink.grew = true;
        sink.witnesses.push_back({value, make_term(), {asg.a, asg.b, asg.c}});
      }
    };
    for (std::uint32_t level = 1; level < depth && !truncated; ++level) {
      std::size_t count = st.size();
      for (std::size_t i = 0; i < count && !truncated; ++i)
        for (std::size_t j = 0; j < count && !truncated; ++j) {
          if (std::max(st[i].depth, st[j].depth) + 1 != level)
            continue;
          for (Op op : ops) {
            if (++pairs > opt.loop_pair_budget || st.size() >= opt.loop_state_budget) {
              truncated = true;
              break;
            }
            std::array<LoopTermArena::Id, 3> p;
            bool keep = true;
            for (std::size_t s = 0; s < 3 && keep; ++s) {
              p[s] = arena.mk(op, st[i].proj[s], st[j].proj[s]);
              keep = arena.leaves(p[s]) <= opt.loop_projection_limit;
            }
            if (!keep)
              continue;
            insert({p, apply_op(x, op, st[i].value, st[j].value), level,
                    static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), op, 0});
          }
        }
    }
    for (std::size_t i = 0; i < st.size(); ++i)
      if (st[i].proj == std::array<LoopTermArena::Id, 3>{0, 0, 0})
        note_member(st[i].value, [&] { return print_term(loop_state_term(st, i)); });
    if (depth == 0)
      continue;
    // Top level: op(A, B) whose three projections all rewrite to the unit.
    for (std::size_t i = 0; i < st.size(); ++i)
      for (Op op : ops) {
        std::array<std::vector<LoopTermArena::Id>, 3> cand;
        for (std::size_t s = 0; s < 3; ++s)
          cand[s] = unit_partners(arena, op, st[i].proj[s]);
        for (auto c0 : cand[0])
          for (auto c1 : cand[1])
            for (auto c2 : cand[2]) {
              auto it = by_proj.find({c0, c1, c2});
              if (it == by_proj.end())
                continue;
              for (std::uint32_t j : it->second) {
                bool unit = true;
                for (std::size_t s = 0; s < 3 && unit; ++s)
                  unit = arena.mk(op, st[i].proj[s], st[j].proj[s]) == LoopTermArena::unit_id;
                if (!unit)
                  continue;
                Elem v = apply_op(x, op, st[i].value, st[j].value);
                note_member(v, [&] {
                  return print_term(
                      Term::apply(op, loop_state_term(st, i), loop_state_term(st, j)));
                });
              }
            }
      }
  }
  return truncated;
}

} // namespace detail

/// Lower bound for [K,L,M]: the normal closure, inside K∨L∨M, of the values
/// of co-smash terms of depth at most `depth` with one letter per sort and
/// letters ranging over K, L, M.
///
/// Groups use a word automaton (exact membership, projections cut off at a
/// fixed length). The result is flagged Exact when the bound at depth-1
/// already equals the bound at depth and both contain the decomposition
/// formula, which needs K, L, M normal. Loops use rewriting membership and
/// are always LowerBound.
inline CommutatorReport ternary_lower_bound(FiniteAlgebra const &x, Subobject const &k,
                                            Subobject const &l, Subobject const &m,
                                            std::size_t depth,
                                            LowerBoundOptions const &opt = {}) {
  CommutatorReport r;
  r.kind = CommutatorKind::TernaryLowerBound;
  r.inputs = {k, l, m};
  r.exactness = Exactness::LowerBound;
  Subobject j = join(x, join(x, k, l), m);
  detail::ValueSink sink(x.order());
  auto as = detail::nonunit_assignments(k, l, m);

  bool all_normal = is_normal(x, k) && is_normal(x, l) && is_normal(x, m);
  if (x.kind() == Kind::Group) {
    std::size_t max_len = depth == 0 ? 0 : std::size_t{1} << std::min<std::size_t>(depth - 1, 20);
    std::size_t short_len = depth <= 1 ? 0 : std::size_t{1} << std::min<std::size_t>(depth - 2, 20);
    std::optional<Subobject> bound;
    if (all_normal)
      bound = meet(x, meet(x, k, l), m);
    detail::group_lower_bound(x, as, max_len, short_len, opt.group_projection_limit, sink, j,
                              bound);
    r.result = normal_closure_within(x, j, sink.values(false));
    Subobject shorter = normal_closure_within(x, j, sink.values(true));
    r.notes.push_back("group words of length <= " + std::to_string(max_len));
    if (all_normal && depth >= 1) {
      Subobject exact = ternary_group_exact(x, k, l, m);
      if (shorter == r.result && exact.subset_of(r.result))
        r.exactness = Exactness::Exact;
    }
  } else {
    r.truncated = detail::loop_lower_bound(x, as, depth, opt, sink);
    r.result = normal_closure_within(x, j, sink.values(false));
    r.notes.push_back("loop membership by rewriting; always a lower bound");
  }
  if (all_normal && x.kind() == Kind::Group)
    r.result = r.result.with_normality(Normality::Normal);
  r.witnesses = std::move(sink.witnesses);
  return r;
}

} // namespace commcalc

#endif
