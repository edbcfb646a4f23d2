#ifndef COMMCALC_TERM_HPP
#define COMMCALC_TERM_HPP

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"

namespace commcalc {

/// Syntax tree over the group/loop signature. Leaves are the unit or a
/// letter (sort index, 1-based id within the sort). Nodes are shared and
/// immutable, so copying a Term is cheap.
class Term {
public:
  enum class Tag { Unit, Letter, Mul, LDiv, RDiv, Inv };

  Term() : node_(unit_node()) {}

  static Term unit() { return Term(); }

  static Term letter(std::size_t sort, std::size_t id) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::Letter;
    n->sort = sort;
    n->id = id;
    n->leaves = 1;
    return Term(std::move(n));
  }

  static Term apply(Op op, Term a, Term b = Term()) {
    auto n = std::make_shared<Node>();
    n->tag = tag_of(op);
    n->depth = 1 + std::max(a.depth(), op == Op::Inv ? 0 : b.depth());
    n->leaves = a.leaves() + (op == Op::Inv ? 0 : b.leaves());
    n->left = std::move(a.node_);
    if (op != Op::Inv)
      n->right = std::move(b.node_);
    return Term(std::move(n));
  }

  static Term mul(Term a, Term b) { return apply(Op::Mul, std::move(a), std::move(b)); }
  static Term ldiv(Term a, Term b) { return apply(Op::LDiv, std::move(a), std::move(b)); }
  static Term rdiv(Term a, Term b) { return apply(Op::RDiv, std::move(a), std::move(b)); }
  static Term inv(Term a) { return apply(Op::Inv, std::move(a)); }

  Tag tag() const noexcept { return node_->tag; }
  bool is_unit() const noexcept { return tag() == Tag::Unit; }
  bool is_letter() const noexcept { return tag() == Tag::Letter; }
  bool is_binary() const noexcept {
    return tag() == Tag::Mul || tag() == Tag::LDiv || tag() == Tag::RDiv;
  }
  Op op() const {
    switch (tag()) {
    case Tag::Mul: return Op::Mul;
    case Tag::LDiv: return Op::LDiv;
    case Tag::RDiv: return Op::RDiv;
    case Tag::Inv: return Op::Inv;
    default: throw std::logic_error("leaf has no operation");
    }
  }
  std::size_t sort() const noexcept { return node_->sort; }
  std::size_t id() const noexcept { return node_->id; }
  Term left() const { return Term(node_->left); }
  Term right() const { return Term(node_->right); }
  std::size_t depth() const noexcept { return node_->depth; }
  std::size_t leaves() const noexcept { return node_->leaves; }

  friend bool operator==(Term const &a, Term const &b) {
    if (a.node_ == b.node_)
      return true;
    Node const &x = *a.node_, &y = *b.node_;
    if (x.tag != y.tag || x.leaves != y.leaves || x.depth != y.depth)
      return false;
    if (x.tag == Tag::Unit)
      return true;
    if (x.tag == Tag::Letter)
      return x.sort == y.sort && x.id == y.id;
    if (!(a.left() == b.left()))
      return false;
    return x.tag == Tag::Inv || a.right() == b.right();
  }

private:
  struct Node {
    Tag tag = Tag::Unit;
    std::size_t sort = 0, id = 0;
    std::size_t depth = 0, leaves = 0;
    std::shared_ptr<Node const> left, right;
  };

  explicit Term(std::shared_ptr<Node const> n) : node_(std::move(n)) {}

  static Tag tag_of(Op op) {
    switch (op) {
    case Op::Mul: return Tag::Mul;
    case Op::LDiv: return Tag::LDiv;
    case Op::RDiv: return Tag::RDiv;
    case Op::Inv: return Tag::Inv;
    }
    return Tag::Unit;
  }

  static std::shared_ptr<Node const> const &unit_node() {
    static auto const n = std::make_shared<Node const>();
    return n;
  }

  std::shared_ptr<Node const> node_;
};

/// Default sort prefixes: k, l, m for commutator inputs.
inline std::vector<std::string> const &default_sort_names() {
  static std::vector<std::string> const names = {"k", "l", "m"};
  return names;
}

/// Renders a term in the grammar accepted by parse_term. Binary children are
/// always parenthesized, the top level never is.
inline std::string print_term(Term const &t,
                              std::vector<std::string> const &sorts = default_sort_names()) {
  auto rec = [&](auto &self, Term const &u, bool nested) -> std::string {
    switch (u.tag()) {
    case Term::Tag::Unit: return "1";
    case Term::Tag::Letter:
      if (u.sort() >= sorts.size())
        throw ShapeError("letter sort out of range");
      return sorts[u.sort()] + std::to_string(u.id());
    case Term::Tag::Inv: return "inv(" + self(self, u.left(), false) + ")";
    default: break;
    }
    char sym = u.tag() == Term::Tag::Mul ? '*' : u.tag() == Term::Tag::LDiv ? '\\' : '/';
    std::string s = self(self, u.left(), true) + sym + self(self, u.right(), true);
    return nested ? "(" + s + ")" : s;
  };
  return rec(rec, t, false);
}

namespace detail {

class TermParser {
public:
  TermParser(std::string const &text, std::vector<std::string> const &sorts)
      : s_(text), sorts_(sorts) {}

  Term parse() {
    Term t = expr();
    skip();
    if (pos_ != s_.size())
      throw ParseError(pos_, "operator or end of input");
    return t;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  Term expr() {
    Term t = primary();
    for (;;) {
      skip();
      if (pos_ >= s_.size())
        return t;
      char c = s_[pos_];
      Op op;
      if (c == '*')
        op = Op::Mul;
      else if (c == '\\')
        op = Op::LDiv;
      else if (c == '/')
        op = Op::RDiv;
      else
        return t;
      ++pos_;
      t = Term::apply(op, t, primary());
    }
  }

  Term primary() {
    skip();
    if (pos_ >= s_.size())
      throw ParseError(pos_, "term");
    if (s_[pos_] == '(') {
      ++pos_;
      Term t = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')')
        throw ParseError(pos_, "')'");
      ++pos_;
      return t;
    }
    if (s_[pos_] == '1' &&
        (pos_ + 1 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return Term::unit();
    }
    if (s_.compare(pos_, 4, "inv(") == 0) {
      pos_ += 4;
      Term t = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')')
        throw ParseError(pos_, "')'");
      ++pos_;
      return Term::inv(t);
    }
    // Longest matching sort prefix followed by a positive index.
    std::size_t best = sorts_.size(), best_len = 0;
    for (std::size_t i = 0; i < sorts_.size(); ++i) {
      auto const &p = sorts_[i];
      if (p.size() > best_len && s_.compare(pos_, p.size(), p) == 0) {
        best = i;
        best_len = p.size();
      }
    }
    if (best == sorts_.size())
      throw ParseError(pos_, "'(', '1', 'inv(' or a letter");
    std::size_t q = pos_ + best_len, start = q;
    while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q])))
      ++q;
    if (q == start)
      throw ParseError(q, "letter index");
    std::size_t id = std::stoul(s_.substr(start, q - start));
    if (id == 0)
      throw ParseError(start, "letter index >= 1");
    pos_ = q;
    return Term::letter(best, id);
  }

  std::string const &s_;
  std::vector<std::string> const &sorts_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the term grammar: binary `*`, `\`, `/` (equal precedence, left
/// associative), `inv(...)`, `1`, and letters `<sort><index>`.
inline Term parse_term(std::string const &text,
                       std::vector<std::string> const &sorts = default_sort_names()) {
  return detail::TermParser(text, sorts).parse();
}

/// Letter assignment: (sort, id) -> element.
using Assignment = std::map<std::pair<std::size_t, std::size_t>, Elem>;

inline void check_signature(Term const &t, Kind kind) {
  auto rec = [&](auto &self, Term const &u) -> void {
    if (u.is_unit() || u.is_letter())
      return;
    Op op = u.op();
    if (kind == Kind::Group && (op == Op::LDiv || op == Op::RDiv))
      throw UnsupportedOperation("group terms may not use divisions");
    if (kind == Kind::Loop && op == Op::Inv)
      throw UnsupportedOperation("loop terms may not use inv");
    self(self, u.left());
    if (op != Op::Inv)
      self(self, u.right());
  };
  rec(rec, t);
}

inline Elem eval_term(Term const &t, FiniteAlgebra const &x, Assignment const &a) {
  check_signature(t, x.kind());
  auto rec = [&](auto &self, Term const &u) -> Elem {
    switch (u.tag()) {
    case Term::Tag::Unit: return 0;
    case Term::Tag::Letter: {
      auto it = a.find({u.sort(), u.id()});
      if (it == a.end())
        throw UnboundLetter("sort " + std::to_string(u.sort()) + " index " +
                            std::to_string(u.id()));
      if (it->second >= x.order())
        throw ShapeError("assigned element out of range");
      return it->second;
    }
    case Term::Tag::Inv: return x.inv(self(self, u.left()));
    default: return apply_op(x, u.op(), self(self, u.left()), self(self, u.right()));
    }
  };
  return rec(rec, t);
}

/// Replaces every letter of `sort` by the unit.
inline Term zero_substitute(Term const &t, std::size_t sort) {
  switch (t.tag()) {
  case Term::Tag::Unit: return t;
  case Term::Tag::Letter: return t.sort() == sort ? Term::unit() : t;
  case Term::Tag::Inv: return Term::inv(zero_substitute(t.left(), sort));
  default:
    return Term::apply(t.op(), zero_substitute(t.left(), sort),
                       zero_substitute(t.right(), sort));
  }
}

namespace detail {

/// One top-level rewrite of a node whose children are already normal.
/// Every right-hand side is a normal subterm, so no further pass is needed.
inline Term loop_rewrite_top(Op op, Term const &a, Term const &b) {
  if (op == Op::Mul) {
    if (b.is_unit()) // x*1 -> x
      return a;
    if (a.is_unit()) // 1*x -> x
      return b;
    if (b.tag() == Term::Tag::LDiv && b.left() == a) // x*(x\y) -> y
      return b.right();
    if (a.tag() == Term::Tag::RDiv && a.right() == b) // (x/y)*y -> x
      return a.left();
    return Term::mul(a, b);
  }
  if (op == Op::LDiv) {
    if (b.tag() == Term::Tag::Mul && b.left() == a) // x\(x*y) -> y
      return b.right();
    if (a == b) // x\x -> 1
      return Term::unit();
    if (a.is_unit()) // 1\x -> x
      return b;
    return Term::ldiv(a, b);
  }
  if (a.tag() == Term::Tag::Mul && a.right() == b) // (x*y)/y -> x
    return a.left();
  if (a == b) // x/x -> 1
    return Term::unit();
  if (b.is_unit()) // x/1 -> x
    return a;
  return Term::rdiv(a, b);
}

} // namespace detail

/// Innermost rewriting with the ten loop axioms read left to right. Unit
/// output proves the term trivial in every loop; other outputs prove nothing.
inline Term loop_normalize(Term const &t) {
  switch (t.tag()) {
  case Term::Tag::Unit:
  case Term::Tag::Letter: return t;
  case Term::Tag::Inv: throw UnsupportedOperation("loop terms may not use inv");
  default: break;
  }
  return detail::loop_rewrite_top(t.op(), loop_normalize(t.left()), loop_normalize(t.right()));
}

/// Highest sort index used plus one (0 for letter-free terms).
inline std::size_t sort_count(Term const &t) {
  switch (t.tag()) {
  case Term::Tag::Unit: return 0;
  case Term::Tag::Letter: return t.sort() + 1;
  case Term::Tag::Inv: return sort_count(t.left());
  default: return std::max(sort_count(t.left()), sort_count(t.right()));
  }
}

} // namespace commcalc

#endif
