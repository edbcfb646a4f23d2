#ifndef COMMCALC_CATALOG_HPP
#define COMMCALC_CATALOG_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "structures.hpp"

namespace commcalc::catalog {

inline FiniteAlgebra cyclic(std::size_t n) {
  if (n == 0)
    throw BadParams("cyclic order must be positive");
  std::vector<std::string> names(n);
  std::vector<Elem> mul(n * n);
  for (Elem a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (Elem b = 0; b < n; ++b)
      mul[a * n + b] = static_cast<Elem>((a + b) % n);
  }
  return validate_algebra(Kind::Group, std::move(names), std::move(mul));
}

/// Dihedral group of order 2n: r^a at index a, s·r^a at index n + a.
inline FiniteAlgebra dihedral(std::size_t n) {
  if (n == 0)
    throw BadParams("dihedral parameter must be positive");
  auto N = static_cast<Elem>(n);
  auto name = [&](Elem b, Elem a) {
    std::string s = b ? "s" : "";
    if (a == 1)
      s += "r";
    else if (a > 1)
      s += "r" + std::to_string(a);
    return s.empty() ? std::string("e") : s;
  };
  std::vector<std::string> names(2 * n);
  std::vector<Elem> mul(4 * n * n);
  for (Elem u = 0; u < 2 * N; ++u) {
    Elem b = u / N, a = u % N;
    names[u] = name(b, a);
    for (Elem v = 0; v < 2 * N; ++v) {
      Elem d = v / N, c = v % N;
      // (s^b r^a)(s^d r^c) = s^(b+d) r^(±a + c)
      Elem ra = d ? (N - a) % N : a;
      mul[u * 2 * N + v] = ((b + d) % 2) * N + (ra + c) % N;
    }
  }
  return validate_algebra(Kind::Group, std::move(names), std::move(mul));
}

namespace detail {

inline std::string cycle_name(std::vector<int> const &p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i))
      continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

inline bool is_even(std::vector<int> const &p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      inversions += p[i] > p[j];
  return inversions % 2 == 0;
}

/// Permutation group on {1..n}; product p·q applies q first.
inline FiniteAlgebra permutation_group(std::size_t n, bool even_only) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    if (!even_only || is_even(p))
      perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Elem> index;
  for (Elem i = 0; i < perms.size(); ++i)
    index[perms[i]] = i;
  std::size_t m = perms.size();
  std::vector<std::string> names(m);
  std::vector<Elem> mul(m * m);
  for (Elem a = 0; a < m; ++a) {
    names[a] = cycle_name(perms[a]);
    for (Elem b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (std::size_t i = 0; i < n; ++i)
        c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      mul[a * m + b] = index.at(c);
    }
  }
  return validate_algebra(Kind::Group, std::move(names), std::move(mul));
}

inline FiniteAlgebra from_rows(Kind kind, std::vector<std::string> names,
                               std::vector<std::vector<Elem>> const &rows) {
  std::vector<Elem> mul;
  for (auto const &r : rows)
    mul.insert(mul.end(), r.begin(), r.end());
  return validate_algebra(kind, std::move(names), std::move(mul));
}

} // namespace detail

inline FiniteAlgebra symmetric(std::size_t n) {
  if (n == 0 || n > 4)
    throw BadParams("symmetric groups are available for 1 <= n <= 4");
  return detail::permutation_group(n, false);
}

inline FiniteAlgebra alternating(std::size_t n) {
  if (n == 0 || n > 4)
    throw BadParams("alternating groups are available for 1 <= n <= 4");
  return detail::permutation_group(n, true);
}

inline std::vector<std::string> quaternion_names() {
  return {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
}

inline FiniteAlgebra quaternion8() {
  return detail::from_rows(Kind::Group, quaternion_names(),
                           {{0, 1, 2, 3, 4, 5, 6, 7},
                            {1, 0, 3, 2, 5, 4, 7, 6},
                            {2, 3, 1, 0, 6, 7, 5, 4},
                            {3, 2, 0, 1, 7, 6, 4, 5},
                            {4, 5, 7, 6, 1, 0, 2, 3},
                            {5, 4, 6, 7, 0, 1, 3, 2},
                            {6, 7, 4, 5, 3, 2, 1, 0},
                            {7, 6, 5, 4, 2, 3, 0, 1}});
}

inline FiniteAlgebra klein4() {
  return detail::from_rows(Kind::Group, {"e", "a", "b", "c"},
                           {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

/// The order-8 loop of the hyperbolic quaternions: ij = k = -ji, jk = i = -kj,
/// ki = j = -ik, ii = jj = kk = 1, with (-x)y = x(-y) = -(xy).
inline FiniteAlgebra hyperbolic_quaternion_loop() {
  return detail::from_rows(Kind::Loop, quaternion_names(),
                           {{0, 1, 2, 3, 4, 5, 6, 7},
                            {1, 0, 3, 2, 5, 4, 7, 6},
                            {2, 3, 0, 1, 6, 7, 5, 4},
                            {3, 2, 1, 0, 7, 6, 4, 5},
                            {4, 5, 7, 6, 0, 1, 2, 3},
                            {5, 4, 6, 7, 1, 0, 3, 2},
                            {6, 7, 4, 5, 3, 2, 0, 1},
                            {7, 6, 5, 4, 2, 3, 1, 0}});
}

inline FiniteAlgebra trivial(Kind kind = Kind::Group) {
  return validate_algebra(kind, {"e"}, {0});
}

namespace detail {

inline std::size_t parse_param(std::string const &s, std::string const &full) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw UnknownEntry(full);
  return std::stoul(s);
}

inline FiniteAlgebra resolve_factor(std::string const &name) {
  if (name == "Q8" || name == "quaternion8")
    return quaternion8();
  if (name == "V4" || name == "klein4")
    return klein4();
  if (name == "M8" || name == "hyperbolic_quaternion_loop")
    return hyperbolic_quaternion_loop();
  if (name == "1" || name == "trivial")
    return trivial();
  if (name.size() >= 2) {
    std::string rest = name.substr(1);
    switch (name[0]) {
    case 'Z': return cyclic(parse_param(rest, name));
    case 'D': return dihedral(parse_param(rest, name));
    case 'S': return symmetric(parse_param(rest, name));
    case 'A': return alternating(parse_param(rest, name));
    default: break;
    }
  }
  throw UnknownEntry(name);
}

} // namespace detail

/// Parameterized builders: cyclic(n), dihedral(n) (order 2n), symmetric(n),
/// alternating(n), quaternion8, klein4, hyperbolic_quaternion_loop, trivial,
/// and product(a, b) over short names.
inline FiniteAlgebra builtin(std::string const &name, std::vector<std::size_t> const &params = {}) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw BadParams(name + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (name == "cyclic") {
    need(1);
    return cyclic(params[0]);
  }
  if (name == "dihedral") {
    need(1);
    return dihedral(params[0]);
  }
  if (name == "symmetric") {
    need(1);
    return symmetric(params[0]);
  }
  if (name == "alternating") {
    need(1);
    return alternating(params[0]);
  }
  if (name == "quaternion8" || name == "klein4" || name == "hyperbolic_quaternion_loop" ||
      name == "trivial") {
    need(0);
    return detail::resolve_factor(name);
  }
  throw UnknownEntry(name);
}

/// Resolves short names such as "S3", "Z4", "D4" (order 8), "Q8", "V4", "M8",
/// products "Z2xZ4", and "loop:NAME" to view a group as a loop.
inline FiniteAlgebra resolve(std::string const &name) {
  if (name.rfind("loop:", 0) == 0)
    return as_loop(resolve(name.substr(5)));
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t x = name.find('x', start);
    // Long names such as hyperbolic_quaternion_loop contain no 'x'.
    parts.push_back(name.substr(start, x - start));
    if (x == std::string::npos)
      break;
    start = x + 1;
  }
  FiniteAlgebra out = detail::resolve_factor(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    FiniteAlgebra f = detail::resolve_factor(parts[i]);
    if (f.kind() != out.kind())
      out = as_loop(out), f = as_loop(f);
    out = direct_product(out, f);
  }
  return out;
}

/// Groups used by the property suites: every catalog group of order <= 16,
/// plus S4.
inline std::vector<std::pair<std::string, FiniteAlgebra>> group_corpus() {
  std::vector<std::string> names = {
      "1",      "Z2",     "Z3",     "Z4",   "V4",     "Z5",     "Z6",     "S3",
      "Z7",     "Z8",     "D4",     "Q8",   "Z2xZ4",  "Z2xZ2xZ2", "Z9", "Z3xZ3",
      "Z10",    "D5",     "Z11",    "Z12",  "D6",     "A4",     "Z2xZ6",  "Z13",
      "Z14",    "D7",     "Z15",    "Z16",  "D8",     "Z2xZ8",  "Z4xZ4",  "Z2xD4",
      "Z2xQ8",  "S4"};
  std::vector<std::pair<std::string, FiniteAlgebra>> out;
  for (auto const &n : names)
    out.emplace_back(n, resolve(n));
  return out;
}

/// Loops derived from M8: M8 itself, its quotients by normal subloops, and
/// small groups viewed as loops.
inline std::vector<std::pair<std::string, FiniteAlgebra>> loop_corpus() {
  std::vector<std::pair<std::string, FiniteAlgebra>> out;
  FiniteAlgebra m8 = hyperbolic_quaternion_loop();
  out.emplace_back("M8", m8);
  auto ns = normal_subobjects(m8);
  for (auto const &n : ns)
    if (!n.is_trivial() && !n.is_whole()) {
      std::string label = "M8/{";
      for (std::size_t i = 0; i < n.elements().size(); ++i)
        label += (i ? "," : "") + m8.name(n.elements()[i]);
      out.emplace_back(label + "}", quotient(m8, denormalize(m8, n)).algebra);
    }
  for (std::string n : {"loop:Z2", "loop:S3", "loop:V4", "loop:Q8", "loop:D4"})
    out.emplace_back(n, resolve(n));
  return out;
}

// ---------------------------------------------------------------------------
// Named split extensions and squares

struct ExtensionEntry {
  SplitExtension ext;
  std::map<std::string, std::vector<Elem>> boundaries; // kernel_algebra -> base
};

namespace detail {

inline ExtensionEntry with_zero(SplitExtension e) {
  ExtensionEntry out{std::move(e), {}};
  out.boundaries["zero"] = std::vector<Elem>(out.ext.kernel_algebra.order(), 0);
  return out;
}

inline ActionTable inversion_action(FiniteAlgebra const &a, std::size_t g_order,
                                    std::size_t period) {
  ActionTable act(g_order, std::vector<Elem>(a.order()));
  for (Elem g = 0; g < g_order; ++g)
    for (Elem x = 0; x < a.order(); ++x)
      act[g][x] = (g % period) ? a.inv(x) : x;
  return act;
}

} // namespace detail

/// The loop M8 as V ⋊ Z₂: kernel V = {1,-1,j,-j}, section 1 ↦ i.
inline SplitExtension m8_as_v_rtimes_z2() {
  FiniteAlgebra m8 = hyperbolic_quaternion_loop();
  Subobject v(m8.order(), {0, 1, 4, 5});
  auto [z2, p] = quotient(m8, denormalize(m8, v));
  Subalgebra va = subalgebra(m8, v);
  std::vector<Elem> s = {0, 2};
  return make_split_extension(m8, z2, va.algebra, p.map(), s, va.inclusion.map());
}

inline std::vector<std::string> extension_names() {
  return {"a3_rtimes_s3_conj",   "conj_s3_a3",           "z4_rtimes_z2_inversion",
          "z4_rtimes_z4_inversion_via_quotient",          "z3_rtimes_z2_inversion",
          "z3_times_z2_trivial", "m8_as_V_rtimes_Z2"};
}

inline ExtensionEntry extension(std::string const &name) {
  if (name == "a3_rtimes_s3_conj") {
    FiniteAlgebra s3 = symmetric(3);
    Subobject a3 = normal_closure(s3, std::vector<Elem>{*s3.find("(123)")});
    Subalgebra sa = subalgebra(s3, a3);
    ActionTable act(s3.order(), std::vector<Elem>(sa.algebra.order()));
    for (Elem g = 0; g < s3.order(); ++g)
      for (Elem a = 0; a < sa.algebra.order(); ++a) {
        Elem c = s3.mul(s3.mul(g, sa.inclusion(a)), s3.inv(g));
        act[g][a] = static_cast<Elem>(std::find(sa.inclusion.map().begin(),
                                                sa.inclusion.map().end(), c) -
                                      sa.inclusion.map().begin());
      }
    auto e = detail::with_zero(build_semidirect_group(sa.algebra, s3, act));
    e.boundaries["inclusion"] = sa.inclusion.map();
    return e;
  }
  if (name == "conj_s3_a3") {
    FiniteAlgebra s3 = symmetric(3);
    Subobject a3 = normal_closure(s3, std::vector<Elem>{*s3.find("(123)")});
    auto e = detail::with_zero(conjugation_extension(s3, a3));
    e.boundaries["inclusion"] = subalgebra(s3, a3).inclusion.map();
    return e;
  }
  if (name == "z4_rtimes_z2_inversion") {
    FiniteAlgebra z4 = cyclic(4), z2 = cyclic(2);
    auto e = detail::with_zero(build_semidirect_group(z4, z2, detail::inversion_action(z4, 2, 2)));
    e.boundaries["reduction"] = {0, 1, 0, 1};
    return e;
  }
  if (name == "z4_rtimes_z4_inversion_via_quotient") {
    FiniteAlgebra z4 = cyclic(4);
    auto e = detail::with_zero(build_semidirect_group(z4, z4, detail::inversion_action(z4, 4, 2)));
    e.boundaries["inclusion"] = {0, 1, 2, 3};
    e.boundaries["double"] = {0, 2, 0, 2};
    return e;
  }
  if (name == "z3_rtimes_z2_inversion") {
    FiniteAlgebra z3 = cyclic(3), z2 = cyclic(2);
    return detail::with_zero(build_semidirect_group(z3, z2, detail::inversion_action(z3, 2, 2)));
  }
  if (name == "z3_times_z2_trivial") {
    FiniteAlgebra z3 = cyclic(3), z2 = cyclic(2);
    return detail::with_zero(build_semidirect_group(z3, z2, detail::inversion_action(z3, 2, 1 << 20)));
  }
  if (name == "m8_as_V_rtimes_Z2")
    return detail::with_zero(m8_as_v_rtimes_z2());
  throw UnknownEntry(name);
}

inline std::vector<std::string> square_names() {
  return {"z2xz2_projections", "s3_sign", "m8_parity"};
}

inline DoubleExtensionSquare square(std::string const &name) {
  if (name == "z2xz2_projections") {
    FiniteAlgebra z2 = cyclic(2), x = direct_product(z2, z2), z = trivial();
    return {x,
            z2,
            z2,
            z,
            hom_check(x, z2, {0, 0, 1, 1}),
            hom_check(x, z2, {0, 1, 0, 1}),
            zero_hom(z2, z),
            zero_hom(z2, z)};
  }
  auto parity = [](FiniteAlgebra const &x, Subobject const &n) {
    auto [q, p] = quotient(x, denormalize(x, n));
    return DoubleExtensionSquare{x, q, q, q, p, p, identity_hom(q), identity_hom(q)};
  };
  if (name == "s3_sign") {
    FiniteAlgebra s3 = symmetric(3);
    return parity(s3, normal_closure(s3, std::vector<Elem>{*s3.find("(123)")}));
  }
  if (name == "m8_parity") {
    FiniteAlgebra m8 = hyperbolic_quaternion_loop();
    return parity(m8, Subobject(m8.order(), {0, 1, 4, 5}));
  }
  throw UnknownEntry(name);
}

} // namespace commcalc::catalog

#endif
