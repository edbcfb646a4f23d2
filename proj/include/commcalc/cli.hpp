#ifndef COMMCALC_CLI_HPP
#define COMMCALC_CLI_HPP

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commcalc.hpp"
#include "io.hpp"
#include "report.hpp"

namespace commcalc::cli {

enum ExitCode : int { Success = 0, DomainError = 1, UsageError = 2 };

/// Splits "a,(b,c),d" on commas outside parentheses.
inline std::vector<std::string> split_generators(std::string const &list) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : list) {
    if (ch == '(')
      ++depth;
    else if (ch == ')')
      --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ' || depth > 0) {
      cur += ch;
    }
  }
  if (!cur.empty())
    out.push_back(cur);
  return out;
}

inline std::vector<Elem> lookup_elements(FiniteAlgebra const &x, std::string const &list) {
  std::vector<Elem> out;
  for (auto const &name : split_generators(list)) {
    auto e = x.find(name);
    if (!e)
      throw BadParams("algebra has no element named '" + name + "'");
    out.push_back(*e);
  }
  return out;
}

namespace detail {

using report::Json;

struct Options {
  std::string algebra, k, l, m, kind = "higgins", extension, boundary, boundary_map, square;
  std::size_t depth = 6;
  std::string format = "json";
  bool timing = false;
};

/// Generated subobject, promoted to its normal closure when needed. Each
/// promotion is recorded in the report.
inline Subobject generated(FiniteAlgebra const &x, std::string const &list, char const *which,
                           bool promote, Json &report) {
  std::vector<Elem> gens = lookup_elements(x, list);
  Subobject s = subobject_generate(x, gens);
  report["inputs"][which] = report::names(x, gens);
  if (!promote)
    return s;
  Subobject n = classify_normality(x, s);
  if (n.normality() == Normality::Normal)
    return n;
  Subobject c = normal_closure(x, gens);
  Json p;
  p["which"] = which;
  p["generated"] = report::subobject(x, s);
  p["normal_closure"] = report::subobject(x, c);
  report["promotions"].push_back(p);
  return c;
}

inline Subobject optional_m(FiniteAlgebra const &x, Options const &o, Json &report) {
  if (o.m.empty())
    return Subobject::whole(x.order()).with_normality(Normality::Normal);
  return generated(x, o.m, "m", true, report);
}

inline CommutatorReport exact_report(CommutatorKind kind, std::vector<Subobject> inputs,
                                     Subobject result) {
  CommutatorReport r;
  r.kind = kind;
  r.inputs = std::move(inputs);
  r.witnesses = element_witnesses(result);
  r.result = std::move(result);
  return r;
}

inline void run_commutator(Options const &o, FiniteAlgebra const &x, Json &rep) {
  Subobject k = generated(x, o.k, "k", true, rep);
  Subobject l = generated(x, o.l, "l", true, rep);
  CommutatorReport r;
  if (o.kind == "higgins") {
    r = exact_report(CommutatorKind::HigginsBinary, {k, l}, higgins_binary(x, k, l));
  } else if (o.kind == "huq") {
    r = exact_report(CommutatorKind::Huq, {k, l}, huq_commutator(x, k, l));
  } else if (o.kind == "smith-normal") {
    r = exact_report(CommutatorKind::SmithNormalization, {k, l}, smith_normalization(x, k, l));
  } else if (o.kind == "ternary") {
    r = exact_report(CommutatorKind::TernaryObstruction, {k, l}, ternary_obstruction(x, k, l));
  } else if (o.kind == "ternary-group") {
    Subobject m = optional_m(x, o, rep);
    r = exact_report(CommutatorKind::TernaryGroupExact, {k, l, m}, ternary_group_exact(x, k, l, m));
  } else if (o.kind == "associator") {
    Subobject m = optional_m(x, o, rep);
    r = exact_report(CommutatorKind::Associator, {k, l, m},
                     associator_subobject(x, k, l, m));
  } else {
    Subobject m = optional_m(x, o, rep);
    r = ternary_lower_bound(x, k, l, m, o.depth);
  }
  if (!verify_witnesses(r))
    throw InternalInconsistency("a reported witness is not in the result");
  rep["results"] = report::commutator(x, r);
}

inline void run_smith(Options const &o, FiniteAlgebra const &x, Json &rep) {
  Subobject k = generated(x, o.k, "k", true, rep);
  Subobject l = generated(x, o.l, "l", true, rep);
  SmithResult r = smith_commutator(x, denormalize(x, k), denormalize(x, l));
  rep["results"] = report::smith(x, r);
  rep["results"]["normalization"] = report::subobject(x, normalize(x, r.commutator));
}

inline Homomorphism boundary(Options const &o, catalog::ExtensionEntry const &e, Json &rep) {
  auto const &ka = e.ext.kernel_algebra;
  if (!o.boundary_map.empty()) {
    std::vector<Elem> map;
    try {
      for (auto const &tok : split_generators(o.boundary_map))
        map.push_back(static_cast<Elem>(std::stoul(tok)));
    } catch (std::exception const &) {
      throw BadParams("boundary map must be a comma separated list of indices");
    }
    rep["inputs"]["boundary_map"] = map;
    return hom_check(ka, e.ext.base, map);
  }
  std::string name = o.boundary.empty() ? "zero" : o.boundary;
  auto it = e.boundaries.find(name);
  if (it == e.boundaries.end())
    throw UnknownEntry("boundary " + name);
  rep["inputs"]["boundary"] = name;
  return hom_check(ka, e.ext.base, it->second);
}

inline void run_command(std::string const &cmd, Options const &o, Json &rep) {
  auto alg = [&] {
    rep["inputs"]["algebra"] = o.algebra;
    return io::resolve_algebra(o.algebra);
  };
  if (cmd == "info") {
    FiniteAlgebra x = alg();
    rep["results"] = report::info(x);
  } else if (cmd == "commutator") {
    run_commutator(o, alg(), rep);
  } else if (cmd == "smith") {
    run_smith(o, alg(), rep);
  } else if (cmd == "sh-check") {
    FiniteAlgebra x = alg();
    rep["results"] = report::sh(x, sh_check(x));
  } else if (cmd == "xmod-check" || cmd == "cat-check" || cmd == "beck-check") {
    rep["inputs"]["extension"] = o.extension;
    auto e = io::resolve_extension(o.extension);
    if (cmd == "beck-check") {
      rep["results"] = report::beck(beck_module_check(e.ext));
    } else {
      Homomorphism b = boundary(o, e, rep);
      if (cmd == "xmod-check") {
        rep["results"] = report::xmod(xmod_check(e.ext, b));
      } else {
        ReflexiveGraph g = graph_from_precrossed(e.ext, b);
        rep["results"] = report::category(g.edges, internal_category_check(g));
      }
    }
  } else if (cmd == "dce-check") {
    DoubleExtensionSquare sq = [&] {
      if (!o.square.empty()) {
        rep["inputs"]["square"] = o.square;
        return io::resolve_square(o.square);
      }
      FiniteAlgebra x = alg();
      Subobject k = generated(x, o.k, "k", true, rep);
      Subobject l = generated(x, o.l, "l", true, rep);
      return square_from_normal_pair(x, k, l);
    }();
    rep["results"] = report::double_central(sq.x, double_central_check(sq));
  }
}

} // namespace detail

/// Runs one invocation; `args` excludes the program name. Reports go to
/// `out`, usage diagnostics to `err`.
inline int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err) {
  detail::Options o;
  CLI::App app{"Commutator calculus over finite groups and loops", "commcalc"};
  app.require_subcommand(1);
  auto fmt = [&](CLI::App *sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timing", o.timing, "Include wall-clock time in the report");
  };
  auto algebra = [&](CLI::App *sub, bool required) {
    auto *opt = sub->add_option("--algebra", o.algebra, "Catalog name, file path, or - for stdin");
    if (required)
      opt->required();
  };
  auto pair = [&](CLI::App *sub, bool required) {
    auto *k = sub->add_option("--k", o.k, "Generators of K (element names, comma separated)");
    auto *l = sub->add_option("--l", o.l, "Generators of L");
    if (required) {
      k->required();
      l->required();
    }
  };

  auto *info = app.add_subcommand("info", "Describe an algebra");
  algebra(info, true);
  fmt(info);

  auto *comm = app.add_subcommand("commutator", "Compute a commutator of subobjects");
  algebra(comm, true);
  pair(comm, true);
  comm->add_option("--m", o.m, "Generators of M (defaults to the whole algebra)");
  comm->add_option("--kind", o.kind, "Commutator kind")
      ->check(CLI::IsMember({"higgins", "huq", "smith-normal", "ternary", "ternary-group",
                             "associator", "lower-bound"}));
  comm->add_option("--depth", o.depth, "Word depth for the lower bound")
      ->check(CLI::Range(1, 8));
  fmt(comm);

  auto *smith = app.add_subcommand("smith", "Smith commutator of the congruences of K and L");
  algebra(smith, true);
  pair(smith, true);
  fmt(smith);

  auto *sh = app.add_subcommand("sh-check", "Scan normal pairs for Smith-is-Huq violations");
  algebra(sh, true);
  fmt(sh);

  for (auto const &[name, desc] :
       {std::pair{"xmod-check", "Staged crossed module verdict"},
        std::pair{"cat-check", "Internal category test for the reflexive graph"}}) {
    auto *sub = app.add_subcommand(name, desc);
    sub->add_option("--extension", o.extension, "Catalog extension or extension file")->required();
    auto *b = sub->add_option("--boundary", o.boundary, "Named boundary of the extension");
    sub->add_option("--boundary-map", o.boundary_map, "Boundary as comma separated indices")
        ->excludes(b);
    fmt(sub);
  }

  auto *beck = app.add_subcommand("beck-check", "Beck module test for a split extension");
  beck->add_option("--extension", o.extension, "Catalog extension or extension file")->required();
  fmt(beck);

  auto *dce = app.add_subcommand("dce-check", "Double central extension test");
  auto *sq = dce->add_option("--square", o.square, "Catalog square or square file");
  algebra(dce, false);
  pair(dce, false);
  fmt(dce);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (dce->parsed() && sq->count() == 0 && (o.algebra.empty() || o.k.empty() || o.l.empty()))
      throw CLI::ValidationError("dce-check needs --square or --algebra with --k and --l");
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Success : UsageError;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  report::Json rep;
  rep["report_version"] = report::version;
  rep["command"] = cmd;
  rep["inputs"] = report::Json::object();
  rep["promotions"] = report::Json::array();
  int code = Success;
  auto start = std::chrono::steady_clock::now();
  try {
    detail::run_command(cmd, o, rep);
  } catch (Error const &e) {
    rep.erase("results");
    rep["error"] = report::error(e);
    code = DomainError;
  }
  if (o.timing)
    rep["timing_ms"] = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  if (o.format == "text")
    out << report::render_text(rep);
  else
    out << rep.dump(2) << "\n";
  return code;
}

} // namespace commcalc::cli

#endif
