#ifndef COMMCALC_REPORT_HPP
#define COMMCALC_REPORT_HPP

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "commutators.hpp"
#include "structures.hpp"

// JSON encodings of library results. Text output is rendered from the JSON
// document, so both formats carry the same content.
namespace commcalc::report {

using nlohmann::ordered_json;
using Json = ordered_json;

constexpr int version = 1;

inline Json names(FiniteAlgebra const &x, std::vector<Elem> const &elems) {
  Json out = Json::array();
  for (Elem e : elems)
    out.push_back(x.name(e));
  return out;
}

inline Json subobject(FiniteAlgebra const &x, Subobject const &s) {
  return names(x, s.elements());
}

inline Json congruence(FiniteAlgebra const &x, Congruence const &c) {
  std::vector<std::vector<Elem>> classes(x.order());
  for (Elem v = 0; v < x.order(); ++v)
    classes[c.class_of(v)].push_back(v);
  Json out = Json::array();
  for (auto const &cl : classes)
    if (!cl.empty())
      out.push_back(names(x, cl));
  return out;
}

inline Json commutator(FiniteAlgebra const &x, CommutatorReport const &r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["result"] = subobject(x, r.result);
  j["exactness"] = to_string(r.exactness);
  j["truncated"] = r.truncated;
  Json ws = Json::array();
  for (auto const &w : r.witnesses) {
    Json wj;
    wj["value"] = x.name(w.value);
    if (!w.term.empty())
      wj["term"] = w.term;
    if (!w.assignment.empty())
      wj["assignment"] = names(x, w.assignment);
    ws.push_back(wj);
  }
  j["witnesses"] = ws;
  j["notes"] = r.notes;
  return j;
}

inline Json smith(FiniteAlgebra const &x, SmithResult const &r) {
  Json j;
  j["commutator"] = congruence(x, r.commutator);
  j["discrete"] = r.commutator.is_discrete();
  j["connector"] = r.connector.has_value();
  if (r.connector)
    j["connector_domain_size"] = r.connector->domain.size();
  return j;
}

inline Json sh(FiniteAlgebra const &x, ShReport const &r) {
  Json j;
  j["normal_subobjects"] = r.normal_subobjects.size();
  j["pairs_checked"] = r.pairs_checked;
  j["huq_commuting"] = r.huq_commuting;
  Json vs = Json::array();
  for (auto const &v : r.violations) {
    Json vj;
    vj["k"] = subobject(x, v.k);
    vj["l"] = subobject(x, v.l);
    vj["obstruction"] = subobject(x, v.obstruction);
    for (Elem e : v.obstruction.elements())
      if (e != 0) {
        vj["witness"] = x.name(e);
        break;
      }
    vs.push_back(vj);
  }
  j["violations"] = vs;
  j["sh_holds"] = r.violations.empty();
  return j;
}

inline Json category(FiniteAlgebra const &x, InternalCategoryReport const &r) {
  Json j;
  j["internal_category"] = r.internal_category;
  j["binary"] = subobject(x, r.binary);
  j["ternary"] = r.ternary ? subobject(x, *r.ternary) : Json(nullptr);
  j["smith_route"] = r.smith_route;
  j["group_route"] = r.group_route ? Json(*r.group_route) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

inline Json xmod(XModReport const &r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  if (r.star) {
    auto const &x = r.graph->edges;
    Json s;
    s["star_multiplicative"] = r.star->star_multiplicative;
    s["kernel_d"] = subobject(x, r.star->kernel_d);
    s["kernel_c"] = subobject(x, r.star->kernel_c);
    s["commutator"] = subobject(x, r.star->commutator);
    if (!r.star->cooperator.ok) {
      s["failing_operation"] = r.star->cooperator.op;
      s["witness"] = names(x, r.star->cooperator.witness);
      s["defect"] = x.name(r.star->cooperator.defect);
    }
    j["peiffer"] = s;
  }
  if (r.category)
    j["category"] = category(r.graph->edges, *r.category);
  return j;
}

inline Json beck(BeckReport const &r) {
  Json j;
  j["module"] = r.module;
  j["kernel_abelian"] = r.kernel_abelian;
  j["smith_trivial"] = r.smith_trivial;
  j["zero_boundary_verdict"] = to_string(r.zero_boundary);
  j["notes"] = r.notes;
  return j;
}

inline Json double_central(FiniteAlgebra const &x, DoubleCentralReport const &r) {
  Json j;
  j["central"] = r.central;
  j["kernel_c"] = subobject(x, r.kernel_c);
  j["kernel_d"] = subobject(x, r.kernel_d);
  j["binary"] = subobject(x, r.binary);
  j["meet_commutator"] = subobject(x, r.meet_commutator);
  j["ternary"] = r.ternary ? subobject(x, *r.ternary) : Json(nullptr);
  j["smith_route"] = r.smith_route;
  return j;
}

inline Json info(FiniteAlgebra const &x) {
  Json j;
  j["kind"] = x.kind() == Kind::Group ? "group" : "loop";
  j["order"] = x.order();
  j["elements"] = x.names();
  j["associative"] = x.is_associative();
  j["commutative"] = x.is_commutative();
  Json ns = Json::array();
  for (auto const &n : normal_subobjects(x))
    ns.push_back(subobject(x, n));
  j["normal_subobjects"] = ns;
  return j;
}

inline Json error(Error const &e) {
  Json j;
  j["code"] = e.code();
  j["message"] = e.what();
  return j;
}

// ---------------------------------------------------------------------------
// Text rendering

namespace detail {

inline bool is_scalar(Json const &j) { return !j.is_object() && !j.is_array(); }

inline std::string scalar(Json const &j) {
  if (j.is_string())
    return j.get<std::string>();
  if (j.is_null())
    return "-";
  return j.dump();
}

inline bool flat(Json const &j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](Json const &e) {
           return is_scalar(e) || (e.is_array() && std::all_of(e.begin(), e.end(), is_scalar));
         });
}

inline std::string inline_list(Json const &j) {
  if (j.empty())
    return "[]";
  std::string out = "{";
  bool first = true;
  for (auto const &e : j) {
    out += first ? "" : ", ";
    out += e.is_array() ? inline_list(e) : scalar(e);
    first = false;
  }
  return out + "}";
}

inline void render(std::ostringstream &os, Json const &j, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (auto const &[k, v] : j.items()) {
      if (is_scalar(v))
        os << pad << k << ": " << scalar(v) << "\n";
      else if (flat(v))
        os << pad << k << ": " << inline_list(v) << "\n";
      else {
        os << pad << k << ":\n";
        render(os, v, indent + 1);
      }
    }
  } else if (j.is_array()) {
    for (auto const &e : j) {
      if (is_scalar(e) || flat(e)) {
        os << pad << "- " << (e.is_array() ? inline_list(e) : scalar(e)) << "\n";
      } else {
        os << pad << "-\n";
        render(os, e, indent + 1);
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

} // namespace detail

inline std::string render_text(Json const &j) {
  std::ostringstream os;
  detail::render(os, j, 0);
  return os.str();
}

} // namespace commcalc::report

#endif
