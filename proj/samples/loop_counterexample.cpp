// Walks through the order-8 loop in which Huq-commuting normal subloops fail
// to Smith-commute. Exits nonzero if any step disagrees with the expected
// outcome, so it doubles as a smoke test.
#include <iostream>

#include "commcalc/commcalc.hpp"

using namespace commcalc;

namespace {

std::string show(FiniteAlgebra const &x, Subobject const &s) {
  std::string out = "{";
  for (Elem e : s.elements())
    out += (out.size() > 1 ? ", " : "") + x.name(e);
  return out + "}";
}

} // namespace

int main() {
  FiniteAlgebra m8 = catalog::hyperbolic_quaternion_loop();
  auto at = [&](char const *n) { return *m8.find(n); };

  Subobject a = classify_normality(m8, subobject_generate(m8, std::vector<Elem>{at("j"), at("-1")}));
  Subobject all = Subobject::whole(m8.order());
  std::cout << "A = " << show(m8, a) << ", normal: " << (a.normality() == Normality::Normal) << "\n";

  Subobject binary = higgins_binary(m8, a, a);
  std::cout << "[A, A] = " << show(m8, binary) << "\n";

  Congruence ra = denormalize(m8, a);
  SmithResult smith = smith_commutator(m8, ra, ra);
  std::cout << "[R_A, R_A] has " << smith.commutator.num_classes() << " classes, connector: "
            << smith.connector.has_value() << "\n";

  Subobject ternary = ternary_obstruction(m8, a, a);
  std::cout << "[A, A, X] = " << show(m8, ternary) << "\n";

  Elem assoc = associator(m8, at("j"), at("j"), at("i"));
  std::cout << "associator(j, j, i) = " << m8.name(assoc) << "\n";

  CommutatorReport lb = ternary_lower_bound(m8, a, a, all, 3);
  for (auto const &w : lb.witnesses)
    if (!w.term.empty())
      std::cout << "witness term " << w.term << " = " << m8.name(w.value) << "\n";

  ShReport sh = sh_check(m8);
  std::cout << "Smith-is-Huq violations among " << sh.pairs_checked
            << " normal pairs: " << sh.violations.size() << "\n";

  bool ok = binary.is_trivial() && !smith.connector && ternary.contains(at("-1")) &&
            assoc == at("-1") && !sh.violations.empty();
  std::cout << (ok ? "counterexample reproduced" : "unexpected result") << "\n";
  return ok ? 0 : 1;
}
