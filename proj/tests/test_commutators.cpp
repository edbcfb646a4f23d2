#include <gtest/gtest.h>

#include "commcalc/catalog.hpp"
#include "commcalc/commutators.hpp"
#include "commcalc/lower_bound.hpp"
#include "oracles.hpp"

using namespace commcalc;

namespace {

Elem el(FiniteAlgebra const &x, std::string const &name) {
  auto e = x.find(name);
  if (!e)
    throw std::runtime_error("no element " + name);
  return *e;
}

Subobject gen(FiniteAlgebra const &x, std::vector<std::string> const &names) {
  std::vector<Elem> seeds;
  for (auto const &n : names)
    seeds.push_back(el(x, n));
  return classify_normality(x, subobject_generate(x, seeds));
}

Subobject set_of(FiniteAlgebra const &x, std::vector<std::string> const &names) {
  std::vector<Elem> es;
  for (auto const &n : names)
    es.push_back(el(x, n));
  return Subobject(x.order(), es);
}

struct Fixture {
  FiniteAlgebra s3 = catalog::symmetric(3);
  FiniteAlgebra m8 = catalog::hyperbolic_quaternion_loop();
  Subobject a3 = gen(s3, {"(123)"});
  Subobject s3_all = Subobject::whole(6);
  Subobject a = gen(m8, {"j", "-1"});
  Subobject m8_all = Subobject::whole(8);
};

std::vector<std::pair<std::string, FiniteAlgebra>> small_corpus(std::size_t max_order) {
  std::vector<std::pair<std::string, FiniteAlgebra>> out;
  for (auto &e : catalog::group_corpus())
    if (e.second.order() <= max_order)
      out.push_back(e);
  for (auto &e : catalog::loop_corpus())
    if (e.second.order() <= max_order)
      out.push_back(e);
  return out;
}

} // namespace

TEST(Higgins, Examples) {
  Fixture f;
  EXPECT_TRUE(higgins_binary(f.s3, f.a3, f.a3).is_trivial());
  EXPECT_EQ(higgins_binary(f.s3, f.a3, f.s3_all), f.a3);
  EXPECT_EQ(f.a.size(), 4u);
  EXPECT_TRUE(higgins_binary(f.m8, f.a, f.a).is_trivial());
}

TEST(Higgins, MatchesClassicalCommutatorSubgroup) {
  std::size_t pairs = 0;
  for (auto const &[name, x] : catalog::group_corpus()) {
    if (x.order() > 12)
      continue;
    auto ns = normal_subobjects(x);
    for (auto const &k : ns)
      for (auto const &l : ns) {
        EXPECT_EQ(higgins_binary(x, k, l).elements(),
                  oracle::commutator_subgroup(x, k.elements(), l.elements()))
            << name;
        ++pairs;
      }
  }
  EXPECT_GT(pairs, 100u);
}

TEST(Higgins, NonNormalInputsStillGiveTheClassicalSubgroup) {
  Fixture f;
  Subobject t = gen(f.s3, {"(12)"});
  EXPECT_EQ(higgins_binary(f.s3, t, f.a3).elements(),
            oracle::commutator_subgroup(f.s3, t.elements(), f.a3.elements()));
  EXPECT_EQ(higgins_binary(f.s3, t, t).elements(), std::vector<Elem>{0});
}

TEST(Cooperator, Examples) {
  Fixture f;
  EXPECT_TRUE(cooperator_check(f.m8, f.a, f.a).ok);
  auto bad = cooperator_check(f.s3, f.a3, f.s3_all);
  EXPECT_FALSE(bad.ok);
  EXPECT_FALSE(bad.witness.empty());
  EXPECT_NE(bad.defect, 0u);
  EXPECT_TRUE(cooperator_check(f.s3, Subobject::trivial(6), f.s3_all).ok);
}

TEST(Huq, Examples) {
  Fixture f;
  EXPECT_EQ(huq_commutator(f.s3, f.a3, f.s3_all), f.a3);
  EXPECT_TRUE(huq_commutator(f.s3, Subobject::trivial(6), f.s3_all).is_trivial());
  EXPECT_TRUE(huq_commutator(f.m8, f.a, f.a).is_trivial());
}

TEST(Huq, IsTheNormalClosureOfHiggins) {
  for (auto const &[name, x] : small_corpus(12)) {
    auto ns = normal_subobjects(x);
    for (auto const &k : ns)
      for (auto const &l : ns)
        EXPECT_EQ(huq_commutator(x, k, l), normal_closure(x, higgins_binary(x, k, l))) << name;
  }
}

TEST(Huq, QuotientCooperates) {
  Fixture f;
  Subobject t = gen(f.s3, {"(12)"});
  Subobject n = huq_commutator(f.s3, t, f.a3);
  auto [q, p] = quotient(f.s3, denormalize(f.s3, n));
  EXPECT_TRUE(cooperator_check(q, hom_image_kernel(p, t).image, hom_image_kernel(p, f.a3).image).ok);
}

TEST(Smith, Examples) {
  Fixture f;
  Congruence ra3 = denormalize(f.s3, f.a3);
  auto r = smith_commutator(f.s3, ra3, ra3);
  EXPECT_TRUE(r.commutator.is_discrete());
  ASSERT_TRUE(r.connector.has_value());
  EXPECT_TRUE(validate_connector(f.s3, ra3, ra3, *r.connector));

  Congruence ra = denormalize(f.m8, f.a);
  auto m = smith_commutator(f.m8, ra, ra);
  EXPECT_FALSE(m.commutator.is_discrete());
  EXPECT_TRUE(m.commutator.related(0, el(f.m8, "-1")));
  EXPECT_FALSE(m.connector.has_value());

  Congruence delta = Congruence::discrete(6);
  auto d = smith_commutator(f.s3, delta, Congruence::total(6));
  EXPECT_TRUE(d.commutator.is_discrete());
  ASSERT_TRUE(d.connector.has_value());
  for (std::size_t i = 0; i < d.connector->domain.size(); ++i)
    EXPECT_EQ(d.connector->values[i], d.connector->domain[i][2]);
}

TEST(Smith, MatchesTheConnectorOracle) {
  for (auto const &[name, x] : small_corpus(8)) {
    auto cs = oracle::congruences(x);
    for (auto const &al : cs)
      for (auto const &be : cs) {
        auto got = smith_commutator(x, Congruence(al), Congruence(be));
        EXPECT_EQ(got.commutator.class_vector(), oracle::smith_commutator(x, al, be)) << name;
      }
  }
}

TEST(Smith, TamperedConnectorIsRejected) {
  Fixture f;
  Congruence ra3 = denormalize(f.s3, f.a3);
  auto r = smith_commutator(f.s3, ra3, ra3);
  ASSERT_TRUE(r.connector.has_value());
  auto w = *r.connector;
  ASSERT_FALSE(w.values.empty());
  for (std::size_t i = 0; i < w.values.size(); ++i)
    if (w.domain[i][0] != w.domain[i][1] && w.domain[i][1] != w.domain[i][2]) {
      w.values[i] = static_cast<Elem>((w.values[i] + 1) % 6);
      break;
    }
  EXPECT_FALSE(validate_connector(f.s3, ra3, ra3, w));
  auto shrunk = *r.connector;
  shrunk.domain.pop_back();
  shrunk.values.pop_back();
  EXPECT_FALSE(validate_connector(f.s3, ra3, ra3, shrunk));
}

TEST(SmithNormalization, Examples) {
  Fixture f;
  EXPECT_EQ(smith_normalization(f.m8, f.a, f.a), set_of(f.m8, {"1", "-1"}));
  EXPECT_TRUE(smith_normalization(f.s3, f.a3, f.a3).is_trivial());
  EXPECT_TRUE(smith_normalization(f.s3, f.a3, Subobject::trivial(6)).is_trivial());
  EXPECT_EQ(smith_normalization(f.m8, f.a, f.a).normality(), Normality::Normal);
  EXPECT_THROW(smith_normalization(f.s3, gen(f.s3, {"(12)"}), f.a3), NotNormal);
}

TEST(TernaryObstruction, Examples) {
  Fixture f;
  Subobject t = ternary_obstruction(f.m8, f.a, f.a);
  EXPECT_TRUE(t.contains(el(f.m8, "-1")));
  EXPECT_TRUE(ternary_obstruction(f.s3, f.a3, f.a3).is_trivial());
  EXPECT_TRUE(ternary_obstruction(f.m8, f.a, Subobject::trivial(8)).is_trivial());
  try {
    ternary_obstruction(f.s3, f.a3, f.s3_all);
    FAIL() << "expected PreconditionFailed";
  } catch (PreconditionFailed const &e) {
    EXPECT_NE(std::string(e.what()).find("nonzero"), std::string::npos);
  }
}

TEST(TernaryGroupExact, Examples) {
  Fixture f;
  EXPECT_TRUE(ternary_group_exact(f.s3, f.a3, f.a3, f.s3_all).is_trivial());
  FiniteAlgebra d4 = catalog::dihedral(4);
  Subobject all = Subobject::whole(8);
  EXPECT_TRUE(ternary_group_exact(d4, all, all, all).is_trivial());
  EXPECT_TRUE(ternary_group_exact(f.s3, f.s3_all, f.s3_all, Subobject::trivial(6)).is_trivial());
  // S3 is not nilpotent: its lower central series stalls at A3.
  EXPECT_EQ(ternary_group_exact(f.s3, f.s3_all, f.s3_all, f.s3_all), f.a3);
  EXPECT_THROW(ternary_group_exact(f.m8, f.a, f.a, f.m8_all), WrongKind);
}

TEST(Associator, Examples) {
  Fixture f;
  EXPECT_EQ(associator(f.m8, el(f.m8, "j"), el(f.m8, "j"), el(f.m8, "i")), el(f.m8, "-1"));
  EXPECT_TRUE(associator_subobject(f.m8, f.a, f.a, f.m8_all).contains(el(f.m8, "-1")));
  EXPECT_TRUE(associator_subobject(f.m8, Subobject::trivial(8), f.a, f.m8_all).is_trivial());
  FiniteAlgebra lq = as_loop(catalog::quaternion8());
  Subobject all = Subobject::whole(8);
  EXPECT_TRUE(associator_subobject(lq, all, all, all).is_trivial());
  EXPECT_THROW(associator_subobject(f.s3, f.a3, f.a3, f.s3_all), WrongKind);
}

TEST(LowerBound, Examples) {
  Fixture f;
  EXPECT_TRUE(ternary_lower_bound(f.s3, f.a3, f.a3, f.s3_all, 0).result.is_trivial());
  auto r = ternary_lower_bound(f.s3, f.a3, f.a3, f.s3_all, 6);
  EXPECT_EQ(r.result, ternary_group_exact(f.s3, f.a3, f.a3, f.s3_all));
  EXPECT_EQ(r.exactness, Exactness::Exact);
  auto full = ternary_lower_bound(f.s3, f.s3_all, f.s3_all, f.s3_all, 6);
  EXPECT_EQ(full.result, f.a3);
  EXPECT_TRUE(verify_witnesses(full));

  auto m = ternary_lower_bound(f.m8, f.a, f.a, f.m8_all, 3);
  EXPECT_TRUE(m.result.contains(el(f.m8, "-1")));
  EXPECT_EQ(m.exactness, Exactness::LowerBound);
  EXPECT_TRUE(verify_witnesses(m));
  bool has_term = false;
  for (auto const &w : m.witnesses)
    has_term = has_term || (w.value == el(f.m8, "-1") && !w.term.empty());
  EXPECT_TRUE(has_term);
}

TEST(LowerBound, MonotoneInDepth) {
  Fixture f;
  FiniteAlgebra d4 = catalog::dihedral(4);
  Subobject all = Subobject::whole(8);
  Subobject prev = Subobject::trivial(8);
  for (std::size_t d = 0; d <= 5; ++d) {
    Subobject cur = ternary_lower_bound(d4, all, all, all, d).result;
    EXPECT_TRUE(prev.subset_of(cur)) << d;
    prev = cur;
  }
  Subobject lp = Subobject::trivial(8);
  for (std::size_t d = 0; d <= 3; ++d) {
    Subobject cur = ternary_lower_bound(f.m8, f.a, f.a, f.m8_all, d).result;
    EXPECT_TRUE(lp.subset_of(cur)) << d;
    lp = cur;
  }
}

TEST(LowerBound, SitsBetweenAssociatorAndSmithBound) {
  Fixture f;
  for (auto const &[name, x] : catalog::loop_corpus()) {
    if (x.is_associative())
      continue;
    auto ns = normal_subobjects(x);
    Subobject all = Subobject::whole(x.order());
    for (auto const &k : ns)
      for (auto const &l : ns) {
        Subobject lb = ternary_lower_bound(x, k, l, all, 3).result;
        EXPECT_TRUE(associator_subobject(x, k, l, all).subset_of(lb)) << name;
        // [K,L,X] lies under the Smith normalization, so the lower bound does too.
        EXPECT_TRUE(lb.subset_of(smith_normalization(x, k, l))) << name;
      }
  }
}

TEST(CommutatorRules, BinaryRulesOnCorpus) {
  for (auto const &[name, x] : small_corpus(16)) {
    auto ns = normal_subobjects(x);
    Subobject unit = Subobject::trivial(x.order());
    std::vector<std::vector<Subobject>> comm(ns.size(), std::vector<Subobject>(ns.size()));
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = 0; j < ns.size(); ++j)
        comm[i][j] = higgins_binary(x, ns[i], ns[j]);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      EXPECT_TRUE(higgins_binary(x, ns[i], unit).is_trivial()) << name;
      for (std::size_t j = 0; j < ns.size(); ++j) {
        EXPECT_EQ(comm[i][j], comm[j][i]) << name;
        for (std::size_t m = 0; m < ns.size(); ++m)
          if (ns[m].subset_of(ns[i])) {
            EXPECT_TRUE(comm[m][j].subset_of(comm[i][j])) << name;
          }
        if (join(x, ns[i], ns[j]).is_whole()) {
          EXPECT_TRUE(is_normal(x, comm[i][j])) << name;
        }
      }
    }
  }
}

TEST(CommutatorRules, ImagesUnderQuotients) {
  for (auto const &[name, x] : small_corpus(12)) {
    auto ns = normal_subobjects(x);
    for (auto const &n : ns) {
      auto [q, p] = quotient(x, denormalize(x, n));
      for (auto const &k : ns)
        for (auto const &l : ns) {
          Subobject lhs = hom_image_kernel(p, higgins_binary(x, k, l)).image;
          Subobject rhs = higgins_binary(q, hom_image_kernel(p, k).image, hom_image_kernel(p, l).image);
          EXPECT_EQ(lhs, rhs) << name;
        }
    }
  }
}

TEST(CommutatorRules, GroupTernarySymmetryAndMonotonicity) {
  for (auto const &[name, x] : catalog::group_corpus()) {
    if (x.order() > 12)
      continue;
    auto ns = normal_subobjects(x);
    for (auto const &k : ns)
      for (auto const &l : ns)
        for (auto const &m : ns) {
          Subobject t = ternary_group_exact(x, k, l, m);
          EXPECT_EQ(t, ternary_group_exact(x, l, m, k)) << name;
          EXPECT_EQ(t, ternary_group_exact(x, l, k, m)) << name;
          EXPECT_TRUE(ternary_group_exact(x, meet(x, k, l), l, m).subset_of(t)) << name;
        }
  }
}

TEST(GroupIdentities, SmithTheoremAndJoinRule) {
  for (auto const &[name, x] : catalog::group_corpus()) {
    if (x.order() > 12)
      continue;
    auto ns = normal_subobjects(x);
    Subobject all = Subobject::whole(x.order());
    for (auto const &k : ns)
      for (auto const &l : ns) {
        Subobject h = higgins_binary(x, k, l);
        EXPECT_EQ(smith_normalization(x, k, l), join(x, ternary_group_exact(x, k, l, all), h))
            << name;
        EXPECT_TRUE(normal_closure(x, h).subset_of(smith_normalization(x, k, l))) << name;
        for (auto const &m : ns) {
          Subobject rhs = join(x, join(x, ternary_group_exact(x, k, l, m), h),
                               higgins_binary(x, k, m));
          EXPECT_EQ(higgins_binary(x, k, join(x, l, m)), rhs) << name;
        }
      }
  }
}

TEST(SmithIsHuq, ConnectorIffBothCommutatorsVanish) {
  for (auto const &[name, x] : small_corpus(16)) {
    auto ns = normal_subobjects(x);
    for (auto const &k : ns)
      for (auto const &l : ns) {
        Congruence rk = denormalize(x, k), rl = denormalize(x, l);
        auto s = smith_commutator(x, rk, rl);
        bool vanish = higgins_binary(x, k, l).is_trivial() && ternary_obstruction(x, k, l).is_trivial();
        EXPECT_EQ(s.connector.has_value(), vanish) << name;
        if (s.connector) {
          EXPECT_TRUE(validate_connector(x, rk, rl, *s.connector)) << name;
        }
      }
  }
}

TEST(SmithIsHuq, JoinCoveringPairsHaveNoObstruction) {
  for (auto const &[name, x] : small_corpus(16)) {
    auto ns = normal_subobjects(x);
    for (auto const &k : ns)
      for (auto const &l : ns)
        if (join(x, k, l).is_whole() && higgins_binary(x, k, l).is_trivial()) {
          EXPECT_TRUE(ternary_obstruction(x, k, l).is_trivial()) << name;
        }
  }
}

TEST(ShCheck, Examples) {
  Fixture f;
  auto m = sh_check(f.m8);
  ASSERT_FALSE(m.violations.empty());
  bool found = false;
  for (auto const &v : m.violations)
    if (v.k == f.a && v.l == f.a) {
      found = true;
      EXPECT_TRUE(v.obstruction.contains(el(f.m8, "-1")));
    }
  EXPECT_TRUE(found);
  EXPECT_TRUE(sh_check(f.s3).violations.empty());
  EXPECT_TRUE(sh_check(catalog::cyclic(12)).violations.empty());
  auto q = sh_check(catalog::quaternion8());
  EXPECT_TRUE(q.violations.empty());
  EXPECT_EQ(q.normal_subobjects.size(), 6u);
  EXPECT_EQ(q.pairs_checked, 21u);
}
