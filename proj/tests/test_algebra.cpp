#include <gtest/gtest.h>

#include <thread>

#include "commcalc/catalog.hpp"
#include "oracles.hpp"

using namespace commcalc;

namespace {

FiniteAlgebra m8() { return catalog::hyperbolic_quaternion_loop(); }

Elem el(FiniteAlgebra const &x, std::string const &name) {
  auto e = x.find(name);
  EXPECT_TRUE(e.has_value()) << name;
  return e.value_or(0);
}

std::vector<std::string> labels(FiniteAlgebra const &x, Subobject const &s) {
  std::vector<std::string> out;
  for (Elem e : s.elements())
    out.push_back(x.name(e));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

} // namespace

TEST(Validation, HyperbolicQuaternionTableIsALoop) {
  FiniteAlgebra x = m8();
  EXPECT_EQ(x.kind(), Kind::Loop);
  EXPECT_EQ(x.order(), 8u);
  EXPECT_FALSE(x.is_associative());
}

TEST(Validation, Z2IsAGroup) {
  FiniteAlgebra z2 = validate_algebra(Kind::Group, {"0", "1"}, {0, 1, 1, 0});
  EXPECT_EQ(z2.order(), 2u);
  EXPECT_EQ(z2.inv(1), 1u);
}

TEST(Validation, RepeatedRowEntryIsNotAQuasigroup) {
  EXPECT_THROW(validate_algebra(Kind::Loop, {"a", "b", "c"}, {0, 1, 2, 1, 1, 0, 2, 0, 1}),
               NonQuasigroup);
}

TEST(Validation, RejectsBadShapesAndAxioms) {
  EXPECT_THROW(validate_algebra(Kind::Group, {"0", "1"}, {0, 1, 1}), ShapeError);
  EXPECT_THROW(validate_algebra(Kind::Group, {"0", "1"}, {0, 1, 1, 5}), ShapeError);
  // Unit not at index 0.
  EXPECT_THROW(validate_algebra(Kind::Group, {"a", "e"}, {1, 0, 0, 1}), AxiomViolation);
  // A non-associative loop of order 5 declared as a group.
  std::vector<Elem> l5 = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3,
                          3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  EXPECT_NO_THROW(validate_algebra(Kind::Loop, {"e", "a", "b", "c", "d"}, l5));
  EXPECT_THROW(validate_algebra(Kind::Group, {"e", "a", "b", "c", "d"}, l5), AxiomViolation);
  // Wrong inverse table.
  EXPECT_THROW(validate_algebra(Kind::Group, {"0", "1", "2"}, {0, 1, 2, 1, 2, 0, 2, 0, 1},
                                std::vector<Elem>{0, 1, 2}),
               AxiomViolation);
}

TEST(Validation, DerivedDivisionsSatisfyQuasigroupIdentities) {
  for (auto const &[name, x] : catalog::loop_corpus()) {
    for (Elem a = 0; a < x.order(); ++a)
      for (Elem b = 0; b < x.order(); ++b) {
        EXPECT_EQ(x.mul(a, x.ldiv(a, b)), b) << name;
        EXPECT_EQ(x.ldiv(a, x.mul(a, b)), b) << name;
        EXPECT_EQ(x.mul(x.rdiv(a, b), b), a) << name;
        EXPECT_EQ(x.rdiv(x.mul(a, b), b), a) << name;
      }
  }
}

TEST(Validation, SuppliedDivisionTablesAreChecked) {
  FiniteAlgebra x = m8();
  std::vector<Elem> bad = x.ldiv_table();
  std::swap(bad[9], bad[10]);
  EXPECT_THROW(validate_algebra(Kind::Loop, x.names(), x.mul_table(), std::nullopt, bad),
               AxiomViolation);
  EXPECT_NO_THROW(validate_algebra(Kind::Loop, x.names(), x.mul_table(), std::nullopt,
                                   x.ldiv_table(), x.rdiv_table()));
}

TEST(Homomorphisms, SignMapIsValid) {
  FiniteAlgebra s3 = catalog::symmetric(3), z2 = catalog::cyclic(2);
  std::vector<Elem> sign(6);
  for (Elem g = 0; g < 6; ++g)
    sign[g] = s3.name(g).size() == 4 ? 1 : 0; // transpositions print as "(ab)"
  Homomorphism f = hom_check(s3, z2, sign);
  auto ik = hom_image_kernel(f, Subobject::whole(6));
  EXPECT_TRUE(ik.image.is_whole());
  EXPECT_EQ(labels(s3, ik.kernel), sorted({"e", "(123)", "(132)"}));
  Subobject a3 = subobject_generate(s3, std::vector<Elem>{el(s3, "(123)")});
  EXPECT_TRUE(hom_image_kernel(f, a3).image.is_trivial());
}

TEST(Homomorphisms, IdentityAndConstantMaps) {
  FiniteAlgebra d4 = catalog::dihedral(4);
  Homomorphism id = identity_hom(d4);
  Subobject s = subobject_generate(d4, std::vector<Elem>{el(d4, "s")});
  auto ik = hom_image_kernel(id, s);
  EXPECT_EQ(ik.image, s);
  EXPECT_TRUE(ik.kernel.is_trivial());
  EXPECT_THROW(hom_check(d4, d4, std::vector<Elem>(8, 1)), NotHomomorphism);
  EXPECT_THROW(hom_check(d4, d4, std::vector<Elem>(7, 0)), ShapeError);
}

TEST(Subobjects, GenerationExamples) {
  FiniteAlgebra s3 = catalog::symmetric(3);
  EXPECT_EQ(labels(s3, subobject_generate(s3, std::vector<Elem>{el(s3, "(123)")})),
            sorted({"e", "(123)", "(132)"}));
  EXPECT_TRUE(subobject_generate(s3, std::vector<Elem>{}).is_trivial());
  FiniteAlgebra x = m8();
  EXPECT_EQ(labels(x, subobject_generate(x, std::vector<Elem>{el(x, "j"), el(x, "-1")})),
            sorted({"1", "-1", "j", "-j"}));
}

TEST(Subobjects, GenerationIsIdempotentAndMonotone) {
  for (auto const &[name, x] : catalog::group_corpus()) {
    if (x.order() > 12)
      continue;
    for (Elem a = 0; a < x.order(); ++a)
      for (Elem b = 0; b < x.order(); ++b) {
        Subobject sa = subobject_generate(x, std::vector<Elem>{a});
        Subobject sab = subobject_generate(x, std::vector<Elem>{a, b});
        EXPECT_EQ(subobject_generate(x, sa.elements()), sa) << name;
        EXPECT_TRUE(sa.subset_of(sab)) << name;
        EXPECT_EQ(sab.elements(), oracle::group_closure(x, {a, b})) << name;
      }
  }
}

TEST(Congruences, GenerationExamples) {
  FiniteAlgebra s3 = catalog::symmetric(3);
  Congruence c = congruence_generate(s3, {{0, el(s3, "(123)")}});
  EXPECT_EQ(c.num_classes(), 2u);
  EXPECT_TRUE(c.related(el(s3, "(12)"), el(s3, "(13)")));
  EXPECT_TRUE(congruence_generate(s3, std::vector<std::pair<Elem, Elem>>{}).is_discrete());
  FiniteAlgebra x = m8();
  Congruence m = congruence_generate(x, {{0, el(x, "-1")}});
  EXPECT_EQ(m.num_classes(), 4u);
  for (std::string n : {"i", "j", "k"})
    EXPECT_TRUE(m.related(el(x, n), el(x, "-" + n)));
}

TEST(Congruences, GenerationMatchesPartitionOracle) {
  std::vector<FiniteAlgebra> algebras = {catalog::symmetric(3), catalog::dihedral(4),
                                         catalog::quaternion8(), m8(), catalog::resolve("Z2xZ4")};
  for (auto const &x : algebras) {
    auto all = oracle::congruences(x);
    for (Elem a = 0; a < x.order(); ++a)
      for (Elem b = a + 1; b < x.order(); ++b) {
        Congruence c = congruence_generate(x, {{a, b}});
        EXPECT_EQ(c.class_vector(), oracle::generated_congruence(x, {{a, b}}));
      }
    // Normal subobjects are exactly the unit classes of congruences.
    std::set<std::vector<Elem>> units;
    for (auto const &c : all) {
      std::vector<Elem> u;
      for (Elem v = 0; v < x.order(); ++v)
        if (c[v] == 0)
          u.push_back(v);
      units.insert(u);
    }
    std::set<std::vector<Elem>> ours;
    for (auto const &n : normal_subobjects(x))
      ours.insert(n.elements());
    EXPECT_EQ(ours, units);
  }
}

TEST(Normality, NormalSubgroupsMatchSubsetOracle) {
  for (auto const &[name, x] : catalog::group_corpus()) {
    if (x.order() > 12)
      continue;
    std::vector<std::vector<Elem>> ours;
    for (auto const &n : normal_subobjects(x))
      ours.push_back(n.elements());
    std::sort(ours.begin(), ours.end());
    EXPECT_EQ(ours, oracle::normal_subgroups(x)) << name;
  }
}

TEST(Normality, NormalizeDenormalizeExamples) {
  FiniteAlgebra s3 = catalog::symmetric(3);
  Subobject a3 = subobject_generate(s3, std::vector<Elem>{el(s3, "(123)")});
  Congruence ra3 = denormalize(s3, a3);
  EXPECT_EQ(ra3.num_classes(), 2u);
  EXPECT_EQ(normalize(s3, ra3), a3);
  EXPECT_EQ(normalize(s3, ra3).normality(), Normality::Normal);
  EXPECT_TRUE(normalize(s3, Congruence::total(6)).is_whole());
  EXPECT_TRUE(normalize(s3, Congruence::discrete(6)).is_trivial());
  EXPECT_TRUE(denormalize(s3, Subobject::trivial(6)).is_discrete());

  FiniteAlgebra x = m8();
  Subobject a(8, {0, 1, 4, 5});
  Congruence ra = denormalize(x, a);
  EXPECT_EQ(ra.num_classes(), 2u);
  EXPECT_TRUE(is_normal(x, a));
}

TEST(Normality, NormalClosureExamples) {
  FiniteAlgebra s3 = catalog::symmetric(3);
  EXPECT_TRUE(normal_closure(s3, std::vector<Elem>{el(s3, "(12)")}).is_whole());
  EXPECT_TRUE(normal_closure(s3, std::vector<Elem>{0}).is_trivial());
  FiniteAlgebra x = m8();
  Subobject c = normal_closure(x, std::vector<Elem>{el(x, "i")});
  EXPECT_EQ(labels(x, c), sorted({"1", "-1", "i", "-i"}));
  // {1, i} is a subloop but not normal: ij·j = kj = -i.
  Subobject one_i = subobject_generate(x, std::vector<Elem>{el(x, "i")});
  EXPECT_EQ(one_i.size(), 2u);
  EXPECT_FALSE(is_normal(x, one_i));
  EXPECT_EQ(x.mul(x.mul(el(x, "i"), el(x, "j")), el(x, "j")), el(x, "-i"));
}

TEST(Normality, ClosureOperatorLaws) {
  std::vector<std::pair<std::string, FiniteAlgebra>> algebras;
  for (auto const &e : catalog::group_corpus())
    if (e.second.order() <= 12)
      algebras.push_back(e);
  for (auto const &e : catalog::loop_corpus())
    algebras.push_back(e);
  for (auto const &[name, x] : algebras) {
    std::vector<Subobject> subs;
    for (Elem a = 0; a < x.order(); ++a)
      subs.push_back(subobject_generate(x, std::vector<Elem>{a}));
    for (auto const &s : subs) {
      Subobject c = normalize(x, denormalize(x, s));
      EXPECT_TRUE(s.subset_of(c)) << name;
      EXPECT_EQ(normalize(x, denormalize(x, c)), c) << name;
      EXPECT_EQ(c, normal_closure(x, s)) << name;
      for (auto const &t : subs)
        if (s.subset_of(t)) {
          EXPECT_TRUE(c.subset_of(normalize(x, denormalize(x, t)))) << name;
        }
    }
    // Order isomorphism between normal subobjects and congruences.
    for (auto const &n : normal_subobjects(x)) {
      Congruence th = denormalize(x, n);
      EXPECT_EQ(normalize(x, th), n) << name;
      EXPECT_EQ(denormalize(x, normalize(x, th)), th) << name;
    }
  }
}

TEST(Quotients, Examples) {
  FiniteAlgebra s3 = catalog::symmetric(3);
  Subobject a3 = subobject_generate(s3, std::vector<Elem>{el(s3, "(123)")});
  auto q = quotient(s3, denormalize(s3, a3));
  EXPECT_EQ(q.algebra.order(), 2u);
  EXPECT_EQ(hom_image_kernel(q.projection, Subobject::whole(6)).kernel, a3);
  auto same = quotient(s3, Congruence::discrete(6));
  EXPECT_TRUE(find_isomorphism(same.algebra, s3).has_value());
  FiniteAlgebra x = m8();
  auto qm = quotient(x, congruence_generate(x, {{0, el(x, "-1")}}));
  EXPECT_EQ(qm.algebra.order(), 4u);
  EXPECT_EQ(qm.algebra.kind(), Kind::Loop);
}

TEST(Quotients, QuotientsRevalidateAndHaveTheRightKernel) {
  for (auto const &[name, x] : catalog::group_corpus()) {
    if (x.order() > 12)
      continue;
    for (auto const &n : normal_subobjects(x)) {
      auto q = quotient(x, denormalize(x, n));
      EXPECT_EQ(q.algebra.order() * n.size(), x.order()) << name;
      EXPECT_NO_THROW(validate_algebra(q.algebra.kind(), q.algebra.names(), q.algebra.mul_table()));
      EXPECT_NO_THROW(hom_check(x, q.algebra, q.projection.map()));
      EXPECT_EQ(hom_image_kernel(q.projection, Subobject::whole(x.order())).kernel, n) << name;
    }
  }
}

TEST(Products, Examples) {
  FiniteAlgebra z2 = catalog::cyclic(2), z3 = catalog::cyclic(3);
  EXPECT_TRUE(find_isomorphism(direct_product(z2, z2), catalog::klein4()).has_value());
  FiniteAlgebra one = catalog::trivial();
  EXPECT_TRUE(find_isomorphism(direct_product(z3, one), z3).has_value());
  EXPECT_TRUE(find_isomorphism(direct_product(z2, z3), catalog::cyclic(6)).has_value());
  EXPECT_FALSE(find_isomorphism(direct_product(z2, z2), catalog::cyclic(4)).has_value());
  EXPECT_THROW(direct_product(z2, m8()), WrongKind);
}

TEST(Products, ProductViewMatchesMaterializedProduct) {
  FiniteAlgebra s3 = catalog::symmetric(3), z4 = catalog::cyclic(4);
  FiniteAlgebra p = direct_product(s3, z4);
  ProductView v({s3, z4});
  ASSERT_EQ(v.order(), p.order());
  for (Elem a = 0; a < p.order(); ++a) {
    EXPECT_EQ(v.inv(a), p.inv(a));
    for (Elem b = 0; b < p.order(); ++b)
      EXPECT_EQ(v.mul(a, b), p.mul(a, b));
  }
}

TEST(Conversions, AsLoopAndBack) {
  FiniteAlgebra q8 = catalog::quaternion8();
  FiniteAlgebra l = as_loop(q8);
  EXPECT_EQ(l.kind(), Kind::Loop);
  EXPECT_EQ(as_group(l), q8);
  EXPECT_THROW(as_group(m8()), WrongKind);
}

TEST(Concurrency, SharedAlgebrasAreReadOnly) {
  FiniteAlgebra x = catalog::resolve("Z2xD4");
  std::vector<std::size_t> counts(4);
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < counts.size(); ++t)
    workers.emplace_back([&, t] { counts[t] = normal_subobjects(x).size(); });
  for (auto &w : workers)
    w.join();
  for (auto c : counts)
    EXPECT_EQ(c, counts[0]);
}
