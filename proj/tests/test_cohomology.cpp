#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "seclab/seclab.hpp"

using namespace seclab;

namespace {

  ErrorKind kind_of(std::function<void()> const& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvariantViolated;
  }

  PermGroup s3() {
    return group_from_permutations(3, {presets::from_cycles(3, {{0, 1}}),
                                       presets::from_cycles(3, {{0, 1, 2}})});
  }

  std::vector<int> sign_of(FiniteGroup const& g) {
    std::vector<int> s(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
      s[x] = g.element_order(x) == 2 ? -1 : 1;
    }
    return s;
  }

  std::vector<std::vector<Elem>> values_of(std::vector<Cocycle> const& cs) {
    std::vector<std::vector<Elem>> out;
    for (auto const& c : cs) {
      out.push_back(c.values());
    }
    return out;
  }

}  // namespace

TEST(Cocycles, SpecExamples) {
  auto z2 = oracle::cyclic_table(2), z3 = oracle::cyclic_table(3);
  auto triv = GammaGroup::constant(z2, z2);
  EXPECT_EQ(enumerate_cocycles(triv).size(), 2u);
  EXPECT_EQ(h1(triv).size(), 2u);

  auto one = group_from_table(1, {0});
  auto c1  = GammaGroup::constant(one, preset_group("S3"));
  EXPECT_EQ(enumerate_cocycles(c1).size(), 1u);
  EXPECT_EQ(h1(c1).size(), 1u);

  auto inv = oracle::sign_action(z2, {1, -1}, z3);
  EXPECT_EQ(enumerate_cocycles(inv).size(), 3u);
  EXPECT_EQ(h1(inv).size(), 1u);
  EXPECT_EQ(oracle::all_cocycles(*inv).size(), 3u);
  EXPECT_EQ(oracle::class_count(*inv, oracle::all_cocycles(*inv)), 1u);
}

TEST(Cocycles, MatchBruteForceOverCatalog) {
  std::size_t systems = 0;
  for (auto const& p : presets_up_to(6)) {
    auto g = p.build().group;
    for (auto const& entry : action_catalog(g, 6)) {
      auto const& c    = *entry.coeff;
      auto        got  = values_of(enumerate_cocycles(entry.coeff));
      auto        want = oracle::all_cocycles(c);
      std::sort(want.begin(), want.end());
      ASSERT_EQ(got, want) << p.name << " on " << entry.name;
      auto const h = h1(entry.coeff);
      EXPECT_EQ(h.size(), oracle::class_count(c, want)) << p.name << " on " << entry.name;
      std::size_t total = 0;
      for (auto const& cls : h.classes) {
        total += cls.size();
        for (std::size_t i : cls) {
          EXPECT_TRUE(oracle::cohomologous(c, h.cocycles[cls.front()].values(), h.cocycles[i].values()));
        }
      }
      EXPECT_EQ(total, h.cocycles.size());
      ++systems;
    }
  }
  EXPECT_GT(systems, 30u);
}

TEST(InnerPullback, SpecExamples) {
  auto z2 = oracle::cyclic_table(2), z4 = oracle::cyclic_table(4);
  auto triv = GammaGroup::constant(z2, z4);
  for (auto const& a : enumerate_cocycles(triv)) {
    for (Elem g = 0; g < 2; ++g) {
      EXPECT_EQ(inner_pullback(a, g), a);
    }
  }

  auto pg  = s3();
  auto& g  = *pg.group;
  auto  z3 = oracle::cyclic_table(3);
  auto  m  = oracle::sign_action(pg.group, sign_of(g), z3);
  Elem  t  = oracle::elem(pg, 3, {{0, 1}});
  std::size_t nontrivial = 0;
  for (auto const& a : enumerate_cocycles(m)) {
    EXPECT_EQ(inner_pullback(a, g.identity()), a);
    if (a.is_trivial()) {
      continue;
    }
    ++nontrivial;
    auto b = inner_pullback(a, t);
    // b_σ = c a_σ σ(c)^-1 with c = γ^-1(a_γ), written out on Z/3
    Elem const c = m->act(g.inv(t), a(t));
    for (Elem s = 0; s < g.order(); ++s) {
      EXPECT_EQ(b(s), (c + a(s) + 3 - m->act(s, c)) % 3);
    }
    EXPECT_TRUE(oracle::cohomologous(*m, a.values(), b.values()));
  }
  EXPECT_GT(nontrivial, 0u);
}

TEST(InnerPullback, CohomologousOnSmallCatalog) {
  for (auto const& name : {"S3", "D4", "Q8", "C2xC2"}) {
    auto g = preset_group(name);
    for (auto const& entry : action_catalog(g, 6)) {
      for (auto const& a : enumerate_cocycles(entry.coeff)) {
        for (Elem x = 0; x < g->order(); ++x) {
          auto b = inner_pullback(a, x);
          EXPECT_TRUE(oracle::cohomologous(*entry.coeff, a.values(), b.values()));
        }
      }
    }
  }
}

TEST(TwistLift, SpecExamples) {
  auto pg  = s3();
  auto a3  = subgroup_generated(pg.group, {oracle::elem(pg, 3, {{0, 1, 2}})});
  auto ext = extension_from_normal(a3);
  auto secs = enumerate_sections(ext).sections;
  ASSERT_EQ(secs.size(), 3u);
  auto cc = conjugation_coefficients(secs[0], ext.image_of_a());
  auto cs = enumerate_cocycles(cc.coeff);
  ASSERT_EQ(cs.size(), 3u);
  std::set<std::vector<Elem>> twisted, listed;
  for (auto const& a : cs) {
    auto f = twist_lift(secs[0], a, cc.embedding);
    EXPECT_EQ(compose(ext.pi(), f), identity_hom(ext.gamma()));
    twisted.insert(f.map());
  }
  for (auto const& s : secs) {
    listed.insert(s.map());
  }
  EXPECT_EQ(twisted, listed);
  EXPECT_EQ(twist_lift(secs[0], Cocycle::trivial(cc.coeff), cc.embedding), secs[0]);

  // a constant action on A3 is not conjugation through a section
  auto wrong = GammaGroup::constant(ext.gamma(), cc.coeff->coefficients());
  EXPECT_EQ(kind_of([&] { twist_lift(secs[0], Cocycle::trivial(wrong), cc.embedding); }),
            ErrorKind::NotACocycleForThisAction);
}

TEST(LiftsUpToConjugacy, SpecExamples) {
  // trivial base: lifts are all homs Z/2 -> S3, up to conjugacy
  auto s   = preset_group("S3");
  auto one = group_from_table(1, {0});
  Extension ext(identity_hom(s), trivial_hom(s, one));
  auto z2 = oracle::cyclic_table(2);
  auto l  = lifts_up_to_conjugacy(ext, trivial_hom(z2, one));
  EXPECT_EQ(l.lifts.size(), 4u);
  EXPECT_EQ(l.classes.size(), 2u);
  EXPECT_EQ(l.h1_size, 2u);

  auto pg  = s3();
  auto a3  = subgroup_generated(pg.group, {oracle::elem(pg, 3, {{0, 1, 2}})});
  auto se  = extension_from_normal(a3);
  auto ls  = lifts_up_to_conjugacy(se, identity_hom(se.gamma()));
  EXPECT_EQ(ls.classes.size(), 1u);
  EXPECT_EQ(ls.h1_size, 1u);
  auto inv = oracle::sign_action(z2, {1, -1}, oracle::cyclic_table(3));
  EXPECT_EQ(h1(inv).size(), 1u);
}

TEST(RestrictClass, SpecExamples) {
  auto pg = s3();
  auto m  = oracle::sign_action(pg.group, sign_of(*pg.group), oracle::cyclic_table(3));
  auto cs = enumerate_cocycles(m);
  for (auto const& a : cs) {
    EXPECT_EQ(restrict_class(identity_hom(pg.group), a), a);
  }

  auto sub = subgroup_as_group(subgroup_generated(pg.group, {oracle::elem(pg, 3, {{0, 1, 2}})}));
  auto theta = inclusion(sub, pg.group);
  std::set<std::vector<Elem>> restricted;
  for (auto const& a : cs) {
    auto r = restrict_class(theta, a);
    EXPECT_TRUE(r.parent()->is_trivial_action());
    restricted.insert(r.values());
  }
  // each restriction is a hom A3 -> Z/3
  auto homs = oracle::all_map_homs(*sub.group, *oracle::cyclic_table(3));
  for (auto const& r : restricted) {
    EXPECT_TRUE(homs.count(r));
  }

  auto z2 = oracle::cyclic_table(2);
  auto tr = restrict_class(trivial_hom(z2, pg.group), cs.back());
  EXPECT_TRUE(tr.is_trivial());
}

TEST(PullbackClass, SpecExamples) {
  auto pg  = s3();
  auto a3  = subgroup_generated(pg.group, {oracle::elem(pg, 3, {{0, 1, 2}})});
  auto ext = extension_from_normal(a3);
  auto secs = enumerate_sections(ext).sections;
  auto z2  = oracle::cyclic_table(2);

  // constant Z/2 over E, a = the sign hom
  auto c = GammaGroup::constant(ext.e(), z2);
  std::vector<Elem> sign(6);
  for (Elem x = 0; x < 6; ++x) {
    sign[x] = ext.pi()(x);
  }
  Cocycle a(c, sign);
  auto expected = GammaGroup::constant(ext.gamma(), z2);
  for (auto const& s : secs) {
    auto p = pullback_class(s, a, expected);
    EXPECT_EQ(p.values(), (std::vector<Elem>{0, 1}));
    EXPECT_TRUE(pullback_class(s, Cocycle::trivial(c)).is_trivial());
  }
  // conjugate sections give cohomologous pullbacks
  auto p0 = pullback_class(secs[0], a, expected);
  for (auto const& s : secs) {
    EXPECT_TRUE(cohomologous(p0, pullback_class(s, a, expected)));
  }

  // Z/3 with sign action over E pulls back to inversion, not the trivial action
  auto m = oracle::sign_action(pg.group, sign_of(*pg.group), oracle::cyclic_table(3));
  EXPECT_EQ(kind_of([&] {
              pullback_class(secs[0], Cocycle::trivial(m),
                             GammaGroup::constant(ext.gamma(), oracle::cyclic_table(3)));
            }),
            ErrorKind::ActionMismatch);
}

TEST(DescendClass, SpecExamples) {
  auto z4 = oracle::cyclic_table(4), z2 = oracle::cyclic_table(2);
  auto c  = GammaGroup::constant(z4, z2);
  Cocycle mod2(c, {0, 1, 0, 1});
  EXPECT_EQ(descend_class(identity_hom(z4), mod2).values(), mod2.values());
  GroupHom q(z4, z2, {0, 1, 0, 1});
  EXPECT_TRUE(descend_class(q, Cocycle::trivial(c)).is_trivial());
  EXPECT_EQ(descend_class(q, mod2).values(), (std::vector<Elem>{0, 1}));
  // the identity of Z/4 does not vanish on the kernel {0, 2}
  Cocycle id4(GammaGroup::constant(z4, z4), {0, 1, 2, 3});
  EXPECT_EQ(kind_of([&] { descend_class(GroupHom(z4, z2, {0, 1, 0, 1}), id4); }),
            ErrorKind::NotTrivialOnKernel);

  // the first coordinate of Z/2 x Z/2 descends along the first projection
  auto v  = direct_product(*z2, *z2);
  auto cv = GammaGroup::constant(v, z2);
  Cocycle first(cv, {0, 0, 1, 1});
  GroupHom pr(v, z2, {0, 0, 1, 1});
  auto d = descend_class(pr, first);
  EXPECT_EQ(d.values(), (std::vector<Elem>{0, 1}));
  EXPECT_EQ(inflate_class(pr, d).values(), first.values());
}

TEST(TwistCoefficients, SpecExamples) {
  auto z2 = oracle::cyclic_table(2);
  auto pg = s3();
  auto m  = GammaGroup::constant(z2, pg.group);
  Elem t  = oracle::elem(pg, 3, {{0, 1}});
  Cocycle a(m, {0, t});
  auto tw = twist_coefficients(a);
  for (Elem x = 0; x < 6; ++x) {
    EXPECT_EQ(tw.twisted->act(1, x), pg.group->conj(t, x));
  }
  auto before = h1(m);
  auto after  = h1(tw.twisted);
  EXPECT_EQ(before.size(), 2u);
  EXPECT_EQ(after.size(), 2u);
  EXPECT_EQ(oracle::class_count(*tw.twisted, oracle::all_cocycles(*tw.twisted)), 2u);
  // the class of a goes to the trivial class, which is listed first
  EXPECT_EQ(tw.class_map[before.class_index(a)], 0u);
  EXPECT_TRUE(after.representatives[0].is_trivial());

  auto same = twist_coefficients(Cocycle::trivial(m));
  EXPECT_EQ(same.twisted->action(), m->action());
  EXPECT_EQ(same.class_map, (std::vector<std::size_t>{0, 1}));

  auto z3  = oracle::cyclic_table(3);
  auto inv = oracle::sign_action(z2, {1, -1}, z3);
  auto ab  = twist_coefficients(enumerate_cocycles(inv).back());
  EXPECT_EQ(ab.twisted->action(), inv->action());
}
