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

  // 1 -> Z/2 -> Z/4 -> Z/2 -> 1
  Extension nonsplit_z4() {
    auto z2 = oracle::cyclic_table(2), z4 = oracle::cyclic_table(4);
    return Extension(GroupHom(z2, z4, {0, 2}), GroupHom(z4, z2, {0, 1, 0, 1}));
  }

  // 1 -> Z/2 -> Z/2 x Z/2 -> Z/2 -> 1, first factor is A; (a, b) has index 2a + b
  Extension split_klein() {
    auto z2 = oracle::cyclic_table(2);
    auto v  = direct_product(*z2, *z2);
    return Extension(GroupHom(z2, v, {0, 2}), GroupHom(v, z2, {0, 1, 0, 1}));
  }

  struct S3Ext {
    PermGroup pg;
    Extension ext;
  };

  S3Ext s3_over_sign() {
    auto pg = group_from_permutations(3, {presets::from_cycles(3, {{0, 1}}),
                                          presets::from_cycles(3, {{0, 1, 2}})});
    auto a3 = subgroup_generated(pg.group, {oracle::elem(pg, 3, {{0, 1, 2}})});
    return S3Ext{pg, extension_from_normal(a3)};
  }

  // Brute-force sections: every map Γ -> E that is a hom with pi s = id.
  std::set<std::vector<Elem>> naive_sections(Extension const& ext) {
    std::set<std::vector<Elem>> out;
    for (auto const& f : oracle::generator_tuple_homs(ext.gamma(), ext.e())) {
      bool ok = true;
      for (Elem g = 0; g < f.size(); ++g) {
        ok = ok && ext.pi()(f[g]) == g;
      }
      if (ok) {
        out.insert(f);
      }
    }
    return out;
  }

}  // namespace

TEST(MakeExtension, SpecExamples) {
  auto g = preset_group("S3");
  auto one = group_from_table(1, {0});
  Extension triv(trivial_hom(one, g), identity_hom(g));
  EXPECT_EQ(triv.a()->order(), 1u);

  auto ext = nonsplit_z4();
  EXPECT_EQ(ext.image_of_a().elements(), (std::vector<Elem>{0, 2}));

  auto z2 = oracle::cyclic_table(2), z4 = oracle::cyclic_table(4);
  EXPECT_EQ(kind_of([&] { Extension(GroupHom(z2, z4, {0, 0}), GroupHom(z4, z2, {0, 1, 0, 1})); }),
            ErrorKind::NotInjective);
  EXPECT_EQ(kind_of([&] { Extension(GroupHom(z2, z4, {0, 2}), trivial_hom(z4, z2)); }),
            ErrorKind::NotSurjective);
  auto z8 = oracle::cyclic_table(8);
  // image of A is {0,4} but the kernel of mod 2 is {0,2,4,6}
  EXPECT_EQ(kind_of([&] {
              Extension(GroupHom(z2, z8, {0, 4}), GroupHom(z8, z2, {0, 1, 0, 1, 0, 1, 0, 1}));
            }),
            ErrorKind::NotExact);
}

TEST(EnumerateSections, SpecExamples) {
  auto r = enumerate_sections(nonsplit_z4());
  EXPECT_TRUE(r.sections.empty());
  EXPECT_TRUE(r.classes_mod_a.empty());

  auto k = enumerate_sections(split_klein());
  EXPECT_EQ(k.sections.size(), 2u);
  EXPECT_EQ(k.classes_mod_a.size(), 2u);
  EXPECT_EQ(k.classes_mod_e.size(), 2u);

  auto s = s3_over_sign();
  auto r3 = enumerate_sections(s.ext);
  EXPECT_EQ(r3.sections.size(), 3u);
  EXPECT_EQ(r3.classes_mod_a.size(), 1u);
  std::set<Elem> images;
  for (auto const& sec : r3.sections) {
    images.insert(sec(1));
    EXPECT_EQ(s.pg.group->element_order(sec(1)), 2u);
  }
  EXPECT_EQ(images.size(), 3u);
}

TEST(EnumerateSections, MatchesBruteForceOnPool) {
  std::size_t checked = 0;
  for (auto const& ne : extension_pool(12)) {
    auto r = enumerate_sections(ne.ext);
    std::set<std::vector<Elem>> got;
    for (auto const& s : r.sections) {
      got.insert(s.map());
    }
    EXPECT_EQ(got, naive_sections(ne.ext)) << ne.name;
    std::size_t total = 0;
    for (auto const& c : r.classes_mod_a) {
      total += c.size();
    }
    EXPECT_EQ(total, r.sections.size());
    EXPECT_LE(r.classes_mod_e.size(), r.classes_mod_a.size());
    ++checked;
  }
  EXPECT_GT(checked, 20u);
}

TEST(EnumerateSections, SplitClassCountMatchesH1) {
  for (auto const& ne : extension_pool(16)) {
    auto r = enumerate_sections(ne.ext);
    if (r.sections.empty()) {
      continue;
    }
    auto cc = conjugation_coefficients(r.sections.front(), ne.ext.image_of_a());
    EXPECT_EQ(h1(cc.coeff).size(), r.classes_mod_a.size()) << ne.name;
  }
}

TEST(Pushout, SpecExamples) {
  auto s = s3_over_sign();
  auto whole = pushout(s.ext, Subgroup::whole(s.ext.a()));
  EXPECT_EQ(whole.ext.a()->order(), 1u);
  EXPECT_EQ(whole.ext.e()->order(), 2u);
  for (Elem x = 0; x < 6; ++x) {
    EXPECT_EQ(whole.ext.pi()(whole.map(x)), s.ext.pi()(x));
  }

  auto triv = pushout(s.ext, Subgroup::trivial(s.ext.a()));
  EXPECT_EQ(triv.ext.e()->order(), 6u);
  EXPECT_EQ(triv.map.map(), (std::vector<Elem>{0, 1, 2, 3, 4, 5}));

  // Z/6 -> Z/6 x Z/2 -> Z/2, (a, b) at index 2a + b
  auto z6 = oracle::cyclic_table(6), z2 = oracle::cyclic_table(2);
  auto e  = direct_product(*z6, *z2);
  std::vector<Elem> iota(6), pi(12);
  for (Elem a = 0; a < 6; ++a) {
    iota[a] = 2 * a;
  }
  for (Elem x = 0; x < 12; ++x) {
    pi[x] = x % 2;
  }
  Extension ext(GroupHom(z6, e, iota), GroupHom(e, z2, pi));
  auto p = pushout(ext, Subgroup(z6, {0, 3}));
  EXPECT_EQ(p.ext.a()->order(), 3u);
  EXPECT_EQ(p.ext.e()->order(), 6u);
  EXPECT_TRUE(p.ext.a()->is_abelian());
  EXPECT_EQ(p.ext.a()->element_order(1), 3u);
}

TEST(Pushout, NotNormalInE) {
  // A = V4 inside S4 with U a subgroup of order 2 of V4: not normal in S4
  auto pg = find_preset("S4").build();
  auto v4 = subgroup_generated(pg.group, {oracle::elem(pg, 4, {{0, 1}, {2, 3}}),
                                          oracle::elem(pg, 4, {{0, 2}, {1, 3}})});
  auto ext = extension_from_normal(v4);
  auto sub = subgroup_as_group(v4);
  Elem u   = sub.from_parent[oracle::elem(pg, 4, {{0, 1}, {2, 3}})];
  EXPECT_EQ(kind_of([&] { pushout(ext, Subgroup(ext.a(), {0, u})); }), ErrorKind::NotNormalInE);
}

TEST(Pushout, TransportsSections) {
  for (auto const& ne : extension_pool(16)) {
    auto secs = enumerate_sections(ne.ext).sections;
    for (auto const& u : all_normal_subgroups_between(ne.ext.image_of_a())) {
      auto pre = detail::preimage_in_a(ne.ext, u.elements());
      auto p   = pushout(ne.ext, pre);
      auto pushed = enumerate_sections(p.ext).sections;
      for (auto const& s : secs) {
        auto t = compose(p.map, s);
        EXPECT_NE(std::find(pushed.begin(), pushed.end(), t), pushed.end()) << ne.name;
      }
    }
  }
}

TEST(Semidirect, SpecExamples) {
  auto z2 = oracle::cyclic_table(2), z3 = oracle::cyclic_table(3);
  auto trivial = semidirect(*GammaGroup::constant(z2, z3));
  EXPECT_TRUE(trivial.ext.e()->is_abelian());
  EXPECT_EQ(trivial.ext.e()->order(), 6u);

  auto inv = semidirect(*oracle::sign_action(z2, {1, -1}, z3));
  EXPECT_EQ(inv.ext.e()->order(), 6u);
  EXPECT_FALSE(inv.ext.e()->is_abelian());
  EXPECT_EQ(enumerate_sections(inv.ext).sections.size(), 3u);
  EXPECT_EQ(compose(inv.ext.pi(), inv.canonical_section), identity_hom(z2));

  auto k = semidirect(*GammaGroup::constant(z2, z2));
  EXPECT_EQ(k.ext.e()->order(), 4u);
  EXPECT_TRUE(k.ext.e()->is_abelian());
  for (Elem x = 0; x < 4; ++x) {
    EXPECT_EQ(k.ext.e()->element_order(x), x == 0 ? 1u : 2u);
  }

  // not an automorphism: everything to 0
  EXPECT_EQ(kind_of([&] { semidirect(z2, z3, {{0, 1, 2}, {0, 0, 0}}); }), ErrorKind::NotAnAction);
}

TEST(LiftDifference, SpecExamples) {
  auto s = s3_over_sign();
  auto secs = enumerate_sections(s.ext).sections;
  auto d0 = lift_difference(secs[0], secs[0], s.ext.pi(), s.ext.image_of_a());
  EXPECT_TRUE(d0.is_trivial());

  // split Klein: the two sections differ by the nontrivial cocycle
  auto z2 = oracle::cyclic_table(2);
  auto sd = semidirect(*GammaGroup::constant(z2, z2));
  auto p0 = sd.canonical_section;
  auto ks = enumerate_sections(sd.ext).sections;
  ASSERT_EQ(ks.size(), 2u);
  GroupHom const& p = ks[0] == p0 ? ks[1] : ks[0];
  auto d = lift_difference(p, p0, sd.ext.pi(), sd.ext.image_of_a());
  EXPECT_FALSE(d.is_trivial());
  EXPECT_EQ(twist_lift(p0, d, conjugation_coefficients(p0, sd.ext.image_of_a()).embedding), p);

  // the two lifts of Z/4 -> Z/2 to Z/4 itself
  auto ext = nonsplit_z4();
  auto id4 = identity_hom(ext.e());
  auto neg = GroupHom(ext.e(), ext.e(), {0, 3, 2, 1});
  EXPECT_EQ(kind_of([&] { lift_difference(neg, id4, ext.pi(), Subgroup::trivial(ext.e())); }),
            ErrorKind::DifferenceEscapesA);
  EXPECT_FALSE(lift_difference(neg, id4, ext.pi(), ext.image_of_a()).is_trivial());
  auto dbl = GroupHom(ext.e(), ext.e(), {0, 2, 0, 2});
  EXPECT_EQ(kind_of([&] { lift_difference(dbl, id4, ext.pi(), ext.image_of_a()); }),
            ErrorKind::NotALift);
}

TEST(EnumerateLifts, NoLiftForNonsplit) {
  auto ext = nonsplit_z4();
  auto l   = lifts_up_to_conjugacy(ext, identity_hom(ext.gamma()));
  EXPECT_TRUE(l.lifts.empty());
  EXPECT_EQ(l.h1_size, 0u);
}
