// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "seclab/seclab.hpp"

using namespace seclab;

namespace {

  struct Outcome {
    bool        ok = true;
    std::string detail;
    std::size_t checked = 0;

    void require(bool cond, std::string const& what) {
      if (!cond && ok) {
        ok     = false;
        detail = what;
      }
    }
  };

  int failures = 0;

  template <class F>
  void criterion(int n, std::string const& title, F&& body) {
    auto const start = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      body(o);
    } catch (std::exception const& e) {
      o.ok     = false;
      o.detail = std::string("exception: ") + e.what();
    }
    auto const s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char       secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", s);
    std::cout << (o.ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << title << " ("
              << o.checked << " checked, " << secs << ")";
    if (!o.ok) {
      std::cout << " -- " << o.detail;
      ++failures;
    }
    std::cout << std::endl;
  }

  // Conjugacy orbits of maps under c -> c f c^-1, c in `by`, by flood fill.
  std::size_t orbit_count(std::vector<GroupHom> const& maps, Subgroup const& by) {
    auto const&                 e = *maps.front().target();
    std::set<std::vector<Elem>> seen;
    std::size_t                 orbits = 0;
    for (auto const& f : maps) {
      if (seen.count(f.map())) {
        continue;
      }
      ++orbits;
      for (Elem c : by.elements()) {
        std::vector<Elem> g(f.map().size());
        for (Elem x = 0; x < g.size(); ++x) {
          g[x] = e.conj(c, f(x));
        }
        seen.insert(g);
      }
    }
    return orbits;
  }

  // Does some c in `allowed` give u(θ(x)) = c s(x) c^-1 for all x?
  bool conjugate_somehow(FiniteGroup const& e, std::vector<Elem> const& u, Local const& l,
                         GroupHom const& s, std::vector<Elem> const& allowed) {
    for (Elem c : allowed) {
      bool ok = true;
      for (Elem x = 0; ok && x < l.group->order(); ++x) {
        ok = u[l.theta(x)] == e.mul(e.mul(c, s(x)), e.inv(c));
      }
      if (ok) {
        return true;
      }
    }
    return false;
  }

  // (b) by brute force over generator tuples.
  bool oracle_b(LocalSections const& ls) {
    auto const&       ext = ls.ext();
    std::vector<Elem> all(ext.e()->order());
    for (Elem x = 0; x < all.size(); ++x) {
      all[x] = x;
    }
    for (auto const& u : oracle::generator_tuple_homs(ext.gamma(), ext.e())) {
      bool ok = true;
      for (std::size_t i = 0; ok && i < ls.sections().size(); ++i) {
        ok = conjugate_somehow(*ext.e(), u, ls.family().locals()[i], ls.sections()[i], all);
      }
      if (ok) {
        return true;
      }
    }
    return false;
  }

  // Every element is conjugate to some θ_i(y).
  bool oracle_dense(LocalFamily const& f) {
    auto const&       g = *f.gamma();
    std::vector<char> hit(g.order(), 0);
    for (auto const& l : f.locals()) {
      for (Elem y = 0; y < l.group->order(); ++y) {
        for (Elem c = 0; c < g.order(); ++c) {
          hit[g.mul(g.mul(c, l.theta(y)), g.inv(c))] = 1;
        }
      }
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }

  // s is a hom Γ -> E with pi s = id (sections mode) and interpolates ls up to `allowed`.
  bool oracle_in_level(LocalSections const& ls, GroupHom const& s, bool sections_mode) {
    auto const& ext = ls.ext();
    if (!oracle::is_hom_map(*ext.gamma(), *ext.e(), s.map())) {
      return false;
    }
    if (sections_mode) {
      for (Elem g = 0; g < ext.gamma()->order(); ++g) {
        if (ext.pi()(s(g)) != g) {
          return false;
        }
      }
    }
    std::vector<Elem> allowed;
    if (sections_mode) {
      allowed = ext.image_of_a().elements();
    } else {
      for (Elem x = 0; x < ext.e()->order(); ++x) {
        allowed.push_back(x);
      }
    }
    for (std::size_t i = 0; i < ls.sections().size(); ++i) {
      if (!conjugate_somehow(*ext.e(), s.map(), ls.family().locals()[i], ls.sections()[i],
                             allowed)) {
        return false;
      }
    }
    return true;
  }

  struct Verified {
    std::string       name;
    LocalSections     ls;
    EquivalenceReport r;
    bool              b_oracle;
  };

}  // namespace

int main() {
  criterion(1, "inner pullback stays in the class of a", [](Outcome& o) {
    for (auto const& p : presets_up_to(12)) {
      auto const gamma = p.build().group;
      for (auto const& entry : action_catalog(gamma, 8)) {
        for (auto const& a : enumerate_cocycles(entry.coeff)) {
          for (Elem g = 0; g < gamma->order(); ++g) {
            auto const b = inner_pullback(a, g);
            o.require(is_cocycle(*entry.coeff, b.values()),
                      p.name + " / " + entry.name + ": pullback is not a cocycle");
            o.require(oracle::cohomologous(*entry.coeff, a.values(), b.values()),
                      p.name + " / " + entry.name + ": pullback leaves the class");
            ++o.checked;
          }
        }
      }
    }
  });

  criterion(2, "lift classes match H1 of the conjugation coefficients", [](Outcome& o) {
    std::vector<Preset> const sources = presets_up_to(8);
    for (auto const& ne : extension_pool(24)) {
      for (auto const& p : sources) {
        auto const src = p.build().group;
        for (auto const& phibar : enumerate_homs(src, ne.ext.gamma())) {
          auto const lifts = enumerate_lifts(phibar, ne.ext.pi());
          if (lifts.empty()) {
            continue;
          }
          auto const classes = orbit_count(lifts, ne.ext.image_of_a());
          auto const cc      = conjugation_coefficients(lifts.front(), ne.ext.image_of_a());
          auto const h       = h1(cc.coeff).size();
          o.require(classes == h, ne.name + " from " + p.name + ": " + std::to_string(classes)
                                      + " lift classes vs |H1| = " + std::to_string(h));
          ++o.checked;
        }
      }
    }
  });

  std::vector<Verified> instances;
  {
    for (auto& inst : generate_instances(2024, 240, 24)) {
      auto r  = verify_equivalences(inst.ls);
      bool ob = oracle_b(inst.ls);
      instances.push_back(Verified{inst.name, std::move(inst.ls), std::move(r), ob});
    }
  }

  criterion(3, "(a') holds exactly when (b) holds", [&](Outcome& o) {
    for (auto const& v : instances) {
      o.require(v.b_oracle == v.r.b, v.name + ": decide_b disagrees with brute force");
      o.require(v.r.a_prime == v.r.b, v.name + ": a'=" + std::to_string(v.r.a_prime)
                                          + " b=" + std::to_string(v.r.b));
      ++o.checked;
    }
    o.require(instances.size() >= 200, "fewer than 200 instances");
    auto const holds = std::count_if(instances.begin(), instances.end(),
                                     [](Verified const& v) { return v.r.b; });
    o.require(holds > 0 && static_cast<std::size_t>(holds) < instances.size(),
              "(b) never varies: " + std::to_string(holds) + " hold");
  });

  criterion(4, "split: (a'') exactly when (c); always (c) => (a) => (a'')", [&](Outcome& o) {
    std::size_t split = 0, split_c = 0;
    for (auto const& v : instances) {
      split_c += v.r.split && v.r.c ? 1 : 0;
      o.require(v.r.split == first_section(v.ls.ext()).has_value(), v.name + ": split flag");
      if (v.r.split) {
        ++split;
        o.require(v.r.a_doubleprime == v.r.c, v.name + ": a''=" + std::to_string(v.r.a_doubleprime)
                                                   + " c=" + std::to_string(v.r.c));
      }
      o.require(!v.r.c || v.r.a, v.name + ": (c) without (a)");
      o.require(!v.r.a || v.r.a_doubleprime, v.name + ": (a) without (a'')");
      ++o.checked;
    }
    o.require(split_c > 0 && split_c < split, "(c) never varies on split instances");
  });

  criterion(5, "dense families: (a), (a'), (b), (c) agree", [&](Outcome& o) {
    std::size_t dense_true = 0;
    for (auto const& v : instances) {
      bool const dense = oracle_dense(v.ls.family());
      o.require(dense == v.r.star_star, v.name + ": density flag disagrees with brute force");
      if (!dense) {
        continue;
      }
      bool const same = v.r.a == v.r.a_prime && v.r.a == v.r.b && v.r.a == v.r.c;
      o.require(same, v.name + ": properties differ on a dense family");
      dense_true += v.r.a ? 1 : 0;
      ++o.checked;
    }
    o.require(dense_true > 0 && dense_true < o.checked, "dense instances all agree the same way");
  });

  criterion(6, "dense and (b): constructed section interpolates up to A", [&](Outcome& o) {
    for (auto const& v : instances) {
      if (!v.r.star_star || !v.r.b) {
        continue;
      }
      auto const& ext = v.ls.ext();
      auto const  sfh = section_from_interpolating_hom(v.ls, *v.r.witness_b);
      o.require(sfh.section.has_value(), v.name + ": no section built");
      if (!sfh.section) {
        continue;
      }
      auto const& s = *sfh.section;
      auto const& e = *ext.e();
      auto const  a = ext.image_of_a();
      for (Elem g = 0; g < ext.gamma()->order(); ++g) {
        o.require(ext.pi()(s(g)) == g, v.name + ": not a section");
      }
      o.require(sfh.conjugators.size() == v.ls.sections().size(), v.name + ": conjugator count");
      for (std::size_t i = 0; i < sfh.conjugators.size(); ++i) {
        Elem const  c = sfh.conjugators[i];
        auto const& l = v.ls.family().locals()[i];
        o.require(a.contains(c), v.name + ": conjugator outside image(iota)");
        for (Elem x = 0; x < l.group->order(); ++x) {
          o.require(s(l.theta(x)) == e.mul(e.mul(c, v.ls.sections()[i](x)), e.inv(c)),
                    v.name + ": conjugator does not conjugate");
        }
      }
      ++o.checked;
    }
    o.require(o.checked > 0, "no dense instance with (b)");
  });

  criterion(7, "conjugates of a proper subgroup miss something and obey the bound", [](Outcome& o) {
    for (auto const& p : presets_up_to(24)) {
      auto const g = p.build().group;
      for (auto const& h : all_subgroups(g)) {
        if (h.is_whole()) {
          continue;
        }
        std::set<Elem> u;
        for (Elem c = 0; c < g->order(); ++c) {
          for (Elem x : h.elements()) {
            u.insert(g->mul(g->mul(c, x), g->inv(c)));
          }
        }
        std::size_t const bound = g->order() - g->order() / h.size() + 1;
        auto const        rep   = union_of_conjugates(h);
        o.require(u.size() < g->order(), p.name + ": conjugates cover");
        o.require(u.size() <= bound, p.name + ": union exceeds bound");
        o.require(rep.union_size() == u.size() && rep.bound == bound && !rep.covers,
                  p.name + ": report disagrees with direct count");
        ++o.checked;
      }
    }
  });

  criterion(8, "class-preserving endomorphisms are bijective", [](Outcome& o) {
    for (auto const& p : presets_up_to(16)) {
      auto const g   = p.build().group;
      for (auto const& f : enumerate_homs(g, g)) {
        bool preserving = true;
        for (Elem x = 0; preserving && x < g->order(); ++x) {
          bool conj = false;
          for (Elem c = 0; !conj && c < g->order(); ++c) {
            conj = g->mul(g->mul(c, x), g->inv(c)) == f(x);
          }
          preserving = conj;
        }
        o.require(preserving == is_class_preserving(f), p.name + ": class test disagrees");
        if (!preserving) {
          continue;
        }
        std::set<Elem> img(f.map().begin(), f.map().end());
        o.require(img.size() == g->order(), p.name + ": class-preserving but not bijective");
        ++o.checked;
      }
    }
  });

  criterion(9, "Z/4 over Z/2: no sections, nontrivial interpolating hom", [](Outcome& o) {
    auto const z2 = oracle::cyclic_table(2), z4 = oracle::cyclic_table(4);
    Extension  ext(GroupHom(z2, z4, {0, 2}), GroupHom(z4, z2, {0, 1, 0, 1}));
    auto const secs = enumerate_sections(ext);
    o.require(secs.sections.empty(), "sections found");
    o.require(oracle::all_map_homs(*z2, *z4).size() == 2, "expected two homs Z/2 -> Z/4");
    for (auto const& m : oracle::all_map_homs(*z2, *z4)) {
      for (Elem g = 0; g < 2; ++g) {
        o.require(m[g] % 2 == 0, "a hom Z/2 -> Z/4 lifts the identity");
      }
    }
    auto const one = oracle::cyclic_table(1);
    LocalSections ls(ext, LocalFamily(z2, {Local{one, trivial_hom(one, z2)}}),
                     {trivial_hom(one, z4)});
    std::size_t nontrivial = 0;
    for (auto const& u : enumerate_homs(z2, z4)) {
      if (u.map() == std::vector<Elem>{0, 0}) {
        continue;
      }
      auto const cs = interpolation_conjugators(ls, u, Subgroup::whole(z4));
      if (cs && is_valid_interpolation(ls, Interpolation{u, *cs}, Subgroup::whole(z4))) {
        ++nontrivial;
      }
    }
    o.require(nontrivial == 1, "expected exactly one nontrivial interpolating hom");
    o.require(decide_b(ls).has_value(), "(b) fails");
    o.require(!decide_c(ls).has_value(), "(c) holds without sections");
    auto const r = verify_equivalences(ls);
    o.require(r.ok(), "implication violated");
    o.checked = 1;
  });

  criterion(10, "transport preserves density", [](Outcome& o) {
    for (auto const& dp : generate_dense_pairs(50, 50, 24)) {
      o.require(oracle_dense(dp.family), dp.name + ": generated family not dense");
      auto const t = transport_family(dp.family, dp.gamma_prime);
      o.require(*t.family.gamma() == *t.gamma_prime.group, dp.name + ": wrong base");
      o.require(oracle_dense(t.family), dp.name + ": transported family not dense");
      o.require(check_density(t.family), dp.name + ": check_density rejects transport");
      ++o.checked;
    }
    o.require(o.checked == 50, "fewer than 50 pairs");
  });

  criterion(11, "tower chains and empty levels", [](Outcome& o) {
    Rng         rng(11);
    std::size_t chains = 0, empties = 0;
    for (int i = 0; i < 60; ++i) {
      auto const ti = random_tower(rng, 24);
      auto const& levels = ti.tower.levels();
      o.require(levels.size() == 3, ti.name + ": not three levels");
      for (auto mode : {TowerMode::Homomorphisms, TowerMode::Sections}) {
        bool const sm  = mode == TowerMode::Sections;
        auto const res = tower_limit_sections(ti.tower, ti.top, mode);
        std::vector<LocalSections> per_level;
        GroupHom down = identity_hom(levels[0].e());
        for (std::size_t j = 0; j < levels.size(); ++j) {
          if (j > 0) {
            down = compose(ti.tower.connecting()[j - 1], down);
          }
          std::vector<GroupHom> pushed;
          for (auto const& s : ti.top.sections()) {
            pushed.push_back(compose(down, s));
          }
          per_level.emplace_back(levels[j], ti.top.family(), std::move(pushed));
        }
        bool all_nonempty = std::all_of(res.level_sizes.begin(), res.level_sizes.end(),
                                        [](std::size_t n) { return n > 0; });
        if (all_nonempty) {
          o.require(res.chain.has_value() && !res.empty_level, ti.name + ": no chain");
          if (!res.chain) {
            continue;
          }
          auto const& ch = *res.chain;
          for (std::size_t j = 0; j < levels.size(); ++j) {
            o.require(oracle_in_level(per_level[j], ch[j], sm), ti.name + ": chain entry invalid");
            if (j + 1 < levels.size()) {
              o.require(compose(ti.tower.connecting()[j], ch[j]) == ch[j + 1],
                        ti.name + ": chain not compatible");
            }
          }
          ++chains;
        } else {
          std::size_t coarsest = 0;
          for (std::size_t j = 0; j < levels.size(); ++j) {
            if (res.level_sizes[j] == 0) {
              coarsest = j;
            }
          }
          o.require(res.empty_level && *res.empty_level == coarsest && !res.chain,
                    ti.name + ": empty level not reported");
          // nothing in that level passes the direct test either
          auto const& ext = levels[coarsest];
          for (auto const& s : enumerate_homs(ext.gamma(), ext.e())) {
            o.require(!oracle_in_level(per_level[coarsest], s, sm),
                      ti.name + ": reported empty level has a member");
          }
          ++empties;
        }
        ++o.checked;
      }
    }
    o.require(chains > 0 && empties > 0, "both outcomes should occur: chains="
                                             + std::to_string(chains)
                                             + " empties=" + std::to_string(empties));
  });

  criterion(12, "manifest runs are byte-identical without timing", [](Outcome& o) {
    for (std::uint64_t seed : {1u, 7u}) {
      auto const text = gxf::serialize(generate_corpus(12, seed));
      o.require(text == gxf::serialize(generate_corpus(12, seed)), "corpus text differs");
      auto const m = gxf::parse_manifest(text);
      for (auto fmt : {report::Format::Text, report::Format::Structured}) {
        std::ostringstream first, second;
        report::run_manifest(m, first, {fmt, false});
        report::run_manifest(gxf::parse_manifest(text), second, {fmt, false});
        o.require(!first.str().empty() && first.str() == second.str(), "reports differ");
        o.require(first.str().find("timing_ms") == std::string::npos, "timing not suppressed");
        ++o.checked;
      }
    }
  });

  return failures == 0 ? 0 : 1;
}
