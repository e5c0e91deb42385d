#ifndef SECLAB_INSTANCES_HPP_
#define SECLAB_INSTANCES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "extension.hpp"
#include "gamma_group.hpp"
#include "group.hpp"
#include "localglobal.hpp"
#include "presets.hpp"

namespace seclab {

  using Rng = std::mt19937_64;

  // Uniform enough for test generation and identical on every platform,
  // unlike std::uniform_int_distribution.
  inline std::size_t draw(Rng& rng, std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
  }

  template <class T>
  T const& pick(Rng& rng, std::vector<T> const& v) {
    return v[draw(rng, v.size())];
  }

  ////////////////////////////////////////////////////////////////////////
  // Action catalog
  ////////////////////////////////////////////////////////////////////////

  struct CatalogEntry {
    std::string   name;
    GammaGroupPtr coeff;
  };

  inline AutomorphismGroup const& cached_automorphisms(std::string const& name) {
    static std::map<std::string, AutomorphismGroup> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
      it = cache.emplace(name, automorphism_group(preset_group(name))).first;
    }
    return it->second;
  }

  // Actions of gamma on every preset M with |M| <= max_m, one per
  // Aut(M)-conjugacy class of homomorphisms gamma -> Aut(M).
  inline std::vector<CatalogEntry> action_catalog(GroupPtr const& gamma, std::size_t max_m = 8) {
    std::vector<CatalogEntry> out;
    for (auto const& p : presets_up_to(max_m)) {
      auto const& aut = cached_automorphisms(p.name);
      auto        m   = preset_group(p.name);
      auto const  homs = enumerate_homs(gamma, aut.group);
      auto const  classes = conjugacy_partition(homs, Subgroup::whole(aut.group));
      for (auto const& cls : classes) {
        auto const&                    h = homs[cls.front()];
        std::vector<std::vector<Elem>> action(gamma->order());
        for (Elem s = 0; s < gamma->order(); ++s) {
          action[s] = aut.maps[h(s)];
        }
        std::string name = p.name + "@" + detail::str(h.map());
        out.push_back(CatalogEntry{name, GammaGroup::make(gamma, m, std::move(action), p.name)});
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Extensions
  ////////////////////////////////////////////////////////////////////////

  struct NamedExtension {
    std::string name;
    Extension   ext;
  };

  // N -> E -> E/N for every preset E with |E| <= max_e and every normal N.
  inline std::vector<NamedExtension> const& extension_pool(std::size_t max_e = 24) {
    static std::map<std::size_t, std::vector<NamedExtension>> cache;
    auto it = cache.find(max_e);
    if (it != cache.end()) {
      return it->second;
    }
    std::vector<NamedExtension> pool;
    for (auto const& p : presets_up_to(max_e)) {
      auto e = p.build().group;
      for (auto const& n : all_normal_subgroups(e)) {
        pool.push_back(NamedExtension{p.name + "/N" + detail::str(n.elements()),
                                      extension_from_normal(n)});
      }
    }
    return cache.emplace(max_e, std::move(pool)).first->second;
  }

  ////////////////////////////////////////////////////////////////////////
  // Local data
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<GroupPtr> const& small_sources() {
    static std::vector<GroupPtr> const v = [] {
      std::vector<GroupPtr> out;
      for (auto const& p : presets_up_to(8)) {
        out.push_back(p.build().group);
      }
      return out;
    }();
    return v;
  }

  // A random θ : Γ_i -> Γ. Either a subgroup inclusion or a random hom
  // from a small preset (or from Γ itself).
  inline Local random_local(Rng& rng, GroupPtr const& gamma) {
    if (draw(rng, 2) == 0) {
      auto const subs = all_subgroups(gamma);
      auto const sg   = subgroup_as_group(pick(rng, subs));
      return Local{sg.group, inclusion(sg, gamma)};
    }
    GroupPtr src = draw(rng, 4) == 0 ? gamma : pick(rng, small_sources());
    auto const homs = enumerate_homs(src, gamma);
    return Local{src, pick(rng, homs)};
  }

  inline Local trivial_local(GroupPtr const& gamma) {
    auto c1 = preset_group("C1");
    return Local{c1, trivial_hom(c1, gamma)};
  }

  // Random locals with random lifts through ext; locals without a lift are
  // redrawn a few times, then replaced by the trivial local.
  inline LocalSections random_local_sections(Rng& rng, Extension const& ext,
                                             std::size_t max_locals = 3) {
    std::size_t const     k = draw(rng, max_locals + 1);
    std::vector<Local>    locals;
    std::vector<GroupHom> sections;
    for (std::size_t i = 0; i < k; ++i) {
      bool done = false;
      for (int attempt = 0; attempt < 4 && !done; ++attempt) {
        auto       l     = random_local(rng, ext.gamma());
        auto const lifts = enumerate_lifts(l.theta, ext.pi());
        if (!lifts.empty()) {
          sections.push_back(pick(rng, lifts));
          locals.push_back(std::move(l));
          done = true;
        }
      }
      if (!done) {
        auto l = trivial_local(ext.gamma());
        sections.push_back(trivial_hom(l.group, ext.e()));
        locals.push_back(std::move(l));
      }
    }
    return LocalSections(ext, LocalFamily(ext.gamma(), std::move(locals)), std::move(sections));
  }

  struct Instance {
    std::string   name;
    LocalSections ls;
  };

  inline std::vector<Instance> generate_instances(std::uint64_t seed, std::size_t count,
                                                  std::size_t max_e = 24) {
    Rng                   rng(seed);
    auto const&           pool = extension_pool(max_e);
    std::vector<Instance> out;
    for (std::size_t i = 0; i < count; ++i) {
      auto const& ne = pick(rng, pool);
      out.push_back(Instance{ne.name + "#" + std::to_string(i),
                             random_local_sections(rng, ne.ext)});
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Dense families
  ////////////////////////////////////////////////////////////////////////

  struct DensePair {
    std::string name;
    LocalFamily family;
    Subgroup    gamma_prime;
  };

  // Random subgroup inclusions, topped up with cyclic subgroups until the
  // conjugates cover Γ; Γ' is a random subgroup.
  inline std::vector<DensePair> generate_dense_pairs(std::uint64_t seed, std::size_t count,
                                                     std::size_t max_order = 24) {
    Rng                    rng(seed);
    auto const             groups = presets_up_to(max_order);
    std::vector<DensePair> out;
    while (out.size() < count) {
      auto const&        p     = pick(rng, groups);
      auto               gamma = p.build().group;
      auto const         subs  = all_subgroups(gamma);
      std::vector<Local> locals;
      for (std::size_t k = draw(rng, 3); k > 0; --k) {
        auto sg = subgroup_as_group(pick(rng, subs));
        locals.push_back(Local{sg.group, inclusion(sg, gamma)});
      }
      while (true) {
        LocalFamily const fam(gamma, locals);
        auto const        covered = conjugates_of_local_images(fam);
        if (covered.size() == gamma->order()) {
          break;
        }
        std::vector<Elem> missing;
        for (Elem x = 0; x < gamma->order(); ++x) {
          if (!std::binary_search(covered.begin(), covered.end(), x)) {
            missing.push_back(x);
          }
        }
        auto sg = subgroup_as_group(subgroup_generated(gamma, {pick(rng, missing)}));
        locals.push_back(Local{sg.group, inclusion(sg, gamma)});
      }
      out.push_back(DensePair{p.name + "#" + std::to_string(out.size()),
                              LocalFamily(gamma, std::move(locals)), pick(rng, subs)});
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Towers
  ////////////////////////////////////////////////////////////////////////

  struct TowerInstance {
    std::string   name;
    Tower         tower;
    LocalSections top;
  };

  namespace detail {
    // U <= A with iota(U) = `in_e` (a subgroup of E inside iota(A)).
    inline Subgroup preimage_in_a(Extension const& ext, std::vector<Elem> const& in_e) {
      std::vector<Elem> u;
      for (Elem x = 0; x < ext.a()->order(); ++x) {
        if (std::binary_search(in_e.begin(), in_e.end(), ext.iota()(x))) {
          u.push_back(x);
        }
      }
      return Subgroup(ext.a(), std::move(u));
    }
  }  // namespace detail

  // Three levels E -> E/K1 -> E/K2 for K1 <= K2 <= iota(A), normal in E.
  inline TowerInstance random_tower(Rng& rng, std::size_t max_e = 24) {
    auto const& pool = extension_pool(max_e);
    auto const& ne    = pick(rng, pool);
    auto const  norms = all_normal_subgroups_between(ne.ext.image_of_a());
    auto const& k1    = pick(rng, norms);
    std::vector<Subgroup> above;
    for (auto const& k : norms) {
      if (std::includes(k.elements().begin(), k.elements().end(), k1.elements().begin(),
                        k1.elements().end())) {
        above.push_back(k);
      }
    }
    auto const& k2 = pick(rng, above);
    auto const  p1 = pushout(ne.ext, detail::preimage_in_a(ne.ext, k1.elements()));
    std::vector<Elem> k2_in_e1;
    for (Elem x : k2.elements()) {
      k2_in_e1.push_back(p1.map(x));
    }
    std::sort(k2_in_e1.begin(), k2_in_e1.end());
    k2_in_e1.erase(std::unique(k2_in_e1.begin(), k2_in_e1.end()), k2_in_e1.end());
    auto const p2 = pushout(p1.ext, detail::preimage_in_a(p1.ext, k2_in_e1));
    Tower      tower({ne.ext, p1.ext, p2.ext}, {p1.map, p2.map});
    auto       top = random_local_sections(rng, ne.ext);
    return TowerInstance{ne.name + "|" + std::to_string(k1.size()) + "|"
                             + std::to_string(k2.size()),
                         std::move(tower), std::move(top)};
  }

}  // namespace seclab

#endif  // SECLAB_INSTANCES_HPP_
