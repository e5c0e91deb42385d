#ifndef SECLAB_CORPUS_HPP_
#define SECLAB_CORPUS_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "extension.hpp"
#include "group.hpp"
#include "gxf.hpp"
#include "instances.hpp"
#include "presets.hpp"

namespace seclab {

  inline constexpr std::size_t max_corpus_order = 64;

  namespace detail {

    // Emits a table group and returns its name.
    inline std::string emit_table(gxf::Manifest& m, std::string const& name, GroupPtr const& g) {
      std::vector<Elem> t(g->table().begin(), g->table().end());
      m.add_group_table(name, g->order(), std::move(t));
      return name;
    }

    inline std::vector<Elem> images_of_generators(gxf::Manifest const& m, std::string const& src,
                                                  GroupHom const& f) {
      std::vector<Elem> out;
      for (Elem g : m.group(src).gens) {
        out.push_back(f(g));
      }
      return out;
    }

    inline std::string emit_hom(gxf::Manifest& m, std::string const& name, std::string const& src,
                                std::string const& tgt, GroupHom const& f) {
      m.add_hom(name, src, tgt, images_of_generators(m, src, f));
      return name;
    }

    struct EmittedExtension {
      std::string name, a, e, g;
    };

    // Emits A, Γ (unless given), iota, pi and the extension; E must already
    // be defined under `e_name`.
    inline EmittedExtension emit_extension(gxf::Manifest& m, std::string const& name,
                                           Extension const& ext, std::string const& e_name,
                                           std::string g_name = {}) {
      EmittedExtension out{name, emit_table(m, name + "_A", ext.a()), e_name, g_name};
      if (out.g.empty()) {
        out.g = emit_table(m, name + "_G", ext.gamma());
      }
      emit_hom(m, name + "_iota", out.a, e_name, ext.iota());
      emit_hom(m, name + "_pi", e_name, out.g, ext.pi());
      m.add_extension(name, out.a, e_name, out.g, name + "_iota", name + "_pi");
      return out;
    }

    // Emits the local groups, θ_i, s_i, the family and the section set.
    inline void emit_local_sections(gxf::Manifest& m, std::string const& name,
                                    EmittedExtension const& x, LocalSections const& ls) {
      std::vector<std::string>                         maps;
      std::vector<std::pair<std::string, std::string>> locals;
      for (std::size_t i = 0; i < ls.sections().size(); ++i) {
        std::string const li = name + "_L" + std::to_string(i);
        emit_table(m, li, ls.family().locals()[i].group);
        maps.push_back(emit_hom(m, li + "_s", li, x.e, ls.sections()[i]));
        locals.emplace_back(li, emit_hom(m, li + "_theta", li, x.g, ls.family().locals()[i].theta));
      }
      m.add_family(name + "_F", x.g, std::move(locals));
      m.add_sections(name, x.name, std::move(maps));
    }

    inline void job(gxf::Manifest& m, std::string cmd, std::string target,
                    std::vector<std::pair<std::string, std::string>> opts = {}) {
      m.add_job(gxf::Job{std::move(cmd), std::move(target), std::move(opts), {}});
    }

  }  // namespace detail

  // Presets up to max_order plus seeded extensions, local data, actions and
  // a tower, with jobs exercising every command. Deterministic in the seed.
  inline gxf::Manifest generate_corpus(std::size_t max_order, std::uint64_t seed) {
    if (max_order < 1 || max_order > max_corpus_order) {
      detail::fail(ErrorKind::BoundExceeded,
                   "max_order must lie in [1, " + std::to_string(max_corpus_order) + "], got "
                       + std::to_string(max_order));
    }
    gxf::Manifest m;
    Rng           rng(seed);
    auto const    presets = presets_up_to(max_order);
    for (auto const& p : presets) {
      m.add_group_perm(p.name, p.degree, p.generators);
    }

    // one proper subgroup per preset for the covering check
    for (auto const& p : presets) {
      if (p.order > 24) {
        continue;
      }
      auto const& g = m.group(p.name).group;
      auto        subs = all_subgroups(g);
      subs.pop_back();  // the whole group sorts last
      if (subs.empty()) {
        continue;
      }
      auto const& h = pick(rng, subs);
      m.add_subgroup(p.name + "_H", p.name, h.elements());
      detail::job(m, "jordan", p.name + "_H");
    }

    std::size_t const max_e = std::min<std::size_t>(max_order, 24);
    std::vector<NamedExtension const*> pool;
    for (auto const& ne : extension_pool(24)) {
      if (ne.ext.e()->order() <= max_e && ne.ext.e()->order() >= 2) {
        pool.push_back(&ne);
      }
    }
    if (pool.empty()) {
      return m;
    }

    auto preset_name = [](NamedExtension const& ne) { return ne.name.substr(0, ne.name.find('/')); };

    std::size_t const n_ext = 8;
    for (std::size_t i = 0; i < n_ext; ++i) {
      auto const&       ne   = *pick(rng, pool);
      std::string const name = "X" + std::to_string(i);
      auto const        x    = detail::emit_extension(m, name, ne.ext, preset_name(ne));
      detail::job(m, "sections", name);

      // a subgroup of A normal in E for the pushout
      auto const  norms = all_normal_subgroups_between(ne.ext.image_of_a());
      auto const& u     = pick(rng, norms);
      m.add_subgroup(name + "_U", x.a, detail::preimage_in_a(ne.ext, u.elements()).elements());
      detail::job(m, "pushout", name, {{"subgroup", name + "_U"}});

      auto const ls = random_local_sections(rng, ne.ext);
      detail::emit_local_sections(m, name + "_S", x, ls);
      detail::job(m, "density", name + "_S");
      detail::job(m, "decide", name + "_S", {{"property", "b"}});
      detail::job(m, "decide", name + "_S", {{"property", "a''"}});
      detail::job(m, "verify", name + "_S");

      // a random action of Γ on a small preset
      std::vector<Preset> coeffs;
      for (auto const& p : presets) {
        if (p.order <= 8) {
          coeffs.push_back(p);
        }
      }
      auto const& mp   = pick(rng, coeffs);
      auto const& aut  = cached_automorphisms(mp.name);
      auto const  homs = enumerate_homs(ne.ext.gamma(), aut.group);
      auto const& h    = pick(rng, homs);
      auto const& mdef = m.group(mp.name);
      std::vector<std::vector<Elem>> images;
      for (Elem gk : m.group(x.g).gens) {
        std::vector<Elem> row;
        for (Elem mk : mdef.gens) {
          row.push_back(aut.maps[h(gk)][mk]);
        }
        images.push_back(std::move(row));
      }
      m.add_action(name + "_M", x.g, mp.name, std::move(images));
      detail::job(m, "h1", name + "_M");
      detail::job(m, "fibre", name + "_M", {{"family", name + "_S_F"}, {"alpha", "0"}});
    }

    // a three-level tower
    TowerInstance t = random_tower(rng, max_e);
    {
      auto const& lv  = t.tower.levels();
      std::string e0;
      for (auto const& p : presets) {
        if (p.order <= max_e && *m.group(p.name).group == *lv[0].e()) {
          e0 = p.name;
          break;
        }
      }
      auto const x0 = detail::emit_extension(m, "T0", lv[0], e0);
      std::vector<std::pair<std::string, std::string>> steps;
      std::string                                      prev = e0;
      for (std::size_t j = 1; j < lv.size(); ++j) {
        std::string const ej = detail::emit_table(m, "T" + std::to_string(j) + "_E", lv[j].e());
        detail::emit_extension(m, "T" + std::to_string(j), lv[j], ej, x0.g);
        steps.emplace_back(detail::emit_hom(m, "T" + std::to_string(j) + "_q", prev, ej,
                                            t.tower.connecting()[j - 1]),
                           "T" + std::to_string(j));
        prev = ej;
      }
      detail::emit_local_sections(m, "T0_S", x0, t.top);
      m.add_tower("T", "T0_S", std::move(steps));
      detail::job(m, "tower", "T");
      detail::job(m, "tower", "T", {{"mode", "sections"}});
    }
    return m;
  }

}  // namespace seclab

#endif  // SECLAB_CORPUS_HPP_
