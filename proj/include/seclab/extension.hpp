#ifndef SECLAB_EXTENSION_HPP_
#define SECLAB_EXTENSION_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gamma_group.hpp"
#include "group.hpp"

namespace seclab {

  // A short exact sequence 1 -> A -> E -> Γ -> 1.
  class Extension {
   public:
    Extension() = default;

    Extension(GroupHom iota, GroupHom pi) : _iota(std::move(iota)), _pi(std::move(pi)) {
      using detail::fail;
      if (!(*_iota.target() == *_pi.source())) {
        fail(ErrorKind::NotExact, "iota lands in a different group than pi starts from");
      }
      auto const ker_iota = kernel(_iota);
      if (ker_iota.size() != 1) {
        fail(ErrorKind::NotInjective,
             "iota sends " + std::to_string(ker_iota.elements()[1]) + " to the identity");
      }
      auto const im_pi = image(_pi);
      if (!im_pi.is_whole()) {
        for (Elem g = 0; g < gamma()->order(); ++g) {
          if (!im_pi.contains(g)) {
            fail(ErrorKind::NotSurjective, "element " + std::to_string(g) + " of Γ is missed");
          }
        }
      }
      auto const ker_pi = kernel(_pi);
      _image_of_a       = image(_iota);
      for (Elem x = 0; x < e()->order(); ++x) {
        if (ker_pi.contains(x) != _image_of_a.contains(x)) {
          fail(ErrorKind::NotExact,
               "element " + std::to_string(x) + " of E is in "
                   + (ker_pi.contains(x) ? "ker(pi) but not im(iota)"
                                         : "im(iota) but not ker(pi)"));
        }
      }
      if (auto w = normality_witness(_image_of_a)) {
        fail(ErrorKind::NotExact, "im(iota) is not normal, conjugator " + std::to_string(w->first));
      }
    }

    GroupPtr const& a() const noexcept {
      return _iota.source();
    }
    GroupPtr const& e() const noexcept {
      return _iota.target();
    }
    GroupPtr const& gamma() const noexcept {
      return _pi.target();
    }
    GroupHom const& iota() const noexcept {
      return _iota;
    }
    GroupHom const& pi() const noexcept {
      return _pi;
    }
    // iota(A) as a normal subgroup of E.
    Subgroup const& image_of_a() const noexcept {
      return _image_of_a;
    }

   private:
    GroupHom _iota;
    GroupHom _pi;
    Subgroup _image_of_a;
  };

  inline Extension make_extension(GroupHom iota, GroupHom pi) {
    return Extension(std::move(iota), std::move(pi));
  }

  // The extension N -> G -> G/N for a normal subgroup N.
  inline Extension extension_from_normal(Subgroup const& n) {
    auto q   = quotient(n);
    auto sub = subgroup_as_group(n);
    return Extension(inclusion(sub, n.parent()), q.map);
  }

  // All homs Γ' -> E lifting phibar : Γ' -> Γ through pi : E -> Γ, sorted.
  inline std::vector<GroupHom> enumerate_lifts(GroupHom const& phibar, GroupHom const& pi) {
    if (!(*phibar.target() == *pi.target())) {
      detail::fail(ErrorKind::NotALift, "phibar and pi have different targets");
    }
    auto const&                    src  = phibar.source();
    auto const                     gens = src->generators();
    std::vector<std::vector<Elem>> candidates(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      for (Elem x = 0; x < pi.source()->order(); ++x) {
        if (pi(x) == phibar(gens[k])) {
          candidates[k].push_back(x);
        }
      }
    }
    return enumerate_homs_from(src, pi.source(), std::move(candidates));
  }

  // x ↦ c f(x) c^-1
  inline GroupHom conjugate_hom(GroupHom const& f, Elem c) {
    auto const&       t = *f.target();
    std::vector<Elem> m(f.map().size());
    for (Elem x = 0; x < m.size(); ++x) {
      m[x] = t.conj(c, f(x));
    }
    return GroupHom(f.source(), f.target(), std::move(m), GroupHom::unchecked_tag{});
  }

  // Returns c in `conjugators` with g = c f c^-1, checked on generators.
  inline std::optional<Elem> conjugating_element(GroupHom const& f, GroupHom const& g,
                                                 Subgroup const& conjugators) {
    auto const& t    = *f.target();
    auto const  gens = f.source()->generators();
    for (Elem c : conjugators.elements()) {
      bool ok = true;
      for (Elem s : gens) {
        if (t.conj(c, f(s)) != g(s)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        return c;
      }
    }
    return std::nullopt;
  }

  // Orbits of `homs` under conjugation by `conjugators`, restricted to the
  // list. Classes are listed by least member index; members ascend.
  inline std::vector<std::vector<std::size_t>>
  conjugacy_partition(std::vector<GroupHom> const& homs, Subgroup const& conjugators) {
    std::map<std::vector<Elem>, std::size_t> index;
    for (std::size_t i = 0; i < homs.size(); ++i) {
      index.emplace(homs[i].map(), i);
    }
    std::vector<std::size_t>              cls(homs.size(), homs.size());
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < homs.size(); ++i) {
      if (cls[i] != homs.size()) {
        continue;
      }
      cls[i] = out.size();
      std::vector<std::size_t> members{i};
      for (Elem c : conjugators.elements()) {
        auto it = index.find(conjugate_hom(homs[i], c).map());
        if (it != index.end() && cls[it->second] == homs.size()) {
          cls[it->second] = out.size();
          members.push_back(it->second);
        }
      }
      std::sort(members.begin(), members.end());
      out.push_back(std::move(members));
    }
    return out;
  }

  struct SectionReport {
    std::vector<GroupHom>                 sections;
    std::vector<std::vector<std::size_t>> classes_mod_a;
    std::vector<std::vector<std::size_t>> classes_mod_e;
  };

  inline SectionReport enumerate_sections(Extension const& ext) {
    SectionReport r;
    r.sections      = enumerate_lifts(identity_hom(ext.gamma()), ext.pi());
    r.classes_mod_a = conjugacy_partition(r.sections, ext.image_of_a());
    r.classes_mod_e = conjugacy_partition(r.sections, Subgroup::whole(ext.e()));
    return r;
  }

  inline std::optional<GroupHom> first_section(Extension const& ext) {
    auto s = enumerate_lifts(identity_hom(ext.gamma()), ext.pi());
    if (s.empty()) {
      return std::nullopt;
    }
    return s.front();
  }

  struct Pushout {
    Extension ext;
    GroupHom  map;  // E -> E / iota(U)
  };

  // 1 -> A/U -> E/iota(U) -> Γ -> 1 for U <= A with iota(U) normal in E.
  inline Pushout pushout(Extension const& ext, Subgroup const& u) {
    if (!(*u.parent() == *ext.a())) {
      detail::fail(ErrorKind::NotASubgroup, "U must be a subgroup of A");
    }
    std::vector<Elem> image;
    for (Elem x : u.elements()) {
      image.push_back(ext.iota()(x));
    }
    Subgroup const iu(ext.e(), std::move(image));
    if (auto w = normality_witness(iu)) {
      detail::fail(ErrorKind::NotNormalInE,
                   "conjugating " + std::to_string(w->second) + " by "
                       + std::to_string(w->first) + " leaves iota(U)");
    }
    auto qe = quotient(iu);
    auto qa = quotient(u);
    std::vector<Elem> iota(qa.group->order(), 0);
    for (Elem x = 0; x < ext.a()->order(); ++x) {
      iota[qa.map(x)] = qe.map(ext.iota()(x));
    }
    std::vector<Elem> pi(qe.group->order(), 0);
    for (Elem x = 0; x < ext.e()->order(); ++x) {
      pi[qe.map(x)] = ext.pi()(x);
    }
    Extension out(GroupHom(qa.group, qe.group, std::move(iota)),
                  GroupHom(qe.group, ext.gamma(), std::move(pi)));
    return Pushout{std::move(out), qe.map};
  }

  struct Semidirect {
    Extension ext;
    GroupHom  canonical_section;  // γ ↦ (e, γ)
  };

  // A ⋊ Γ on pairs (a, γ), indexed γ * |A| + a, with
  // (a, γ)(a', γ') = (a · γ(a'), γγ').
  inline Semidirect semidirect(GammaGroup const& action, std::string label = {}) {
    auto const&       g = *action.gamma();
    auto const&       a = *action.coefficients();
    std::size_t const na = a.order(), n = na * g.order();
    std::vector<Elem> table(n * n);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        Elem const ax = x % na, gx = x / na, ay = y % na, gy = y / na;
        table[x * n + y] = static_cast<Elem>(g.mul(gx, gy) * na + a.mul(ax, action.act(gx, ay)));
      }
    }
    auto              e = FiniteGroup::make_unchecked(n, std::move(table), std::move(label));
    std::vector<Elem> iota(na), pi(n), sec(g.order());
    for (Elem x = 0; x < na; ++x) {
      iota[x] = static_cast<Elem>(g.identity() * na + x);
    }
    for (Elem x = 0; x < n; ++x) {
      pi[x] = static_cast<Elem>(x / na);
    }
    for (Elem x = 0; x < g.order(); ++x) {
      sec[x] = static_cast<Elem>(x * na + a.identity());
    }
    Extension ext(GroupHom(action.coefficients(), e, std::move(iota)),
                  GroupHom(e, action.gamma(), std::move(pi)));
    GroupHom  s(action.gamma(), e, std::move(sec));
    return Semidirect{std::move(ext), std::move(s)};
  }

  inline Semidirect semidirect(GroupPtr gamma, GroupPtr a,
                               std::vector<std::vector<Elem>> action, std::string label = {}) {
    auto coeff = GammaGroup::make(std::move(gamma), std::move(a), std::move(action));
    return semidirect(*coeff, std::move(label));
  }

  // The normal subgroup K of E viewed as a Γ'-group, Γ' acting by
  // conjugation through phi0 : Γ' -> E; `embedding` is K -> E.
  struct ConjugationCoefficients {
    GammaGroupPtr coeff;
    GroupHom      embedding;
  };

  inline ConjugationCoefficients conjugation_coefficients(GroupHom const& phi0, Subgroup const& k) {
    auto const& e   = *phi0.target();
    auto        sub = subgroup_as_group(k);
    std::vector<std::vector<Elem>> action(phi0.source()->order(),
                                          std::vector<Elem>(k.size()));
    for (Elem s = 0; s < action.size(); ++s) {
      for (Elem x = 0; x < k.size(); ++x) {
        Elem const y = sub.from_parent[e.conj(phi0(s), sub.to_parent[x])];
        if (y == no_elem) {
          detail::fail(ErrorKind::NotAnAction,
                       "conjugation by phi0 does not preserve the coefficient subgroup");
        }
        action[s][x] = y;
      }
    }
    auto coeff = GammaGroup::make_unchecked(phi0.source(), sub.group, std::move(action));
    return ConjugationCoefficients{std::move(coeff), inclusion(sub, phi0.target())};
  }

  // The difference γ ↦ p(γ) p0(γ)^-1 of two lifts of the same map to Γ,
  // as a cocycle with coefficients in `target` (E' acting by conjugation
  // through p0).
  inline Cocycle lift_difference(GroupHom const& p, GroupHom const& p0,
                                 GroupHom const& projection, Subgroup const& target) {
    if (!(*p.source() == *p0.source()) || !(*p.target() == *p0.target())) {
      detail::fail(ErrorKind::NotALift, "lifts have different source or target");
    }
    for (Elem x = 0; x < p.source()->order(); ++x) {
      if (projection(p(x)) != projection(p0(x))) {
        detail::fail(ErrorKind::NotALift,
                     "projections disagree at element " + std::to_string(x));
      }
    }
    auto const& ev = *p.target();
    for (Elem x = 0; x < p.source()->order(); ++x) {
      if (!target.contains(ev.mul(p(x), ev.inv(p0(x))))) {
        detail::fail(ErrorKind::DifferenceEscapesA,
                     "p(x) p0(x)^-1 leaves the coefficient subgroup at x = " + std::to_string(x));
      }
    }
    auto              cc = conjugation_coefficients(p0, target);
    auto              sub = subgroup_as_group(target);
    std::vector<Elem> values(p.source()->order());
    for (Elem x = 0; x < values.size(); ++x) {
      values[x] = sub.from_parent[ev.mul(p(x), ev.inv(p0(x)))];
    }
    if (!is_cocycle(*cc.coeff, values)) {
      detail::fail(ErrorKind::InvariantViolated, "difference of lifts is not a cocycle");
    }
    return Cocycle(cc.coeff, std::move(values), Cocycle::unchecked_tag{});
  }

}  // namespace seclab

#endif  // SECLAB_EXTENSION_HPP_
