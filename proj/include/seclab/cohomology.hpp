#ifndef SECLAB_COHOMOLOGY_HPP_
#define SECLAB_COHOMOLOGY_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "extension.hpp"
#include "gamma_group.hpp"
#include "group.hpp"

namespace seclab {

  // All cocycles Γ -> M, sorted. Values are seeded on the generators of Γ,
  // propagated along the Cayley tree and then checked on every pair.
  inline std::vector<Cocycle> enumerate_cocycles(GammaGroupPtr const& coeff) {
    auto const&                    g = *coeff->gamma();
    auto const&                    m = *coeff->coefficients();
    std::vector<Elem>              all(m.order());
    std::iota(all.begin(), all.end(), Elem{0});
    std::vector<std::vector<Elem>> candidates(g.generators().size(), all);
    std::vector<Cocycle>           out;
    detail::for_each_tuple(candidates, [&](std::vector<Elem> const& seed) {
      auto values = detail::extend_along_tree(
          g, m.identity(), [&](Elem v, Elem x, std::size_t k) {
            return m.mul(v, coeff->act(x, seed[k]));
          });
      if (values) {
        out.emplace_back(coeff, std::move(*values));
      }
    });
    std::sort(out.begin(), out.end(),
              [](Cocycle const& a, Cocycle const& b) { return a.values() < b.values(); });
    return out;
  }

  // H^1(Γ, M) as a partition of all cocycles. The representative of each
  // class is its lexicographically least cocycle; classes are ordered by
  // representative.
  struct H1Classes {
    GammaGroupPtr                         parent;
    std::vector<Cocycle>                  cocycles;
    std::vector<std::size_t>              class_of;  // cocycle index -> class index
    std::vector<std::vector<std::size_t>> classes;   // class -> cocycle indices
    std::vector<Cocycle>                  representatives;

    std::size_t size() const noexcept {
      return classes.size();
    }

    std::size_t class_index(Cocycle const& a) const {
      auto key = canonical_form(*parent, a.values());
      for (std::size_t c = 0; c < representatives.size(); ++c) {
        if (representatives[c].values() == key) {
          return c;
        }
      }
      detail::fail(ErrorKind::NotACocycle, "cocycle not found in H1");
    }
  };

  inline H1Classes h1(GammaGroupPtr const& coeff) {
    H1Classes r;
    r.parent   = coeff;
    r.cocycles = enumerate_cocycles(coeff);
    std::map<std::vector<Elem>, std::size_t> by_rep;
    std::vector<std::vector<Elem>>           keys(r.cocycles.size());
    for (std::size_t i = 0; i < r.cocycles.size(); ++i) {
      keys[i] = canonical_form(*coeff, r.cocycles[i].values());
      by_rep.emplace(keys[i], 0);
    }
    std::size_t c = 0;
    for (auto& [key, idx] : by_rep) {
      idx = c++;
      r.representatives.emplace_back(coeff, key, Cocycle::unchecked_tag{});
    }
    r.classes.resize(by_rep.size());
    r.class_of.resize(r.cocycles.size());
    for (std::size_t i = 0; i < r.cocycles.size(); ++i) {
      r.class_of[i] = by_rep.at(keys[i]);
      r.classes[r.class_of[i]].push_back(i);
    }
    return r;
  }

  // σ ↦ γ^-1(a_{γσγ^-1}). The result is checked to be cohomologous to `a`
  // through c = γ^-1(a_γ): b_σ = c · a_σ · σ(c)^-1.
  inline Cocycle inner_pullback(Cocycle const& a, Elem gamma_elt) {
    auto const&       coeff = *a.parent();
    auto const&       g     = *coeff.gamma();
    auto const&       m     = *coeff.coefficients();
    Elem const        gi    = g.inv(gamma_elt);
    std::vector<Elem> b(g.order());
    for (Elem s = 0; s < g.order(); ++s) {
      b[s] = coeff.act(gi, a(g.conj(gamma_elt, s)));
    }
    Elem const c = coeff.act(gi, a(gamma_elt));
    for (Elem s = 0; s < g.order(); ++s) {
      if (b[s] != m.mul(m.mul(c, a(s)), m.inv(coeff.act(s, c)))) {
        detail::fail(ErrorKind::InvariantViolated,
                     "inner pullback is not cohomologous via gamma^-1(a_gamma)");
      }
    }
    return Cocycle(a.parent(), std::move(b));
  }

  // γ ↦ embed(a_γ) · phi0(γ). The coefficients of `a` must be a subgroup of
  // E (via `embed`) on which Γ acts by conjugation through phi0.
  inline GroupHom twist_lift(GroupHom const& phi0, Cocycle const& a, GroupHom const& embed) {
    auto const& coeff = *a.parent();
    auto const& e     = *phi0.target();
    if (!(*coeff.gamma() == *phi0.source()) || !(*embed.target() == e)
        || !(*embed.source() == *coeff.coefficients())) {
      detail::fail(ErrorKind::NotACocycleForThisAction, "groups do not match");
    }
    for (Elem s = 0; s < coeff.gamma()->order(); ++s) {
      for (Elem x = 0; x < coeff.coefficients()->order(); ++x) {
        if (embed(coeff.act(s, x)) != e.conj(phi0(s), embed(x))) {
          detail::fail(ErrorKind::NotACocycleForThisAction,
                       "action of " + std::to_string(s) + " is not conjugation by phi0");
        }
      }
    }
    std::vector<Elem> m(phi0.source()->order());
    for (Elem s = 0; s < m.size(); ++s) {
      m[s] = e.mul(embed(a(s)), phi0(s));
    }
    return GroupHom(phi0.source(), phi0.target(), std::move(m));
  }

  struct LiftClasses {
    std::vector<GroupHom>                 lifts;
    std::vector<std::vector<std::size_t>> classes;  // conjugacy by the kernel
    std::size_t                           h1_size = 0;  // 0 when there is no lift
  };

  // Lifts of phibar : Γ' -> Γ through ext up to conjugation by iota(A).
  // When a lift exists, the class count is checked against H^1(Γ', A) with
  // conjugation action through the least lift.
  inline LiftClasses lifts_up_to_conjugacy(Extension const& ext, GroupHom const& phibar) {
    LiftClasses r;
    r.lifts   = enumerate_lifts(phibar, ext.pi());
    r.classes = conjugacy_partition(r.lifts, ext.image_of_a());
    if (!r.lifts.empty()) {
      auto cc   = conjugation_coefficients(r.lifts.front(), ext.image_of_a());
      r.h1_size = h1(cc.coeff).size();
      if (r.h1_size != r.classes.size()) {
        detail::fail(ErrorKind::InvariantViolated,
                     "lift classes (" + std::to_string(r.classes.size())
                         + ") differ from |H1| (" + std::to_string(r.h1_size) + ")");
      }
    }
    return r;
  }

  // σ ↦ a_{θ(σ)} with Γ_i acting through θ.
  inline Cocycle restrict_class(GroupHom const& theta, Cocycle const& a) {
    auto              coeff = pullback_coefficients(a.parent(), theta);
    std::vector<Elem> v(theta.source()->order());
    for (Elem s = 0; s < v.size(); ++s) {
      v[s] = a(theta(s));
    }
    return Cocycle(std::move(coeff), std::move(v), Cocycle::unchecked_tag{});
  }

  // s^*(a) for a cocycle over E. When `expected` is given, the pulled-back
  // action must coincide with it (the local coefficients θ_i^* M).
  inline Cocycle pullback_class(GroupHom const& s, Cocycle const& a,
                                GammaGroupPtr const& expected = nullptr) {
    auto r = restrict_class(s, a);
    if (expected) {
      if (!(*expected->gamma() == *r.parent()->gamma())
          || expected->action() != r.parent()->action()) {
        detail::fail(ErrorKind::ActionMismatch,
                     "pulled-back action differs from the local coefficients");
      }
      return Cocycle(expected, r.values(), Cocycle::unchecked_tag{});
    }
    return r;
  }

  // Inflation along q : E -> E' of a cocycle over E'.
  inline Cocycle inflate_class(GroupHom const& q, Cocycle const& a) {
    return restrict_class(q, a);
  }

  // The unique cocycle over E' inflating to `a`, for surjective q whose
  // kernel acts trivially and on which `a` is trivial.
  inline Cocycle descend_class(GroupHom const& q, Cocycle const& a) {
    auto const& coeff = *a.parent();
    auto const& m     = *coeff.coefficients();
    if (!(*q.source() == *coeff.gamma())) {
      detail::fail(ErrorKind::ActionMismatch, "q does not start at the acting group");
    }
    if (!is_surjective(q)) {
      detail::fail(ErrorKind::NotSurjective, "descend_class needs a surjection");
    }
    auto const ker = kernel(q);
    for (Elem k : ker.elements()) {
      if (a(k) != m.identity()) {
        detail::fail(ErrorKind::NotTrivialOnKernel,
                     "a(" + std::to_string(k) + ") = " + std::to_string(a(k)));
      }
      for (Elem x = 0; x < m.order(); ++x) {
        if (coeff.act(k, x) != x) {
          detail::fail(ErrorKind::NotTrivialOnKernel,
                       "kernel element " + std::to_string(k) + " acts nontrivially");
        }
      }
    }
    std::size_t const              n = q.target()->order();
    std::vector<std::vector<Elem>> action(n);
    std::vector<Elem>              v(n);
    for (Elem x = 0; x < q.source()->order(); ++x) {
      action[q(x)] = coeff.action()[x];
      v[q(x)]      = a(x);
    }
    auto down = GammaGroup::make_unchecked(q.target(), coeff.coefficients(), std::move(action),
                                           coeff.label());
    return Cocycle(std::move(down), std::move(v));
  }

  struct TwistedCoefficients {
    GammaGroupPtr            twisted;    // σ * m = a_σ σ(m) a_σ^-1
    std::vector<std::size_t> class_map;  // h1(original) index -> h1(twisted) index
  };

  // b ↦ (σ ↦ b_σ a_σ^-1), a cocycle for the twisted action.
  inline Cocycle twist_cocycle(Cocycle const& b, Cocycle const& a, GammaGroupPtr const& twisted) {
    auto const&       m = *a.parent()->coefficients();
    std::vector<Elem> v(b.values().size());
    for (Elem s = 0; s < v.size(); ++s) {
      v[s] = m.mul(b(s), m.inv(a(s)));
    }
    return Cocycle(twisted, std::move(v));
  }

  inline TwistedCoefficients twist_coefficients(Cocycle const& a) {
    auto const&                    coeff = *a.parent();
    auto const&                    m     = *coeff.coefficients();
    std::vector<std::vector<Elem>> action(coeff.gamma()->order(),
                                          std::vector<Elem>(m.order()));
    for (Elem s = 0; s < action.size(); ++s) {
      for (Elem x = 0; x < m.order(); ++x) {
        action[s][x] = m.conj(a(s), coeff.act(s, x));
      }
    }
    TwistedCoefficients out;
    out.twisted = GammaGroup::make(coeff.gamma(), coeff.coefficients(), std::move(action),
                                   coeff.label() + "_twisted");
    auto const before = h1(a.parent());
    auto const after  = h1(out.twisted);
    std::vector<char> hit(after.size(), 0);
    for (auto const& rep : before.representatives) {
      auto const c = after.class_index(twist_cocycle(rep, a, out.twisted));
      if (hit[c]) {
        detail::fail(ErrorKind::InvariantViolated, "twisting map is not injective on classes");
      }
      hit[c] = 1;
      out.class_map.push_back(c);
    }
    if (before.size() != after.size()) {
      detail::fail(ErrorKind::InvariantViolated, "twisting map is not surjective on classes");
    }
    return out;
  }

}  // namespace seclab

#endif  // SECLAB_COHOMOLOGY_HPP_
