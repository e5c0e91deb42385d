#ifndef SECLAB_GAMMA_GROUP_HPP_
#define SECLAB_GAMMA_GROUP_HPP_

#include <algorithm>
#include <memory>
#include <numeric>
#include <span>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace seclab {

  class GammaGroup;
  using GammaGroupPtr = std::shared_ptr<GammaGroup const>;

  // A finite group M together with an action of a finite group Γ on M by
  // automorphisms. action[σ][m] is σ(m).
  class GammaGroup {
   public:
    struct unchecked_tag {};

    static GammaGroupPtr make(GroupPtr gamma, GroupPtr m,
                              std::vector<std::vector<Elem>> action,
                              std::string label = {}) {
      auto out = std::shared_ptr<GammaGroup>(new GammaGroup(
          std::move(gamma), std::move(m), std::move(action), std::move(label)));
      out->validate();
      return out;
    }

    static GammaGroupPtr make_unchecked(GroupPtr gamma, GroupPtr m,
                                        std::vector<std::vector<Elem>> action,
                                        std::string label = {}) {
      return std::shared_ptr<GammaGroup const>(new GammaGroup(
          std::move(gamma), std::move(m), std::move(action), std::move(label)));
    }

    static GammaGroupPtr constant(GroupPtr gamma, GroupPtr m, std::string label = {}) {
      std::vector<Elem> id(m->order());
      std::iota(id.begin(), id.end(), Elem{0});
      std::vector<std::vector<Elem>> action(gamma->order(), id);
      return make_unchecked(std::move(gamma), std::move(m), std::move(action),
                            std::move(label));
    }

    // auts[k] is the automorphism by which gamma->generators()[k] acts.
    static GammaGroupPtr from_generator_actions(GroupPtr gamma, GroupPtr m,
                                                std::vector<std::vector<Elem>> const& auts,
                                                std::string label = {}) {
      if (auts.size() != gamma->generators().size()) {
        detail::fail(ErrorKind::NotAnAction, "need one automorphism per generator");
      }
      std::vector<std::vector<Elem>> action(gamma->order());
      std::vector<Elem>              id(m->order());
      std::iota(id.begin(), id.end(), Elem{0});
      action[gamma->identity()] = id;
      for (std::size_t i = 1; i < gamma->tree_order().size(); ++i) {
        Elem const  g = gamma->tree_order()[i];
        auto const& p = action[gamma->tree_parent(g)];
        auto const& s = auts[gamma->tree_step(g)];
        if (s.size() != m->order()) {
          detail::fail(ErrorKind::NotAnAction, "automorphism has wrong length");
        }
        action[g].resize(m->order());
        for (Elem x = 0; x < m->order(); ++x) {
          action[g][x] = p[s[x]];
        }
      }
      return make(std::move(gamma), std::move(m), std::move(action), std::move(label));
    }

    GroupPtr const& gamma() const noexcept {
      return _gamma;
    }
    GroupPtr const& coefficients() const noexcept {
      return _m;
    }
    Elem act(Elem sigma, Elem x) const noexcept {
      return _action[sigma][x];
    }
    std::vector<std::vector<Elem>> const& action() const noexcept {
      return _action;
    }
    std::string const& label() const noexcept {
      return _label;
    }

    bool is_trivial_action() const noexcept {
      for (auto const& row : _action) {
        for (Elem x = 0; x < row.size(); ++x) {
          if (row[x] != x) {
            return false;
          }
        }
      }
      return true;
    }

    friend bool operator==(GammaGroup const& a, GammaGroup const& b) {
      return *a._gamma == *b._gamma && *a._m == *b._m && a._action == b._action;
    }

   private:
    GammaGroup(GroupPtr gamma, GroupPtr m, std::vector<std::vector<Elem>> action,
               std::string label)
        : _gamma(std::move(gamma)),
          _m(std::move(m)),
          _action(std::move(action)),
          _label(std::move(label)) {}

    void validate() const {
      auto const& g = *_gamma;
      auto const& m = *_m;
      if (_action.size() != g.order()) {
        detail::fail(ErrorKind::NotAnAction, "need one map per element of Γ");
      }
      for (Elem s = 0; s < g.order(); ++s) {
        auto const& f = _action[s];
        if (f.size() != m.order()) {
          detail::fail(ErrorKind::NotAnAction, "map has wrong length");
        }
        std::vector<char> hit(m.order(), 0);
        for (Elem x = 0; x < m.order(); ++x) {
          if (f[x] >= m.order() || hit[f[x]]) {
            detail::fail(ErrorKind::NotAnAction,
                         "element " + std::to_string(s) + " does not act bijectively");
          }
          hit[f[x]] = 1;
          for (Elem y = 0; y < m.order(); ++y) {
            if (f[m.mul(x, y)] != m.mul(f[x], f[y])) {
              detail::fail(ErrorKind::NotAnAction,
                           "element " + std::to_string(s)
                               + " does not act by a homomorphism");
            }
          }
        }
      }
      for (Elem x = 0; x < m.order(); ++x) {
        if (_action[g.identity()][x] != x) {
          detail::fail(ErrorKind::NotAnAction, "identity acts nontrivially");
        }
      }
      for (Elem s = 0; s < g.order(); ++s) {
        for (Elem t = 0; t < g.order(); ++t) {
          auto const& st = _action[g.mul(s, t)];
          for (Elem x = 0; x < m.order(); ++x) {
            if (st[x] != _action[s][_action[t][x]]) {
              detail::fail(ErrorKind::NotAnAction,
                           "(" + std::to_string(s) + "*" + std::to_string(t)
                               + ") acts differently from the composite");
            }
          }
        }
      }
    }

    GroupPtr                       _gamma;
    GroupPtr                       _m;
    std::vector<std::vector<Elem>> _action;
    std::string                    _label;
  };

  // The Γ'-group obtained by letting Γ' act through f : Γ' -> Γ.
  inline GammaGroupPtr pullback_coefficients(GammaGroupPtr const& coeff, GroupHom const& f) {
    if (!(*f.target() == *coeff->gamma())) {
      detail::fail(ErrorKind::ActionMismatch, "hom target is not the acting group");
    }
    std::vector<std::vector<Elem>> action(f.source()->order());
    for (Elem s = 0; s < action.size(); ++s) {
      action[s] = coeff->action()[f(s)];
    }
    return GammaGroup::make_unchecked(f.source(), coeff->coefficients(), std::move(action),
                                      coeff->label());
  }

  inline bool is_cocycle(GammaGroup const& coeff, std::span<Elem const> values) {
    auto const& g = *coeff.gamma();
    auto const& m = *coeff.coefficients();
    if (values.size() != g.order()) {
      return false;
    }
    for (Elem v : values) {
      if (v >= m.order()) {
        return false;
      }
    }
    for (Elem s = 0; s < g.order(); ++s) {
      for (Elem t = 0; t < g.order(); ++t) {
        if (values[g.mul(s, t)] != m.mul(values[s], coeff.act(s, values[t]))) {
          return false;
        }
      }
    }
    return true;
  }

  // A 1-cocycle σ ↦ a_σ with a_{στ} = a_σ · σ(a_τ).
  class Cocycle {
   public:
    struct unchecked_tag {};

    Cocycle(GammaGroupPtr parent, std::vector<Elem> values)
        : _parent(std::move(parent)), _values(std::move(values)) {
      if (!is_cocycle(*_parent, _values)) {
        detail::fail(ErrorKind::NotACocycle, detail::str(_values));
      }
    }

    Cocycle(GammaGroupPtr parent, std::vector<Elem> values, unchecked_tag)
        : _parent(std::move(parent)), _values(std::move(values)) {}

    static Cocycle trivial(GammaGroupPtr parent) {
      std::vector<Elem> v(parent->gamma()->order(), parent->coefficients()->identity());
      return Cocycle(std::move(parent), std::move(v), unchecked_tag{});
    }

    GammaGroupPtr const& parent() const noexcept {
      return _parent;
    }
    std::vector<Elem> const& values() const noexcept {
      return _values;
    }
    Elem operator()(Elem sigma) const noexcept {
      return _values[sigma];
    }
    bool is_trivial() const noexcept {
      auto e = _parent->coefficients()->identity();
      return std::all_of(_values.begin(), _values.end(), [e](Elem v) { return v == e; });
    }

    friend bool operator==(Cocycle const& a, Cocycle const& b) {
      return a._values == b._values;
    }

   private:
    GammaGroupPtr     _parent;
    std::vector<Elem> _values;
  };

  // σ ↦ c^-1 · a_σ · σ(c)
  inline std::vector<Elem> coboundary_twist(GammaGroup const& coeff, std::span<Elem const> a,
                                            Elem c) {
    auto const&       m = *coeff.coefficients();
    Elem const        ci = m.inv(c);
    std::vector<Elem> b(a.size());
    for (Elem s = 0; s < a.size(); ++s) {
      b[s] = m.mul(m.mul(ci, a[s]), coeff.act(s, c));
    }
    return b;
  }

  // Returns c with b_σ = c^-1 · a_σ · σ(c) for all σ, if one exists.
  inline std::optional<Elem> cohomologous_witness(Cocycle const& a, Cocycle const& b) {
    auto const& coeff = *a.parent();
    auto const& m     = *coeff.coefficients();
    for (Elem c = 0; c < m.order(); ++c) {
      if (coboundary_twist(coeff, a.values(), c) == b.values()) {
        return c;
      }
    }
    return std::nullopt;
  }

  inline bool cohomologous(Cocycle const& a, Cocycle const& b) {
    return cohomologous_witness(a, b).has_value();
  }

  // Least cocycle (lexicographically) in the cohomology class of `values`.
  inline std::vector<Elem> canonical_form(GammaGroup const& coeff, std::span<Elem const> values) {
    std::vector<Elem> best(values.begin(), values.end());
    auto const&       m = *coeff.coefficients();
    for (Elem c = 0; c < m.order(); ++c) {
      auto b = coboundary_twist(coeff, values, c);
      if (b < best) {
        best = std::move(b);
      }
    }
    return best;
  }

}  // namespace seclab

#endif  // SECLAB_GAMMA_GROUP_HPP_
