#ifndef SECLAB_LOCALGLOBAL_HPP_
#define SECLAB_LOCALGLOBAL_HPP_

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cohomology.hpp"
#include "error.hpp"
#include "extension.hpp"
#include "gamma_group.hpp"
#include "group.hpp"

namespace seclab {

  ////////////////////////////////////////////////////////////////////////
  // Local data
  ////////////////////////////////////////////////////////////////////////

  struct Local {
    GroupPtr group;  // Γ_i
    GroupHom theta;  // Γ_i -> Γ
  };

  class LocalFamily {
   public:
    LocalFamily() = default;

    LocalFamily(GroupPtr gamma, std::vector<Local> locals)
        : _gamma(std::move(gamma)), _locals(std::move(locals)) {
      for (std::size_t i = 0; i < _locals.size(); ++i) {
        auto const& l = _locals[i];
        if (!(*l.theta.source() == *l.group) || !(*l.theta.target() == *_gamma)) {
          detail::fail(ErrorKind::NotAHomomorphism,
                       "local " + std::to_string(i) + ": theta is not Γ_i -> Γ");
        }
      }
    }

    GroupPtr const& gamma() const noexcept {
      return _gamma;
    }
    std::vector<Local> const& locals() const noexcept {
      return _locals;
    }
    std::size_t size() const noexcept {
      return _locals.size();
    }

   private:
    GroupPtr           _gamma;
    std::vector<Local> _locals;
  };

  // Local section maps s_i : Γ_i -> E with pi ∘ s_i = θ_i.
  class LocalSections {
   public:
    LocalSections() = default;

    LocalSections(Extension ext, LocalFamily family, std::vector<GroupHom> sections)
        : _ext(std::move(ext)), _family(std::move(family)), _sections(std::move(sections)) {
      if (!(*_family.gamma() == *_ext.gamma())) {
        detail::fail(ErrorKind::NotASectionMap, "family and extension have different Γ");
      }
      if (_sections.size() != _family.size()) {
        detail::fail(ErrorKind::NotASectionMap, "need one section map per local");
      }
      for (std::size_t i = 0; i < _sections.size(); ++i) {
        auto const& s = _sections[i];
        auto const& l = _family.locals()[i];
        if (!(*s.source() == *l.group) || !(*s.target() == *_ext.e())
            || compose(_ext.pi(), s).map() != l.theta.map()) {
          detail::fail(ErrorKind::NotASectionMap,
                       "local " + std::to_string(i) + ": pi ∘ s_i differs from theta_i");
        }
      }
    }

    // Family read off from the sections: θ_i = pi ∘ s_i.
    static LocalSections from_sections(Extension ext, std::vector<GroupHom> sections) {
      std::vector<Local> locals;
      for (auto const& s : sections) {
        locals.push_back(Local{s.source(), compose(ext.pi(), s)});
      }
      LocalFamily family(ext.gamma(), std::move(locals));
      return LocalSections(std::move(ext), std::move(family), std::move(sections));
    }

    Extension const& ext() const noexcept {
      return _ext;
    }
    LocalFamily const& family() const noexcept {
      return _family;
    }
    std::vector<GroupHom> const& sections() const noexcept {
      return _sections;
    }

   private:
    Extension             _ext;
    LocalFamily           _family;
    std::vector<GroupHom> _sections;
  };

  enum class Provenance { ConstantQuotientOfE, AQuotientWithSectionAction, UserSupplied };

  inline std::string to_string(Provenance p) {
    switch (p) {
      case Provenance::ConstantQuotientOfE: return "constant-quotient-of-E";
      case Provenance::AQuotientWithSectionAction: return "A-quotient-with-section-action";
      case Provenance::UserSupplied: return "user-supplied";
    }
    return "unknown";
  }

  struct CorpusEntry {
    GammaGroupPtr coeff;  // a Γ-group
    Provenance    provenance;
    std::string   name;
  };

  using CoefficientCorpus = std::vector<CorpusEntry>;

  ////////////////////////////////////////////////////////////////////////
  // Density and family transport
  ////////////////////////////////////////////////////////////////////////

  // ⋃_i ⋃_g g θ_i(Γ_i) g^-1, sorted.
  inline std::vector<Elem> conjugates_of_local_images(LocalFamily const& family) {
    auto const&       g = *family.gamma();
    std::vector<char> in(g.order(), 0);
    for (auto const& l : family.locals()) {
      auto const im = image(l.theta);
      for (Elem y : im.elements()) {
        for (Elem x = 0; x < g.order(); ++x) {
          in[g.conj(x, y)] = 1;
        }
      }
    }
    std::vector<Elem> out;
    for (Elem x = 0; x < g.order(); ++x) {
      if (in[x]) {
        out.push_back(x);
      }
    }
    return out;
  }

  // In a finite group a dense subset is the whole group.
  inline bool check_density(LocalFamily const& family) {
    return conjugates_of_local_images(family).size() == family.gamma()->order();
  }

  struct TransportedFamily {
    LocalFamily                              family;  // over Γ'
    SubgroupGroup                            gamma_prime;
    std::vector<std::pair<std::size_t, Elem>> index;  // (i, σ) per transported local
  };

  // The family over Γ' <= Γ with locals Γ'_{i,σ} = θ_i^-1(σ^-1 Γ' σ) and
  // θ'_{i,σ} = σ θ_i(-) σ^-1, σ running over right coset representatives.
  inline TransportedFamily transport_family(LocalFamily const& family, Subgroup const& gamma_prime) {
    auto const&       g = *family.gamma();
    TransportedFamily out;
    out.gamma_prime     = subgroup_as_group(gamma_prime);
    auto const reps     = right_coset_representatives(gamma_prime);
    std::vector<Local> locals;
    for (std::size_t i = 0; i < family.size(); ++i) {
      auto const& l = family.locals()[i];
      for (Elem sigma : reps) {
        std::vector<Elem> pre;
        for (Elem x = 0; x < l.group->order(); ++x) {
          if (gamma_prime.contains(g.conj(sigma, l.theta(x)))) {
            pre.push_back(x);
          }
        }
        Subgroup const sub(l.group, std::move(pre));
        auto           local_group = subgroup_as_group(sub);
        std::vector<Elem> theta(sub.size());
        for (Elem k = 0; k < sub.size(); ++k) {
          theta[k] = out.gamma_prime.from_parent[g.conj(sigma, l.theta(local_group.to_parent[k]))];
        }
        locals.push_back(Local{local_group.group,
                               GroupHom(local_group.group, out.gamma_prime.group,
                                        std::move(theta), GroupHom::unchecked_tag{})});
        out.index.emplace_back(i, sigma);
      }
    }
    out.family = LocalFamily(out.gamma_prime.group, std::move(locals));
    if (check_density(family) && !check_density(out.family)) {
      detail::fail(ErrorKind::InvariantViolated, "transport lost density");
    }
    return out;
  }

  // Classes β over Γ with θ_i^*(β) ~ θ_i^*(α) for every local; indices into h1(α's coefficients).
  inline std::vector<std::size_t> diagonal_fibre(Cocycle const& alpha, LocalFamily const& family) {
    auto const      classes = h1(alpha.parent());
    auto key = [&](Cocycle const& c) {
      std::vector<std::vector<Elem>> k;
      for (auto const& l : family.locals()) {
        auto r = restrict_class(l.theta, c);
        k.push_back(canonical_form(*r.parent(), r.values()));
      }
      return k;
    };
    auto const               target = key(alpha);
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (key(classes.representatives[c]) == target) {
        out.push_back(c);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Properties (b) and (c)
  ////////////////////////////////////////////////////////////////////////

  // s with s ∘ θ_i = c_i s_i(-) c_i^-1 for every local.
  struct Interpolation {
    GroupHom          s;
    std::vector<Elem> conjugators;
  };

  inline std::optional<std::vector<Elem>> interpolation_conjugators(LocalSections const& ls,
                                                                    GroupHom const&      s,
                                                                    Subgroup const& allowed) {
    std::vector<Elem> cs;
    for (std::size_t i = 0; i < ls.sections().size(); ++i) {
      auto const target = compose(s, ls.family().locals()[i].theta);
      auto const c      = conjugating_element(ls.sections()[i], target, allowed);
      if (!c) {
        return std::nullopt;
      }
      cs.push_back(*c);
    }
    return cs;
  }

  // Checks s ∘ θ_i = c_i s_i c_i^-1 on every element, with c_i in `allowed`.
  inline bool is_valid_interpolation(LocalSections const& ls, Interpolation const& w,
                                     Subgroup const& allowed) {
    auto const& e = *ls.ext().e();
    if (w.conjugators.size() != ls.sections().size()) {
      return false;
    }
    for (std::size_t i = 0; i < ls.sections().size(); ++i) {
      auto const& l = ls.family().locals()[i];
      Elem const  c = w.conjugators[i];
      if (!allowed.contains(c)) {
        return false;
      }
      for (Elem x = 0; x < l.group->order(); ++x) {
        if (w.s(l.theta(x)) != e.conj(c, ls.sections()[i](x))) {
          return false;
        }
      }
    }
    return true;
  }

  inline std::optional<Interpolation> decide_b(LocalSections const& ls) {
    auto const& ext = ls.ext();
    auto const  whole = Subgroup::whole(ext.e());
    for (auto const& s : enumerate_homs(ext.gamma(), ext.e())) {
      if (auto cs = interpolation_conjugators(ls, s, whole)) {
        return Interpolation{s, std::move(*cs)};
      }
    }
    return std::nullopt;
  }

  inline std::optional<Interpolation> decide_c(LocalSections const& ls) {
    auto const& ext = ls.ext();
    for (auto const& s : enumerate_lifts(identity_hom(ext.gamma()), ext.pi())) {
      if (auto cs = interpolation_conjugators(ls, s, ext.image_of_a())) {
        return Interpolation{s, std::move(*cs)};
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Descent properties (a), (a'), (a'')
  ////////////////////////////////////////////////////////////////////////

  struct DescentWitness {
    std::size_t entry = 0;  // index into the corpus
    Cocycle     alpha;      // failing class over E
  };

  struct DescentVerdict {
    bool                          holds = true;
    std::optional<DescentWitness> witness;
    std::size_t                   entries_checked = 0;
    std::size_t                   classes_checked = 0;
  };

  using ClassFilter = std::function<bool(Cocycle const&)>;

  namespace detail {
    using LocalKey = std::vector<std::vector<Elem>>;

    // Canonical forms of the local restrictions of a cocycle.
    inline LocalKey local_key(Cocycle const& c, std::vector<GroupHom> const& maps) {
      LocalKey k;
      k.reserve(maps.size());
      for (auto const& f : maps) {
        auto r = restrict_class(f, c);
        k.push_back(canonical_form(*r.parent(), r.values()));
      }
      return k;
    }
  }  // namespace detail

  // Does (α(s_i))_i lie in the diagonal image of H^1(Γ, M) for every class
  // α over E (E acting on M through pi) accepted by `filter`?
  inline DescentVerdict check_descent_entry(LocalSections const& ls, CorpusEntry const& entry,
                                            ClassFilter const& filter = nullptr) {
    auto const& ext = ls.ext();
    if (!(*entry.coeff->gamma() == *ext.gamma())) {
      detail::fail(ErrorKind::ActionMismatch,
                   "corpus entry " + entry.name + " is not a Γ-group for this extension");
    }
    std::vector<GroupHom> thetas;
    for (auto const& l : ls.family().locals()) {
      thetas.push_back(l.theta);
    }
    std::set<detail::LocalKey> diagonal;
    for (auto const& beta : h1(entry.coeff).representatives) {
      diagonal.insert(detail::local_key(beta, thetas));
    }
    DescentVerdict v;
    v.entries_checked = 1;
    auto const over_e = pullback_coefficients(entry.coeff, ext.pi());
    for (auto const& alpha : h1(over_e).representatives) {
      if (filter && !filter(alpha)) {
        continue;
      }
      ++v.classes_checked;
      if (!diagonal.contains(detail::local_key(alpha, ls.sections()))) {
        v.holds   = false;
        v.witness = DescentWitness{0, alpha};
        return v;
      }
    }
    return v;
  }

  inline DescentVerdict decide_a_with_filter(LocalSections const&     ls,
                                             CoefficientCorpus const& corpus,
                                             ClassFilter const&       filter) {
    DescentVerdict total;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      auto v = check_descent_entry(ls, corpus[k], filter);
      total.entries_checked += 1;
      total.classes_checked += v.classes_checked;
      if (!v.holds) {
        total.holds          = false;
        total.witness        = std::move(v.witness);
        total.witness->entry = k;
        return total;
      }
    }
    return total;
  }

  inline DescentVerdict decide_a(LocalSections const& ls, CoefficientCorpus const& corpus) {
    return decide_a_with_filter(ls, corpus, nullptr);
  }

  inline constexpr std::size_t default_quotient_bound = 64;

  // Every quotient E/K of order <= bound as a constant Γ-group.
  inline CoefficientCorpus constant_quotient_corpus(Extension const& ext,
                                                    std::size_t bound = default_quotient_bound) {
    CoefficientCorpus out;
    for (auto const& k : all_normal_subgroups(ext.e())) {
      if (k.index() > bound) {
        continue;
      }
      auto q = quotient(k);
      out.push_back(CorpusEntry{GammaGroup::constant(ext.gamma(), q.group),
                                Provenance::ConstantQuotientOfE,
                                "E/K[" + std::to_string(k.size()) + ":" + detail::str(k.elements())
                                    + "]"});
    }
    return out;
  }

  // A/V for normal subgroups V of E inside iota(A), with Γ acting by
  // conjugation through s0. Without s0 only the abelian A/V are used: there
  // conjugation by E factors through Γ.
  inline CoefficientCorpus geometric_corpus(Extension const& ext) {
    CoefficientCorpus out;
    auto const        s0 = first_section(ext);
    auto const&       e  = *ext.e();
    for (auto const& v : all_normal_subgroups_between(ext.image_of_a())) {
      auto const     qa = quotient(v);
      Subgroup const av(qa.group, [&] {
        std::vector<Elem> xs;
        for (Elem a : ext.image_of_a().elements()) {
          xs.push_back(qa.map(a));
        }
        return xs;
      }());
      auto aq = subgroup_as_group(av);  // A/V as its own group
      if (!s0 && !aq.group->is_abelian()) {
        continue;
      }
      // lift of each γ used for conjugation
      std::vector<Elem> lift(ext.gamma()->order(), 0);
      if (s0) {
        lift = s0->map();
      } else {
        for (Elem x = e.order(); x-- > 0;) {
          lift[ext.pi()(x)] = x;
        }
      }
      std::vector<std::vector<Elem>> action(ext.gamma()->order(), std::vector<Elem>(aq.group->order()));
      for (Elem g = 0; g < action.size(); ++g) {
        for (Elem k = 0; k < aq.group->order(); ++k) {
          // pick any preimage in E of the coset, conjugate, and project
          Elem const coset = aq.to_parent[k];
          Elem       pre   = no_elem;
          for (Elem a : ext.image_of_a().elements()) {
            if (qa.map(a) == coset) {
              pre = a;
              break;
            }
          }
          action[g][k] = aq.from_parent[qa.map(e.conj(lift[g], pre))];
        }
      }
      out.push_back(CorpusEntry{
          GammaGroup::make(ext.gamma(), aq.group, std::move(action)),
          Provenance::AQuotientWithSectionAction,
          "A/V[" + std::to_string(v.size()) + ":" + detail::str(v.elements()) + "]"});
    }
    return out;
  }

  // Corpus for (a): constant quotients, the geometric corpus and user entries.
  inline CoefficientCorpus full_corpus(Extension const& ext, std::size_t bound = default_quotient_bound,
                                       CoefficientCorpus const& user = {}) {
    auto out = constant_quotient_corpus(ext, bound);
    for (auto& x : geometric_corpus(ext)) {
      out.push_back(std::move(x));
    }
    for (auto const& x : user) {
      out.push_back(CorpusEntry{x.coeff, Provenance::UserSupplied, x.name});
    }
    return out;
  }

  inline DescentVerdict decide_a_prime(LocalSections const& ls,
                                       std::size_t bound = default_quotient_bound) {
    return decide_a(ls, constant_quotient_corpus(ls.ext(), bound));
  }

  // Classes whose restriction to iota(A) (a hom, since A acts trivially)
  // hits every element of the coefficient group.
  inline ClassFilter surjective_on_a(Extension const& ext) {
    auto a = ext.image_of_a();
    return [a](Cocycle const& alpha) {
      auto const&       m = *alpha.parent()->coefficients();
      std::vector<char> hit(m.order(), 0);
      for (Elem x : a.elements()) {
        hit[alpha(x)] = 1;
      }
      return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    };
  }

  inline CoefficientCorpus doubleprime_corpus(Extension const& ext,
                                              std::size_t bound = default_quotient_bound) {
    if (first_section(ext)) {
      return geometric_corpus(ext);
    }
    return full_corpus(ext, bound);
  }

  inline DescentVerdict decide_a_doubleprime(LocalSections const& ls,
                                             std::size_t bound = default_quotient_bound) {
    return decide_a_with_filter(ls, doubleprime_corpus(ls.ext(), bound), surjective_on_a(ls.ext()));
  }

  ////////////////////////////////////////////////////////////////////////
  // Section from an interpolating homomorphism
  ////////////////////////////////////////////////////////////////////////

  struct SectionFromHom {
    GroupHom          phi;  // pi ∘ u
    bool              class_preserving = false;
    bool              bijective        = false;
    std::optional<GroupHom> section;   // u ∘ phi^-1
    std::vector<Elem> conjugators;     // u(τ_i) γ_i
    bool              conjugators_in_a = false;
  };

  // Given u as in (b), sets phi = pi ∘ u and, when phi is bijective, builds
  // s = u ∘ phi^-1 with conjugators u(τ_i) γ_i, τ_i = phi^-1(p(γ_i)^-1).
  inline SectionFromHom section_from_interpolating_hom(LocalSections const& ls,
                                                       Interpolation const& u) {
    auto const&    ext = ls.ext();
    auto const&    e   = *ext.e();
    SectionFromHom r;
    r.phi              = compose(ext.pi(), u.s);
    r.class_preserving = is_class_preserving(r.phi);
    r.bijective        = is_injective(r.phi);
    if (!r.bijective) {
      return r;
    }
    auto const phi_inv = inverse_hom(r.phi);
    r.section          = compose(u.s, phi_inv);
    auto const& g      = *ext.gamma();
    for (std::size_t i = 0; i < ls.sections().size(); ++i) {
      Elem const gamma_i = u.conjugators[i];
      Elem const tau_i   = phi_inv(g.inv(ext.pi()(gamma_i)));
      r.conjugators.push_back(e.mul(u.s(tau_i), gamma_i));
    }
    r.conjugators_in_a = is_valid_interpolation(ls, Interpolation{*r.section, r.conjugators},
                                                ext.image_of_a());
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Equivalences
  ////////////////////////////////////////////////////////////////////////

  struct EquivalenceOptions {
    std::size_t       bound = default_quotient_bound;
    CoefficientCorpus user_corpus;
  };

  struct EquivalenceReport {
    bool a = false, a_prime = false, a_doubleprime = false, b = false, c = false;
    bool star_star = false;
    bool split     = false;

    DescentVerdict                verdict_a, verdict_a_prime, verdict_a_doubleprime;
    std::optional<Interpolation>  witness_b, witness_c;
    std::optional<SectionFromHom> constructed;  // only when star_star and b

    std::vector<std::string> violations;

    bool ok() const noexcept {
      return violations.empty();
    }
  };

  inline EquivalenceReport verify_equivalences(LocalSections const& ls,
                                               EquivalenceOptions const& opts = {}) {
    auto const&       ext = ls.ext();
    EquivalenceReport r;
    r.split     = first_section(ext).has_value();
    r.star_star = check_density(ls.family());

    auto const constant = constant_quotient_corpus(ext, opts.bound);
    auto const geometric = geometric_corpus(ext);
    CoefficientCorpus corpus = constant;
    corpus.insert(corpus.end(), geometric.begin(), geometric.end());
    for (auto const& x : opts.user_corpus) {
      corpus.push_back(CorpusEntry{x.coeff, Provenance::UserSupplied, x.name});
    }

    r.verdict_a       = decide_a(ls, corpus);
    r.verdict_a_prime = decide_a(ls, constant);
    r.verdict_a_doubleprime =
        decide_a_with_filter(ls, r.split ? geometric : full_corpus(ext, opts.bound),
                             surjective_on_a(ext));
    r.witness_b = decide_b(ls);
    r.witness_c = decide_c(ls);

    r.a             = r.verdict_a.holds;
    r.a_prime       = r.verdict_a_prime.holds;
    r.a_doubleprime = r.verdict_a_doubleprime.holds;
    r.b             = r.witness_b.has_value();
    r.c             = r.witness_c.has_value();

    auto require = [&](bool cond, std::string const& what) {
      if (!cond) {
        r.violations.push_back(what);
      }
    };
    require(!r.c || r.a, "(c) => (a)");
    require(!r.a || r.a_prime, "(a) => (a')");
    require(!r.a || r.a_doubleprime, "(a) => (a'')");
    require(!r.b || r.a_prime, "(b) => (a')");
    if (opts.bound >= ext.e()->order()) {
      require(!r.a_prime || r.b, "(a') => (b)");
    }
    require(!(r.split && r.a_doubleprime) || r.c, "(a'') and split => (c)");
    if (r.star_star) {
      require(r.a == r.b && r.b == r.c && r.c == r.a_prime, "density => (a) <=> (a') <=> (b) <=> (c)");
      require(r.c == (r.a_doubleprime && r.split), "density => ((c) <=> (a'') and split)");
    }
    if (r.witness_b) {
      require(is_valid_interpolation(ls, *r.witness_b, Subgroup::whole(ext.e())),
              "witness for (b) re-validates");
    }
    if (r.witness_c) {
      require(compose(ext.pi(), r.witness_c->s) == identity_hom(ext.gamma())
                  && is_valid_interpolation(ls, *r.witness_c, ext.image_of_a()),
              "witness for (c) re-validates");
    }
    if (r.star_star && r.witness_b) {
      r.constructed = section_from_interpolating_hom(ls, *r.witness_b);
      require(r.constructed->class_preserving, "density and (b) => pi ∘ u class-preserving");
      require(r.constructed->bijective, "density and (b) => pi ∘ u bijective");
      require(r.constructed->conjugators_in_a, "constructed section interpolates up to A");
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Towers of quotients
  ////////////////////////////////////////////////////////////////////////

  // levels[0] is the finest extension; connecting[j] : E_j -> E_{j+1}.
  class Tower {
   public:
    Tower() = default;

    Tower(std::vector<Extension> levels, std::vector<GroupHom> connecting)
        : _levels(std::move(levels)), _connecting(std::move(connecting)) {
      using detail::fail;
      if (_levels.empty() || _connecting.size() + 1 != _levels.size()) {
        fail(ErrorKind::IncompatibleTower, "need n levels and n-1 connecting maps");
      }
      for (std::size_t j = 0; j < _connecting.size(); ++j) {
        auto const& q    = _connecting[j];
        auto const& up   = _levels[j];
        auto const& down = _levels[j + 1];
        if (!(*up.gamma() == *down.gamma())) {
          fail(ErrorKind::IncompatibleTower, "level " + std::to_string(j + 1) + " has another Γ");
        }
        if (!(*q.source() == *up.e()) || !(*q.target() == *down.e())) {
          fail(ErrorKind::IncompatibleTower, "map " + std::to_string(j) + " has wrong ends");
        }
        if (!is_surjective(q)) {
          fail(ErrorKind::IncompatibleTower, "map " + std::to_string(j) + " is not surjective");
        }
        if (compose(down.pi(), q).map() != up.pi().map()) {
          fail(ErrorKind::IncompatibleTower,
               "map " + std::to_string(j) + " does not commute with the projections");
        }
      }
    }

    std::vector<Extension> const& levels() const noexcept {
      return _levels;
    }
    std::vector<GroupHom> const& connecting() const noexcept {
      return _connecting;
    }

   private:
    std::vector<Extension> _levels;
    std::vector<GroupHom>  _connecting;
  };

  enum class TowerMode { Homomorphisms, Sections };

  struct TowerResult {
    std::vector<std::size_t>             level_sizes;  // |S_G| per level
    std::optional<std::size_t>           empty_level;  // coarsest level with S_G empty
    std::optional<std::vector<GroupHom>> chain;        // chain[j] in S_{G_j}, compatible
  };

  // Computes S_G at every level and searches, from the coarsest level
  // upward, for a chain s_j with q_j ∘ s_j = s_{j+1}.
  inline TowerResult tower_limit_sections(Tower const& tower, LocalSections const& top,
                                          TowerMode mode = TowerMode::Homomorphisms) {
    auto const& levels = tower.levels();
    if (!(*top.ext().e() == *levels[0].e()) || !(*top.ext().gamma() == *levels[0].gamma())) {
      detail::fail(ErrorKind::IncompatibleTower, "local sections do not live at the top level");
    }
    std::size_t const                  n = levels.size();
    std::vector<std::vector<GroupHom>> sets(n);
    GroupHom                           down = identity_hom(levels[0].e());
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) {
        down = compose(tower.connecting()[j - 1], down);
      }
      std::vector<GroupHom> pushed;
      for (auto const& s : top.sections()) {
        pushed.push_back(compose(down, s));
      }
      LocalSections const ls(levels[j], top.family(), std::move(pushed));
      auto const&         ext = levels[j];
      std::vector<GroupHom> candidates =
          mode == TowerMode::Sections ? enumerate_lifts(identity_hom(ext.gamma()), ext.pi())
                                      : enumerate_homs(ext.gamma(), ext.e());
      Subgroup const allowed =
          mode == TowerMode::Sections ? ext.image_of_a() : Subgroup::whole(ext.e());
      for (auto& s : candidates) {
        if (interpolation_conjugators(ls, s, allowed)) {
          sets[j].push_back(std::move(s));
        }
      }
    }
    TowerResult r;
    for (auto const& s : sets) {
      r.level_sizes.push_back(s.size());
    }
    for (std::size_t j = n; j-- > 0;) {
      if (sets[j].empty()) {
        r.empty_level = j;
        return r;
      }
    }
    std::vector<GroupHom>                chain(n);
    std::function<bool(std::size_t)>     extend = [&](std::size_t j) -> bool {
      for (auto const& s : sets[j]) {
        if (j + 1 < n && compose(tower.connecting()[j], s).map() != chain[j + 1].map()) {
          continue;
        }
        chain[j] = s;
        if (j == 0 || extend(j - 1)) {
          return true;
        }
      }
      return false;
    };
    if (!extend(n - 1)) {
      detail::fail(ErrorKind::InvariantViolated, "nonempty levels without a compatible chain");
    }
    r.chain = std::move(chain);
    return r;
  }

}  // namespace seclab

#endif  // SECLAB_LOCALGLOBAL_HPP_
