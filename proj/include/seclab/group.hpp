#ifndef SECLAB_GROUP_HPP_
#define SECLAB_GROUP_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "closure.hpp"
#include "error.hpp"

namespace seclab {

  class FiniteGroup;
  using GroupPtr = std::shared_ptr<FiniteGroup const>;
  using Perm     = std::vector<Elem>;

  namespace detail {
    inline std::string str(std::span<Elem const> v) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
      }
      return s + "]";
    }
  }  // namespace detail

  // A finite group stored as a dense multiplication table over the indices
  // 0..n-1. Instances are immutable and shared through GroupPtr.
  class FiniteGroup {
   public:
    // Trusts the table; use group_from_table() for untrusted input.
    static GroupPtr make_unchecked(std::size_t n, std::vector<Elem> table,
                                   std::string label = {}) {
      return std::shared_ptr<FiniteGroup const>(
          new FiniteGroup(n, std::move(table), std::move(label)));
    }

    std::size_t order() const noexcept {
      return _n;
    }

    Elem identity() const noexcept {
      return _identity;
    }

    Elem mul(Elem a, Elem b) const noexcept {
      return _table[a * _n + b];
    }

    Elem inv(Elem a) const noexcept {
      return _inverse[a];
    }

    // g x g^-1
    Elem conj(Elem g, Elem x) const noexcept {
      return mul(mul(g, x), _inverse[g]);
    }

    std::size_t element_order(Elem a) const noexcept {
      return _element_order[a];
    }

    std::span<Elem const> table() const noexcept {
      return _table;
    }

    std::span<Elem const> inverses() const noexcept {
      return _inverse;
    }

    // Canonical generating set, chosen greedily (see choose_generators).
    std::span<Elem const> generators() const noexcept {
      return _generators;
    }

    // Spanning tree of the Cayley graph on generators(): every element other
    // than the identity is tree_parent(g) * generators()[tree_step(g)].
    std::span<Elem const> tree_order() const noexcept {
      return _tree_order;
    }
    Elem tree_parent(Elem g) const noexcept {
      return _tree_parent[g];
    }
    std::size_t tree_step(Elem g) const noexcept {
      return _tree_step[g];
    }

    std::string const& label() const noexcept {
      return _label;
    }

    bool is_abelian() const noexcept {
      for (Elem a = 0; a < _n; ++a) {
        for (Elem b = a + 1; b < _n; ++b) {
          if (mul(a, b) != mul(b, a)) {
            return false;
          }
        }
      }
      return true;
    }

    // Same table; labels are not compared.
    friend bool operator==(FiniteGroup const& x, FiniteGroup const& y) {
      return x._n == y._n && x._table == y._table;
    }

   private:
    FiniteGroup(std::size_t n, std::vector<Elem> table, std::string label)
        : _n(n), _table(std::move(table)), _label(std::move(label)) {
      _identity = 0;
      for (Elem e = 0; e < _n; ++e) {
        if (mul(e, e) == e) {
          _identity = e;
          break;
        }
      }
      _inverse.assign(_n, 0);
      for (Elem a = 0; a < _n; ++a) {
        for (Elem b = 0; b < _n; ++b) {
          if (mul(a, b) == _identity) {
            _inverse[a] = b;
            break;
          }
        }
      }
      _element_order.assign(_n, 1);
      for (Elem a = 0; a < _n; ++a) {
        Elem x = a;
        while (x != _identity) {
          x = mul(x, a);
          ++_element_order[a];
        }
      }
      choose_generators();
      build_tree();
    }

    std::vector<char> span_of(std::vector<Elem> const& gens) const {
      std::vector<char> in(_n, 0);
      std::vector<Elem> queue{_identity};
      in[_identity] = 1;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (Elem s : gens) {
          Elem y = mul(queue[i], s);
          if (!in[y]) {
            in[y] = 1;
            queue.push_back(y);
          }
        }
      }
      return in;
    }

    // Greedy: repeatedly add the element enlarging the generated subgroup
    // the most (smallest index on ties). For large groups the first missing
    // element is taken instead, which keeps construction near-linear.
    void choose_generators() {
      std::vector<char> in = span_of(_generators);
      auto count           = [](std::vector<char> const& v) {
        return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
      };
      std::size_t have = count(in);
      while (have < _n) {
        Elem        best      = 0;
        std::size_t best_size = 0;
        for (Elem g = 0; g < _n; ++g) {
          if (in[g]) {
            continue;
          }
          if (_n > 256) {
            best = g;
            break;
          }
          auto trial = _generators;
          trial.push_back(g);
          std::size_t sz = count(span_of(trial));
          if (sz > best_size) {
            best_size = sz;
            best      = g;
          }
        }
        _generators.push_back(best);
        in   = span_of(_generators);
        have = count(in);
      }
    }

    void build_tree() {
      _tree_parent.assign(_n, _identity);
      _tree_step.assign(_n, 0);
      std::vector<char> seen(_n, 0);
      _tree_order = {_identity};
      seen[_identity] = 1;
      for (std::size_t i = 0; i < _tree_order.size(); ++i) {
        Elem const g = _tree_order[i];
        for (std::size_t k = 0; k < _generators.size(); ++k) {
          Elem const h = mul(g, _generators[k]);
          if (!seen[h]) {
            seen[h]         = 1;
            _tree_parent[h] = g;
            _tree_step[h]   = k;
            _tree_order.push_back(h);
          }
        }
      }
    }

    std::size_t              _n;
    std::vector<Elem>        _table;
    std::string              _label;
    Elem                     _identity = 0;
    std::vector<Elem>        _inverse;
    std::vector<std::size_t> _element_order;
    std::vector<Elem>        _generators;
    std::vector<Elem>        _tree_order;
    std::vector<Elem>        _tree_parent;
    std::vector<std::size_t> _tree_step;
  };

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  inline GroupPtr group_from_table(std::size_t n, std::vector<Elem> table,
                                   std::string label = {}) {
    using detail::fail;
    if (n == 0 || table.size() != n * n) {
      fail(ErrorKind::TableOutOfRange, "table must be " + std::to_string(n)
                                           + "x" + std::to_string(n));
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i] >= n) {
        fail(ErrorKind::TableOutOfRange,
             "entry " + std::to_string(table[i]) + " at row "
                 + std::to_string(i / n) + ", column " + std::to_string(i % n));
      }
    }
    auto at = [&](Elem a, Elem b) { return table[a * n + b]; };
    std::optional<Elem> identity;
    for (Elem e = 0; e < n && !identity; ++e) {
      bool ok = true;
      for (Elem g = 0; g < n && ok; ++g) {
        ok = at(e, g) == g && at(g, e) == g;
      }
      if (ok) {
        identity = e;
      }
    }
    if (!identity) {
      fail(ErrorKind::NoIdentity, "no two-sided identity in table");
    }
    for (Elem g = 0; g < n; ++g) {
      bool found = false;
      for (Elem h = 0; h < n && !found; ++h) {
        found = at(g, h) == *identity && at(h, g) == *identity;
      }
      if (!found) {
        fail(ErrorKind::NoInverse, "element " + std::to_string(g));
      }
    }
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        Elem const ab = at(a, b);
        for (Elem c = 0; c < n; ++c) {
          if (at(ab, c) != at(a, at(b, c))) {
            fail(ErrorKind::NotAssociative,
                 "(" + std::to_string(a) + "," + std::to_string(b) + ","
                     + std::to_string(c) + ")");
          }
        }
      }
    }
    return FiniteGroup::make_unchecked(n, std::move(table), std::move(label));
  }

  // Composition convention: (p * q)(x) = p(q(x)).
  inline Perm perm_compose(Perm const& p, Perm const& q) {
    Perm r(q.size());
    for (std::size_t x = 0; x < q.size(); ++x) {
      r[x] = p[q[x]];
    }
    return r;
  }

  struct PermGroup {
    GroupPtr          group;
    std::vector<Perm> elements;    // element index -> permutation
    std::vector<Elem> generators;  // element index of each input generator
  };

  inline constexpr std::size_t default_closure_cap = 10080;

  inline PermGroup group_from_permutations(std::size_t              degree,
                                           std::vector<Perm> const& gens,
                                           std::string              label = {},
                                           std::size_t cap = default_closure_cap) {
    if (degree == 0) {
      detail::fail(ErrorKind::NotAPermutation, "degree must be positive");
    }
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto const& p = gens[k];
      std::vector<char> hit(degree, 0);
      bool ok = p.size() == degree;
      for (std::size_t x = 0; ok && x < degree; ++x) {
        ok = p[x] < degree && !hit[p[x]];
        if (ok) {
          hit[p[x]] = 1;
        }
      }
      if (!ok) {
        detail::fail(ErrorKind::NotAPermutation,
                     "generator " + std::to_string(k) + " " + detail::str(p));
      }
    }
    Perm id(degree);
    std::iota(id.begin(), id.end(), Elem{0});
    auto cl = close_under<Perm>(id, std::span<Perm const>(gens), perm_compose, cap);
    std::size_t const n = cl.elements.size();
    return PermGroup{FiniteGroup::make_unchecked(n, std::move(cl.table), std::move(label)),
                     std::move(cl.elements), std::move(cl.generator_indices)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroups
  ////////////////////////////////////////////////////////////////////////

  class Subgroup {
   public:
    Subgroup() = default;

    // Validates closure; elements may be given in any order.
    Subgroup(GroupPtr parent, std::vector<Elem> elements)
        : _parent(std::move(parent)), _elements(std::move(elements)) {
      std::sort(_elements.begin(), _elements.end());
      _elements.erase(std::unique(_elements.begin(), _elements.end()),
                      _elements.end());
      _member.assign(_parent->order(), 0);
      for (Elem x : _elements) {
        if (x >= _parent->order()) {
          detail::fail(ErrorKind::NotASubgroup,
                       "element " + std::to_string(x) + " out of range");
        }
        _member[x] = 1;
      }
      if (!contains(_parent->identity())) {
        detail::fail(ErrorKind::NotASubgroup, "missing identity");
      }
      for (Elem x : _elements) {
        if (!contains(_parent->inv(x))) {
          detail::fail(ErrorKind::NotASubgroup,
                       "inverse of " + std::to_string(x) + " missing");
        }
        for (Elem y : _elements) {
          if (!contains(_parent->mul(x, y))) {
            detail::fail(ErrorKind::NotASubgroup,
                         "not closed: " + std::to_string(x) + "*"
                             + std::to_string(y));
          }
        }
      }
    }

    static Subgroup whole(GroupPtr g) {
      std::vector<Elem> all(g->order());
      std::iota(all.begin(), all.end(), Elem{0});
      return Subgroup(std::move(g), std::move(all));
    }

    static Subgroup trivial(GroupPtr g) {
      Elem e = g->identity();
      return Subgroup(std::move(g), {e});
    }

    GroupPtr const& parent() const noexcept {
      return _parent;
    }
    std::vector<Elem> const& elements() const noexcept {
      return _elements;
    }
    std::size_t size() const noexcept {
      return _elements.size();
    }
    bool contains(Elem x) const noexcept {
      return x < _member.size() && _member[x];
    }
    std::size_t index() const noexcept {
      return _parent->order() / _elements.size();
    }
    bool is_whole() const noexcept {
      return _elements.size() == _parent->order();
    }

    friend bool operator==(Subgroup const& a, Subgroup const& b) {
      return a._elements == b._elements;
    }

   private:
    GroupPtr          _parent;
    std::vector<Elem> _elements;
    std::vector<char> _member;
  };

  inline Subgroup subgroup_generated(GroupPtr const& g, std::span<Elem const> gens) {
    std::vector<char> in(g->order(), 0);
    std::vector<Elem> queue{g->identity()};
    in[g->identity()] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (Elem s : gens) {
        Elem y = g->mul(queue[i], s);
        if (!in[y]) {
          in[y] = 1;
          queue.push_back(y);
        }
      }
    }
    return Subgroup(g, std::move(queue));
  }

  inline Subgroup subgroup_generated(GroupPtr const& g, std::initializer_list<Elem> gens) {
    return subgroup_generated(g, std::span<Elem const>(gens.begin(), gens.size()));
  }

  // Returns a pair (g, h) with g h g^-1 outside H, or nothing if H is normal.
  inline std::optional<std::pair<Elem, Elem>> normality_witness(Subgroup const& h) {
    auto const& g = *h.parent();
    for (Elem x = 0; x < g.order(); ++x) {
      for (Elem y : h.elements()) {
        if (!h.contains(g.conj(x, y))) {
          return std::make_pair(x, y);
        }
      }
    }
    return std::nullopt;
  }

  inline bool is_normal(Subgroup const& h) {
    return !normality_witness(h).has_value();
  }

  // Subgroup viewed as a group in its own right; index k stands for the k-th
  // smallest parent element. Returned together with the inclusion map data.
  struct SubgroupGroup {
    GroupPtr          group;
    std::vector<Elem> to_parent;    // group index -> parent index
    std::vector<Elem> from_parent;  // parent index -> group index (or npos)
  };

  inline constexpr Elem no_elem = static_cast<Elem>(-1);

  inline SubgroupGroup subgroup_as_group(Subgroup const& h, std::string label = {}) {
    auto const&       g = *h.parent();
    std::size_t const m = h.size();
    SubgroupGroup     out;
    out.to_parent = h.elements();
    out.from_parent.assign(g.order(), no_elem);
    for (std::size_t k = 0; k < m; ++k) {
      out.from_parent[out.to_parent[k]] = static_cast<Elem>(k);
    }
    std::vector<Elem> table(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        table[i * m + j] = out.from_parent[g.mul(out.to_parent[i], out.to_parent[j])];
      }
    }
    out.group = FiniteGroup::make_unchecked(m, std::move(table), std::move(label));
    return out;
  }

  // Lexicographically ordered by (size, elements).
  inline std::vector<Subgroup> all_subgroups(GroupPtr const& g) {
    struct Item {
      std::vector<Elem> elements;
      std::vector<Elem> gens;
    };
    std::set<std::vector<Elem>> seen;
    std::vector<Item>           work;
    auto consider = [&](std::vector<Elem> gens) {
      auto sub = subgroup_generated(g, gens);
      if (seen.insert(sub.elements()).second) {
        work.push_back({sub.elements(), std::move(gens)});
      }
    };
    consider({});
    for (Elem x = 0; x < g->order(); ++x) {
      consider({x});
    }
    for (std::size_t i = 0; i < work.size(); ++i) {
      std::vector<char> in(g->order(), 0);
      for (Elem y : work[i].elements) {
        in[y] = 1;
      }
      for (Elem x = 0; x < g->order(); ++x) {
        if (in[x]) {
          continue;
        }
        auto gens = work[i].gens;
        gens.push_back(x);
        consider(std::move(gens));
      }
    }
    std::vector<std::vector<Elem>> sorted(seen.begin(), seen.end());
    std::sort(sorted.begin(), sorted.end(), [](auto const& a, auto const& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<Subgroup> out;
    out.reserve(sorted.size());
    for (auto& s : sorted) {
      out.emplace_back(g, std::move(s));
    }
    return out;
  }

  inline std::vector<Subgroup> all_normal_subgroups(GroupPtr const& g) {
    std::vector<Subgroup> out;
    for (auto& h : all_subgroups(g)) {
      if (is_normal(h)) {
        out.push_back(std::move(h));
      }
    }
    return out;
  }

  // Normal subgroups of the ambient group contained in `upper`.
  inline std::vector<Subgroup> all_normal_subgroups_between(Subgroup const& upper) {
    std::vector<Subgroup> out;
    for (auto& h : all_normal_subgroups(upper.parent())) {
      if (std::all_of(h.elements().begin(), h.elements().end(),
                      [&](Elem x) { return upper.contains(x); })) {
        out.push_back(std::move(h));
      }
    }
    return out;
  }

  // Classes sorted by their least element; each class sorted.
  inline std::vector<std::vector<Elem>> conjugacy_classes(FiniteGroup const& g) {
    std::vector<char>              done(g.order(), 0);
    std::vector<std::vector<Elem>> out;
    for (Elem x = 0; x < g.order(); ++x) {
      if (done[x]) {
        continue;
      }
      std::vector<Elem> cls;
      for (Elem y = 0; y < g.order(); ++y) {
        Elem z = g.conj(y, x);
        if (!done[z]) {
          done[z] = 1;
          cls.push_back(z);
        }
      }
      std::sort(cls.begin(), cls.end());
      out.push_back(std::move(cls));
    }
    return out;
  }

  inline std::vector<std::size_t> conjugacy_class_index(FiniteGroup const& g) {
    std::vector<std::size_t> idx(g.order());
    auto const               classes = conjugacy_classes(g);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (Elem x : classes[c]) {
        idx[x] = c;
      }
    }
    return idx;
  }

  // Least element of each right coset H g, ascending.
  inline std::vector<Elem> right_coset_representatives(Subgroup const& h) {
    auto const&       g = *h.parent();
    std::vector<char> done(g.order(), 0);
    std::vector<Elem> reps;
    for (Elem x = 0; x < g.order(); ++x) {
      if (done[x]) {
        continue;
      }
      reps.push_back(x);
      for (Elem y : h.elements()) {
        done[g.mul(y, x)] = 1;
      }
    }
    return reps;
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  class GroupHom {
   public:
    GroupHom() = default;

    // Validates the homomorphism property on all pairs.
    GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> map)
        : GroupHom(std::move(source), std::move(target), std::move(map), unchecked_tag{}) {
      if (_map.size() != _source->order()) {
        detail::fail(ErrorKind::NotAHomomorphism, "map has wrong length");
      }
      for (Elem x : _map) {
        if (x >= _target->order()) {
          detail::fail(ErrorKind::NotAHomomorphism,
                       "image " + std::to_string(x) + " out of range");
        }
      }
      if (_map[_source->identity()] != _target->identity()) {
        detail::fail(ErrorKind::NotAHomomorphism, "identity not preserved");
      }
      for (Elem a = 0; a < _source->order(); ++a) {
        for (Elem b = 0; b < _source->order(); ++b) {
          if (_map[_source->mul(a, b)] != _target->mul(_map[a], _map[b])) {
            detail::fail(ErrorKind::NotAHomomorphism,
                         "fails at (" + std::to_string(a) + ","
                             + std::to_string(b) + ")");
          }
        }
      }
    }

    struct unchecked_tag {};
    GroupHom(GroupPtr source, GroupPtr target, std::vector<Elem> map, unchecked_tag)
        : _source(std::move(source)), _target(std::move(target)), _map(std::move(map)) {}

    GroupPtr const& source() const noexcept {
      return _source;
    }
    GroupPtr const& target() const noexcept {
      return _target;
    }
    std::vector<Elem> const& map() const noexcept {
      return _map;
    }
    Elem operator()(Elem g) const noexcept {
      return _map[g];
    }

    friend bool operator==(GroupHom const& a, GroupHom const& b) {
      return a._map == b._map && *a._source == *b._source && *a._target == *b._target;
    }

   private:
    GroupPtr          _source;
    GroupPtr          _target;
    std::vector<Elem> _map;
  };

  inline GroupHom identity_hom(GroupPtr const& g) {
    std::vector<Elem> m(g->order());
    std::iota(m.begin(), m.end(), Elem{0});
    return GroupHom(g, g, std::move(m), GroupHom::unchecked_tag{});
  }

  inline GroupHom trivial_hom(GroupPtr const& src, GroupPtr const& tgt) {
    return GroupHom(src, tgt, std::vector<Elem>(src->order(), tgt->identity()),
                    GroupHom::unchecked_tag{});
  }

  // outer ∘ inner
  inline GroupHom compose(GroupHom const& outer, GroupHom const& inner) {
    if (!(*inner.target() == *outer.source())) {
      detail::fail(ErrorKind::NotAHomomorphism, "compose: groups do not match");
    }
    std::vector<Elem> m(inner.source()->order());
    for (Elem x = 0; x < m.size(); ++x) {
      m[x] = outer(inner(x));
    }
    return GroupHom(inner.source(), outer.target(), std::move(m), GroupHom::unchecked_tag{});
  }

  inline Subgroup kernel(GroupHom const& f) {
    std::vector<Elem> k;
    for (Elem x = 0; x < f.source()->order(); ++x) {
      if (f(x) == f.target()->identity()) {
        k.push_back(x);
      }
    }
    return Subgroup(f.source(), std::move(k));
  }

  inline Subgroup image(GroupHom const& f) {
    return Subgroup(f.target(), f.map());
  }

  inline bool is_injective(GroupHom const& f) {
    return kernel(f).size() == 1;
  }

  inline bool is_surjective(GroupHom const& f) {
    return image(f).is_whole();
  }

  inline GroupHom inclusion(SubgroupGroup const& h, GroupPtr const& parent) {
    return GroupHom(h.group, parent, h.to_parent, GroupHom::unchecked_tag{});
  }

  // Inverse of a bijective hom.
  inline GroupHom inverse_hom(GroupHom const& f) {
    if (!is_injective(f) || !is_surjective(f)) {
      detail::fail(ErrorKind::NotInjective, "inverse_hom of a non-bijection");
    }
    std::vector<Elem> m(f.target()->order());
    for (Elem x = 0; x < f.source()->order(); ++x) {
      m[f(x)] = x;
    }
    return GroupHom(f.target(), f.source(), std::move(m), GroupHom::unchecked_tag{});
  }

  namespace detail {
    // Propagates values from the identity along the Cayley spanning tree,
    // value(g * s_k) = step(value(g), g, k), then checks every Cayley edge.
    // A consistent assignment on all edges is the full multiplicativity
    // condition for homs and the full cocycle condition for cocycles.
    template <typename Step>
    std::optional<std::vector<Elem>>
    extend_along_tree(FiniteGroup const& g, Elem identity_value, Step&& step) {
      std::vector<Elem> value(g.order(), 0);
      value[g.identity()] = identity_value;
      auto const order    = g.tree_order();
      for (std::size_t i = 1; i < order.size(); ++i) {
        Elem const h = order[i];
        value[h]     = step(value[g.tree_parent(h)], g.tree_parent(h), g.tree_step(h));
      }
      auto const gens = g.generators();
      for (Elem x = 0; x < g.order(); ++x) {
        for (std::size_t k = 0; k < gens.size(); ++k) {
          if (value[g.mul(x, gens[k])] != step(value[x], x, k)) {
            return std::nullopt;
          }
        }
      }
      return value;
    }

    // Calls visit(choice) for every element of the cartesian product, in
    // lexicographic order of the candidate lists.
    template <typename Visit>
    void for_each_tuple(std::vector<std::vector<Elem>> const& candidates, Visit&& visit) {
      for (auto const& c : candidates) {
        if (c.empty()) {
          return;
        }
      }
      std::vector<std::size_t> pos(candidates.size(), 0);
      std::vector<Elem>        choice(candidates.size());
      while (true) {
        for (std::size_t k = 0; k < pos.size(); ++k) {
          choice[k] = candidates[k][pos[k]];
        }
        visit(std::as_const(choice));
        std::size_t k = pos.size();
        while (k > 0) {
          --k;
          if (++pos[k] < candidates[k].size()) {
            break;
          }
          pos[k] = 0;
          if (k == 0) {
            return;
          }
        }
        if (pos.empty()) {
          return;
        }
      }
    }
  }  // namespace detail

  // Extends images of src->generators() to a hom, if one exists.
  inline std::optional<GroupHom> extend_generator_images(GroupPtr const&       src,
                                                         GroupPtr const&       tgt,
                                                         std::span<Elem const> images) {
    auto const& t = *tgt;
    auto value = detail::extend_along_tree(*src, t.identity(), [&](Elem v, Elem, std::size_t k) {
      return t.mul(v, images[k]);
    });
    if (!value) {
      return std::nullopt;
    }
    return GroupHom(src, tgt, std::move(*value), GroupHom::unchecked_tag{});
  }

  // Builds the hom sending gens[k] to images[k]; gens need not be the
  // canonical generating set, but must generate src.
  inline GroupHom hom_from_images(GroupPtr const& src, GroupPtr const& tgt,
                                  std::span<Elem const> gens, std::span<Elem const> images) {
    if (gens.size() != images.size()) {
      detail::fail(ErrorKind::NotAHomomorphism, "generator/image count mismatch");
    }
    std::vector<Elem> value(src->order(), no_elem);
    value[src->identity()] = tgt->identity();
    std::vector<Elem> queue{src->identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Elem const y = src->mul(queue[i], gens[k]);
        Elem const v = tgt->mul(value[queue[i]], images[k]);
        if (value[y] == no_elem) {
          value[y] = v;
          queue.push_back(y);
        } else if (value[y] != v) {
          detail::fail(ErrorKind::NotAHomomorphism,
                       "generator images violate a relation at element "
                           + std::to_string(y));
        }
      }
    }
    if (queue.size() != src->order()) {
      detail::fail(ErrorKind::NotAHomomorphism, "given elements do not generate the source");
    }
    return GroupHom(src, tgt, std::move(value));
  }

  // All homs src -> tgt whose generator images are drawn from the given
  // per-generator candidate lists, sorted lexicographically on the map.
  inline std::vector<GroupHom> enumerate_homs_from(GroupPtr const& src, GroupPtr const& tgt,
                                                   std::vector<std::vector<Elem>> candidates) {
    auto const gens = src->generators();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      std::erase_if(candidates[k], [&](Elem t) {
        return src->element_order(gens[k]) % tgt->element_order(t) != 0;
      });
    }
    std::vector<GroupHom> out;
    detail::for_each_tuple(candidates, [&](std::vector<Elem> const& images) {
      if (auto h = extend_generator_images(src, tgt, images)) {
        out.push_back(std::move(*h));
      }
    });
    std::sort(out.begin(), out.end(),
              [](GroupHom const& a, GroupHom const& b) { return a.map() < b.map(); });
    return out;
  }

  inline std::vector<GroupHom> enumerate_homs(GroupPtr const& src, GroupPtr const& tgt) {
    std::vector<Elem> all(tgt->order());
    std::iota(all.begin(), all.end(), Elem{0});
    return enumerate_homs_from(
        src, tgt, std::vector<std::vector<Elem>>(src->generators().size(), all));
  }

  ////////////////////////////////////////////////////////////////////////
  // Quotients
  ////////////////////////////////////////////////////////////////////////

  struct Quotient {
    GroupPtr group;
    GroupHom map;  // canonical surjection
  };

  // Cosets are named by their least element; quotient index k is the k-th
  // smallest such representative.
  inline Quotient quotient(Subgroup const& n, std::string label = {}) {
    if (auto w = normality_witness(n)) {
      detail::fail(ErrorKind::NotNormal,
                   std::to_string(w->first) + " * " + std::to_string(w->second)
                       + " * " + std::to_string(w->first) + "^-1 leaves the subgroup");
    }
    auto const&       g = *n.parent();
    std::vector<Elem> coset(g.order(), no_elem);
    std::vector<Elem> reps;
    for (Elem x = 0; x < g.order(); ++x) {
      if (coset[x] != no_elem) {
        continue;
      }
      auto const k = static_cast<Elem>(reps.size());
      reps.push_back(x);
      for (Elem y : n.elements()) {
        coset[g.mul(x, y)] = k;
      }
    }
    std::size_t const m = reps.size();
    std::vector<Elem> table(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        table[i * m + j] = coset[g.mul(reps[i], reps[j])];
      }
    }
    auto q = FiniteGroup::make_unchecked(m, std::move(table), std::move(label));
    return Quotient{q, GroupHom(n.parent(), q, std::move(coset), GroupHom::unchecked_tag{})};
  }

  ////////////////////////////////////////////////////////////////////////
  // Unions of conjugates
  ////////////////////////////////////////////////////////////////////////

  struct JordanReport {
    std::vector<Elem> union_set;  // ⋃ g H g^-1, sorted
    std::size_t       group_order = 0;
    std::size_t       index       = 0;
    std::size_t       bound       = 0;  // |G| - [G:H] + 1
    bool              covers      = false;

    std::size_t union_size() const noexcept {
      return union_set.size();
    }
  };

  inline JordanReport union_of_conjugates(Subgroup const& h) {
    auto const&       g = *h.parent();
    std::vector<char> in(g.order(), 0);
    for (Elem x = 0; x < g.order(); ++x) {
      for (Elem y : h.elements()) {
        in[g.conj(x, y)] = 1;
      }
    }
    JordanReport r;
    for (Elem x = 0; x < g.order(); ++x) {
      if (in[x]) {
        r.union_set.push_back(x);
      }
    }
    r.group_order = g.order();
    r.index       = h.index();
    r.bound       = g.order() - r.index + 1;
    r.covers      = r.union_set.size() == g.order();
    return r;
  }

  inline bool is_class_preserving(GroupHom const& phi) {
    if (!(*phi.source() == *phi.target())) {
      detail::fail(ErrorKind::NotAHomomorphism,
                   "is_class_preserving needs an endomorphism");
    }
    auto const cls = conjugacy_class_index(*phi.source());
    for (Elem x = 0; x < phi.source()->order(); ++x) {
      if (cls[phi(x)] != cls[x]) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Products and automorphisms
  ////////////////////////////////////////////////////////////////////////

  // Element (a, b) has index a * |H| + b.
  inline GroupPtr direct_product(FiniteGroup const& g, FiniteGroup const& h,
                                 std::string label = {}) {
    std::size_t const m = g.order(), k = h.order(), n = m * k;
    std::vector<Elem> table(n * n);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        table[x * n + y] = static_cast<Elem>(g.mul(x / k, y / k) * k + h.mul(x % k, y % k));
      }
    }
    return FiniteGroup::make_unchecked(n, std::move(table), std::move(label));
  }

  struct AutomorphismGroup {
    GroupPtr                       group;  // composition: (f * g)(x) = f(g(x))
    std::vector<std::vector<Elem>> maps;   // element index -> automorphism of M
  };

  // Intended for small M (the action catalog uses |M| <= 8).
  inline AutomorphismGroup automorphism_group(GroupPtr const& m) {
    std::vector<Perm> auts;
    for (auto const& f : enumerate_homs(m, m)) {
      if (is_injective(f)) {
        auts.push_back(f.map());
      }
    }
    Perm id(m->order());
    std::iota(id.begin(), id.end(), Elem{0});
    auto cl = close_under<Perm>(id, std::span<Perm const>(auts), perm_compose,
                                auts.size() + 1);
    AutomorphismGroup out;
    out.group = FiniteGroup::make_unchecked(cl.elements.size(), std::move(cl.table),
                                            "Aut(" + m->label() + ")");
    out.maps  = std::move(cl.elements);
    return out;
  }

}  // namespace seclab

#endif  // SECLAB_GROUP_HPP_
