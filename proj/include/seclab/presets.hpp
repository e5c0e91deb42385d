#ifndef SECLAB_PRESETS_HPP_
#define SECLAB_PRESETS_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace seclab {

  // A named small group given by permutation generators.
  struct Preset {
    std::string       name;
    std::size_t       order = 0;
    std::size_t       degree = 1;
    std::vector<Perm> generators;

    PermGroup build() const {
      return group_from_permutations(degree, generators, name);
    }
  };

  namespace presets {

    inline Perm identity_perm(std::size_t n) {
      Perm p(n);
      std::iota(p.begin(), p.end(), Elem{0});
      return p;
    }

    // The n-cycle (0 1 ... n-1) on `degree` points.
    inline Perm cycle(std::size_t n, std::size_t degree) {
      Perm p = identity_perm(degree);
      for (std::size_t i = 0; i < n; ++i) {
        p[i] = static_cast<Elem>((i + 1) % n);
      }
      return p;
    }

    inline Perm from_cycles(std::size_t degree, std::vector<std::vector<Elem>> const& cycles) {
      Perm p = identity_perm(degree);
      for (auto const& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          p[c[i]] = c[(i + 1) % c.size()];
        }
      }
      return p;
    }

    inline Preset cyclic(std::size_t n) {
      if (n == 1) {
        return Preset{"C1", 1, 1, {}};
      }
      return Preset{"C" + std::to_string(n), n, n, {cycle(n, n)}};
    }

    // Symmetries of the regular n-gon, order 2n.
    inline Preset dihedral(std::size_t n, std::string name) {
      Perm r = cycle(n, n);
      Perm s(n);
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = static_cast<Elem>((n - i) % n);
      }
      return Preset{std::move(name), 2 * n, n, {r, s}};
    }

    // Disjoint union of the permutation actions.
    inline Preset product(Preset const& a, Preset const& b, std::string name) {
      std::size_t const deg = a.degree + b.degree;
      Preset            out{std::move(name), a.order * b.order, deg, {}};
      for (auto const& g : a.generators) {
        Perm p = identity_perm(deg);
        std::copy(g.begin(), g.end(), p.begin());
        out.generators.push_back(std::move(p));
      }
      for (auto const& g : b.generators) {
        Perm p = identity_perm(deg);
        for (std::size_t x = 0; x < b.degree; ++x) {
          p[a.degree + x] = static_cast<Elem>(a.degree + g[x]);
        }
        out.generators.push_back(std::move(p));
      }
      return out;
    }

    // Left regular representation of a group given by mul on [0, n),
    // with 0 the identity, generated by the listed elements.
    inline Preset regular(std::string name, std::size_t n,
                          std::function<Elem(Elem, Elem)> const& mul,
                          std::vector<Elem> const& gens) {
      Preset out{std::move(name), n, n, {}};
      for (Elem g : gens) {
        Perm p(n);
        for (Elem x = 0; x < n; ++x) {
          p[x] = mul(g, x);
        }
        out.generators.push_back(std::move(p));
      }
      return out;
    }

    // Dic_n of order 4n: <a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>.
    // Element a^i x^j has index 2i + j.
    inline Preset dicyclic(std::size_t n, std::string name) {
      auto const m   = static_cast<Elem>(2 * n);
      auto       mul = [m, n](Elem p, Elem q) -> Elem {
        Elem const i = p / 2, j = p % 2, k = q / 2, l = q % 2;
        if (j == 0) {
          return ((i + k) % m) * 2 + l;
        }
        Elem const d = (i + m - k) % m;
        if (l == 0) {
          return d * 2 + 1;
        }
        return ((d + n) % m) * 2;
      };
      return regular(std::move(name), 4 * n, mul, {2, 1});
    }

    // C_m ⋊ C_k with b a b^-1 = a^r. Element a^i b^j has index i k + j.
    inline Preset metacyclic(std::size_t m, std::size_t k, std::size_t r, std::string name) {
      std::vector<std::size_t> pw(k, 1);
      for (std::size_t j = 1; j < k; ++j) {
        pw[j] = pw[j - 1] * r % m;
      }
      if (pw[k - 1] * r % m != 1) {
        detail::fail(ErrorKind::NotAnAction, name + ": r^k is not 1 mod m");
      }
      auto mul = [m, k, pw](Elem p, Elem q) -> Elem {
        std::size_t const i = p / k, j = p % k, i2 = q / k, j2 = q % k;
        return static_cast<Elem>(((i + pw[j] * i2) % m) * k + (j + j2) % k);
      };
      return regular(std::move(name), m * k, mul, {static_cast<Elem>(k), 1});
    }

    // SL(2,3) acting on the 8 nonzero vectors of F_3^2.
    inline Preset sl23() {
      std::vector<std::array<int, 2>> vecs;
      for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) {
          if (x != 0 || y != 0) {
            vecs.push_back({x, y});
          }
        }
      }
      auto index = [&](std::array<int, 2> v) {
        return static_cast<Elem>(std::find(vecs.begin(), vecs.end(), v) - vecs.begin());
      };
      auto mat = [&](int a, int b, int c, int d) {
        Perm p(8);
        for (std::size_t i = 0; i < 8; ++i) {
          auto [x, y] = vecs[i];
          p[i]        = index({(a * x + b * y) % 3, (c * x + d * y) % 3});
        }
        return p;
      };
      return Preset{"SL2_3", 24, 8, {mat(1, 1, 0, 1), mat(0, 2, 1, 0)}};
    }

  }  // namespace presets

  // Every preset, ordered by (order, name).
  inline std::vector<Preset> const& all_presets() {
    static std::vector<Preset> const catalog = [] {
      using namespace presets;
      std::vector<Preset> v;
      for (std::size_t n = 1; n <= 24; ++n) {
        v.push_back(cyclic(n));
      }
      for (std::size_t n : {32u, 36u, 48u, 60u, 64u}) {
        v.push_back(cyclic(n));
      }
      Preset const c2 = cyclic(2), c3 = cyclic(3), c4 = cyclic(4), c6 = cyclic(6);
      Preset const s3{"S3", 6, 3, {from_cycles(3, {{0, 1, 2}}), from_cycles(3, {{0, 1}})}};
      v.push_back(s3);
      for (std::size_t n = 4; n <= 16; ++n) {
        if (2 * n <= 24 || n == 16) {
          v.push_back(dihedral(n, "D" + std::to_string(n)));
        }
      }
      v.push_back(Preset{"A4", 12, 4, {from_cycles(4, {{0, 1, 2}}), from_cycles(4, {{0, 1}, {2, 3}})}});
      v.push_back(Preset{"S4", 24, 4, {from_cycles(4, {{0, 1, 2, 3}}), from_cycles(4, {{0, 1}})}});
      v.push_back(Preset{"A5", 60, 5, {from_cycles(5, {{0, 1, 2, 3, 4}}), from_cycles(5, {{0, 1, 2}})}});

      Preset const c2c2  = product(c2, c2, "C2xC2");
      Preset const c2_3  = product(c2c2, c2, "C2xC2xC2");
      Preset const c2c4  = product(c2, c4, "C2xC4");
      v.push_back(c2c2);
      v.push_back(c2_3);
      v.push_back(c2c4);
      v.push_back(product(c3, c3, "C3xC3"));
      v.push_back(product(c2, c6, "C2xC6"));
      v.push_back(product(c4, c4, "C4xC4"));
      v.push_back(product(c2, cyclic(8), "C2xC8"));
      v.push_back(product(c2c2, c4, "C2xC2xC4"));
      v.push_back(product(c2_3, c2, "C2xC2xC2xC2"));
      v.push_back(product(c3, c6, "C3xC6"));
      v.push_back(product(c2, cyclic(10), "C2xC10"));
      v.push_back(product(c2, cyclic(12), "C2xC12"));
      v.push_back(product(c2c2, c6, "C2xC2xC6"));

      Preset const q8   = dicyclic(2, "Q8");
      Preset const dic3 = dicyclic(3, "Dic3");
      v.push_back(q8);
      v.push_back(dic3);
      v.push_back(dicyclic(4, "Q16"));
      v.push_back(dicyclic(5, "Dic5"));
      v.push_back(dicyclic(6, "Dic6"));

      v.push_back(metacyclic(8, 2, 5, "M16"));
      v.push_back(metacyclic(8, 2, 3, "SD16"));
      v.push_back(metacyclic(4, 4, 3, "C4:C4"));
      v.push_back(metacyclic(3, 8, 2, "C3:C8"));
      v.push_back(metacyclic(5, 4, 2, "F20"));
      v.push_back(metacyclic(7, 3, 2, "C7:C3"));
      v.push_back(sl23());

      Preset const d4 = dihedral(4, "D4");
      Preset const a4{"A4", 12, 4, {from_cycles(4, {{0, 1, 2}}), from_cycles(4, {{0, 1}, {2, 3}})}};
      v.push_back(product(c2, d4, "C2xD4"));
      v.push_back(product(c2, q8, "C2xQ8"));
      v.push_back(product(a4, c2, "A4xC2"));
      v.push_back(product(d4, c3, "D4xC3"));
      v.push_back(product(q8, c3, "Q8xC3"));
      v.push_back(product(c2, dic3, "C2xDic3"));
      v.push_back(product(s3, c4, "S3xC4"));
      v.push_back(product(c3, s3, "C3xS3"));
      v.push_back(product(s3, s3, "S3xS3"));
      v.push_back(product(a4, c3, "A4xC3"));
      v.push_back(product(Preset{"S4", 24, 4, {from_cycles(4, {{0, 1, 2, 3}}), from_cycles(4, {{0, 1}})}},
                          c2, "S4xC2"));
      v.push_back(product(c2c2, d4, "C2xC2xD4"));

      std::stable_sort(v.begin(), v.end(), [](Preset const& a, Preset const& b) {
        return a.order != b.order ? a.order < b.order : a.name < b.name;
      });
      return v;
    }();
    return catalog;
  }

  inline std::vector<Preset> presets_up_to(std::size_t max_order) {
    std::vector<Preset> out;
    for (auto const& p : all_presets()) {
      if (p.order <= max_order) {
        out.push_back(p);
      }
    }
    return out;
  }

  inline Preset const& find_preset(std::string const& name) {
    for (auto const& p : all_presets()) {
      if (p.name == name) {
        return p;
      }
    }
    detail::fail(ErrorKind::UnknownName, "no preset named " + name);
  }

  inline GroupPtr preset_group(std::string const& name) {
    return find_preset(name).build().group;
  }

}  // namespace seclab

#endif  // SECLAB_PRESETS_HPP_
