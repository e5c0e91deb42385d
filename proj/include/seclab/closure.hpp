#ifndef SECLAB_CLOSURE_HPP_
#define SECLAB_CLOSURE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace seclab {

  using Elem = std::uint32_t;

  // Closure of a finite set of generators under an associative product.
  // Elements are numbered in breadth-first order starting from the
  // identity, so the numbering depends only on the generator sequence.
  template <typename T>
  struct Closure {
    std::vector<T>    elements;
    std::vector<Elem> table;  // row-major, table[i * n + j] = index(e_i * e_j)
    std::vector<Elem> generator_indices;
  };

  template <typename T, typename Mul>
  Closure<T> close_under(T const&            identity,
                         std::span<T const>  generators,
                         Mul&&               mul,
                         std::size_t         cap) {
    Closure<T>             out;
    std::map<T, Elem>      index;
    auto add = [&](T const& x) -> Elem {
      auto it = index.find(x);
      if (it != index.end()) {
        return it->second;
      }
      if (out.elements.size() >= cap) {
        detail::fail(ErrorKind::ClosureBound,
                     "closure exceeds " + std::to_string(cap) + " elements");
      }
      auto const k = static_cast<Elem>(out.elements.size());
      out.elements.push_back(x);
      index.emplace(x, k);
      return k;
    };
    add(identity);
    for (auto const& g : generators) {
      out.generator_indices.push_back(add(g));
    }
    // right-multiply every known element by every generator until stable
    for (std::size_t i = 0; i < out.elements.size(); ++i) {
      for (auto const& g : generators) {
        T const x = mul(out.elements[i], g);
        add(x);
      }
    }
    std::size_t const n = out.elements.size();
    out.table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out.table[i * n + j] = index.at(mul(out.elements[i], out.elements[j]));
      }
    }
    return out;
  }

}  // namespace seclab

#endif  // SECLAB_CLOSURE_HPP_
