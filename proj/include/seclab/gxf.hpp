#ifndef SECLAB_GXF_HPP_
#define SECLAB_GXF_HPP_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "extension.hpp"
#include "gamma_group.hpp"
#include "group.hpp"
#include "localglobal.hpp"

// Group Exchange Format: one statement per keyword, `#` starts a comment.
//
//   group NAME table [[0 1] [1 0]]
//   group NAME perm DEGREE [(0 1 2) (0 1)(2 3) ()]
//   subgroup NAME GROUP [generators]
//   hom NAME SRC TGT [images of the generators of SRC]
//   action NAME GAMMA M { [images of the generators of M] ... }
//   extension NAME A E G IOTA PI
//   family NAME G { local GI THETA ... }
//   sections NAME EXTENSION { S1 S2 ... }
//   tower NAME SECTIONS { Q1 EXT1 Q2 EXT2 ... }
//   job COMMAND TARGET key=value ...
//
// The generators of a perm group are the declared permutations, and its
// elements are numbered in closure order. A table group uses its canonical
// generators. Elements are written as indices, or in cycle notation for
// perm groups; adjacent cycles form one permutation.

namespace seclab::gxf {

  struct Location {
    std::size_t line = 0, col = 0;
  };

  inline std::string where(Location loc) {
    return "line " + std::to_string(loc.line) + ", col " + std::to_string(loc.col);
  }

  struct GroupDef {
    std::string       name;
    bool              is_perm = false;
    std::size_t       degree  = 0;
    std::vector<Perm> perms;     // declared generators (perm groups)
    std::vector<Perm> elements;  // element index -> permutation (perm groups)
    GroupPtr          group;
    std::vector<Elem> gens;      // element indices of the generators
  };

  struct SubgroupDef {
    std::string       name, group;
    std::vector<Elem> gens;
    Subgroup          sub;
  };

  struct HomDef {
    std::string       name, source, target;
    std::vector<Elem> images;
    GroupHom          hom;
  };

  struct ActionDef {
    std::string                    name, gamma, m;
    std::vector<std::vector<Elem>> images;  // per Γ generator, images of the M generators
    GammaGroupPtr                  coeff;
  };

  struct ExtensionDef {
    std::string name, a, e, g, iota, pi;
    Extension   ext;
  };

  struct FamilyDef {
    std::string                                      name, gamma;
    std::vector<std::pair<std::string, std::string>> locals;  // (group, theta)
    LocalFamily                                      family;
  };

  struct SectionsDef {
    std::string              name, ext;
    std::vector<std::string> maps;
    LocalSections            ls;
  };

  struct TowerDef {
    std::string                                      name, sections;
    std::vector<std::pair<std::string, std::string>> steps;  // (connecting hom, next extension)
    Tower                                            tower;
  };

  struct Job {
    std::string                                      command, target;
    std::vector<std::pair<std::string, std::string>> options;
    Location                                         loc;

    std::optional<std::string> option(std::string const& key) const {
      for (auto const& [k, v] : options) {
        if (k == key) {
          return v;
        }
      }
      return std::nullopt;
    }
  };

  enum class DefKind { Group, Subgroup, Hom, Action, Extension, Family, Sections, Tower };

  class Manifest {
   public:
    std::vector<GroupDef>                       groups;
    std::vector<SubgroupDef>                    subgroups;
    std::vector<HomDef>                         homs;
    std::vector<ActionDef>                      actions;
    std::vector<ExtensionDef>                   extensions;
    std::vector<FamilyDef>                      families;
    std::vector<SectionsDef>                    sections;
    std::vector<TowerDef>                       towers;
    std::vector<Job>                            jobs;
    std::vector<std::pair<DefKind, std::size_t>> order;  // definitions in input order

    GroupDef const& group(std::string const& n) const {
      return find(groups, n, "group");
    }
    SubgroupDef const& subgroup(std::string const& n) const {
      return find(subgroups, n, "subgroup");
    }
    HomDef const& hom(std::string const& n) const {
      return find(homs, n, "hom");
    }
    ActionDef const& action(std::string const& n) const {
      return find(actions, n, "action");
    }
    ExtensionDef const& extension(std::string const& n) const {
      return find(extensions, n, "extension");
    }
    FamilyDef const& family(std::string const& n) const {
      return find(families, n, "family");
    }
    SectionsDef const& section_set(std::string const& n) const {
      return find(sections, n, "sections");
    }
    TowerDef const& tower(std::string const& n) const {
      return find(towers, n, "tower");
    }

    bool has_name(std::string const& n) const {
      return _names.contains(n);
    }

    // Element of `g` written as an index or as a permutation.
    Elem element(GroupDef const& g, std::variant<Elem, Perm> const& x) const {
      if (auto const* i = std::get_if<Elem>(&x)) {
        if (*i >= g.group->order()) {
          detail::fail(ErrorKind::ValidationError,
                       "element " + std::to_string(*i) + " out of range for " + g.name);
        }
        return *i;
      }
      auto const& p = std::get<Perm>(x);
      if (!g.is_perm) {
        detail::fail(ErrorKind::ValidationError,
                     g.name + " is not a permutation group; use element indices");
      }
      Perm q = p;
      q.resize(std::max(q.size(), g.degree));
      for (std::size_t k = p.size(); k < q.size(); ++k) {
        q[k] = static_cast<Elem>(k);
      }
      for (Elem k = 0; k < g.elements.size(); ++k) {
        if (g.elements[k] == q) {
          return k;
        }
      }
      detail::fail(ErrorKind::ValidationError, "permutation is not an element of " + g.name);
    }

    ////////////////////////////////////////////////////////////////////
    // Builders; each validates and records the definition.
    ////////////////////////////////////////////////////////////////////

    GroupDef const& add_group_table(std::string name, std::size_t n, std::vector<Elem> table) {
      claim(name);
      GroupDef d;
      d.name  = name;
      d.group = group_from_table(n, std::move(table), name);
      d.gens.assign(d.group->generators().begin(), d.group->generators().end());
      return push(groups, DefKind::Group, std::move(d));
    }

    GroupDef const& add_group_perm(std::string name, std::size_t degree, std::vector<Perm> perms,
                                   std::size_t cap = default_closure_cap) {
      claim(name);
      GroupDef d;
      d.name    = name;
      d.is_perm = true;
      d.degree  = degree;
      for (auto& p : perms) {
        // short permutations fix the remaining points
        for (std::size_t k = p.size(); k < degree; ++k) {
          p.push_back(static_cast<Elem>(k));
        }
      }
      d.perms     = std::move(perms);
      auto pg     = group_from_permutations(degree, d.perms, name, cap);
      d.group     = pg.group;
      d.elements  = std::move(pg.elements);
      d.gens      = std::move(pg.generators);
      return push(groups, DefKind::Group, std::move(d));
    }

    SubgroupDef const& add_subgroup(std::string name, std::string group, std::vector<Elem> gens) {
      claim(name);
      auto const& g = this->group(group);
      for (Elem x : gens) {
        element(g, x);
      }
      SubgroupDef d{name, group, gens, subgroup_generated(g.group, gens)};
      return push(subgroups, DefKind::Subgroup, std::move(d));
    }

    HomDef const& add_hom(std::string name, std::string source, std::string target,
                          std::vector<Elem> images) {
      claim(name);
      auto const& s = group(source);
      auto const& t = group(target);
      if (images.size() != s.gens.size()) {
        detail::fail(ErrorKind::ValidationError,
                     "hom " + name + " needs " + std::to_string(s.gens.size())
                         + " images, got " + std::to_string(images.size()));
      }
      for (Elem x : images) {
        element(t, x);
      }
      HomDef d{name, source, target, images, hom_from_images(s.group, t.group, s.gens, images)};
      return push(homs, DefKind::Hom, std::move(d));
    }

    ActionDef const& add_action(std::string name, std::string gamma, std::string m,
                                std::vector<std::vector<Elem>> images) {
      claim(name);
      auto const& g  = group(gamma);
      auto const& md = group(m);
      if (images.size() != g.gens.size()) {
        detail::fail(ErrorKind::NotAnAction,
                     "action " + name + " needs one bracket per generator of " + gamma);
      }
      std::vector<std::vector<Elem>> auts;
      for (auto const& imgs : images) {
        if (imgs.size() != md.gens.size()) {
          detail::fail(ErrorKind::NotAnAction,
                       "each bracket needs the images of the " + std::to_string(md.gens.size())
                           + " generators of " + m);
        }
        for (Elem x : imgs) {
          element(md, x);
        }
        try {
          auts.push_back(hom_from_images(md.group, md.group, md.gens, imgs).map());
        } catch (Error const& e) {
          detail::fail(ErrorKind::NotAnAction, std::string("generator image is not an endomorphism: ") + e.what());
        }
      }
      ActionDef d{name, gamma, m, images, action_from_generators(g, md, auts)};
      return push(actions, DefKind::Action, std::move(d));
    }

    ExtensionDef const& add_extension(std::string name, std::string a, std::string e,
                                      std::string g, std::string iota, std::string pi) {
      claim(name);
      auto const& i = hom(iota);
      auto const& p = hom(pi);
      if (i.source != a || i.target != e || p.source != e || p.target != g) {
        detail::fail(ErrorKind::ValidationError,
                     "extension " + name + ": iota must be " + a + " -> " + e + " and pi " + e
                         + " -> " + g);
      }
      ExtensionDef d{name, a, e, g, iota, pi, Extension(i.hom, p.hom)};
      return push(extensions, DefKind::Extension, std::move(d));
    }

    FamilyDef const& add_family(std::string name, std::string gamma,
                                std::vector<std::pair<std::string, std::string>> locals) {
      claim(name);
      auto const&        g = group(gamma);
      std::vector<Local> ls;
      for (auto const& [gi, theta] : locals) {
        auto const& h = hom(theta);
        if (h.source != gi || h.target != gamma) {
          detail::fail(ErrorKind::ValidationError,
                       "local " + theta + " must be " + gi + " -> " + gamma);
        }
        ls.push_back(Local{group(gi).group, h.hom});
      }
      FamilyDef d{name, gamma, locals, LocalFamily(g.group, std::move(ls))};
      return push(families, DefKind::Family, std::move(d));
    }

    SectionsDef const& add_sections(std::string name, std::string ext,
                                    std::vector<std::string> maps) {
      claim(name);
      auto const&           x = extension(ext);
      std::vector<GroupHom> s;
      for (auto const& m : maps) {
        auto const& h = hom(m);
        if (h.target != x.e) {
          detail::fail(ErrorKind::NotASectionMap, m + " does not land in " + x.e);
        }
        s.push_back(h.hom);
      }
      SectionsDef d{name, ext, maps, LocalSections::from_sections(x.ext, std::move(s))};
      return push(sections, DefKind::Sections, std::move(d));
    }

    TowerDef const& add_tower(std::string name, std::string secs,
                              std::vector<std::pair<std::string, std::string>> steps) {
      claim(name);
      auto const&            s = section_set(secs);
      std::vector<Extension> levels{s.ls.ext()};
      std::vector<GroupHom>  maps;
      std::string            prev = s.ext;
      for (auto const& [q, next] : steps) {
        auto const& h  = hom(q);
        auto const& up = extension(prev);
        auto const& dn = extension(next);
        if (h.source != up.e || h.target != dn.e) {
          detail::fail(ErrorKind::IncompatibleTower,
                       q + " must map " + up.e + " to " + dn.e);
        }
        levels.push_back(dn.ext);
        maps.push_back(h.hom);
        prev = next;
      }
      TowerDef d{name, secs, steps, Tower(std::move(levels), std::move(maps))};
      return push(towers, DefKind::Tower, std::move(d));
    }

    void add_job(Job job) {
      jobs.push_back(std::move(job));
    }

   private:
    template <class T>
    T const& find(std::vector<T> const& v, std::string const& n, char const* what) const {
      for (auto const& d : v) {
        if (d.name == n) {
          return d;
        }
      }
      detail::fail(ErrorKind::UnknownName, std::string(what) + " " + n + " is not defined");
    }

    void claim(std::string const& n) {
      if (n.empty()) {
        detail::fail(ErrorKind::SyntaxError, "empty name");
      }
      if (!_names.insert(n).second) {
        detail::fail(ErrorKind::ValidationError, "name " + n + " is defined twice");
      }
    }

    template <class T>
    T const& push(std::vector<T>& v, DefKind kind, T d) {
      v.push_back(std::move(d));
      order.emplace_back(kind, v.size() - 1);
      return v.back();
    }

    // σ ↦ action, built along words in the declared generators of Γ.
    static GammaGroupPtr action_from_generators(GroupDef const& g, GroupDef const& m,
                                                std::vector<std::vector<Elem>> const& auts) {
      auto const&                    gg = *g.group;
      std::vector<std::vector<Elem>> action(gg.order());
      std::vector<Elem>              id(m.group->order());
      std::iota(id.begin(), id.end(), Elem{0});
      action[gg.identity()] = id;
      std::vector<Elem> queue{gg.identity()};
      for (std::size_t i = 0; i < queue.size(); ++i) {
        Elem const x = queue[i];
        for (std::size_t k = 0; k < g.gens.size(); ++k) {
          Elem const        y = gg.mul(x, g.gens[k]);
          std::vector<Elem> f(id.size());
          for (Elem v = 0; v < f.size(); ++v) {
            f[v] = action[x][auts[k][v]];
          }
          if (action[y].empty()) {
            action[y] = std::move(f);
            queue.push_back(y);
          } else if (action[y] != f) {
            detail::fail(ErrorKind::NotAnAction,
                         "the generator images do not respect the relations of " + g.name);
          }
        }
      }
      return GammaGroup::make(g.group, m.group, std::move(action), m.name);
    }

    std::set<std::string> _names;
  };

  ////////////////////////////////////////////////////////////////////////
  // Lexer
  ////////////////////////////////////////////////////////////////////////

  struct Token {
    enum Kind { Word, LBracket, RBracket, LBrace, RBrace, LParen, RParen, Equals, End };
    Kind        kind = End;
    std::string text;
    Location    loc;
    bool        space_before = true;
  };

  inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t        line = 1, col = 1;
    bool               space = true;
    std::size_t        i     = 0;
    auto               special = [](char c) {
      return c == '[' || c == ']' || c == '{' || c == '}' || c == '(' || c == ')' || c == '='
             || c == '#' || c == ',';
    };
    auto advance = [&](char c) {
      ++i;
      if (c == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    };
    while (i < text.size()) {
      char const c = text[i];
      if (c == '#') {
        while (i < text.size() && text[i] != '\n') {
          advance(text[i]);
        }
        space = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',') {
        advance(c);
        space = true;
        continue;
      }
      Token t;
      t.loc          = {line, col};
      t.space_before = space;
      space          = false;
      switch (c) {
        case '[': t.kind = Token::LBracket; break;
        case ']': t.kind = Token::RBracket; break;
        case '{': t.kind = Token::LBrace; break;
        case '}': t.kind = Token::RBrace; break;
        case '(': t.kind = Token::LParen; break;
        case ')': t.kind = Token::RParen; break;
        case '=': t.kind = Token::Equals; break;
        default: t.kind = Token::Word; break;
      }
      if (t.kind != Token::Word) {
        t.text = std::string(1, c);
        advance(c);
      } else {
        while (i < text.size() && !special(text[i])
               && std::string_view(" \t\r\n").find(text[i]) == std::string_view::npos) {
          t.text.push_back(text[i]);
          advance(text[i]);
        }
      }
      out.push_back(std::move(t));
    }
    Token end;
    end.loc = {line, col};
    out.push_back(end);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Parser
  ////////////////////////////////////////////////////////////////////////

  class Parser {
   public:
    explicit Parser(std::string_view text, std::size_t cap = default_closure_cap)
        : _toks(tokenize(text)), _cap(cap) {}

    Manifest parse() {
      Manifest m;
      while (peek().kind != Token::End) {
        Token const kw = expect_word("a statement keyword");
        try {
          statement(m, kw);
        } catch (Error const& e) {
          if (e.kind() == ErrorKind::SyntaxError || _positioned) {
            throw;
          }
          // module errors are reported at the statement keyword
          auto const kind = e.kind() == ErrorKind::UnknownName ? ErrorKind::UnknownName
                                                               : ErrorKind::ValidationError;
          throw Error(kind, where(kw.loc) + ": " + kw.text + ": " + e.what());
        }
      }
      return m;
    }

   private:
    Token const& peek() const {
      return _toks[_pos];
    }
    Token const& next() {
      Token const& t = _toks[_pos];
      if (t.kind != Token::End) {
        ++_pos;
      }
      return t;
    }

    [[noreturn]] void syntax(Token const& t, std::string const& msg) {
      _positioned = true;
      detail::fail(ErrorKind::SyntaxError,
                   where(t.loc) + ": " + msg + (t.kind == Token::End ? " (at end of input)"
                                                                     : " near '" + t.text + "'"));
    }

    Token const& expect(Token::Kind k, char const* what) {
      if (peek().kind != k) {
        syntax(peek(), std::string("expected ") + what);
      }
      return next();
    }

    Token const& expect_word(char const* what) {
      return expect(Token::Word, what);
    }

    std::size_t number(Token const& t) {
      std::size_t v   = 0;
      auto const  res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (t.kind != Token::Word || res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size()) {
        syntax(t, "expected a non-negative integer");
      }
      return v;
    }

    // `( a b c )`, possibly followed by further cycles without a space.
    Perm cycles() {
      std::vector<std::vector<Elem>> cs;
      std::size_t                    hi = 0;
      do {
        expect(Token::LParen, "'('");
        std::vector<Elem> c;
        while (peek().kind == Token::Word) {
          auto const v = static_cast<Elem>(number(next()));
          if (std::find(c.begin(), c.end(), v) != c.end()) {
            syntax(_toks[_pos - 1], "point repeated in a cycle");
          }
          c.push_back(v);
          hi = std::max<std::size_t>(hi, v + 1);
        }
        expect(Token::RParen, "')'");
        cs.push_back(std::move(c));
      } while (peek().kind == Token::LParen && !peek().space_before);
      Perm p(hi);
      std::iota(p.begin(), p.end(), Elem{0});
      std::vector<char> used(hi, 0);
      for (auto const& c : cs) {
        for (std::size_t k = 0; k < c.size(); ++k) {
          if (used[c[k]]) {
            syntax(_toks[_pos - 1], "cycles are not disjoint");
          }
          used[c[k]] = 1;
          p[c[k]]    = c[(k + 1) % c.size()];
        }
      }
      return p;
    }

    std::vector<std::variant<Elem, Perm>> element_list() {
      expect(Token::LBracket, "'['");
      std::vector<std::variant<Elem, Perm>> out;
      while (peek().kind != Token::RBracket) {
        if (peek().kind == Token::LParen) {
          out.emplace_back(cycles());
        } else if (peek().kind == Token::Word) {
          out.emplace_back(static_cast<Elem>(number(next())));
        } else {
          syntax(peek(), "expected an element or ']'");
        }
      }
      next();
      return out;
    }

    std::vector<Elem> resolve(Manifest const& m, std::string const& group, Token const& at,
                              std::vector<std::variant<Elem, Perm>> const& xs) {
      auto const&       g = lookup(at, [&] { return &m.group(group); });
      std::vector<Elem> out;
      for (auto const& x : xs) {
        out.push_back(m.element(*g, x));
      }
      return out;
    }

    // Runs a lookup, reporting unknown names at the token that used them.
    template <class F>
    auto lookup(Token const& at, F f) -> decltype(f()) {
      try {
        return f();
      } catch (Error const& e) {
        if (e.kind() == ErrorKind::UnknownName) {
          _positioned = true;
          throw Error(ErrorKind::UnknownName, where(at.loc) + ": " + e.what());
        }
        throw;
      }
    }

    Token const& name_ref(Manifest const& m) {
      Token const& t = expect_word("a name");
      if (!m.has_name(t.text)) {
        _positioned = true;
        detail::fail(ErrorKind::UnknownName, where(t.loc) + ": " + t.text + " is not defined");
      }
      return t;
    }

    void statement(Manifest& m, Token const& kw) {
      _positioned = false;
      std::string const& k = kw.text;
      if (k == "group") {
        std::string const name = expect_word("a group name").text;
        Token const&      kind = expect_word("'table' or 'perm'");
        if (kind.text == "table") {
          expect(Token::LBracket, "'['");
          std::vector<std::vector<Elem>> rows;
          while (peek().kind == Token::LBracket) {
            next();
            rows.emplace_back();
            while (peek().kind == Token::Word) {
              rows.back().push_back(static_cast<Elem>(number(next())));
            }
            expect(Token::RBracket, "']'");
          }
          Token const& close = expect(Token::RBracket, "']'");
          std::vector<Elem> table;
          for (auto const& r : rows) {
            if (r.size() != rows.size()) {
              syntax(close, "table must be square");
            }
            table.insert(table.end(), r.begin(), r.end());
          }
          if (rows.empty()) {
            syntax(close, "empty table");
          }
          m.add_group_table(name, rows.size(), std::move(table));
        } else if (kind.text == "perm") {
          std::size_t const degree = number(next());
          auto const        items  = element_list();
          std::vector<Perm> perms;
          for (auto const& x : items) {
            if (!std::holds_alternative<Perm>(x)) {
              syntax(_toks[_pos - 1], "permutation generators must use cycle notation");
            }
            auto p = std::get<Perm>(x);
            if (p.size() > degree) {
              syntax(_toks[_pos - 1], "cycle point exceeds the degree");
            }
            perms.push_back(std::move(p));
          }
          m.add_group_perm(name, degree, std::move(perms), _cap);
        } else {
          syntax(kind, "expected 'table' or 'perm'");
        }
      } else if (k == "subgroup") {
        std::string const name = expect_word("a name").text;
        Token const&      g    = name_ref(m);
        auto const        xs   = element_list();
        m.add_subgroup(name, g.text, resolve(m, g.text, g, xs));
      } else if (k == "hom") {
        std::string const name = expect_word("a name").text;
        Token const&      s    = name_ref(m);
        Token const&      t    = name_ref(m);
        auto const        xs   = element_list();
        m.add_hom(name, s.text, t.text, resolve(m, t.text, t, xs));
      } else if (k == "action") {
        std::string const name = expect_word("a name").text;
        Token const&      g    = name_ref(m);
        Token const&      md   = name_ref(m);
        expect(Token::LBrace, "'{'");
        std::vector<std::vector<Elem>> images;
        while (peek().kind == Token::LBracket) {
          auto const& at = peek();
          images.push_back(resolve(m, md.text, at, element_list()));
        }
        expect(Token::RBrace, "'}'");
        m.add_action(name, g.text, md.text, std::move(images));
      } else if (k == "extension") {
        std::string const name = expect_word("a name").text;
        std::string const a = name_ref(m).text, e = name_ref(m).text, g = name_ref(m).text;
        std::string const iota = name_ref(m).text, pi = name_ref(m).text;
        m.add_extension(name, a, e, g, iota, pi);
      } else if (k == "family") {
        std::string const name = expect_word("a name").text;
        std::string const g    = name_ref(m).text;
        expect(Token::LBrace, "'{'");
        std::vector<std::pair<std::string, std::string>> locals;
        while (peek().kind == Token::Word) {
          Token const& l = next();
          if (l.text != "local") {
            syntax(l, "expected 'local'");
          }
          std::string const gi = name_ref(m).text;
          locals.emplace_back(gi, name_ref(m).text);
        }
        expect(Token::RBrace, "'}'");
        m.add_family(name, g, std::move(locals));
      } else if (k == "sections") {
        std::string const name = expect_word("a name").text;
        std::string const ext  = name_ref(m).text;
        expect(Token::LBrace, "'{'");
        std::vector<std::string> maps;
        while (peek().kind == Token::Word) {
          maps.push_back(name_ref(m).text);
        }
        expect(Token::RBrace, "'}'");
        m.add_sections(name, ext, std::move(maps));
      } else if (k == "tower") {
        std::string const name = expect_word("a name").text;
        std::string const secs = name_ref(m).text;
        expect(Token::LBrace, "'{'");
        std::vector<std::pair<std::string, std::string>> steps;
        while (peek().kind == Token::Word) {
          std::string const q = name_ref(m).text;
          steps.emplace_back(q, name_ref(m).text);
        }
        expect(Token::RBrace, "'}'");
        m.add_tower(name, secs, std::move(steps));
      } else if (k == "job") {
        Job job;
        job.loc     = kw.loc;
        job.command = expect_word("a job command").text;
        job.target  = name_ref(m).text;
        while (peek().kind == Token::Word && _toks[_pos + 1].kind == Token::Equals) {
          std::string const key = next().text;
          next();
          job.options.emplace_back(key, expect_word("an option value").text);
        }
        m.add_job(std::move(job));
      } else {
        syntax(kw, "unknown statement");
      }
    }

    std::vector<Token> _toks;
    std::size_t        _pos = 0;
    std::size_t        _cap;
    bool               _positioned = false;
  };

  inline Manifest parse_manifest(std::string_view text, std::size_t cap = default_closure_cap) {
    return Parser(text, cap).parse();
  }

  ////////////////////////////////////////////////////////////////////////
  // Writer
  ////////////////////////////////////////////////////////////////////////

  inline std::string cycle_notation(Perm const& p) {
    std::string       out;
    std::vector<char> seen(p.size(), 0);
    for (Elem x = 0; x < p.size(); ++x) {
      if (seen[x] || p[x] == x) {
        continue;
      }
      out += "(";
      for (Elem y = x; !seen[y]; y = p[y]) {
        seen[y] = 1;
        out += (y == x ? "" : " ") + std::to_string(y);
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  namespace detail {
    inline std::string bracket(std::vector<Elem> const& v) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? " " : "") + std::to_string(v[i]);
      }
      return s + "]";
    }
  }  // namespace detail

  inline std::string serialize(Manifest const& m) {
    std::ostringstream os;
    for (auto const& [kind, i] : m.order) {
      switch (kind) {
        case DefKind::Group: {
          auto const& g = m.groups[i];
          if (g.is_perm) {
            os << "group " << g.name << " perm " << g.degree << " [";
            for (std::size_t k = 0; k < g.perms.size(); ++k) {
              os << (k ? " " : "") << cycle_notation(g.perms[k]);
            }
            os << "]\n";
          } else {
            auto const& gg = *g.group;
            os << "group " << g.name << " table [";
            for (Elem a = 0; a < gg.order(); ++a) {
              std::vector<Elem> row(gg.table().begin() + a * gg.order(),
                                    gg.table().begin() + (a + 1) * gg.order());
              os << detail::bracket(row);
            }
            os << "]\n";
          }
          break;
        }
        case DefKind::Subgroup: {
          auto const& s = m.subgroups[i];
          os << "subgroup " << s.name << " " << s.group << " " << detail::bracket(s.gens) << "\n";
          break;
        }
        case DefKind::Hom: {
          auto const& h = m.homs[i];
          os << "hom " << h.name << " " << h.source << " " << h.target << " "
             << detail::bracket(h.images) << "\n";
          break;
        }
        case DefKind::Action: {
          auto const& a = m.actions[i];
          os << "action " << a.name << " " << a.gamma << " " << a.m << " {";
          for (auto const& imgs : a.images) {
            os << " " << detail::bracket(imgs);
          }
          os << " }\n";
          break;
        }
        case DefKind::Extension: {
          auto const& e = m.extensions[i];
          os << "extension " << e.name << " " << e.a << " " << e.e << " " << e.g << " " << e.iota
             << " " << e.pi << "\n";
          break;
        }
        case DefKind::Family: {
          auto const& f = m.families[i];
          os << "family " << f.name << " " << f.gamma << " {";
          for (auto const& [g, t] : f.locals) {
            os << " local " << g << " " << t;
          }
          os << " }\n";
          break;
        }
        case DefKind::Sections: {
          auto const& s = m.sections[i];
          os << "sections " << s.name << " " << s.ext << " {";
          for (auto const& x : s.maps) {
            os << " " << x;
          }
          os << " }\n";
          break;
        }
        case DefKind::Tower: {
          auto const& t = m.towers[i];
          os << "tower " << t.name << " " << t.sections << " {";
          for (auto const& [q, e] : t.steps) {
            os << " " << q << " " << e;
          }
          os << " }\n";
          break;
        }
      }
    }
    for (auto const& j : m.jobs) {
      os << "job " << j.command << " " << j.target;
      for (auto const& [k, v] : j.options) {
        os << " " << k << "=" << v;
      }
      os << "\n";
    }
    return os.str();
  }

}  // namespace seclab::gxf

#endif  // SECLAB_GXF_HPP_
