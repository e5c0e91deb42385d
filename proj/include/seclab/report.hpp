#ifndef SECLAB_REPORT_HPP_
#define SECLAB_REPORT_HPP_

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohomology.hpp"
#include "error.hpp"
#include "extension.hpp"
#include "group.hpp"
#include "gxf.hpp"
#include "localglobal.hpp"

namespace seclab::report {

  using Json = nlohmann::ordered_json;

  struct JobResult {
    Json report;
    bool violation = false;  // an asserted implication failed
  };

  namespace detail {
    using seclab::detail::fail;

    inline std::string yes(bool b) {
      return b ? "true" : "false";
    }

    inline std::size_t to_size(std::string const& key, std::string const& v) {
      std::size_t out = 0;
      auto const  r   = std::from_chars(v.data(), v.data() + v.size(), out);
      if (r.ec != std::errc{} || r.ptr != v.data() + v.size()) {
        fail(ErrorKind::ValidationError, "option " + key + " needs an integer, got " + v);
      }
      return out;
    }

    inline void allow_options(gxf::Job const& job, std::vector<std::string> const& keys) {
      for (auto const& [k, v] : job.options) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
          fail(ErrorKind::ValidationError, "job " + job.command + " has no option " + k);
        }
      }
    }

    inline Json verdict_json(DescentVerdict const& v, CoefficientCorpus const& corpus) {
      Json j;
      j["holds"]           = v.holds;
      j["entries_checked"] = v.entries_checked;
      j["classes_checked"] = v.classes_checked;
      if (v.witness) {
        auto const& e = corpus[v.witness->entry];
        j["witness"]  = Json{{"entry", e.name},
                            {"provenance", to_string(e.provenance)},
                            {"alpha", v.witness->alpha.values()}};
      }
      return j;
    }

    inline Json interpolation_json(std::optional<Interpolation> const& w) {
      if (!w) {
        return Json(nullptr);
      }
      return Json{{"map", w->s.map()}, {"conjugators", w->conjugators}};
    }

    inline CoefficientCorpus user_corpus(gxf::Manifest const& m, gxf::Job const& job) {
      CoefficientCorpus out;
      if (auto c = job.option("corpus")) {
        std::string              item;
        std::istringstream       in(*c);
        while (std::getline(in, item, '+')) {
          out.push_back(CorpusEntry{m.action(item).coeff, Provenance::UserSupplied, item});
        }
      }
      return out;
    }
  }  // namespace detail

  inline JobResult run_job(gxf::Manifest const& m, gxf::Job const& job) {
    using detail::yes;
    JobResult r;
    Json&     j = r.report;
    j["job"]    = job.command + " " + job.target;
    if (!job.options.empty()) {
      Json opts = Json::object();
      for (auto const& [k, v] : job.options) {
        opts[k] = v;
      }
      j["options"] = opts;
    }
    std::string const& cmd = job.command;

    if (cmd == "sections") {
      detail::allow_options(job, {});
      auto const& ext = m.extension(job.target).ext;
      auto const  rep = enumerate_sections(ext);
      j["orders"]     = {{"A", ext.a()->order()}, {"E", ext.e()->order()}, {"Gamma", ext.gamma()->order()}};
      j["sections"]   = rep.sections.size();
      j["classes_mod_a"] = rep.classes_mod_a.size();
      j["classes_mod_e"] = rep.classes_mod_e.size();
      Json maps          = Json::array();
      for (auto const& s : rep.sections) {
        maps.push_back(s.map());
      }
      j["maps"]   = maps;
      j["result"] = "sections=" + std::to_string(rep.sections.size())
                    + ", classes_mod_a=" + std::to_string(rep.classes_mod_a.size())
                    + ", classes_mod_e=" + std::to_string(rep.classes_mod_e.size());
    } else if (cmd == "h1") {
      detail::allow_options(job, {});
      auto const& coeff = m.action(job.target).coeff;
      auto const  h     = h1(coeff);
      j["cocycles"]     = h.cocycles.size();
      j["classes"]      = h.size();
      Json reps         = Json::array();
      for (auto const& c : h.representatives) {
        reps.push_back(c.values());
      }
      j["representatives"] = reps;
      j["result"]          = "classes=" + std::to_string(h.size());
    } else if (cmd == "pushout") {
      detail::allow_options(job, {"subgroup"});
      auto const& ext = m.extension(job.target).ext;
      auto const  u   = job.option("subgroup");
      if (!u) {
        detail::fail(ErrorKind::ValidationError, "pushout needs subgroup=NAME");
      }
      auto const p = pushout(ext, m.subgroup(*u).sub);
      j["orders"]  = {{"A", p.ext.a()->order()}, {"E", p.ext.e()->order()}, {"Gamma", p.ext.gamma()->order()}};
      j["map"]     = p.map.map();
      auto const s = enumerate_sections(p.ext);
      j["result"]  = "order_A=" + std::to_string(p.ext.a()->order()) + ", order_E="
                    + std::to_string(p.ext.e()->order()) + ", sections=" + std::to_string(s.sections.size());
    } else if (cmd == "decide") {
      detail::allow_options(job, {"property", "bound", "corpus"});
      auto const& ls    = m.section_set(job.target).ls;
      auto const  prop  = job.option("property").value_or("");
      std::size_t bound = default_quotient_bound;
      if (auto b = job.option("bound")) {
        bound = detail::to_size("bound", *b);
      }
      bool holds = false;
      if (prop == "b" || prop == "c") {
        auto const w = prop == "b" ? decide_b(ls) : decide_c(ls);
        holds        = w.has_value();
        j["witness"] = detail::interpolation_json(w);
      } else if (prop == "a" || prop == "a'" || prop == "a''") {
        auto const user = detail::user_corpus(m, job);
        CoefficientCorpus corpus;
        DescentVerdict    v;
        if (prop == "a") {
          corpus = full_corpus(ls.ext(), bound, user);
          v      = decide_a(ls, corpus);
        } else if (prop == "a'") {
          corpus = constant_quotient_corpus(ls.ext(), bound);
          v      = decide_a(ls, corpus);
        } else {
          corpus = doubleprime_corpus(ls.ext(), bound);
          v      = decide_a_with_filter(ls, corpus, surjective_on_a(ls.ext()));
        }
        holds        = v.holds;
        j["corpus"]  = corpus.size();
        j["verdict"] = detail::verdict_json(v, corpus);
      } else {
        detail::fail(ErrorKind::ValidationError,
                     "decide needs property=a|a'|a''|b|c, got '" + prop + "'");
      }
      j["result"] = "property=" + prop + ", holds=" + yes(holds);
    } else if (cmd == "density") {
      detail::allow_options(job, {});
      bool const  is_family = std::any_of(m.families.begin(), m.families.end(),
                                          [&](auto const& f) { return f.name == job.target; });
      LocalFamily const fam = is_family ? m.family(job.target).family
                                        : m.section_set(job.target).ls.family();
      auto const covered = conjugates_of_local_images(fam);
      bool const dense   = covered.size() == fam.gamma()->order();
      j["locals"]        = fam.size();
      j["result"]        = "dense=" + yes(dense) + ", union=" + std::to_string(covered.size())
                    + ", order=" + std::to_string(fam.gamma()->order());
    } else if (cmd == "fibre") {
      detail::allow_options(job, {"family", "alpha"});
      auto const& coeff = m.action(job.target).coeff;
      auto const  f     = job.option("family");
      if (!f) {
        detail::fail(ErrorKind::ValidationError, "fibre needs family=NAME");
      }
      auto const& fam = m.family(*f).family;
      if (!(*fam.gamma() == *coeff->gamma())) {
        detail::fail(ErrorKind::ActionMismatch, "family and action have different Γ");
      }
      auto const  h     = h1(coeff);
      std::size_t alpha = detail::to_size("alpha", job.option("alpha").value_or("0"));
      if (alpha >= h.size()) {
        detail::fail(ErrorKind::ValidationError,
                     "alpha=" + std::to_string(alpha) + " but there are " + std::to_string(h.size())
                         + " classes");
      }
      auto const fib = diagonal_fibre(h.representatives[alpha], fam);
      j["classes"]   = h.size();
      j["fibre"]     = fib;
      j["result"]    = "fibre_size=" + std::to_string(fib.size());
    } else if (cmd == "jordan") {
      detail::allow_options(job, {});
      auto const rep = union_of_conjugates(m.subgroup(job.target).sub);
      j["union"]     = rep.union_set;
      j["index"]     = rep.index;
      j["result"]    = "covers=" + yes(rep.covers) + ", bound=" + std::to_string(rep.bound)
                    + ", union=" + std::to_string(rep.union_size());
    } else if (cmd == "verify") {
      detail::allow_options(job, {"bound", "corpus"});
      auto const&        ls = m.section_set(job.target).ls;
      EquivalenceOptions opts;
      if (auto b = job.option("bound")) {
        opts.bound = detail::to_size("bound", *b);
      }
      opts.user_corpus = detail::user_corpus(m, job);
      auto const rep   = verify_equivalences(ls, opts);
      j["a"]             = rep.a;
      j["a'"]            = rep.a_prime;
      j["a''"]           = rep.a_doubleprime;
      j["b"]             = rep.b;
      j["c"]             = rep.c;
      j["density"]       = rep.star_star;
      j["split"]         = rep.split;
      j["witness_b"]     = detail::interpolation_json(rep.witness_b);
      j["witness_c"]     = detail::interpolation_json(rep.witness_c);
      if (rep.constructed && rep.constructed->section) {
        j["constructed_section"] = {{"map", rep.constructed->section->map()},
                                    {"conjugators", rep.constructed->conjugators},
                                    {"conjugators_in_a", rep.constructed->conjugators_in_a}};
      }
      j["violations"] = rep.violations;
      r.violation     = !rep.ok();
      j["result"]     = "a=" + yes(rep.a) + ", a'=" + yes(rep.a_prime) + ", a''="
                    + yes(rep.a_doubleprime) + ", b=" + yes(rep.b) + ", c=" + yes(rep.c)
                    + ", density=" + yes(rep.star_star) + ", split=" + yes(rep.split)
                    + ", violations=" + std::to_string(rep.violations.size());
    } else if (cmd == "tower") {
      detail::allow_options(job, {"mode"});
      auto const& t    = m.tower(job.target);
      auto const  mode = job.option("mode").value_or("homs");
      if (mode != "homs" && mode != "sections") {
        detail::fail(ErrorKind::ValidationError, "tower mode must be homs or sections");
      }
      auto const res = tower_limit_sections(t.tower, m.section_set(t.sections).ls,
                                            mode == "homs" ? TowerMode::Homomorphisms
                                                           : TowerMode::Sections);
      j["level_sizes"] = res.level_sizes;
      if (res.chain) {
        Json chain = Json::array();
        for (auto const& s : *res.chain) {
          chain.push_back(s.map());
        }
        j["chain"]  = chain;
        j["result"] = "chain=true";
      } else {
        j["result"] = "chain=false, empty_level=" + std::to_string(*res.empty_level);
      }
    } else {
      detail::fail(ErrorKind::ValidationError, "unknown job command " + cmd);
    }
    return r;
  }

  // "key: value" lines; nested objects indent by two spaces.
  inline void render_text(std::ostream& os, Json const& v, std::size_t indent = 0) {
    std::string const pad(indent, ' ');
    for (auto it = v.begin(); it != v.end(); ++it) {
      auto const& val = it.value();
      if (val.is_object()) {
        os << pad << it.key() << ":\n";
        render_text(os, val, indent + 2);
      } else if (val.is_string()) {
        os << pad << it.key() << ": " << val.get<std::string>() << "\n";
      } else {
        os << pad << it.key() << ": " << val.dump() << "\n";
      }
    }
  }

  enum class Format { Text, Structured };

  struct RunOptions {
    Format format = Format::Text;
    bool   timing = true;
  };

  // Runs every job in order. Returns true when some verify job found a
  // violated implication. Errors propagate with the job's location.
  inline bool run_manifest(gxf::Manifest const& m, std::ostream& os, RunOptions const& opts = {}) {
    bool violation = false;
    Json all       = Json::array();
    for (std::size_t i = 0; i < m.jobs.size(); ++i) {
      auto const& job   = m.jobs[i];
      auto const  start = std::chrono::steady_clock::now();
      JobResult   res;
      try {
        res = run_job(m, job);
      } catch (Error const& e) {
        throw Error(e.kind(), gxf::where(job.loc) + ": job " + job.command + " " + job.target
                                  + ": " + e.what());
      }
      auto const ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      if (opts.timing) {
        res.report["timing_ms"] = ms;
      }
      violation = violation || res.violation;
      if (opts.format == Format::Text) {
        if (i > 0) {
          os << "\n";
        }
        render_text(os, res.report);
      } else {
        all.push_back(std::move(res.report));
      }
    }
    if (opts.format == Format::Structured) {
      os << Json{{"jobs", all}, {"violation", violation}}.dump(2) << "\n";
    }
    return violation;
  }

}  // namespace seclab::report

#endif  // SECLAB_REPORT_HPP_
