// seclab: batch front end for manifests in the Group Exchange Format.
//
//   seclab run MANIFEST [--format=text|structured] [--no-timing]
//                       [--max-order=N] [--seed=N]
//   seclab gen --max-order=N --seed=N
//
// MANIFEST may be `@corpus`, meaning the generated corpus for the given
// --max-order and --seed. Exit codes: 0 ok, 1 validation error, 2 a
// verified implication failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "seclab/seclab.hpp"

namespace {

  int run(std::string const& path, std::string const& format, bool no_timing,
          std::size_t max_order, std::uint64_t seed) {
    seclab::gxf::Manifest m;
    if (path == "@corpus") {
      m = seclab::generate_corpus(max_order, seed);
    } else {
      std::ifstream in(path);
      if (!in) {
        std::cerr << "seclab: cannot read " << path << "\n";
        return 1;
      }
      std::ostringstream text;
      text << in.rdbuf();
      m = seclab::gxf::parse_manifest(text.str());
      for (auto const& g : m.groups) {
        if (g.group->order() > max_order) {
          throw seclab::Error(seclab::ErrorKind::BoundExceeded,
                              "group " + g.name + " has order " + std::to_string(g.group->order())
                                  + " > --max-order=" + std::to_string(max_order));
        }
      }
    }
    seclab::report::RunOptions opts;
    opts.format = format == "structured" ? seclab::report::Format::Structured
                                         : seclab::report::Format::Text;
    opts.timing = !no_timing;
    bool const violation = seclab::report::run_manifest(m, std::cout, opts);
    return violation ? 2 : 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-group laboratory for sections and descent obstructions"};
  app.require_subcommand(1);

  std::string   manifest;
  std::string   format    = "text";
  bool          no_timing = false;
  std::size_t   max_order = seclab::max_corpus_order;
  std::uint64_t seed      = 1;

  auto* run_cmd = app.add_subcommand("run", "run the jobs of a manifest");
  run_cmd->add_option("manifest", manifest, "GXF file, or @corpus")->required();
  run_cmd->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "structured"}));
  run_cmd->add_flag("--no-timing", no_timing, "omit timing lines");
  run_cmd->add_option("--max-order", max_order, "largest group order accepted");
  run_cmd->add_option("--seed", seed, "seed for @corpus");

  std::size_t gen_order = 8;
  auto*       gen_cmd   = app.add_subcommand("gen", "print a generated corpus manifest");
  gen_cmd->add_option("--max-order", gen_order, "largest preset order (at most 64)")->required();
  gen_cmd->add_option("--seed", seed, "random seed")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      return run(manifest, format, no_timing, max_order, seed);
    }
    std::cout << seclab::gxf::serialize(seclab::generate_corpus(gen_order, seed));
    return 0;
  } catch (seclab::Error const& e) {
    std::cerr << "seclab: " << e.what() << "\n";
    return 1;
  }
}
