// Command-line front end: construct, inspect, classify, module-lab and the
// acceptance battery, with JSON in and out.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "tameblocks/atlas.hpp"
#include "tameblocks/classifier.hpp"
#include "tameblocks/error.hpp"
#include "tameblocks/modrep2.hpp"
#include "tameblocks/twolocal.hpp"

using namespace tameblocks;

namespace {

void write_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  check(bool(out), ErrorKind::InvalidInput, "cannot write " + path);
  out << j.dump(2) << "\n";
}

permgrp::PermGroup input_group(const std::string& recipe, const std::string& file,
                               uint64_t seed) {
  check(recipe.empty() != file.empty(), ErrorKind::InvalidInput,
        "give exactly one of --recipe and --group");
  if (!recipe.empty()) return atlas::build(recipe, seed).group;
  return permgrp::load_group_file(file);
}

int run(int argc, char** argv) {
  CLI::App app{"classifier and verification lab for principal 2-blocks with semidihedral "
               "Sylow 2-subgroups"};
  app.require_subcommand(1);

  std::string recipe, group_file, sub_file, out_file, op, tier_name = "core";
  uint64_t seed = 1;

  auto* construct = app.add_subcommand("construct", "build a group from a recipe");
  construct->add_option("--recipe", recipe, "family:params, e.g. sl2pm:p=3,f=1")->required();
  construct->add_option("--out", out_file, "output group JSON file")->required();
  construct->add_option("--seed", seed, "construction seed");

  auto* classify_cmd = app.add_subcommand("classify", "classify a group's principal block");
  classify_cmd->add_option("--recipe", recipe, "family:params recipe");
  classify_cmd->add_option("--group", group_file, "group JSON file");
  classify_cmd->add_option("--seed", seed, "seed");
  classify_cmd->add_option("--json", out_file, "write the full report as JSON");

  auto* inspect = app.add_subcommand("inspect", "two-local report only");
  inspect->add_option("--recipe", recipe, "family:params recipe");
  inspect->add_option("--group", group_file, "group JSON file");
  inspect->add_option("--seed", seed, "seed");
  inspect->add_option("--json", out_file, "write the fragment as JSON");

  auto* suite = app.add_subcommand("paper-suite", "run the acceptance battery");
  suite->add_option("--tier", tier_name, "core or extended")
      ->check(CLI::IsMember({"core", "extended"}));
  suite->add_option("--seed", seed, "seed");
  suite->add_option("--json", out_file, "write the ledger as JSON");

  auto* lab = app.add_subcommand("module-lab", "permutation-module operations");
  lab->add_option("--group", group_file, "group JSON file")->required();
  lab->add_option("--subgroup", sub_file, "subgroup JSON file")->required();
  lab->add_option("--op", op, "split, scott or vertex")
      ->required()
      ->check(CLI::IsMember({"split", "scott", "vertex"}));
  lab->add_option("--seed", seed, "seed");
  lab->add_option("--json", out_file, "write the result as JSON");

  CLI11_PARSE(app, argc, argv);

  if (construct->parsed()) {
    auto g = atlas::build(recipe, seed);
    permgrp::save_group_file(g.group, out_file);
    std::cout << g.recipe.format() << ": order " << g.group.order() << ", degree "
              << g.group.degree() << " (" << g.provenance << ") -> " << out_file << "\n";
    return 0;
  }

  if (classify_cmd->parsed()) {
    auto g = input_group(recipe, group_file, seed);
    auto rep = classifier::classify(g, seed);
    auto j = rep.to_json();
    write_json(out_file, j);
    std::cout << "input:     " << rep.input << " (order " << rep.input_order << ")\n"
              << "odd core:  order " << rep.o2prime_order << "\n"
              << "sylow:     semidihedral, n = " << rep.n << "\n"
              << "pattern:   " << rep.pattern << "\n"
              << "case:      " << classifier::to_string(rep.thm31) << "\n"
              << "class:     " << atlas::to_string(rep.cls.tag) << "\n"
              << "canonical: " << rep.canonical.format() << "\n"
              << "ell:       " << rep.invariants.ell << "\n";
    for (auto& e : rep.ledger)
      std::cout << "  [" << (e.pass ? "pass" : "FAIL") << "] " << e.name << " (" << e.witness
                << ")\n";
    std::cout << "note: " << rep.scott_statement << "\n";
    std::cout << (rep.verified ? "VERIFIED" : "CHECK FAILURE") << "\n";
    return rep.verified ? 0 : 1;
  }

  if (inspect->parsed()) {
    auto g = input_group(recipe, group_file, seed);
    auto P = permgrp::sylow2(g, seed);
    auto fr = twolocal::semidihedral_frame(P.group);
    auto j = twolocal::two_local_fragment(g, fr);
    write_json(out_file, j);
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (suite->parsed()) {
    auto tier = tier_name == "extended" ? classifier::Tier::Extended : classifier::Tier::Core;
    auto ledger = classifier::paper_suite(tier, seed);
    bool ok = true;
    for (auto& e : ledger) {
      ok = ok && e.pass;
      std::cout << "[" << (e.pass ? "pass" : "FAIL") << "] (criterion " << e.criterion << ") "
                << e.name << ": " << e.witness << "\n";
    }
    nlohmann::json j;
    j["tier"] = tier_name;
    j["entries"] = classifier::ledger_to_json(ledger);
    j["status"] = ok ? "pass" : "fail";
    write_json(out_file, j);
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
  }

  if (lab->parsed()) {
    auto G = permgrp::load_group_file(group_file);
    auto H = permgrp::load_group_file(sub_file);
    nlohmann::json j = classifier::module_lab(G, H, op, seed);
    write_json(out_file, j);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
