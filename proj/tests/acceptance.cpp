// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cstring>
#include <iostream>
#include <map>
#include <string>

#include "tameblocks/classifier.hpp"

using namespace tameblocks;

namespace {

const char* criterion_title(int c) {
  switch (c) {
    case 1: return "roster construction";
    case 2: return "fusion patterns";
    case 3: return "centralizer facts";
    case 4: return "normalizer and PIM facts";
    case 5: return "module laboratory";
    case 6: return "block invariants";
    case 7: return "classification round trips";
    case 8: return "property suites";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  auto tier = classifier::Tier::Core;
  uint64_t seed = 20260809;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--tier") && i + 1 < argc) {
      std::string t = argv[++i];
      if (t == "extended") tier = classifier::Tier::Extended;
    } else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      seed = std::stoull(argv[++i]);
    }
  }

  auto ledger = classifier::paper_suite(tier, seed);

  std::map<int, std::pair<int, int>> per_criterion;  // criterion -> (pass, total)
  for (auto& e : ledger) {
    auto& [pass, total] = per_criterion[e.criterion];
    ++total;
    if (e.pass) ++pass;
    if (!e.pass) std::cout << "  [fail] " << e.name << ": " << e.witness << "\n";
  }

  bool ok = true;
  for (auto& [crit, counts] : per_criterion) {
    bool crit_ok = counts.first == counts.second;
    ok = ok && crit_ok;
    std::cout << (crit_ok ? "[PASS] " : "[FAIL] ") << "criterion " << crit << " ("
              << criterion_title(crit) << "): " << counts.first << "/" << counts.second
              << " checks\n";
  }
  std::cout << (ok ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << " ("
            << (tier == classifier::Tier::Core ? "core" : "extended") << " tier)\n";
  return ok ? 0 : 1;
}
