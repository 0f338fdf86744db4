#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qgraph {

struct SelfTestCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Embedded oracle corpus: the closed-form identities the library must
// reproduce.  Returns one entry per case; `out`, when given, receives a
// pass/fail line per case.
std::vector<SelfTestCase> run_selftest(std::ostream* out = nullptr);

}  // namespace qgraph
