#pragma once

#include <string>
#include <vector>

namespace divr {

struct SelfTestCheck {
  std::string name;
  bool passed;
  std::string detail;  // empty when passed
};

struct SelfTestReport {
  std::vector<SelfTestCheck> checks;

  bool all_passed() const {
    for (const SelfTestCheck& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

// Cross-validates the pipeline against independent brute-force computations
// at reduced scale (a few seconds).  With corrupt_spf_entry set, one entry of
// a copied prime table is damaged first; the table-consistency check must
// then fail, demonstrating that the checker actually detects corruption.
SelfTestReport run_selftest(bool corrupt_spf_entry = false);

}  // namespace divr
