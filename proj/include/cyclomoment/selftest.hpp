#pragma once

#include <string>
#include <vector>

namespace cyclo {

struct InvariantResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured quantity vs threshold, or the failure reason
};

// Invariant suites of every module at small moduli.  quick caps the modulus
// ranges at 60 and skips the golden-file reproductions; the full run checks
// the committed golden values found under golden_dir.
std::vector<InvariantResult> run_selftest(bool quick, const std::string& golden_dir,
                                          int threads);

}  // namespace cyclo
