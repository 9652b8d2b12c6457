#pragma once

#include <map>
#include <string>

namespace cyclo {

// Committed regression values: plain "key value" lines, '#' comments, values
// at 17 significant digits.  Produced once by the golden generator tool and
// re-checked by the selftest and acceptance suites.
std::map<std::string, double> load_golden(const std::string& path);
void save_golden(const std::string& path, const std::map<std::string, double>& values);

// Missing key throws with the key name (so a failure names the invariant).
double golden_value(const std::map<std::string, double>& values, const std::string& key);

}  // namespace cyclo
