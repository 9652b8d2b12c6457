#include "cyclomoment/golden.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cyclo {

std::map<std::string, double> load_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_golden: cannot open " + path);
    std::map<std::string, double> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        double value;
        if (!(ls >> key >> value)) continue;
        out[key] = value;
    }
    return out;
}

void save_golden(const std::string& path, const std::map<std::string, double>& values) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_golden: cannot open " + path);
    char buf[32];
    for (const auto& [key, value] : values) {
        std::snprintf(buf, sizeof buf, "%.17g", value);
        out << key << ' ' << buf << '\n';
    }
    if (!out) throw std::runtime_error("save_golden: write failed for " + path);
}

double golden_value(const std::map<std::string, double>& values, const std::string& key) {
    const auto it = values.find(key);
    if (it == values.end())
        throw std::runtime_error("golden value missing: " + key);
    return it->second;
}

}  // namespace cyclo
