#pragma once
// Flat key = value configuration with dotted section names, e.g.
//   potential.kind = quartic
//   ladder.eps = 0.04 0.02 0.01

#include <map>
#include <string>
#include <vector>

namespace chg {

struct Config {
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get(const std::string& key, const std::string& def = "") const;
    double get_double(const std::string& key, double def) const;
    int get_int(const std::string& key, int def) const;
    std::vector<double> get_list(const std::string& key) const;
    // throws a validation error naming the key when absent
    std::string require(const std::string& key) const;

    std::string serialize() const;       // sorted, canonical
    std::string manifest_hash() const;   // FNV-1a of the serialization
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

}  // namespace chg
