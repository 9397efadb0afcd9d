#include "chg/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chg {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string Config::get(const std::string& key, const std::string& def) const {
    auto it = kv.find(key);
    return it == kv.end() ? def : it->second;
}

double Config::get_double(const std::string& key, double def) const {
    auto it = kv.find(key);
    return it == kv.end() ? def : std::stod(it->second);
}

int Config::get_int(const std::string& key, int def) const {
    auto it = kv.find(key);
    return it == kv.end() ? def : std::stoi(it->second);
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::vector<double> out;
    std::istringstream is(get(key));
    double x;
    while (is >> x) out.push_back(x);
    return out;
}

std::string Config::require(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end())
        throw std::runtime_error("config: missing required key '" + key + "'");
    return it->second;
}

std::string Config::serialize() const {
    std::ostringstream os;
    for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
    return os.str();
}

std::string Config::manifest_hash() const {
    uint64_t h = 1469598103934665603ull;
    for (char c : serialize()) {
        h ^= uint8_t(c);
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Config parse_config(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key on line " +
                                     std::to_string(lineno));
        cfg.kv[key] = val;
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_config(os.str());
}

}  // namespace chg
