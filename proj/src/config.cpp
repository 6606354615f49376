#include "qharm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "qharm/errors.hpp"

namespace qharm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw DomainError("config: '" + key + "' expects a number, got '" + v + "'");
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    int out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw DomainError("config: '" + key + "' expects an integer, got '" + v + "'");
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (!(q > 0 && q < 1)) throw DomainError("q must lie in (0,1)");
    if (precision_bits < 53) throw DomainError("precision-bits must be at least 53");
    if (window < 8) throw DomainError("window must be at least 8");
    if (!(tol > 0)) throw DomainError("tol must be positive");
    if (mmin > mmax) throw DomainError("mmin must not exceed mmax");
}

void RunConfig::apply(const std::map<std::string, std::string>& kv) {
    for (const auto& [raw, v] : kv) {
        std::string key = raw;
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "q") q = to_double(key, v);
        else if (key == "precision-bits") precision_bits = to_int(key, v);
        else if (key == "window") window = to_int(key, v);
        else if (key == "tol") tol = to_double(key, v);
        else if (key == "mmin") mmin = to_int(key, v);
        else if (key == "mmax") mmax = to_int(key, v);
        else if (key == "output") {
            if (v == "json") output = OutputFormat::Json;
            else if (v == "csv") output = OutputFormat::Csv;
            else throw DomainError("config: output must be json or csv");
        } else {
            throw DomainError("config: unknown key '" + key + "'");
        }
    }
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw DomainError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        kv[key] = val;
    }
    return kv;
}

}  // namespace qharm
