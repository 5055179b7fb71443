#include "rangeshape/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rangeshape {

namespace {
std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace

void ExperimentConfig::set(const std::string& key, double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    kv_[key] = os.str();
}

void ExperimentConfig::set(const std::string& key, long long value) { kv_[key] = std::to_string(value); }

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: " + it->second);
    }
}

long long ExperimentConfig::get_int(const std::string& key, long long fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stoll(it->second);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an integer: " + it->second);
    }
}

std::vector<double> ExperimentConfig::get_double_list(const std::string& key) const {
    std::vector<double> out;
    auto it = kv_.find(key);
    if (it == kv_.end()) return out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "': not a number list: " + it->second);
        }
    }
    return out;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        cfg.kv_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

std::string ExperimentConfig::to_text() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    }
    return out;
}

std::string ExperimentConfig::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : kv_) j[k] = v;
    return j.dump();
}

std::string ExperimentConfig::default_output_dir() {
    const char* env = std::getenv("RANGESHAPE_OUTDIR");
    return env && *env ? env : ".";
}

}  // namespace rangeshape
