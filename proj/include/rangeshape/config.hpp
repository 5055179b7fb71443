#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rangeshape {

// Flat key-value experiment configuration. Every output file embeds the
// full map in its header so a run is reproducible from the header alone.
class ExperimentConfig {
  public:
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;  // comma separated

    const std::map<std::string, std::string>& entries() const { return kv_; }

    // "key = value" lines, '#' comments
    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_text(const std::string& text);
    std::string to_text() const;     // one "key=value" per line
    std::string to_json() const;     // single JSON object

    // default output directory: RANGESHAPE_OUTDIR, else "."
    static std::string default_output_dir();

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace rangeshape
