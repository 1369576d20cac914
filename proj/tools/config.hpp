#pragma once
// Sectioned key-value experiment configs:
//
//   # comment
//   [model]
//   nu = 1.0
//   kappa1 = 4 2 1 0.5     # lists are whitespace- or comma-separated
//
// Unknown sections and keys are rejected with file:line diagnostics, as are
// malformed values. Validation failures map to exit code 1, I/O to 3.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nrsshcli {

// carries the process exit code: 1 validation, 2 numerical, 3 I/O
struct CliError : std::runtime_error {
    int exit_code;
    CliError(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(std::string_view text, std::string filename);

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key) const;
    bool get_bool(const std::string& section, const std::string& key) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;

    std::string get_string_or(const std::string& section, const std::string& key,
                              const std::string& dflt) const;
    double get_double_or(const std::string& section, const std::string& key, double dflt) const;
    int get_int_or(const std::string& section, const std::string& key, int dflt) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool dflt) const;

    // "file:line: " prefix for diagnostics about an existing key, or
    // "file: " when the key is absent
    std::string where(const std::string& section, const std::string& key) const;

    // reject sections/keys outside the allowed map (key set per section)
    void restrict_to(const std::map<std::string, std::set<std::string>>& allowed) const;

private:
    struct Entry {
        std::string value;
        int line;
    };
    std::string filename_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
    std::map<std::string, int> section_lines_;

    const Entry& entry(const std::string& section, const std::string& key) const;
};

}  // namespace nrsshcli
