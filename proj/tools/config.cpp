#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace nrsshcli {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string strip_comment(std::string_view line) {
    for (std::size_t i = 0; i < line.size(); ++i)
        if (line[i] == '#' || line[i] == ';') return std::string(line.substr(0, i));
    return std::string(line);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(3, "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

Config Config::parse_text(std::string_view text, std::string filename) {
    Config cfg;
    cfg.filename_ = std::move(filename);
    std::string section;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string_view::npos) pos = text.size();
        ++line_no;
        std::string line = trim(strip_comment(text.substr(start, pos - start)));
        start = pos + 1;
        if (line.empty()) {
            if (pos == text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']')
                throw CliError(1, cfg.filename_ + ":" + std::to_string(line_no) +
                                      ": malformed section header: " + line);
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (section.empty())
                throw CliError(1, cfg.filename_ + ":" + std::to_string(line_no) +
                                      ": empty section name");
            cfg.sections_[section];  // sections may legitimately be empty
            cfg.section_lines_.emplace(section, line_no);
        } else {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw CliError(1, cfg.filename_ + ":" + std::to_string(line_no) +
                                      ": expected 'key = value': " + line);
            if (section.empty())
                throw CliError(1, cfg.filename_ + ":" + std::to_string(line_no) +
                                      ": key outside any [section]");
            const std::string key = trim(std::string_view(line).substr(0, eq));
            const std::string value = trim(std::string_view(line).substr(eq + 1));
            if (key.empty())
                throw CliError(1, cfg.filename_ + ":" + std::to_string(line_no) + ": empty key");
            auto [it, inserted] = cfg.sections_[section].emplace(key, Entry{value, line_no});
            (void)it;
            if (!inserted)
                throw CliError(1, cfg.filename_ + ":" + std::to_string(line_no) +
                                      ": duplicate key '" + key + "' in [" + section + "]");
        }
        if (pos == text.size()) break;
    }
    return cfg;
}

bool Config::has_section(const std::string& section) const {
    return sections_.count(section) != 0;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) != 0;
}

const Config::Entry& Config::entry(const std::string& section, const std::string& key) const {
    const auto sit = sections_.find(section);
    if (sit == sections_.end())
        throw CliError(1, filename_ + ": missing required section [" + section + "]");
    const auto kit = sit->second.find(key);
    if (kit == sit->second.end())
        throw CliError(1, filename_ + ": missing required key '" + key + "' in [" + section + "]");
    return kit->second;
}

std::string Config::where(const std::string& section, const std::string& key) const {
    if (has(section, key))
        return filename_ + ":" + std::to_string(sections_.at(section).at(key).line) + ": ";
    return filename_ + ": ";
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    return entry(section, key).value;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const Entry& e = entry(section, key);
    double v = 0.0;
    const char* b = e.value.data();
    auto [ptr, ec] = std::from_chars(b, b + e.value.size(), v);
    if (ec != std::errc{} || ptr != b + e.value.size())
        throw CliError(1, filename_ + ":" + std::to_string(e.line) + ": '" + key +
                              "' is not a number: " + e.value);
    return v;
}

int Config::get_int(const std::string& section, const std::string& key) const {
    const Entry& e = entry(section, key);
    int v = 0;
    const char* b = e.value.data();
    auto [ptr, ec] = std::from_chars(b, b + e.value.size(), v);
    if (ec != std::errc{} || ptr != b + e.value.size())
        throw CliError(1, filename_ + ":" + std::to_string(e.line) + ": '" + key +
                              "' is not an integer: " + e.value);
    return v;
}

bool Config::get_bool(const std::string& section, const std::string& key) const {
    const Entry& e = entry(section, key);
    std::string v = e.value;
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw CliError(1, filename_ + ":" + std::to_string(e.line) + ": '" + key +
                          "' is not a boolean: " + e.value);
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) const {
    const Entry& e = entry(section, key);
    std::string norm = e.value;
    std::replace(norm.begin(), norm.end(), ',', ' ');
    std::istringstream in(norm);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        double v = 0.0;
        const char* b = tok.data();
        auto [ptr, ec] = std::from_chars(b, b + tok.size(), v);
        if (ec != std::errc{} || ptr != b + tok.size())
            throw CliError(1, filename_ + ":" + std::to_string(e.line) + ": '" + key +
                                  "' has a non-numeric item: " + tok);
        out.push_back(v);
    }
    if (out.empty())
        throw CliError(1, filename_ + ":" + std::to_string(e.line) + ": '" + key +
                              "' must contain at least one number");
    return out;
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  const std::string& dflt) const {
    return has(section, key) ? get_string(section, key) : dflt;
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double dflt) const {
    return has(section, key) ? get_double(section, key) : dflt;
}

int Config::get_int_or(const std::string& section, const std::string& key, int dflt) const {
    return has(section, key) ? get_int(section, key) : dflt;
}

bool Config::get_bool_or(const std::string& section, const std::string& key, bool dflt) const {
    return has(section, key) ? get_bool(section, key) : dflt;
}

void Config::restrict_to(const std::map<std::string, std::set<std::string>>& allowed) const {
    for (const auto& [section, keys] : sections_) {
        const auto sit = allowed.find(section);
        if (sit == allowed.end())
            throw CliError(1, filename_ + ":" + std::to_string(section_lines_.at(section)) +
                                  ": unknown section [" + section + "] for this subcommand");
        for (const auto& [key, e] : keys)
            if (sit->second.count(key) == 0)
                throw CliError(1, filename_ + ":" + std::to_string(e.line) + ": unknown key '" +
                                      key + "' in [" + section + "]");
    }
}

}  // namespace nrsshcli
