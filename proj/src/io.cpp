#include "nrssh/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace nrssh::io {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_spice_value(double v) {
    if (v == 0.0) return "0";
    struct Suffix { double scale; const char* text; };
    static constexpr Suffix suffixes[] = {
        {1e6, "Meg"}, {1e3, "k"}, {1.0, ""}, {1e-3, "m"},
        {1e-6, "u"},  {1e-9, "n"}, {1e-12, "p"}, {1e-15, "f"},
    };
    const double mag = std::abs(v);
    const Suffix* chosen = &suffixes[2];
    for (const auto& s : suffixes) {
        if (mag >= s.scale) { chosen = &s; break; }
        chosen = &s;  // smaller than everything ends at femto
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g%s", v / chosen->scale, chosen->text);
    return buf;
}

double parse_spice_value(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty spice value");
    const char* begin = text.data();
    const char* end = begin + text.size();
    double mantissa = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, mantissa);
    if (ec != std::errc{}) throw std::invalid_argument("bad spice value: " + std::string(text));
    std::string rest(ptr, end);
    std::transform(rest.begin(), rest.end(), rest.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    double scale = 1.0;
    if (!rest.empty()) {
        if (rest.rfind("meg", 0) == 0) { scale = 1e6; rest.erase(0, 3); }
        else {
            switch (rest[0]) {
                case 'f': scale = 1e-15; rest.erase(0, 1); break;
                case 'p': scale = 1e-12; rest.erase(0, 1); break;
                case 'n': scale = 1e-9;  rest.erase(0, 1); break;
                case 'u': scale = 1e-6;  rest.erase(0, 1); break;
                case 'm': scale = 1e-3;  rest.erase(0, 1); break;
                case 'k': scale = 1e3;   rest.erase(0, 1); break;
                default: break;
            }
        }
        // tolerate trailing unit letters like F, H, V, s
        for (char c : rest)
            if (!std::isalpha(static_cast<unsigned char>(c)))
                throw std::invalid_argument("bad spice value: " + std::string(text));
    }
    return mantissa * scale;
}

std::size_t Csv::col(std::string_view name) const {
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == name) return j;
    throw std::invalid_argument("csv: no column named " + std::string(name));
}

double Csv::num(std::size_t row, std::size_t c) const {
    const std::string& cell = rows.at(row).at(c);
    const char* b = cell.data();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(b, b + cell.size(), v);
    if (ec != std::errc{} || ptr != b + cell.size())
        throw std::invalid_argument("csv: cell is not a number: '" + cell + "'");
    return v;
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> tokenize_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Csv parse_csv(std::string_view text) {
    Csv csv;
    std::size_t start = 0;
    bool first = true;
    while (start < text.size()) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string_view::npos) pos = text.size();
        const std::string_view line = text.substr(start, pos - start);
        start = pos + 1;
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (first) {
            csv.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != csv.header.size())
                throw std::invalid_argument("csv: ragged row");
            csv.rows.push_back(std::move(cells));
        }
    }
    if (first) throw std::invalid_argument("csv: empty input");
    return csv;
}

Netlist parse_netlist(std::string_view text) {
    Netlist nl;
    std::size_t start = 0;
    bool first_line = true;
    while (start < text.size()) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string_view::npos) pos = text.size();
        std::string_view line = text.substr(start, pos - start);
        start = pos + 1;
        if (first_line) {
            first_line = false;
            nl.title = std::string(line[0] == '*' ? line.substr(1) : line);
            while (!nl.title.empty() && nl.title.front() == ' ') nl.title.erase(0, 1);
            continue;
        }
        if (line.empty() || line[0] == '*') continue;
        if (line[0] == '.') {
            auto toks = tokenize_ws(line);
            std::string directive = toks[0];
            std::transform(directive.begin(), directive.end(), directive.begin(),
                           [](unsigned char c) { return std::toupper(c); });
            if (directive == ".IC") {
                for (std::size_t k = 1; k < toks.size(); ++k) {
                    const std::string& t = toks[k];
                    const auto open = t.find('(');
                    const auto close = t.find(')');
                    const auto eq = t.find('=');
                    if (open == std::string::npos || close == std::string::npos ||
                        eq == std::string::npos || eq < close)
                        throw std::invalid_argument("netlist: bad .IC token: " + t);
                    nl.initial_conditions[t.substr(open + 1, close - open - 1)] =
                        parse_spice_value(t.substr(eq + 1));
                }
            } else if (directive == ".TRAN") {
                if (toks.size() < 3) throw std::invalid_argument("netlist: bad .TRAN card");
                nl.tran_step = parse_spice_value(toks[1]);
                nl.tran_stop = parse_spice_value(toks[2]);
            } else if (directive == ".END") {
                break;
            } else {
                throw std::invalid_argument("netlist: unsupported directive: " + directive);
            }
            continue;
        }
        auto toks = tokenize_ws(line);
        if (toks.size() != 4) throw std::invalid_argument("netlist: bad element card: " + std::string(line));
        const char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(toks[0][0])));
        if (kind != 'L' && kind != 'C')
            throw std::invalid_argument("netlist: unsupported element kind: " + toks[0]);
        nl.elements.push_back({kind, toks[0], toks[1], toks[2], parse_spice_value(toks[3])});
    }
    return nl;
}

}  // namespace nrssh::io
