#pragma once
// Text I/O helpers: full-precision number formatting, CSV parsing, SPICE
// value notation, and a reader for the netlist subset this project emits.

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nrssh::io {

// Shortest text that round-trips a double exactly (printf %.17g).
std::string format_double(double v);

// Engineering notation with SPICE suffixes (f p n u m k Meg), 6 significant
// digits: 1e-10 -> "100p", 3.90625e-6 -> "3.90625u". Exact zero -> "0".
std::string format_spice_value(double v);

// Parse a SPICE value with an optional suffix and optional trailing unit
// letters (e.g. "100pF", "2.2u", "1Meg"). Throws std::invalid_argument.
double parse_spice_value(std::string_view text);

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(std::string_view name) const;       // throws if absent
    double num(std::size_t row, std::size_t col) const; // throws if not a number
};

// Strict reader for the CSVs this project writes: one header row, comma
// separator, LF line endings, no quoting.
Csv parse_csv(std::string_view text);

struct NetlistElement {
    char kind;          // 'L' or 'C'
    std::string name;
    std::string node1;
    std::string node2;  // "0" is ground
    double value;
};

struct Netlist {
    std::string title;
    std::vector<NetlistElement> elements;
    std::map<std::string, double> initial_conditions;  // node -> volts
    double tran_step = 0.0;
    double tran_stop = 0.0;
};

// Reader for the emitted subset: title line, L/C element cards, .IC, .TRAN,
// '*' comments, .END.
Netlist parse_netlist(std::string_view text);

}  // namespace nrssh::io
