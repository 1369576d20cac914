#pragma once
// Subcommand entry points. Each reads a config, runs the library through the
// C API, and writes the output files into out_dir. Throws CliError.

#include <string>

#include "config.hpp"

namespace nrsshcli {

void cmd_spectrum(const Config& cfg, const std::string& out_dir);
void cmd_evolve(const Config& cfg, const std::string& out_dir);
void cmd_synth(const Config& cfg, const std::string& out_dir);
void cmd_circuit_evolve(const Config& cfg, const std::string& out_dir);
void cmd_aipr(const Config& cfg, const std::string& out_dir);
void cmd_sweep(const Config& cfg, const std::string& out_dir);

}  // namespace nrsshcli
