// nrssh-cli: run nonreciprocal-SSH chain and LC-circuit experiments from a
// config file and write CSV/JSON/netlist artifacts. All runs are
// deterministic: identical configs produce byte-identical outputs.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"nonreciprocal SSH chain / LC circuit simulator"};
    app.require_subcommand(1);

    struct Common {
        std::string config;
        std::string out = ".";
    };

    using Handler = void (*)(const nrsshcli::Config&, const std::string&);
    struct Sub {
        const char* name;
        const char* help;
        Handler handler;
    };
    const Sub subs[] = {
        {"spectrum", "eigenenergies and initial-state weights", nrsshcli::cmd_spectrum},
        {"evolve", "quantum time evolution of an initial state", nrsshcli::cmd_evolve},
        {"synth", "LC component values and SPICE netlist", nrsshcli::cmd_synth},
        {"circuit-evolve", "circuit node voltages, averaged profile and aIPR",
         nrsshcli::cmd_circuit_evolve},
        {"aipr", "aIPR localization measure only", nrsshcli::cmd_aipr},
        {"sweep", "batch over a (kappa1, kappa2) grid", nrsshcli::cmd_sweep},
    };

    std::vector<std::shared_ptr<Common>> opts;
    for (const Sub& sub : subs) {
        auto common = std::make_shared<Common>();
        CLI::App* s = app.add_subcommand(sub.name, sub.help);
        s->add_option("--config", common->config, "experiment config file")
            ->required();
        s->add_option("--out", common->out, "output directory (default: .)");
        Handler handler = sub.handler;
        s->callback([common, handler] {
            const nrsshcli::Config cfg = nrsshcli::Config::parse_file(common->config);
            handler(cfg, common->out);
        });
        opts.push_back(std::move(common));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const nrsshcli::CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
