#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "nrssh.h"

namespace nrsshcli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void fail_api(nrssh_status st, const std::string& context) {
    throw CliError(st == NRSSH_ERR_INVALID ? 1 : 2, context + ": " + nrssh_last_error());
}

void check(nrssh_status st, const std::string& context) {
    if (st != NRSSH_OK) fail_api(st, context);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(3, "cannot open output file: " + path.string());
    out << content;
    out.flush();
    if (!out) throw CliError(3, "write failed: " + path.string());
}

std::filesystem::path out_path(const std::string& out_dir, const std::string& prefix,
                               const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw CliError(3, "cannot create output directory: " + out_dir);
    return std::filesystem::path(out_dir) / (prefix.empty() ? name : prefix + "_" + name);
}

using ModelPtr = std::unique_ptr<nrssh_model, decltype(&nrssh_model_free)>;
using EigenPtr = std::unique_ptr<nrssh_eigen, decltype(&nrssh_eigen_free)>;
using CircuitPtr = std::unique_ptr<nrssh_circuit, decltype(&nrssh_circuit_free)>;

struct ModelBlock {
    double nu, kappa1, kappa2;
    int n_cells;
};

ModelBlock read_model_block(const Config& cfg) {
    return ModelBlock{cfg.get_double("model", "nu"), cfg.get_double("model", "kappa1"),
                      cfg.get_double("model", "kappa2"), cfg.get_int("model", "n_cells")};
}

ModelPtr make_model(const Config& cfg, const ModelBlock& mb) {
    nrssh_model* raw = nullptr;
    const nrssh_status st = nrssh_model_create(mb.nu, mb.kappa1, mb.kappa2, mb.n_cells, &raw);
    if (st != NRSSH_OK)
        throw CliError(1, cfg.where("model", "nu") + std::string(nrssh_last_error()));
    return ModelPtr(raw, &nrssh_model_free);
}

struct CircuitBlock {
    double lambda;      // resolved (default applied if absent)
    bool lambda_given;
    double ref_L, ref_C, v0;
};

CircuitBlock read_circuit_block(const Config& cfg, const nrssh_model* model) {
    CircuitBlock cb;
    cb.ref_L = cfg.get_double_or("circuit", "ref_L", 1e-3);
    cb.ref_C = cfg.get_double_or("circuit", "ref_C", 100e-12);
    cb.v0 = cfg.get_double_or("circuit", "v0", 1.0);
    cb.lambda_given = cfg.has("circuit", "lambda");
    if (cb.lambda_given) {
        cb.lambda = cfg.get_double("circuit", "lambda");
    } else {
        const nrssh_status st = nrssh_default_lambda(model, &cb.lambda);
        if (st != NRSSH_OK)
            throw CliError(1, cfg.where("circuit", "lambda") +
                                  "lambda not given and no default: " + nrssh_last_error());
    }
    return cb;
}

CircuitPtr make_circuit(const Config& cfg, const nrssh_model* model, const CircuitBlock& cb) {
    nrssh_circuit* raw = nullptr;
    const nrssh_status st = nrssh_circuit_create(model, cb.lambda, cb.ref_L, cb.ref_C, &raw);
    if (st != NRSSH_OK)
        throw CliError(st == NRSSH_ERR_INVALID ? 1 : 2,
                       cfg.where("circuit", "lambda") + std::string(nrssh_last_error()));
    return CircuitPtr(raw, &nrssh_circuit_free);
}

// "e<k>" (1-based site) or "zero_mode"
std::vector<double> parse_psi0(const Config& cfg, const std::string& token,
                               const nrssh_model* model) {
    const int dim = nrssh_model_dim(model);
    std::vector<double> psi0(static_cast<std::size_t>(dim), 0.0);
    if (token == "zero_mode") {
        check(nrssh_model_zero_mode(model, psi0.data()), "zero mode");
        return psi0;
    }
    if (token.size() >= 2 && token[0] == 'e') {
        const int site = std::atoi(token.c_str() + 1);
        if (site >= 1 && site <= dim) {
            psi0[static_cast<std::size_t>(site - 1)] = 1.0;
            return psi0;
        }
    }
    throw CliError(1, cfg.where("run", "psi0") + "psi0 must be e<k> (1..2N-1) or zero_mode, got '" +
                          token + "'");
}

std::vector<double> uniform_grid(double t_max, int samples) {
    std::vector<double> times(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k)
        times[static_cast<std::size_t>(k)] =
            (samples == 1) ? 0.0 : t_max * static_cast<double>(k) / (samples - 1);
    return times;
}

std::string node_label(int flat) {  // 0-based flat index
    return (flat % 2 == 0 ? "A" : "B") + std::to_string(flat / 2 + 1);
}

ordered_json params_json(const ModelBlock& mb) {
    ordered_json j;
    j["nu"] = mb.nu;
    j["kappa1"] = mb.kappa1;
    j["kappa2"] = mb.kappa2;
    j["n_cells"] = mb.n_cells;
    return j;
}

// One vocabulary shared by all subcommands, so the same config file can
// drive e.g. synth and circuit-evolve; keys a subcommand does not use are
// ignored, unknown keys are rejected with their line number.
const std::map<std::string, std::set<std::string>> kAllowedKeys = {
    {"model", {"nu", "kappa1", "kappa2", "n_cells"}},
    {"circuit", {"lambda", "ref_L", "ref_C", "v0"}},
    {"run",
     {"psi0", "dump_eigenvectors", "t_max", "samples", "aipr_t", "quad_step", "prefix"}},
    {"sweep", {"kappa1", "kappa2", "mode"}},
};

}  // namespace

void cmd_spectrum(const Config& cfg, const std::string& out_dir) {
    cfg.restrict_to(kAllowedKeys);
    const ModelBlock mb = read_model_block(cfg);
    const ModelPtr model = make_model(cfg, mb);
    const int dim = nrssh_model_dim(model.get());
    const std::string prefix = cfg.get_string_or("run", "prefix", "");

    nrssh_eigen* eraw = nullptr;
    check(nrssh_eigen_create(model.get(), &eraw), "eigensystem");
    const EigenPtr eigen(eraw, &nrssh_eigen_free);

    std::vector<double> energies(static_cast<std::size_t>(dim));
    check(nrssh_eigen_energies(eigen.get(), energies.data()), "energies");

    const std::vector<double> psi0 =
        parse_psi0(cfg, cfg.get_string_or("run", "psi0", "e1"), model.get());
    std::vector<double> weights(static_cast<std::size_t>(dim));
    check(nrssh_eigen_weights(eigen.get(), psi0.data(), nullptr, weights.data()), "weights");

    std::ostringstream csv;
    csv << "s,E_s,w_s\n";
    for (int s = 0; s < dim; ++s)
        csv << (s + 1) << ',' << fmt17(energies[static_cast<std::size_t>(s)]) << ','
            << fmt17(weights[static_cast<std::size_t>(s)]) << "\n";
    write_file(out_path(out_dir, prefix, "spectrum.csv"), csv.str());

    if (cfg.get_bool_or("run", "dump_eigenvectors", false)) {
        std::vector<double> right(static_cast<std::size_t>(dim) * dim);
        check(nrssh_eigen_right_vectors(eigen.get(), right.data()), "right vectors");
        std::ostringstream vcsv;
        vcsv << "site";
        for (int s = 1; s <= dim; ++s) vcsv << ",re_" << s << ",im_" << s;
        vcsv << "\n";
        for (int i = 0; i < dim; ++i) {
            vcsv << (i + 1);
            for (int s = 0; s < dim; ++s)
                vcsv << ',' << fmt17(right[static_cast<std::size_t>(i) * dim + s]) << ",0";
            vcsv << "\n";
        }
        write_file(out_path(out_dir, prefix, "eigenvectors.csv"), vcsv.str());
    }
}

void cmd_evolve(const Config& cfg, const std::string& out_dir) {
    cfg.restrict_to(kAllowedKeys);
    const ModelBlock mb = read_model_block(cfg);
    const ModelPtr model = make_model(cfg, mb);
    const int dim = nrssh_model_dim(model.get());
    const std::string prefix = cfg.get_string_or("run", "prefix", "");
    const double t_max = cfg.get_double_or("run", "t_max", 40.0);
    const int samples = cfg.get_int_or("run", "samples", 801);
    if (samples < 1) throw CliError(1, cfg.where("run", "samples") + "samples must be >= 1");
    if (t_max < 0.0) throw CliError(1, cfg.where("run", "t_max") + "t_max must be >= 0");
    const std::string psi0_token = cfg.get_string_or("run", "psi0", "e1");
    const std::vector<double> psi0 = parse_psi0(cfg, psi0_token, model.get());

    const std::vector<double> times = uniform_grid(t_max, samples);
    std::vector<double> intensities(times.size() * static_cast<std::size_t>(dim));
    check(nrssh_evolve(model.get(), psi0.data(), nullptr, times.data(), times.size(),
                       intensities.data(), nullptr, nullptr),
          "evolve");

    std::ostringstream csv;
    csv << "nu_t";
    for (int i = 1; i <= dim; ++i) csv << ",I_" << i;
    csv << "\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        csv << fmt17(times[k]);
        for (int i = 0; i < dim; ++i)
            csv << ',' << fmt17(intensities[k * static_cast<std::size_t>(dim) + i]);
        csv << "\n";
    }
    write_file(out_path(out_dir, prefix, "evolve.csv"), csv.str());

    ordered_json meta;
    meta["params"] = params_json(mb);
    meta["psi0"] = psi0_token;
    meta["grid"] = {{"t_min", 0.0}, {"t_max", t_max}, {"samples", samples}};
    meta["skin_direction"] =
        mb.kappa1 > mb.kappa2 ? "left" : (mb.kappa1 < mb.kappa2 ? "right" : "none");
    write_file(out_path(out_dir, prefix, "evolve_meta.json"), meta.dump(2) + "\n");
}

void cmd_synth(const Config& cfg, const std::string& out_dir) {
    cfg.restrict_to(kAllowedKeys);
    const ModelBlock mb = read_model_block(cfg);
    const ModelPtr model = make_model(cfg, mb);
    const CircuitBlock cb = read_circuit_block(cfg, model.get());
    const CircuitPtr circuit = make_circuit(cfg, model.get(), cb);
    const std::string prefix = cfg.get_string_or("run", "prefix", "");

    char* csv = nullptr;
    check(nrssh_circuit_component_csv(circuit.get(), &csv), "component table");
    write_file(out_path(out_dir, prefix, "components.csv"), csv);
    nrssh_string_free(csv);

    char* netlist = nullptr;
    check(nrssh_circuit_netlist(circuit.get(), cb.v0, &netlist), "netlist");
    write_file(out_path(out_dir, prefix, "circuit.cir"), netlist);
    nrssh_string_free(netlist);
}

namespace {

ordered_json aipr_report(const ModelBlock& mb, const CircuitBlock& cb, const nrssh_circuit* c,
                         double t, double quad_step) {
    double value = 0.0;
    check(nrssh_circuit_aipr(c, cb.v0, t, quad_step, &value), "aipr");
    ordered_json j;
    j["params"] = params_json(mb);
    j["params"]["ref_L"] = cb.ref_L;
    j["params"]["ref_C"] = cb.ref_C;
    j["params"]["v0"] = cb.v0;
    j["lambda"] = cb.lambda;
    j["N"] = mb.n_cells;
    j["t"] = t;
    j["aipr"] = value;
    j["quadrature_step"] = quad_step;
    return j;
}

}  // namespace

void cmd_circuit_evolve(const Config& cfg, const std::string& out_dir) {
    cfg.restrict_to(kAllowedKeys);
    const ModelBlock mb = read_model_block(cfg);
    const ModelPtr model = make_model(cfg, mb);
    const CircuitBlock cb = read_circuit_block(cfg, model.get());
    const CircuitPtr circuit = make_circuit(cfg, model.get(), cb);
    const int dim = nrssh_model_dim(model.get());
    const std::string prefix = cfg.get_string_or("run", "prefix", "");
    const double t_max = cfg.get_double_or("run", "t_max", 100.0);
    const int samples = cfg.get_int_or("run", "samples", 2001);
    const double aipr_t = cfg.get_double_or("run", "aipr_t", t_max);
    const double quad_step = cfg.get_double_or("run", "quad_step", 1e-3);
    if (samples < 1) throw CliError(1, cfg.where("run", "samples") + "samples must be >= 1");

    const std::vector<double> times = uniform_grid(t_max, samples);
    std::vector<double> volts(times.size() * static_cast<std::size_t>(dim));
    check(nrssh_circuit_evolve(circuit.get(), cb.v0, times.data(), times.size(), volts.data()),
          "circuit evolve");

    std::ostringstream csv;
    csv << "omega0_t";
    for (int i = 0; i < dim; ++i) csv << ",V_" << node_label(i);
    csv << "\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        csv << fmt17(times[k]);
        for (int i = 0; i < dim; ++i)
            csv << ',' << fmt17(volts[k * static_cast<std::size_t>(dim) + i]);
        csv << "\n";
    }
    write_file(out_path(out_dir, prefix, "circuit_evolve.csv"), csv.str());

    std::vector<double> profile(static_cast<std::size_t>(dim));
    check(nrssh_circuit_average_profile(circuit.get(), cb.v0, aipr_t, quad_step, profile.data()),
          "average profile");
    std::ostringstream pcsv;
    pcsv << "site,node,vbar_V\n";
    for (int i = 0; i < dim; ++i)
        pcsv << (i + 1) << ',' << node_label(i) << ','
             << fmt17(profile[static_cast<std::size_t>(i)]) << "\n";
    write_file(out_path(out_dir, prefix, "circuit_profile.csv"), pcsv.str());

    const ordered_json report = aipr_report(mb, cb, circuit.get(), aipr_t, quad_step);
    write_file(out_path(out_dir, prefix, "aipr.json"), report.dump(2) + "\n");
}

void cmd_aipr(const Config& cfg, const std::string& out_dir) {
    cfg.restrict_to(kAllowedKeys);
    const ModelBlock mb = read_model_block(cfg);
    const ModelPtr model = make_model(cfg, mb);
    const CircuitBlock cb = read_circuit_block(cfg, model.get());
    const CircuitPtr circuit = make_circuit(cfg, model.get(), cb);
    const std::string prefix = cfg.get_string_or("run", "prefix", "");
    const double t = cfg.get_double_or("run", "aipr_t", 100.0);
    const double quad_step = cfg.get_double_or("run", "quad_step", 1e-3);

    const ordered_json report = aipr_report(mb, cb, circuit.get(), t, quad_step);
    write_file(out_path(out_dir, prefix, "aipr.json"), report.dump(2) + "\n");
}

void cmd_sweep(const Config& cfg, const std::string& out_dir) {
    cfg.restrict_to(kAllowedKeys);
    const double nu = cfg.get_double("model", "nu");
    const int n_cells = cfg.get_int("model", "n_cells");
    const std::string prefix = cfg.get_string_or("run", "prefix", "");
    const double t_max = cfg.get_double_or("run", "t_max", 40.0);
    const int samples = cfg.get_int_or("run", "samples", 801);
    const double aipr_t = cfg.get_double_or("run", "aipr_t", 100.0);
    const double quad_step = cfg.get_double_or("run", "quad_step", 1e-3);
    const double ref_L = cfg.get_double_or("circuit", "ref_L", 1e-3);
    const double ref_C = cfg.get_double_or("circuit", "ref_C", 100e-12);
    const double v0 = cfg.get_double_or("circuit", "v0", 1.0);
    const bool lambda_given = cfg.has("circuit", "lambda");
    const double lambda_fixed = lambda_given ? cfg.get_double("circuit", "lambda") : 0.0;

    const std::vector<double> k1s = cfg.get_double_list("sweep", "kappa1");
    const std::vector<double> k2s = cfg.get_double_list("sweep", "kappa2");
    const std::string mode = cfg.get_string_or("sweep", "mode", "product");
    std::vector<std::pair<double, double>> points;
    if (mode == "zip") {
        if (k1s.size() != k2s.size())
            throw CliError(1, cfg.where("sweep", "mode") +
                                  "zip mode needs kappa1 and kappa2 lists of equal length");
        for (std::size_t i = 0; i < k1s.size(); ++i) points.emplace_back(k1s[i], k2s[i]);
    } else if (mode == "product") {
        for (double a : k1s)
            for (double b : k2s) points.emplace_back(a, b);
    } else {
        throw CliError(1, cfg.where("sweep", "mode") + "mode must be zip or product");
    }

    auto sanitized = [](std::string msg) {
        for (char& c : msg)
            if (c == ',' || c == '\n') c = ';';
        return msg;
    };

    std::ostringstream csv;
    csv << "kappa1,kappa2,has_end_state,end_survival_final,aipr,error\n";
    for (const auto& [k1, k2] : points) {
        csv << fmt17(k1) << ',' << fmt17(k2) << ',';
        nrssh_model* mraw = nullptr;
        if (nrssh_model_create(nu, k1, k2, n_cells, &mraw) != NRSSH_OK) {
            csv << ",,," << sanitized(nrssh_last_error()) << "\n";
            continue;
        }
        const ModelPtr model(mraw, &nrssh_model_free);
        const int dim = nrssh_model_dim(model.get());
        csv << (nrssh_model_has_left_end_state(model.get(), nullptr) ? "1" : "0") << ',';

        std::string error;

        // end survival at the final quantum time
        {
            std::vector<double> psi0(static_cast<std::size_t>(dim), 0.0);
            psi0[0] = 1.0;
            const std::vector<double> times = uniform_grid(t_max, samples);
            std::vector<double> intens(times.size() * static_cast<std::size_t>(dim));
            if (nrssh_evolve(model.get(), psi0.data(), nullptr, times.data(), times.size(),
                             intens.data(), nullptr, nullptr) == NRSSH_OK) {
                csv << fmt17(intens[(times.size() - 1) * static_cast<std::size_t>(dim)]);
            } else {
                error = nrssh_last_error();
            }
            csv << ',';
        }

        // circuit aIPR; kappa1 < kappa2 without an explicit lambda is a
        // per-point failure, the sweep keeps going
        {
            double lambda = lambda_fixed;
            nrssh_status st = NRSSH_OK;
            if (!lambda_given) st = nrssh_default_lambda(model.get(), &lambda);
            nrssh_circuit* craw = nullptr;
            if (st == NRSSH_OK) st = nrssh_circuit_create(model.get(), lambda, ref_L, ref_C, &craw);
            double value = 0.0;
            if (st == NRSSH_OK) {
                const CircuitPtr circuit(craw, &nrssh_circuit_free);
                st = nrssh_circuit_aipr(circuit.get(), v0, aipr_t, quad_step, &value);
            }
            if (st == NRSSH_OK) {
                csv << fmt17(value);
            } else if (error.empty()) {
                error = nrssh_last_error();
            }
        }
        csv << ',' << sanitized(error) << "\n";
    }
    write_file(out_path(out_dir, prefix, "sweep.csv"), csv.str());
}

}  // namespace nrsshcli
