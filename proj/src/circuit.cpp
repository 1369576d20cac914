#include "nrssh/circuit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nrssh/io.hpp"

namespace nrssh {

CircuitDesign synthesize(const ModelParams& p, double lambda, double ref_L, double ref_C) {
    p.validate();
    if (p.kappa1 <= 0.0 || p.kappa2 <= 0.0)
        throw std::invalid_argument("synthesize: circuit mapping needs kappa1 > 0 and kappa2 > 0");
    if (!(ref_L > 0.0) || !(ref_C > 0.0))
        throw std::invalid_argument("synthesize: reference L and C must be positive");
    const double lambda_min = 1.0 + std::max(p.kappa1, p.kappa2) / p.nu;
    if (!(lambda >= lambda_min))
        throw std::invalid_argument(
            "synthesize: lambda must be at least 1 + max(kappa1,kappa2)/nu = " +
            io::format_double(lambda_min) + " (component values would be negative)");

    const int n = p.n_cells;
    CircuitDesign d;
    d.params = p;
    d.lambda = lambda;
    d.ref_L = ref_L;
    d.ref_C = ref_C;
    d.omega0 = 1.0 / std::sqrt(ref_L * ref_C);
    d.C_A.resize(n);
    d.C_B.resize(n);
    d.D_A.resize(n);
    d.D_B.resize(n);
    d.L_A.resize(n);
    d.L_B.resize(n);
    const double ratio = p.kappa1 / p.kappa2;
    double cpow = 1.0;  // (kappa1/kappa2)^(n-1)
    for (int i = 0; i < n; ++i) {
        const double ca = ref_C * cpow;
        d.C_A[i] = ca;
        d.C_B[i] = ca * p.nu / p.kappa2;
        d.D_A[i] = ca * (lambda * p.nu - p.nu - p.kappa2) / p.kappa2;
        d.D_B[i] = ca * (lambda * p.nu - p.nu - p.kappa1) / p.kappa2;
        d.L_A[i] = ref_L / cpow * p.kappa2 / p.nu;
        d.L_B[i] = d.L_A[i];
        cpow *= ratio;
    }
    return d;
}

double default_lambda(const ModelParams& p) {
    p.validate();
    if (p.kappa1 <= 0.0 || p.kappa2 <= 0.0)
        throw std::invalid_argument("default_lambda: needs kappa1 > 0 and kappa2 > 0");
    if (p.kappa1 < p.kappa2)
        throw std::invalid_argument(
            "default_lambda: only defined for kappa1 >= kappa2; pass lambda explicitly");
    return 1.0 + p.kappa1 / p.nu;
}

CircuitMatrices circuit_matrices(const CircuitDesign& d, const ModelParams& p) {
    if (d.params.nu != p.nu || d.params.kappa1 != p.kappa1 || d.params.kappa2 != p.kappa2 ||
        d.params.n_cells != p.n_cells)
        throw std::invalid_argument("circuit_matrices: design was synthesized for other parameters");

    const std::size_t dim = static_cast<std::size_t>(p.dim());
    RMat h(dim, dim);
    // Row for node A_n couples to B_{n-1} via L_n^A C_n^A and to B_n via
    // L_n^A C_n^B; row for B_n couples to A_n via L_n^B C_n^B and to A_{n+1}
    // via L_n^B C_{n+1}^A. End terms fall off the matrix (grounded).
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t cell = i / 2;  // 0-based
        if (i % 2 == 0) {                // A node
            if (i > 0) h(i, i - 1) = d.L_A[cell] * d.C_A[cell];
            if (i + 1 < dim) h(i, i + 1) = d.L_A[cell] * d.C_B[cell];
        } else {                         // B node
            h(i, i - 1) = d.L_B[cell] * d.C_B[cell];
            if (i + 1 < dim) h(i, i + 1) = d.L_B[cell] * d.C_A[cell + 1];
        }
    }

    const double lc = d.ref_L * d.ref_C;
    const double lambda_scalar = d.lambda * lc;

    // cross-check against (LC/nu) H and the uniform Lambda diagonal
    const RMat href = build_hamiltonian(p).to_dense();
    double hmax = 0.0, dmax = 0.0, lmax = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t cell = i / 2;
        const double lam =
            (i % 2 == 0)
                ? d.L_A[cell] * (d.D_A[cell] + d.C_A[cell] + d.C_B[cell])
                : d.L_B[cell] * (d.D_B[cell] + d.C_B[cell] + d.C_A[cell + 1]);
        lmax = std::max(lmax, std::abs(lam - lambda_scalar));
        for (std::size_t j = 0; j < dim; ++j) {
            dmax = std::max(dmax, std::abs(h(i, j) - lc / p.nu * href(i, j)));
            hmax = std::max(hmax, std::abs(h(i, j)));
        }
    }
    if (dmax > 1e-12 * hmax || lmax > 1e-12 * lambda_scalar)
        throw std::runtime_error("circuit_matrices: component products do not reproduce (LC/nu) H");

    return CircuitMatrices{std::move(h), lambda_scalar};
}

namespace {

std::string node_name(std::size_t flat) {  // 0-based flat index
    const std::size_t cell = flat / 2 + 1;
    return (flat % 2 == 0 ? "A" : "B") + std::to_string(cell);
}

}  // namespace

std::string export_netlist(const CircuitDesign& d, double v0) {
    const int n = d.params.n_cells;
    const std::size_t dim = static_cast<std::size_t>(d.dim());
    std::ostringstream out;
    out << "* nonreciprocal SSH LC chain: nu=" << io::format_double(d.params.nu)
        << " kappa1=" << io::format_double(d.params.kappa1)
        << " kappa2=" << io::format_double(d.params.kappa2)
        << " lambda=" << io::format_double(d.lambda) << " N=" << n << "\n";
    out << "* nodes A1,B1,...,A" << n << "; both chain ends grounded\n";

    // grounded inductors
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t cell = i / 2;
        const double val = (i % 2 == 0) ? d.L_A[cell] : d.L_B[cell];
        out << "L" << node_name(i) << " " << node_name(i) << " 0 "
            << io::format_spice_value(val) << "\n";
    }
    // coupling capacitors; the first C_A and the last C_B land on ground
    for (int cell = 0; cell < n; ++cell) {
        const std::string a = node_name(2 * static_cast<std::size_t>(cell));
        const std::string left = (cell == 0) ? "0" : node_name(2 * static_cast<std::size_t>(cell) - 1);
        if (d.C_A[cell] != 0.0)
            out << "CA" << (cell + 1) << " " << left << " " << a << " "
                << io::format_spice_value(d.C_A[cell]) << "\n";
        const std::string right =
            (cell == n - 1) ? "0" : node_name(2 * static_cast<std::size_t>(cell) + 1);
        if (d.C_B[cell] != 0.0)
            out << "CB" << (cell + 1) << " " << a << " " << right << " "
                << io::format_spice_value(d.C_B[cell]) << "\n";
    }
    // grounded capacitors (D), zeros omitted
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t cell = i / 2;
        const double val = (i % 2 == 0) ? d.D_A[cell] : d.D_B[cell];
        if (val == 0.0) continue;
        out << "CD" << node_name(i) << " " << node_name(i) << " 0 "
            << io::format_spice_value(val) << "\n";
    }

    out << ".IC";
    for (std::size_t i = 0; i < dim; ++i)
        out << " V(" << node_name(i) << ")=" << (i == 0 ? io::format_double(v0) : "0");
    out << "\n";
    const double t_stop = 100.0 / d.omega0;
    out << ".TRAN " << io::format_spice_value(t_stop / 1e4) << " "
        << io::format_spice_value(t_stop) << " UIC\n";
    out << ".END\n";
    return out.str();
}

std::string component_table_csv(const CircuitDesign& d) {
    std::ostringstream out;
    out << "cell_index,C_A_F,C_B_F,D_A_F,D_B_F,L_A_H,L_B_H\n";
    for (int i = 0; i < d.params.n_cells; ++i)
        out << (i + 1) << ',' << io::format_double(d.C_A[i]) << ','
            << io::format_double(d.C_B[i]) << ',' << io::format_double(d.D_A[i]) << ','
            << io::format_double(d.D_B[i]) << ',' << io::format_double(d.L_A[i]) << ','
            << io::format_double(d.L_B[i]) << "\n";
    return out.str();
}

}  // namespace nrssh
