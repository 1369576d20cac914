#pragma once
// Passive LC ladder realizing the nonreciprocal chain: per-cell component
// values from the parameter mapping, Kirchhoff matrices, and SPICE netlist
// export.
//
// Topology (2N-1 nodes A1,B1,...,AN, both chain ends grounded):
//   - every node has an inductor L_n^{A/B} and a capacitor D_n^{A/B} to ground
//   - C_n^A couples B_{n-1} -> A_n (C_1^A goes from A1 to the grounded left
//     end), C_n^B couples A_n -> B_n (C_N^B goes from AN to the grounded
//     right end).
// Only this capacitor-coupled variant is synthesized; the dual network with
// inductors and capacitors exchanged is not supported.

#include <string>

#include "nrssh/matrix.hpp"
#include "nrssh/model.hpp"

namespace nrssh {

struct CircuitDesign {
    ModelParams params;
    double lambda;   // dimensionless shift; >= 1 + max(kappa1,kappa2)/nu
    double ref_L;    // reference inductance (H)
    double ref_C;    // reference capacitance (F)
    double omega0;   // 1/sqrt(ref_L*ref_C) (rad/s)

    // component values per unit cell, index n-1 for cell n = 1..N
    rvec C_A, C_B;   // coupling capacitances (F)
    rvec D_A, D_B;   // grounded capacitances (F)
    rvec L_A, L_B;   // grounded inductances (H); L_A[n] == L_B[n]

    int dim() const { return params.dim(); }
};

// Component values:
//   C_n^A = C (kappa1/kappa2)^(n-1)          C_n^B = C_n^A nu/kappa2
//   D_n^A = C_n^A (lambda nu - nu - kappa2)/kappa2
//   D_n^B = C_n^A (lambda nu - nu - kappa1)/kappa2
//   L_n^A = L_n^B = L (kappa2/kappa1)^(n-1) kappa2/nu
// Requires nu, kappa1, kappa2 > 0, ref_L, ref_C > 0 and
// lambda >= 1 + max(kappa1,kappa2)/nu (otherwise some D would be negative).
CircuitDesign synthesize(const ModelParams& p, double lambda, double ref_L, double ref_C);

// 1 + kappa1/nu, the smallest lambda that removes every D_n^B. Only defined
// for kappa1 >= kappa2; callers must pick lambda themselves otherwise.
double default_lambda(const ModelParams& p);

struct CircuitMatrices {
    RMat script_H;         // Kirchhoff coupling matrix, equals (LC/nu) H
    double lambda_scalar;  // the uniform diagonal Lambda = lambda*L*C
};

// Assembles the Kirchhoff matrices from raw component products
// (L_n^A C_n^A etc.) and verifies they reproduce (LC/nu) H and lambda*LC*I.
// Throws std::invalid_argument if the design was not synthesized for p.
CircuitMatrices circuit_matrices(const CircuitDesign& d, const ModelParams& p);

// SPICE netlist: element cards for every nonzero component, .IC charging
// node A1 to v0 (all others 0), .TRAN covering omega0*t in [0, 100].
std::string export_netlist(const CircuitDesign& d, double v0);

// CSV with columns cell_index,C_A_F,C_B_F,D_A_F,D_B_F,L_A_H,L_B_H.
std::string component_table_csv(const CircuitDesign& d);

}  // namespace nrssh
