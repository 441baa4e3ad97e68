#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcforge/dynamics.hpp"
#include "tcforge/su2.hpp"

namespace tcforge {

double f_phi0();
double f_phi1();

// Rz(-phi0/2) TC(pi/sqrt6) Rz(phi1) TC(pi/sqrt6) Rz(-phi1) TC(pi/sqrt6) Rz(phi0/2), in time order.
Circuit f_gate();
Circuit f_gate_dagger();

// Charge-1 block (basis |Psi+>|0>, |11>|1>) of a two-qubit TC/Rz circuit.
Mat2 charge1_block(const Circuit& c);

// SU(2) element A with A M = diag(e^{i theta_plus}, e^{i psi}), M the
// charge-1 block of pre.
Mat2 a_target(const Circuit& pre, double theta_plus);

// A(U) = 1 (+) U (+) I_3 on charges 0, 1, 2 of the triplet tower.
Circuit a_gate(const Mat2& u);

struct CompiledGate {
    std::string target;
    Circuit circuit;
    double tau = 0.0;                 // units of 2 pi
    std::string kind;                 // A-gate decomposition kind, or "fixed"
    std::vector<double> parameters;   // theta, theta', theta_+, then (theta1, theta2) per step
    double residual = 0.0;            // distance to the target up to phase
    double vacuum_residual = 0.0;     // ||U^dag U - I|| of the sandwich
    double global_phase = 0.0;        // sandwich = e^{i phase} target
    Mat unitary;                      // the 4x4 sandwich
};

// Diagonal PI gate with phases on |00>, |Psi+>, |11> relative to |Psi->.
Mat two_qubit_phase_gate(double phi00, double phi_psi_plus, double phi11);
CompiledGate compile_two_qubit(double phi00, double phi_psi_plus, double phi11);

// cz, swap, iswap, sqrt_iswap, uzz (phi), upsiplus (phi = -2 pi/sqrt3).
std::vector<std::string> named_gate_list();
Mat textbook_gate(const std::string& name, double phi = 0.0);
CompiledGate named_gate(const std::string& name, double phi = 0.0);

// |psi>|0> -> |11>|Psi> on the triplet, amplitude of m moving to level m + 1.
Circuit qubit_osc_swap();
Circuit ghz_circuit();

// Fills residual, global phase and the sandwich for a two-qubit circuit.
void evaluate(CompiledGate& g, const Mat& target);

nlohmann::json synthesis_report(const CompiledGate& g);

// Reference step parameters, listed as (theta1, theta2) pairs.
struct AGateFixture {
    std::string name;
    DecompositionKind kind;
    double tau;
    std::vector<double> params;
};
const std::vector<AGateFixture>& a_gate_fixtures();

// Circuit built from a fixture: steps in listed order, then inverted.
Circuit fixture_circuit(const AGateFixture& f);

// Gauss-Newton polish of fixture parameters onto target. Empty when the
// fixture parameters are not within tol of the target.
std::optional<Circuit> polish_fixture(const AGateFixture& f, const Mat2& target, double tol = 1e-6);

} // namespace tcforge
