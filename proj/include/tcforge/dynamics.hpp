#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcforge/operators.hpp"
#include "tcforge/pi_basis.hpp"
#include "tcforge/sectors.hpp"
#include "tcforge/types.hpp"

namespace tcforge {

enum class GateKind { TC, Rz, Rx };

std::string to_string(GateKind k);

// V_TC(r) = exp(-i r H_TC), R_w(theta) = exp(-i theta J_w).
struct Gate {
    GateKind kind = GateKind::TC;
    double param = 0.0;

    static Gate tc(double r) { return {GateKind::TC, r}; }
    static Gate rz(double theta);
    static Gate rx(double theta) { return {GateKind::Rx, theta}; }

    bool operator==(const Gate&) const = default;
};

// Gates are listed in time order: gates.front() acts first.
struct Circuit {
    int n = 2;
    std::vector<Gate> gates;

    Circuit& then(const Gate& g);
    Circuit& then(const Circuit& c);
    Circuit inverse() const;
    bool has_rx() const;

    // Sum of |r| over TC gates, and the same in units of 2 pi.
    double interaction_time_raw() const;
    double interaction_time() const { return interaction_time_raw() / kTwoPi; }

    bool operator==(const Circuit&) const = default;
};

double interaction_time(const Circuit& c);

enum class Backend { Auto, ChargeSector, JTower };

struct BlockUnitary {
    Backend backend = Backend::ChargeSector;
    int n = 0;
    int q_max = 0;
    std::map<SectorIndex, SectorMatrix> sectors;
    std::map<int, JSectorOperator> towers;
    double interaction_time_raw = 0.0;

    // Block of one sector, cut out of the tower on the JTower backend.
    SectorMatrix sector_block(const SectorIndex& idx) const;
    double max_unitarity_residual() const;
};

SectorMatrix gate_block(const Gate& g, const SectorIndex& idx);

// Block of one charge sector for a TC/Rz circuit.
Mat sector_unitary(const Circuit& c, const SectorIndex& idx);

// Sectors and towers are evaluated in parallel with cached eigensystems.
BlockUnitary apply_circuit(const Circuit& c, int q_max, Backend backend = Backend::Auto);
// Single-threaded reference: one fresh exponential per gate and block.
BlockUnitary apply_circuit_serial(const Circuit& c, int q_max, Backend backend = Backend::Auto);

struct Sandwich {
    std::map<int, Mat> blocks; // u_j on m = j, ..., -j
    Mat unitary;               // 2^n x 2^n, empty when not assembled
    double residual = 0.0;     // ||U^dag U - I||_F
};

// <0|V|0>_osc. Needs every (q <= n) sector, so q_max >= n.
Sandwich vacuum_sandwich(const BlockUnitary& v, bool assemble = true);

// Assemble sum_j sum_alpha B_{j,alpha} u_j B_{j,alpha}^dag.
Mat assemble_pi_operator(const PiBasis& basis, const std::map<int, Mat>& blocks);

// Evolves a state on the charge-truncated joint space. Uses the tower
// backend, which is exact on this space for TC, Rz and Rx circuits.
Vec simulate_state(const Circuit& c, const JointSpace& space, const Vec& psi);

// Weight of psi at oscillator level 0, and the qubit part there.
Vec qubit_part(const JointSpace& space, const Vec& psi, int k);

// Dense product of gate exponentials on the joint space (TC and Rz only).
Mat simulate_full(const Circuit& c, const JointSpace& space);

} // namespace tcforge
