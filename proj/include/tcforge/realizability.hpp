#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tcforge/dynamics.hpp"
#include "tcforge/pi_basis.hpp"
#include "tcforge/sectors.hpp"
#include "tcforge/types.hpp"

namespace tcforge {

// U = sum_{j,m} e^{i phi_{j,m}} P_{j,m}; keys are (2j, 2m).
struct PiU1Target {
    int n = 0;
    std::map<std::pair<int, int>, double> phases;
};

struct BlockTarget {
    int n = 0;
    int q_max = 0;
    std::map<SectorIndex, Mat> blocks;
};

struct Violation {
    std::string constraint;
    std::vector<std::string> sectors;
    double residual = 0.0;
};

struct RealizabilityVerdict {
    bool realizable = false;
    std::optional<double> alpha;
    std::optional<double> beta_or_theta_z;
    std::string witness; // "beta" or "theta_z"
    std::optional<Violation> violation;
    double max_residual = 0.0;
};

nlohmann::json to_json(const RealizabilityVerdict& v);

// Complete map with every phase set to zero.
PiU1Target zero_pi_u1(int n);
// Phase pi on |1...1> (controlled-Z on n qubits) or on |0...0>.
PiU1Target cz_target(int n);
PiU1Target anti_cz_target(int n);
PiU1Target pi_u1_from_sandwich(int n, const Sandwich& s);

// phi_{j,-j} = alpha + j beta mod 2 pi.
RealizabilityVerdict check_pi_u1(const PiU1Target& target, double tol = 1e-8);

// phi_m = alpha + m beta mod 2 pi on m <= 0; keys are 2m.
RealizabilityVerdict check_diagonal(int n, const std::map<int, double>& phi_m, double tol = 1e-8);

BlockTarget block_target_from(const BlockUnitary& v);
RealizabilityVerdict check_block_target(const BlockTarget& target, double tol = 1e-8);

// theta_q = (q+1)[(q-n) theta_z/2 + alpha] for q <= n, (n+1) alpha above.
RealizabilityVerdict check_symmetric_phase_constraint(int n, int q_max, const std::vector<double>& theta_q, double tol = 1e-8);

// Equal weight in every charge sector. Both states must be normalised and
// symmetric under qubit exchange.
bool state_convertible(const JointSpace& space, const Vec& psi, const Vec& phi, double tol = 1e-8);

// Number of independent affine constraints on the phi_{j,-j}.
int phase_line_constraint_count(int n);

} // namespace tcforge
