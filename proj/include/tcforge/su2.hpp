#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tcforge/dynamics.hpp"
#include "tcforge/types.hpp"

namespace tcforge {

// exp(i angle axis.sigma); angle in [-pi, pi).
struct AxisAngle {
    Vec3 axis = Vec3::UnitX();
    double angle = 0.0;
    bool null_axis = false; // set when sin(angle) = 0 and the axis is arbitrary
};

// Fixed rotation angle of one A-gate step, 2 pi / sqrt(3).
inline const double kDelta = kTwoPi / std::sqrt(3.0);
// Duration of the TC pulse inside one step, 2 pi / sqrt(6).
inline const double kStepPulse = kTwoPi / std::sqrt(6.0);

Mat2 pauli_dot(const Vec3& v);
Mat2 su2_matrix(const AxisAngle& a);
// exp(-i g p.sigma), the action of one physical step about p.
Mat2 rot_minus(double g, const Vec3& p);
AxisAngle axis_angle_of(const Mat2& u);

// exp(i g1 m.sigma) exp(i g2 n.sigma).
AxisAngle compose_rotations(double g1, double g2, const Vec3& m, const Vec3& n);

struct TwoStepSolution {
    bool feasible = false;
    Vec3 n1 = Vec3::Zero(); // applied first
    Vec3 n2 = Vec3::Zero();
};

// target = exp(i g n2.sigma) exp(i g n1.sigma). theta selects a member of the
// one-parameter family (rotation of n1 about the target axis).
TwoStepSolution solve_two_step(const AxisAngle& target, double gamma, double theta = 0.0);
TwoStepSolution solve_two_step(const Mat2& target, double gamma, double theta = 0.0);

struct EulerParams {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

// The four (theta1, theta2) branches whose step realises exp(-i delta p.sigma)
// on the charge-1 sector.
std::array<EulerParams, 4> euler_embed(const Vec3& p);
Vec3 euler_axis(const EulerParams& e);

enum class DecompositionKind { TwoStep, ThreeStep, FourStep };
const char* to_string(DecompositionKind k);

struct Decomposition {
    DecompositionKind kind = DecompositionKind::TwoStep;
    int pulse_multiple = 1;            // 2 for the double-angle steps
    std::vector<AxisAngle> axes;       // time order, exp(i angle axis.sigma)
    std::vector<EulerParams> euler_params;
    double tau = 0.0;                  // units of 2 pi

    Circuit circuit() const;
    Mat2 product() const;
};

// TC(th2) Rz(th1) TC(k step) Rz(-th1) TC(th2' - th2) ... TC(-th2_last).
Circuit step_circuit(const std::vector<EulerParams>& params, int pulse_multiple);

// Interaction time of a step chain, raw units.
double step_chain_time(const std::vector<EulerParams>& params, int pulse_multiple);

// Picks one branch per axis minimising the chain time. raw_cost leaves out
// the fixed pulses.
std::vector<EulerParams> best_branches(const std::vector<Vec3>& axes, double* raw_cost = nullptr);

Decomposition decompose_fixed_angle(const Mat2& target);
Decomposition decompose_fixed_angle(const AxisAngle& target);

} // namespace tcforge
