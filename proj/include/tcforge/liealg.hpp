#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcforge/sectors.hpp"
#include "tcforge/types.hpp"

namespace tcforge {

// Hilbert-Schmidt orthonormal (real inner product Re Tr(A^dag B)).
struct OperatorBasis {
    std::string scope;
    std::vector<Mat> elements;
    int rank = 0;
    int commutators = 0;
};

// Breadth-first commutator closure with modified Gram-Schmidt. A candidate is
// kept when its residual after projection exceeds tol times its norm.
OperatorBasis lie_closure(const std::vector<Mat>& generators, double tol = 1e-8, int max_commutators = 5000);

struct CheckReport {
    std::string scope;
    long long rank = 0;
    long long expected = 0;
    bool pass = false;
    std::vector<double> residuals;
};

nlohmann::json to_json(const CheckReport& r);

// Closure of {i H_TC, i Hbar_TC} with Hbar = i[J_z, H_TC] reaches su(d).
CheckReport sector_rank_check(const SectorIndex& idx, double tol = 1e-8);
bool sector_rank_ok(const SectorIndex& idx, double tol = 1e-8);

struct AnharmonicityReport {
    SectorIndex idx;
    int y_min = 0;
    std::vector<std::int64_t> a_sq;        // a_y^2 for y = y_min .. y_min + d - 1
    std::vector<std::int64_t> second_diff; // 2a_y^2 - a_{y-1}^2 - a_{y+1}^2, y = y_min .. y_min + d - 2
    std::vector<std::int64_t> expected;    // 2(n+q-1) - 6y
    bool matches = false;
    bool condition_holds = false;
};

AnharmonicityReport anharmonicity_check(const SectorIndex& idx);

// Same second differences for the bare spin-j ladder J_+ J_-.
AnharmonicityReport spin_ladder_anharmonicity(int j2);

struct VarianceReport {
    int pairs_checked = 0;
    std::vector<std::pair<SectorIndex, SectorIndex>> equal_pairs;
    int non_partner_equal = 0;
    int partner_unequal = 0;
    bool pass = false;
};

// Same-dimension sectors (d >= 2) with q <= q_max have distinct Tr(H_TC^2)
// unless they are accidental partners.
VarianceReport variance_separation_check(int n, int q_max);

// S on the charge-truncated joint space, both members of every pair inside.
struct SOperator {
    int n = 0;
    int q_max = 0;
    Mat s_plus; // unfilled -> filled
    std::vector<std::pair<SectorIndex, SectorIndex>> pairs;
    Mat full() const { return s_plus + s_plus.adjoint(); }
};

SOperator build_S(int n, int q_max);

struct SCommutationReport {
    int pairs = 0;
    double htc_commutator = 0.0;       // ||[H_TC, S]||_F
    double jz_commutator = 0.0;        // max entrywise deviation over pairs
    double involution = 0.0;           // ||S^2 - P_pairs||_F
    bool pass = false;
};

SCommutationReport check_S_commutation(int n, int q_max);

struct SchwingerReport {
    int tested = 0;
    int skipped = 0;
    double square_residual = 0.0;
    double invariance_residual = 0.0;
    bool preserves_first_mode = true;
    bool pass = false;
};

// (j, m, k) -> ((j+m+k)/2, (j+m-k)/2, j-m).
struct SchwingerLabel {
    int j2, m2, k;
};
SchwingerLabel schwinger_map(const SchwingerLabel& l);

SchwingerReport schwinger_check(int j2_max, int k_max);

// Closure of {i|m><m|} and iJ_x on spin j has rank (2j+1)^2.
CheckReport verify_pi_universality(int j2, double tol = 1e-8);

} // namespace tcforge
