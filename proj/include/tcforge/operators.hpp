#pragma once

#include <cstdint>
#include <vector>

#include "tcforge/sectors.hpp"
#include "tcforge/types.hpp"

namespace tcforge {

struct SectorMatrix {
    SectorIndex idx;
    std::vector<BasisLabel> labels;
    Mat entries;

    int dim() const { return static_cast<int>(labels.size()); }
};

// Fixed-j tower span{|j,m,k> : -j <= m <= j, 0 <= k <= k_max}, ordered by
// (k ascending, m descending).
struct JSectorOperator {
    int n = 0;
    int j2 = 0;
    int k_max = 0;
    Mat entries;

    int dim() const { return (j2 + 1) * (k_max + 1); }
    int index(int m2, int k) const { return k * (j2 + 1) + (j2 - m2) / 2; }
};

// Squared H_TC element between label i and i+1 of a sector, exact.
std::int64_t htc_ladder_sq(const SectorIndex& idx, const BasisLabel& upper);

SectorMatrix htc_block(const SectorIndex& idx);
SectorMatrix jz_block(const SectorIndex& idx);
SectorMatrix number_block(const SectorIndex& idx);
SectorMatrix charge_block(const SectorIndex& idx);

int tower_k_max(int n, int j2, int q_max);

JSectorOperator htc_tower(int n, int j2, int k_max);
JSectorOperator jz_tower(int n, int j2, int k_max);
JSectorOperator number_tower(int n, int j2, int k_max);
JSectorOperator jx_operator(int n, int j2, int k_max);

double energy_variance(const SectorIndex& idx);
double energy_variance_bruteforce(const SectorIndex& idx);
// Tr(pi(H_TC)^2), exact.
std::int64_t htc_square_trace(const SectorIndex& idx);

enum class ChargeKind { Jz, N };

double charge_vector(const SectorIndex& idx, ChargeKind which);
// 2 Tr(pi(J_z)) or Tr(pi(a^dag a)) from the closed forms, as exact integers.
std::int64_t charge_vector_exact(const SectorIndex& idx, ChargeKind which);
// Same quantities summed directly over basis labels.
std::int64_t charge_vector_sum(const SectorIndex& idx, ChargeKind which);

// Sector (q,j) of n qubits against the sector of n' = 2j qubits with the
// same j. Throws on mismatched j.
bool sector_equivalence_check(const SectorIndex& a, const SectorIndex& b, double atol = 1e-10);

struct PartnerComparison {
    double htc_diff = 0.0;
    double jz_shift_diff = 0.0;
    bool dims_equal = false;
};

// Compares H_TC blocks entrywise and J_z(a) - J_z(b) against (j_b - j_a) I.
PartnerComparison compare_partner_blocks(const SectorIndex& a, const SectorIndex& b);

} // namespace tcforge
