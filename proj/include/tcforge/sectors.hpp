#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcforge {

// Charge sector H_{q,j} of n qubits plus one oscillator. Half-integers are
// stored doubled: j2 = 2j.
struct SectorIndex {
    int n = 0;
    int q = 0;
    int j2 = 0;

    double j() const { return 0.5 * j2; }
    auto operator<=>(const SectorIndex&) const = default;
};

// One basis state |j, m, k> of a sector, m stored doubled.
struct BasisLabel {
    int m2 = 0;
    int k = 0;

    double m() const { return 0.5 * m2; }
    auto operator<=>(const BasisLabel&) const = default;
};

bool is_valid(const SectorIndex& idx);
void require_valid(const SectorIndex& idx);

int j2_min(int n);

int sector_dim(const SectorIndex& idx);

// Number of copies of the spin-j irrep in n qubits.
std::uint64_t multiplicity(int n, int j2);

// Sorted by (q ascending, j descending).
std::vector<SectorIndex> enumerate_sectors(int n, int q_max);

// Ordered by increasing k.
std::vector<BasisLabel> basis_labels(const SectorIndex& idx);

bool is_filled(const SectorIndex& idx);

std::optional<SectorIndex> accidental_partner(const SectorIndex& idx);

// Unfilled member first.
std::vector<std::pair<SectorIndex, SectorIndex>> accidental_pairs(int n, int q_max);

std::string to_string(const SectorIndex& idx);
std::string half_to_string(int twice);

} // namespace tcforge
