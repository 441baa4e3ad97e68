#include "tcforge/sectors.hpp"

#include <algorithm>

#include "tcforge/types.hpp"

namespace tcforge {

bool is_valid(const SectorIndex& idx)
{
    if (idx.n < 1 || idx.q < 0 || idx.j2 < 0 || idx.j2 > idx.n) return false;
    if ((idx.n - idx.j2) % 2 != 0) return false;
    return idx.j2 >= idx.n - 2 * idx.q;
}

void require_valid(const SectorIndex& idx)
{
    if (!is_valid(idx)) throw DomainError("invalid sector " + to_string(idx));
}

int j2_min(int n) { return n % 2; }

int sector_dim(const SectorIndex& idx)
{
    require_valid(idx);
    return std::min(idx.j2 + 1, (2 * idx.q + 2 + idx.j2 - idx.n) / 2);
}

std::uint64_t multiplicity(int n, int j2)
{
    if (n < 1 || j2 < 0 || j2 > n || (n - j2) % 2 != 0)
        throw DomainError("multiplicity: incompatible n and j");
    // C(n, n/2 - j) (2j+1) / (n/2 + j + 1)
    int r = (n - j2) / 2;
    std::uint64_t c = 1;
    for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(n - r + i) / i;
    return c * static_cast<std::uint64_t>(j2 + 1) / static_cast<std::uint64_t>((n + j2) / 2 + 1);
}

std::vector<SectorIndex> enumerate_sectors(int n, int q_max)
{
    std::vector<SectorIndex> out;
    for (int q = 0; q <= q_max; ++q)
        for (int j2 = n; j2 >= j2_min(n); j2 -= 2)
            if (j2 >= n - 2 * q) out.push_back({n, q, j2});
    return out;
}

std::vector<BasisLabel> basis_labels(const SectorIndex& idx)
{
    require_valid(idx);
    int kmin = std::max(0, (2 * idx.q - idx.j2 - idx.n) / 2);
    int kmax = (2 * idx.q + idx.j2 - idx.n) / 2;
    std::vector<BasisLabel> out;
    for (int k = kmin; k <= kmax; ++k) out.push_back({2 * idx.q - 2 * k - idx.n, k});
    return out;
}

bool is_filled(const SectorIndex& idx)
{
    return sector_dim(idx) == idx.j2 + 1;
}

std::optional<SectorIndex> accidental_partner(const SectorIndex& idx)
{
    require_valid(idx);
    const int n = idx.n, j2 = idx.j2;
    // unfilled (q, j): 2q = n + 2(2j') - 2j for some 0 < j' < j
    for (int jp2 = j2 - 2; jp2 > 0; jp2 -= 2)
        if (2 * idx.q == n + 2 * jp2 - j2) return SectorIndex{n, (n - jp2 + 2 * j2) / 2, jp2};
    // filled (q', j'): 2q' = n - 2j' + 2(2j) for some j > j'
    if (j2 > 0)
        for (int jb2 = n; jb2 > j2; jb2 -= 2)
            if (2 * idx.q == n - j2 + 2 * jb2) return SectorIndex{n, (n + 2 * j2 - jb2) / 2, jb2};
    return std::nullopt;
}

std::vector<std::pair<SectorIndex, SectorIndex>> accidental_pairs(int n, int q_max)
{
    std::vector<std::pair<SectorIndex, SectorIndex>> out;
    for (const auto& s : enumerate_sectors(n, q_max)) {
        if (is_filled(s)) continue;
        auto p = accidental_partner(s);
        if (p && p->q <= q_max) out.emplace_back(s, *p);
    }
    return out;
}

std::string half_to_string(int twice)
{
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

std::string to_string(const SectorIndex& idx)
{
    return "(n=" + std::to_string(idx.n) + ",q=" + std::to_string(idx.q) + ",j=" + half_to_string(idx.j2) + ")";
}

} // namespace tcforge
