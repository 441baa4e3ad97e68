#pragma once

// Brute-force references built on the full qubits (x) Fock space.

#include <algorithm>

#include "tcforge/operators.hpp"
#include "tcforge/pi_basis.hpp"

namespace tcforge::oracle {

// Columns |j, m_i, alpha> (x) |k_i> of one sector for one multiplicity copy.
inline Mat sector_frame(const JointSpace& space, const PiBasis& basis, const SectorIndex& idx, int alpha)
{
    auto labels = basis_labels(idx);
    const Eigen::MatrixXd& copy = basis.copy(idx.j2, alpha);
    Mat p(space.dim(), static_cast<int>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        p.col(static_cast<int>(i)) = space.embed(copy.col((idx.j2 - labels[i].m2) / 2).cast<cplx>(), labels[i].k);
    return p;
}

struct ProjectionError {
    double htc = 0.0;     // |P^dag H P - htc_block|
    double jz = 0.0;      // |P^dag Jz P - jz_block|
    double leakage = 0.0; // |H P - P P^dag H P|
    int blocks = 0;
};

inline ProjectionError projection_error(int n, int q_max)
{
    JointSpace space(n, q_max);
    PiBasis basis = build_pi_basis(n);
    const Mat h = Mat(space.htc().cast<cplx>());
    const Mat jz = Mat(space.jz().cast<cplx>());
    ProjectionError e;
    for (const auto& idx : enumerate_sectors(n, q_max)) {
        const Mat hb = htc_block(idx).entries, zb = jz_block(idx).entries;
        for (int a = 0; a < static_cast<int>(basis.copies.at(idx.j2).size()); ++a) {
            Mat p = sector_frame(space, basis, idx, a);
            Mat hp = h * p;
            Mat m = p.adjoint() * hp;
            e.htc = std::max(e.htc, (m - hb).cwiseAbs().maxCoeff());
            e.jz = std::max(e.jz, (p.adjoint() * jz * p - zb).cwiseAbs().maxCoeff());
            e.leakage = std::max(e.leakage, (hp - p * m).cwiseAbs().maxCoeff());
            ++e.blocks;
        }
    }
    return e;
}

} // namespace tcforge::oracle
