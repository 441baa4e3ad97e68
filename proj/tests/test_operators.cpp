#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "tcforge/linalg.hpp"
#include "tcforge/operators.hpp"
#include "tcforge/pi_basis.hpp"

using namespace tcforge;

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

TEST(Operators, HtcExamples)
{
    Mat a(2, 2);
    a << 0, std::sqrt(3.0), std::sqrt(3.0), 0;
    EXPECT_LT(max_abs(htc_block({3, 1, 3}).entries - a), 1e-14);
    Mat b(3, 3);
    b << 0, std::sqrt(2.0), 0, std::sqrt(2.0), 0, 2, 0, 2, 0;
    EXPECT_LT(max_abs(htc_block({2, 2, 2}).entries - b), 1e-14);
    for (int n = 1; n <= 6; ++n) {
        auto v = htc_block({n, 0, n});
        ASSERT_EQ(v.dim(), 1);
        EXPECT_EQ(v.entries(0, 0), cplx(0, 0));
    }
}

TEST(Operators, DiagonalBlocks)
{
    auto z = jz_block({2, 2, 2}), k = number_block({2, 2, 2});
    EXPECT_EQ(z.entries.diagonal().real(), Eigen::Vector3d(1, 0, -1));
    EXPECT_EQ(k.entries.diagonal().real(), Eigen::Vector3d(0, 1, 2));
    for (int n = 1; n <= 5; ++n)
        for (const auto& idx : enumerate_sectors(n, 8)) {
            Mat q = jz_block(idx).entries + number_block(idx).entries;
            q.diagonal().array() += 0.5 * n;
            EXPECT_LT(max_abs(q - charge_block(idx).entries), 1e-14);
        }
}

TEST(Operators, HtcIsRealSymmetricTridiagonal)
{
    for (int n = 1; n <= 6; ++n)
        for (const auto& idx : enumerate_sectors(n, 10)) {
            Mat h = htc_block(idx).entries;
            EXPECT_TRUE(is_hermitian(h, 1e-14));
            for (int a = 0; a < h.rows(); ++a)
                for (int b = 0; b < h.cols(); ++b) {
                    if (std::abs(a - b) != 1) EXPECT_EQ(h(a, b), cplx(0, 0));
                    else EXPECT_GT(h(a, b).real(), 0.0);
                }
        }
}

TEST(Operators, JxExamples)
{
    auto a = jx_operator(1, 1, 0);
    Mat want(2, 2);
    want << 0, 0.5, 0.5, 0;
    EXPECT_LT(max_abs(a.entries - want), 1e-15);
    auto b = jx_operator(2, 2, 0);
    EXPECT_NEAR(b.entries(0, 1).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(b.entries(1, 2).real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(b.entries(0, 2), cplx(0, 0));
    for (int j2 : {1, 2, 3, 4}) {
        auto x = jx_operator(4 + (j2 % 2), j2, 5);
        auto nn = number_tower(4 + (j2 % 2), j2, 5);
        EXPECT_TRUE(is_hermitian(x.entries, 1e-15));
        EXPECT_LT(max_abs(commutator(x.entries, nn.entries)), 1e-14);
    }
}

TEST(Operators, TowerHtcShiftsLabels)
{
    auto t = htc_tower(3, 3, 4);
    EXPECT_EQ(t.dim(), 4 * 5);
    for (int a = 0; a < t.dim(); ++a)
        for (int b = 0; b < t.dim(); ++b) {
            if (t.entries(a, b) == cplx(0, 0)) continue;
            const int ka = a / 4, kb = b / 4, ma = 3 - 2 * (a % 4), mb = 3 - 2 * (b % 4);
            EXPECT_EQ(std::abs(ka - kb), 1);
            EXPECT_EQ(ma + 2 * ka, mb + 2 * kb); // charge conserved
        }
}

TEST(Operators, EnergyVarianceClosedForm)
{
    for (int q = 2; q <= 9; ++q) EXPECT_NEAR(energy_variance({2, q, 2}), 4.0 * (2 * q - 1) / 3.0, 1e-12);
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(energy_variance({n, 0, n}), 0.0);
    for (int n = 1; n <= 6; ++n)
        for (const auto& idx : enumerate_sectors(n, 12)) {
            EXPECT_NEAR(energy_variance(idx), energy_variance_bruteforce(idx), 1e-10) << to_string(idx);
            EXPECT_NEAR(static_cast<double>(htc_square_trace(idx)) / sector_dim(idx), energy_variance(idx), 1e-10);
        }
}

TEST(Operators, ChargeVectors)
{
    EXPECT_EQ(charge_vector({2, 2, 2}, ChargeKind::Jz), 0.0);
    for (int n = 1; n <= 6; ++n)
        for (int q = 0; q <= n; ++q) EXPECT_EQ(charge_vector({n, q, n}, ChargeKind::Jz), 0.5 * (q + 1) * (q - n));
    for (int n = 1; n <= 6; ++n)
        for (const auto& idx : enumerate_sectors(n, 12)) {
            EXPECT_EQ(charge_vector_exact(idx, ChargeKind::Jz), charge_vector_sum(idx, ChargeKind::Jz)) << to_string(idx);
            EXPECT_EQ(charge_vector_exact(idx, ChargeKind::N), charge_vector_sum(idx, ChargeKind::N)) << to_string(idx);
            if (2 * idx.q > n + idx.j2) EXPECT_EQ(charge_vector(idx, ChargeKind::N), (idx.j2 + 1) * (idx.q - 0.5 * n));
        }
}

TEST(Operators, SectorEquivalence)
{
    EXPECT_TRUE(sector_equivalence_check({6, 4, 4}, {4, 3, 4}));
    EXPECT_TRUE(sector_equivalence_check({2, 1, 2}, {2, 1, 2}));
    EXPECT_THROW(sector_equivalence_check({6, 4, 4}, {6, 4, 6}), DomainError);
    for (int n = 1; n <= 6; ++n)
        for (const auto& idx : enumerate_sectors(n, 10))
            if (idx.j2 > 0) {
                SectorIndex b{idx.j2, (2 * idx.q - n + idx.j2) / 2, idx.j2};
                EXPECT_TRUE(sector_equivalence_check(idx, b)) << to_string(idx);
            }
}

TEST(Operators, PartnerBlocksMatch)
{
    auto c = compare_partner_blocks({6, 4, 6}, {6, 7, 4});
    EXPECT_TRUE(c.dims_equal);
    EXPECT_EQ(c.htc_diff, 0.0);
    EXPECT_EQ(c.jz_shift_diff, 0.0);
    for (int n = 1; n <= 6; ++n)
        for (const auto& [a, b] : accidental_pairs(n, 12)) {
            auto r = compare_partner_blocks(a, b);
            EXPECT_TRUE(r.dims_equal);
            EXPECT_LT(r.htc_diff, 1e-12);
            EXPECT_EQ(r.jz_shift_diff, 0.0);
        }
}

TEST(Operators, PiBasisIsOrthonormalAndComplete)
{
    for (int n = 1; n <= 6; ++n) {
        PiBasis b = build_pi_basis(n);
        Eigen::MatrixXd all(1 << n, 0);
        for (const auto& [j2, list] : b.copies)
            for (const auto& c : list) {
                Eigen::MatrixXd grow(all.rows(), all.cols() + c.cols());
                grow << all, c;
                all = grow;
            }
        ASSERT_EQ(all.cols(), 1 << n);
        EXPECT_LT((all.transpose() * all - Eigen::MatrixXd::Identity(1 << n, 1 << n)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Operators, RepresentativeIsHighestWeight)
{
    for (int n = 2; n <= 6; ++n)
        for (int j2 = j2_min(n); j2 <= n; j2 += 2) {
            Eigen::VectorXd hw = representative_highest_weight(n, j2);
            EXPECT_NEAR(hw.norm(), 1.0, 1e-14);
            EXPECT_LT((jplus_qubits(n) * hw).norm(), 1e-14);
            EXPECT_LT((jz_qubits(n) * hw - 0.5 * j2 * hw).norm(), 1e-14);
        }
}

TEST(Operators, ProjectionOracleSmall)
{
    for (int n = 1; n <= 4; ++n) {
        auto e = oracle::projection_error(n, 8);
        EXPECT_LT(e.htc, 1e-10) << "n=" << n;
        EXPECT_LT(e.jz, 1e-10);
        EXPECT_LT(e.leakage, 1e-10);
    }
}
