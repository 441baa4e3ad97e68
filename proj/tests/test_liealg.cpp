#include <gtest/gtest.h>

#include <random>

#include "tcforge/liealg.hpp"
#include "tcforge/linalg.hpp"
#include "tcforge/operators.hpp"

using namespace tcforge;

namespace {

const cplx I(0, 1);

Mat spin_op(int j2, char which)
{
    const int d = j2 + 1;
    Mat jp = Mat::Zero(d, d), jz = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = 0.5 * (j2 - 2 * i);
        jz(i, i) = m;
        if (i > 0) jp(i - 1, i) = std::sqrt(0.5 * j2 * (0.5 * j2 + 1) - m * (m + 1));
    }
    if (which == 'z') return jz;
    if (which == 'x') return 0.5 * (jp + jp.adjoint());
    return -0.5 * I * (jp - jp.adjoint());
}

} // namespace

TEST(Closure, PauliPair)
{
    Mat sx(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    auto b = lie_closure({I * sx, I * sz});
    EXPECT_EQ(b.rank, 3);
    for (std::size_t a = 0; a < b.elements.size(); ++a) {
        EXPECT_TRUE(is_skew_hermitian(b.elements[a], 1e-12));
        for (std::size_t c = 0; c < b.elements.size(); ++c)
            EXPECT_NEAR((b.elements[a].adjoint() * b.elements[c]).trace().real(), a == c ? 1.0 : 0.0, 1e-10);
    }
}

TEST(Closure, SectorWithJz)
{
    SectorIndex idx{2, 2, 2};
    auto b = lie_closure({I * htc_block(idx).entries, I * jz_block(idx).entries});
    // both generators are traceless here, so the closure stops at su(3);
    // an unfilled sector has Tr Jz != 0 and reaches u(d)
    EXPECT_EQ(b.rank, 8);
    SectorIndex shifted{2, 1, 2};
    auto c = lie_closure({I * htc_block(shifted).entries, I * jz_block(shifted).entries});
    EXPECT_EQ(c.rank, 4);
}

TEST(Closure, SpinOneIsOnlySu2)
{
    auto b = lie_closure({I * spin_op(2, 'x'), I * spin_op(2, 'y')});
    EXPECT_EQ(b.rank, 3);
}

TEST(Closure, RejectsNonSkew)
{
    EXPECT_THROW(lie_closure({spin_op(1, 'x')}), DomainError);
    EXPECT_THROW(lie_closure({I * spin_op(1, 'x'), I * spin_op(2, 'x')}), DomainError);
}

TEST(Closure, IdempotentAndMonotone)
{
    std::mt19937 rng(1);
    std::normal_distribution<double> g;
    for (int d : {3, 4}) {
        Mat h(d, d);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) h(i, k) = cplx(g(rng), g(rng));
        h = h + h.adjoint().eval();
        Mat diag = Mat::Zero(d, d);
        diag(0, 0) = 1;
        auto one = lie_closure({I * h});
        auto two = lie_closure({I * h, I * diag});
        EXPECT_EQ(one.rank, 1);
        EXPECT_GE(two.rank, one.rank);
        EXPECT_EQ(lie_closure(two.elements).rank, two.rank);
    }
}

TEST(SectorRank, Examples)
{
    EXPECT_TRUE(sector_rank_ok({2, 1, 2}));
    auto r = sector_rank_check({4, 6, 4});
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.rank, 24);
    EXPECT_EQ(r.expected, 24);
    EXPECT_TRUE(sector_rank_ok({3, 0, 3}));
}

TEST(SectorRank, AllSmallSectors)
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& idx : enumerate_sectors(n, 8))
            if (sector_dim(idx) >= 2) EXPECT_TRUE(sector_rank_ok(idx)) << to_string(idx);
}

TEST(Anharmonicity, ExactSecondDifferences)
{
    for (int n = 1; n <= 6; ++n)
        for (const auto& idx : enumerate_sectors(n, 10)) {
            auto r = anharmonicity_check(idx);
            EXPECT_TRUE(r.matches) << to_string(idx);
            for (std::size_t i = 0; i + 1 < r.second_diff.size(); ++i) EXPECT_EQ(r.second_diff[i + 1] - r.second_diff[i], -6);
            if (sector_dim(idx) >= 3) EXPECT_TRUE(r.condition_holds) << to_string(idx);
        }
}

TEST(Anharmonicity, BoundaryZeros)
{
    SectorIndex idx{2, 1, 2};
    auto r = anharmonicity_check(idx);
    ASSERT_EQ(r.a_sq.size(), 2u);
    // the top rung has nothing above it
    EXPECT_EQ(r.a_sq.front(), 2);
    EXPECT_EQ(r.a_sq.back(), 0);
}

TEST(Anharmonicity, SpinLadderFails)
{
    for (int j2 = 2; j2 <= 6; ++j2) {
        auto r = spin_ladder_anharmonicity(j2);
        EXPECT_FALSE(r.condition_holds) << j2;
        for (std::size_t i = 0; i + 1 < r.second_diff.size(); ++i) EXPECT_EQ(r.second_diff[i], r.second_diff[i + 1]);
    }
}

TEST(Variance, SeparatesNonPartners)
{
    for (int n = 1; n <= 6; ++n) {
        auto r = variance_separation_check(n, 12);
        EXPECT_TRUE(r.pass) << n;
        EXPECT_EQ(r.non_partner_equal, 0);
        EXPECT_EQ(r.partner_unequal, 0);
    }
}

TEST(Variance, SymmetricSubspaceIncreasing)
{
    for (int n = 2; n <= 5; ++n)
        for (int q = n; q < n + 6; ++q) EXPECT_LT(energy_variance({n, q, n}), energy_variance({n, q + 1, n}));
}

TEST(Variance, PartnersEqual)
{
    EXPECT_DOUBLE_EQ(energy_variance({3, 1, 3}), energy_variance({3, 4, 1}));
    EXPECT_EQ(htc_square_trace({3, 1, 3}), htc_square_trace({3, 4, 1}));
}

TEST(SOperator, Commutation)
{
    for (int n = 3; n <= 5; ++n) {
        auto r = check_S_commutation(n, 8);
        EXPECT_TRUE(r.pass) << n;
        EXPECT_GT(r.pairs, 0);
        EXPECT_LT(r.htc_commutator, 1e-9);
        EXPECT_EQ(r.jz_commutator, 0.0);
        EXPECT_LT(r.involution, 1e-10);
    }
}

TEST(SOperator, TwoQubitsHasNone)
{
    auto s = build_S(2, 6);
    EXPECT_TRUE(s.pairs.empty());
    EXPECT_EQ(s.s_plus.norm(), 0.0);
    EXPECT_TRUE(check_S_commutation(2, 6).pass);
}

TEST(SOperator, ThreeQubitPairExchanged)
{
    auto s = build_S(3, 6);
    bool found = false;
    for (const auto& [a, b] : s.pairs) found |= (a == SectorIndex{3, 1, 3} && b == SectorIndex{3, 4, 1});
    EXPECT_TRUE(found);
}

TEST(Schwinger, MapExample)
{
    auto l = schwinger_map({2, 0, 2});
    EXPECT_EQ(l.j2, 3);
    EXPECT_EQ(l.m2, -1);
    EXPECT_EQ(l.k, 1);
    for (int j2 = 0; j2 <= 6; ++j2)
        for (int m2 = -j2; m2 <= j2; m2 += 2)
            for (int k = 0; k <= 5; ++k) {
                SchwingerLabel a{j2, m2, k};
                auto b = schwinger_map(a);
                EXPECT_EQ(j2 + m2, b.j2 + b.m2);
                auto c = schwinger_map(b);
                EXPECT_EQ(c.j2, a.j2);
                EXPECT_EQ(c.m2, a.m2);
                EXPECT_EQ(c.k, a.k);
            }
}

TEST(Schwinger, Check)
{
    auto r = schwinger_check(6, 8);
    EXPECT_TRUE(r.pass);
    EXPECT_GT(r.tested, 0);
    EXPECT_LT(r.square_residual, 1e-10);
    EXPECT_LT(r.invariance_residual, 1e-10);
    EXPECT_TRUE(r.preserves_first_mode);
    EXPECT_THROW(schwinger_check(-1, 2), DomainError);
}

TEST(PiUniversality, Ranks)
{
    EXPECT_EQ(verify_pi_universality(1).rank, 4);
    EXPECT_EQ(verify_pi_universality(2).rank, 9);
    EXPECT_EQ(verify_pi_universality(4).rank, 25);
    EXPECT_TRUE(verify_pi_universality(7).pass);
    EXPECT_THROW(verify_pi_universality(8), DomainError);
}

TEST(Report, Json)
{
    auto j = to_json(sector_rank_check({2, 1, 2}));
    EXPECT_EQ(j["rank"], 3);
    EXPECT_TRUE(j["pass"].get<bool>());
}
