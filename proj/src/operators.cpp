#include "tcforge/operators.hpp"

#include <cmath>

namespace tcforge {

std::int64_t htc_ladder_sq(const SectorIndex& idx, const BasisLabel& upper)
{
    // <j,m,k| H |j,m-1,k+1> = sqrt((j+m)(j-m+1)(k+1))
    std::int64_t a = (idx.j2 + upper.m2) / 2;
    std::int64_t b = (idx.j2 - upper.m2 + 2) / 2;
    return a * b * (upper.k + 1);
}

namespace {

SectorMatrix empty_block(const SectorIndex& idx)
{
    SectorMatrix s;
    s.idx = idx;
    s.labels = basis_labels(idx);
    s.entries = Mat::Zero(s.dim(), s.dim());
    return s;
}

} // namespace

SectorMatrix htc_block(const SectorIndex& idx)
{
    SectorMatrix s = empty_block(idx);
    for (int i = 0; i + 1 < s.dim(); ++i) {
        double v = std::sqrt(static_cast<double>(htc_ladder_sq(idx, s.labels[i])));
        s.entries(i, i + 1) = v;
        s.entries(i + 1, i) = v;
    }
    return s;
}

SectorMatrix jz_block(const SectorIndex& idx)
{
    SectorMatrix s = empty_block(idx);
    for (int i = 0; i < s.dim(); ++i) s.entries(i, i) = s.labels[i].m();
    return s;
}

SectorMatrix number_block(const SectorIndex& idx)
{
    SectorMatrix s = empty_block(idx);
    for (int i = 0; i < s.dim(); ++i) s.entries(i, i) = static_cast<double>(s.labels[i].k);
    return s;
}

SectorMatrix charge_block(const SectorIndex& idx)
{
    SectorMatrix s = empty_block(idx);
    for (int i = 0; i < s.dim(); ++i) s.entries(i, i) = static_cast<double>(idx.q);
    return s;
}

int tower_k_max(int n, int j2, int q_max)
{
    if (q_max < 0) throw DomainError("q_max must be non-negative");
    return std::max(0, (2 * q_max + j2 - n) / 2);
}

namespace {

JSectorOperator empty_tower(int n, int j2, int k_max)
{
    if (n < 1 || j2 < 0 || j2 > n || (n - j2) % 2 != 0) throw DomainError("invalid tower j");
    if (k_max < 0) throw DomainError("k_max must be non-negative");
    JSectorOperator t;
    t.n = n;
    t.j2 = j2;
    t.k_max = k_max;
    t.entries = Mat::Zero(t.dim(), t.dim());
    return t;
}

} // namespace

JSectorOperator htc_tower(int n, int j2, int k_max)
{
    JSectorOperator t = empty_tower(n, j2, k_max);
    for (int k = 0; k < k_max; ++k)
        for (int m2 = -j2 + 2; m2 <= j2; m2 += 2) {
            double v = std::sqrt(0.25 * (j2 + m2) * (j2 - m2 + 2) * (k + 1));
            int a = t.index(m2, k), b = t.index(m2 - 2, k + 1);
            t.entries(a, b) = v;
            t.entries(b, a) = v;
        }
    return t;
}

JSectorOperator jz_tower(int n, int j2, int k_max)
{
    JSectorOperator t = empty_tower(n, j2, k_max);
    for (int k = 0; k <= k_max; ++k)
        for (int m2 = -j2; m2 <= j2; m2 += 2) t.entries(t.index(m2, k), t.index(m2, k)) = 0.5 * m2;
    return t;
}

JSectorOperator number_tower(int n, int j2, int k_max)
{
    JSectorOperator t = empty_tower(n, j2, k_max);
    for (int k = 0; k <= k_max; ++k)
        for (int m2 = -j2; m2 <= j2; m2 += 2) t.entries(t.index(m2, k), t.index(m2, k)) = k;
    return t;
}

JSectorOperator jx_operator(int n, int j2, int k_max)
{
    JSectorOperator t = empty_tower(n, j2, k_max);
    for (int k = 0; k <= k_max; ++k)
        for (int m2 = -j2 + 2; m2 <= j2; m2 += 2) {
            double v = 0.5 * std::sqrt(0.25 * (j2 + m2) * (j2 - m2 + 2));
            int a = t.index(m2, k), b = t.index(m2 - 2, k);
            t.entries(a, b) = v;
            t.entries(b, a) = v;
        }
    return t;
}

double energy_variance(const SectorIndex& idx)
{
    require_valid(idx);
    const double j = idx.j(), q = idx.q, h = 0.5 * idx.n;
    if (2 * idx.q >= idx.n + idx.j2) return 2.0 * j * (j + 1) * (2 * q - idx.n + 1) / 3.0;
    return (q - h + j) * (q - h + j + 2) * (3 * j - q + h + 1) / 6.0;
}

std::int64_t htc_square_trace(const SectorIndex& idx)
{
    auto labels = basis_labels(idx);
    std::int64_t s = 0;
    for (std::size_t i = 0; i + 1 < labels.size(); ++i) s += htc_ladder_sq(idx, labels[i]);
    return 2 * s;
}

double energy_variance_bruteforce(const SectorIndex& idx)
{
    SectorMatrix h = htc_block(idx);
    return (h.entries * h.entries).trace().real() / h.dim();
}

std::int64_t charge_vector_exact(const SectorIndex& idx, ChargeKind which)
{
    require_valid(idx);
    const std::int64_t a = (2 * idx.q + idx.j2 - idx.n) / 2; // q + j - n/2
    const std::int64_t b = (2 * idx.q - idx.j2 - idx.n) / 2; // q - j - n/2
    const bool filled = 2 * idx.q > idx.n + idx.j2;
    if (which == ChargeKind::Jz) return filled ? 0 : (a + 1) * b;
    if (!filled) return (a + 1) * a / 2;
    return static_cast<std::int64_t>(idx.j2 + 1) * (2 * idx.q - idx.n) / 2;
}

std::int64_t charge_vector_sum(const SectorIndex& idx, ChargeKind which)
{
    std::int64_t s = 0;
    for (const auto& l : basis_labels(idx)) s += (which == ChargeKind::Jz) ? l.m2 : l.k;
    return s;
}

double charge_vector(const SectorIndex& idx, ChargeKind which)
{
    double v = static_cast<double>(charge_vector_exact(idx, which));
    return which == ChargeKind::Jz ? 0.5 * v : v;
}

bool sector_equivalence_check(const SectorIndex& a, const SectorIndex& b, double atol)
{
    require_valid(a);
    require_valid(b);
    if (a.j2 != b.j2) throw DomainError("sector_equivalence_check: mismatched j");
    if (b.n != b.j2 || 2 * b.q != 2 * a.q - a.n + a.j2) {
        if (!(a == b)) return false;
    }
    auto ha = htc_block(a), hb = htc_block(b);
    if (ha.dim() != hb.dim()) return false;
    auto za = jz_block(a), zb = jz_block(b);
    return (ha.entries - hb.entries).cwiseAbs().maxCoeff() <= atol &&
           (za.entries - zb.entries).cwiseAbs().maxCoeff() <= atol;
}

PartnerComparison compare_partner_blocks(const SectorIndex& a, const SectorIndex& b)
{
    PartnerComparison out;
    auto ha = htc_block(a), hb = htc_block(b);
    out.dims_equal = ha.dim() == hb.dim();
    if (!out.dims_equal) return out;
    out.htc_diff = (ha.entries - hb.entries).cwiseAbs().maxCoeff();
    Mat shift = jz_block(a).entries - jz_block(b).entries;
    shift -= (b.j() - a.j()) * Mat::Identity(ha.dim(), ha.dim());
    out.jz_shift_diff = shift.cwiseAbs().maxCoeff();
    return out;
}

} // namespace tcforge
