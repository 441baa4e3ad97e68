#include "tcforge/liealg.hpp"

#include <bit>
#include <cmath>
#include <map>

#include "tcforge/linalg.hpp"
#include "tcforge/operators.hpp"
#include "tcforge/pi_basis.hpp"

namespace tcforge {

namespace {

double real_inner(const Mat& a, const Mat& b) { return (a.adjoint() * b).trace().real(); }

// Orthogonalises c against basis in place; returns the residual norm.
double orthogonalise(Mat& c, const std::vector<Mat>& basis)
{
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : basis) c -= real_inner(e, c) * e;
    return c.norm();
}

bool try_add(std::vector<Mat>& basis, Mat c, double tol)
{
    const double norm = c.norm();
    if (norm < 1e-12) return false;
    const double r = orthogonalise(c, basis);
    if (r <= tol * norm) return false;
    basis.push_back(c / r);
    return true;
}

} // namespace

OperatorBasis lie_closure(const std::vector<Mat>& generators, double tol, int max_commutators)
{
    OperatorBasis out;
    if (generators.empty()) return out;
    const long d = generators.front().rows();
    for (const auto& g : generators) {
        if (g.rows() != d || g.cols() != d) throw DomainError("generators must share one square dimension");
        if (!is_skew_hermitian(g, 1e-10)) throw DomainError("generator is not skew-Hermitian");
    }
    std::vector<Mat>& b = out.elements;
    for (const auto& g : generators) try_add(b, g, tol);
    const std::size_t cap = static_cast<std::size_t>(d * d);
    for (std::size_t i = 1; i < b.size() && b.size() < cap && out.commutators < max_commutators; ++i)
        for (std::size_t j = 0; j < i && b.size() < cap && out.commutators < max_commutators; ++j) {
            ++out.commutators;
            try_add(b, commutator(b[j], b[i]), tol);
        }
    out.rank = static_cast<int>(b.size());
    return out;
}

nlohmann::json to_json(const CheckReport& r)
{
    return {{"scope", r.scope}, {"rank", r.rank}, {"expected", r.expected}, {"pass", r.pass}, {"residuals", r.residuals}};
}

CheckReport sector_rank_check(const SectorIndex& idx, double tol)
{
    require_valid(idx);
    CheckReport r;
    r.scope = to_string(idx);
    const int d = sector_dim(idx);
    r.expected = static_cast<long long>(d) * d - 1;
    if (d < 2) {
        r.rank = 0;
        r.expected = 0;
        r.pass = true;
        return r;
    }
    const cplx i(0, 1);
    Mat h = htc_block(idx).entries;
    Mat hbar = i * commutator(jz_block(idx).entries, h);
    OperatorBasis b = lie_closure({i * h, i * hbar}, tol);
    r.rank = b.rank;
    r.pass = r.rank == r.expected;
    return r;
}

bool sector_rank_ok(const SectorIndex& idx, double tol) { return sector_rank_check(idx, tol).pass; }

namespace {

void finish_anharmonicity(AnharmonicityReport& r, bool with_expected)
{
    const int d = static_cast<int>(r.a_sq.size());
    auto a = [&](int p) -> std::int64_t { return (p < 0 || p >= d - 1) ? 0 : r.a_sq[p]; };
    for (int p = 0; p + 1 < d; ++p) r.second_diff.push_back(2 * a(p) - a(p - 1) - a(p + 1));
    r.matches = true;
    if (with_expected) {
        for (int p = 0; p + 1 < d; ++p) {
            const int y = r.y_min + p;
            r.expected.push_back(2LL * (r.idx.n + r.idx.q - 1) - 6LL * y);
            if (r.expected.back() != r.second_diff[p]) r.matches = false;
        }
    }
    r.condition_holds = true;
    for (std::size_t p = 1; p < r.second_diff.size(); ++p)
        if (r.second_diff[p] == r.second_diff[0]) r.condition_holds = false;
}

} // namespace

AnharmonicityReport anharmonicity_check(const SectorIndex& idx)
{
    AnharmonicityReport r;
    r.idx = idx;
    auto labels = basis_labels(idx);
    // y = m + n/2 increases against the label order
    const int d = static_cast<int>(labels.size());
    r.y_min = (labels.back().m2 + idx.n) / 2;
    for (int p = 0; p < d; ++p) {
        const BasisLabel& l = labels[d - 1 - p];
        // (j - m)(j + m + 1)(q - y)
        std::int64_t a = static_cast<std::int64_t>((idx.j2 - l.m2) / 2) * ((idx.j2 + l.m2 + 2) / 2) * l.k;
        r.a_sq.push_back(a);
    }
    finish_anharmonicity(r, true);
    return r;
}

AnharmonicityReport spin_ladder_anharmonicity(int j2)
{
    AnharmonicityReport r;
    r.idx = SectorIndex{j2, 0, j2};
    r.y_min = 0;
    for (int m2 = -j2; m2 <= j2; m2 += 2) r.a_sq.push_back(static_cast<std::int64_t>((j2 - m2) / 2) * ((j2 + m2 + 2) / 2));
    finish_anharmonicity(r, false);
    return r;
}

VarianceReport variance_separation_check(int n, int q_max)
{
    VarianceReport r;
    std::map<int, std::vector<SectorIndex>> by_dim;
    for (const auto& idx : enumerate_sectors(n, q_max))
        if (sector_dim(idx) >= 2) by_dim[sector_dim(idx)].push_back(idx);
    for (const auto& [d, list] : by_dim)
        for (std::size_t a = 0; a < list.size(); ++a)
            for (std::size_t b = a + 1; b < list.size(); ++b) {
                ++r.pairs_checked;
                const bool equal = htc_square_trace(list[a]) == htc_square_trace(list[b]);
                auto p = accidental_partner(list[a]);
                const bool partners = p && *p == list[b];
                if (equal) r.equal_pairs.emplace_back(list[a], list[b]);
                if (equal && !partners) ++r.non_partner_equal;
                if (!equal && partners) ++r.partner_unequal;
            }
    r.pass = r.non_partner_equal == 0 && r.partner_unequal == 0;
    return r;
}

namespace {

Vec sector_vector(const JointSpace& space, const Eigen::MatrixXd& ladder, int j2, const BasisLabel& l)
{
    return space.embed(ladder.col((j2 - l.m2) / 2).cast<cplx>(), l.k);
}

} // namespace

SOperator build_S(int n, int q_max)
{
    JointSpace space(n, q_max);
    SOperator s;
    s.n = n;
    s.q_max = q_max;
    s.s_plus = Mat::Zero(space.dim(), space.dim());
    std::map<int, Eigen::MatrixXd> ladders;
    auto ladder = [&](int j2) -> const Eigen::MatrixXd& {
        auto it = ladders.find(j2);
        if (it == ladders.end())
            it = ladders.emplace(j2, ladder_from_highest_weight(n, j2, representative_highest_weight(n, j2))).first;
        return it->second;
    };
    s.pairs = accidental_pairs(n, q_max);
    for (const auto& [a, b] : s.pairs) {
        auto la = basis_labels(a), lb = basis_labels(b);
        for (std::size_t i = 0; i < la.size(); ++i)
            s.s_plus += sector_vector(space, ladder(b.j2), b.j2, lb[i]) * sector_vector(space, ladder(a.j2), a.j2, la[i]).adjoint();
    }
    return s;
}

SCommutationReport check_S_commutation(int n, int q_max)
{
    SCommutationReport r;
    JointSpace space(n, q_max);
    SOperator s = build_S(n, q_max);
    r.pairs = static_cast<int>(s.pairs.size());
    Mat full = s.full();
    Mat h = Mat(space.htc().cast<cplx>());
    r.htc_commutator = (h * full - full * h).norm();

    // [J_z, S(j, j')] entrywise from the diagonal of J_z
    Eigen::VectorXd jz(space.dim());
    for (int i = 0; i < space.dim(); ++i) jz(i) = 0.5 * n - std::popcount(space.qubits(i));
    std::map<std::pair<int, int>, Mat> parts;
    {
        std::map<int, Eigen::MatrixXd> ladders;
        for (const auto& [a, b] : s.pairs) {
            for (int j2 : {a.j2, b.j2})
                if (!ladders.count(j2)) ladders[j2] = ladder_from_highest_weight(n, j2, representative_highest_weight(n, j2));
            Mat& part = parts[{a.j2, b.j2}];
            if (part.size() == 0) part = Mat::Zero(space.dim(), space.dim());
            auto la = basis_labels(a), lb = basis_labels(b);
            for (std::size_t i = 0; i < la.size(); ++i)
                part += sector_vector(space, ladders[b.j2], b.j2, lb[i]) * sector_vector(space, ladders[a.j2], a.j2, la[i]).adjoint();
        }
    }
    for (const auto& [key, part] : parts) {
        const double shift = 0.5 * (key.first - key.second); // j - j'
        for (int x = 0; x < part.rows(); ++x)
            for (int y = 0; y < part.cols(); ++y) {
                const cplx lhs = (jz(x) - jz(y)) * part(x, y);
                const cplx rhs = shift * part(x, y);
                r.jz_commutator = std::max(r.jz_commutator, std::abs(lhs - rhs));
            }
    }

    // S^2 is the projector onto the exchanged levels
    Mat proj = s.s_plus.adjoint() * s.s_plus + s.s_plus * s.s_plus.adjoint();
    r.involution = (full * full - proj).norm();
    r.pass = r.htc_commutator < 1e-9 && r.jz_commutator < 1e-12 && r.involution < 1e-9;
    return r;
}

SchwingerLabel schwinger_map(const SchwingerLabel& l)
{
    const int top = (l.j2 + l.m2) / 2; // j + m
    return {top + l.k, top - l.k, (l.j2 - l.m2) / 2};
}

SchwingerReport schwinger_check(int j2_max, int k_max)
{
    SchwingerReport r;
    if (j2_max < 0 || k_max < 0) throw DomainError("schwinger_check: negative truncation");
    auto in_bounds = [&](const SchwingerLabel& l) {
        return l.j2 >= 0 && l.j2 <= j2_max && std::abs(l.m2) <= l.j2 && (l.j2 - l.m2) % 2 == 0 && l.k >= 0 && l.k <= k_max;
    };
    // J_+ a |j,m,k> = sqrt((j-m)(j+m+1) k) |j, m+1, k-1>
    auto raise = [](const SchwingerLabel& l) -> std::pair<double, SchwingerLabel> {
        const double c = std::sqrt(0.25 * (l.j2 - l.m2) * (l.j2 + l.m2 + 2) * l.k);
        return {c, SchwingerLabel{l.j2, l.m2 + 2, l.k - 1}};
    };
    for (int j2 = 0; j2 <= j2_max; ++j2)
        for (int m2 = -j2; m2 <= j2; m2 += 2)
            for (int k = 0; k <= k_max; ++k) {
                SchwingerLabel e{j2, m2, k};
                SchwingerLabel we = schwinger_map(e);
                if (!in_bounds(we)) {
                    ++r.skipped;
                    continue;
                }
                SchwingerLabel wwe = schwinger_map(we);
                if (!in_bounds(wwe)) {
                    ++r.skipped;
                    continue;
                }
                if ((we.j2 + we.m2) != (e.j2 + e.m2)) r.preserves_first_mode = false;
                double sq = (wwe.j2 == e.j2 && wwe.m2 == e.m2 && wwe.k == e.k) ? 0.0 : std::sqrt(2.0);
                // W (J_+ a) W e against (J_+ a) e
                auto [c1, l1] = raise(we);
                auto [c0, l0] = raise(e);
                double inv = 0.0;
                if (c1 != 0.0) {
                    SchwingerLabel back = schwinger_map(l1);
                    if (!in_bounds(back)) {
                        ++r.skipped;
                        continue;
                    }
                    const bool same = back.j2 == l0.j2 && back.m2 == l0.m2 && back.k == l0.k;
                    inv = same ? std::abs(c1 - c0) : std::hypot(c1, c0);
                } else {
                    inv = std::abs(c0);
                }
                ++r.tested;
                r.square_residual = std::max(r.square_residual, sq);
                r.invariance_residual = std::max(r.invariance_residual, inv);
            }
    r.pass = r.tested > 0 && r.square_residual < 1e-10 && r.invariance_residual < 1e-10 && r.preserves_first_mode;
    return r;
}

CheckReport verify_pi_universality(int j2, double tol)
{
    if (j2 < 0 || j2 > 7) throw DomainError("verify_pi_universality supports 2j+1 <= 8");
    const int d = j2 + 1;
    const cplx i(0, 1);
    std::vector<Mat> gens;
    for (int p = 0; p < d; ++p) {
        Mat e = Mat::Zero(d, d);
        e(p, p) = i;
        gens.push_back(e);
    }
    Mat jx = Mat::Zero(d, d);
    for (int p = 0; p + 1 < d; ++p) {
        const int m2 = j2 - 2 * p; // row p has m, row p+1 has m - 1
        const double v = 0.5 * std::sqrt(0.25 * (j2 + m2) * (j2 - m2 + 2));
        jx(p, p + 1) = jx(p + 1, p) = v;
    }
    gens.push_back(i * jx);
    CheckReport r;
    r.scope = "spin j=" + half_to_string(j2);
    r.rank = lie_closure(gens, tol).rank;
    r.expected = static_cast<long long>(d) * d;
    r.pass = r.rank == r.expected;
    return r;
}

} // namespace tcforge
