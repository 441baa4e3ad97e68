#include "tcforge/pi_basis.hpp"

#include <bit>
#include <cmath>

#include "tcforge/sectors.hpp"

namespace tcforge {

namespace {

void require_qubits(int n)
{
    if (n < 1 || n > 16) throw DomainError("qubit count out of range");
}

std::uint32_t qubit_mask(int n, int i) { return 1u << (n - 1 - i); }

SparseR ladder(int n, bool raise)
{
    require_qubits(n);
    const std::uint32_t dim = 1u << n;
    std::vector<Eigen::Triplet<double>> t;
    for (std::uint32_t s = 0; s < dim; ++s)
        for (int i = 0; i < n; ++i) {
            const std::uint32_t b = qubit_mask(n, i);
            // sigma_+ = |0><1| clears the bit
            if (raise && (s & b)) t.emplace_back(s & ~b, s, 1.0);
            if (!raise && !(s & b)) t.emplace_back(s | b, s, 1.0);
        }
    SparseR m(dim, dim);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

} // namespace

SparseR jplus_qubits(int n) { return ladder(n, true); }
SparseR jminus_qubits(int n) { return ladder(n, false); }

SparseR jz_qubits(int n)
{
    require_qubits(n);
    const std::uint32_t dim = 1u << n;
    std::vector<Eigen::Triplet<double>> t;
    for (std::uint32_t s = 0; s < dim; ++s) t.emplace_back(s, s, 0.5 * n - std::popcount(s));
    SparseR m(dim, dim);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SparseR jx_qubits(int n)
{
    SparseR p = jplus_qubits(n);
    SparseR x = 0.5 * (p + SparseR(p.transpose()));
    return x;
}

Eigen::VectorXd representative_highest_weight(int n, int j2)
{
    require_qubits(n);
    if (j2 < 0 || j2 > n || (n - j2) % 2) throw DomainError("invalid j for n");
    const int pairs = (n - j2) / 2;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(1 << n);
    // expand the product of singlets over the 2^pairs terms
    for (std::uint32_t c = 0; c < (1u << pairs); ++c) {
        std::uint32_t s = 0;
        double sign = 1.0;
        for (int p = 0; p < pairs; ++p) {
            bool flip = (c >> p) & 1u;
            // |01> gets +, |10> gets -
            s |= flip ? qubit_mask(n, 2 * p) : qubit_mask(n, 2 * p + 1);
            if (flip) sign = -sign;
        }
        v(s) = sign;
    }
    return v / v.norm();
}

Eigen::MatrixXd ladder_from_highest_weight(int n, int j2, const Eigen::VectorXd& hw)
{
    SparseR lower = jminus_qubits(n);
    Eigen::MatrixXd cols(hw.size(), j2 + 1);
    cols.col(0) = hw;
    for (int p = 1; p <= j2; ++p) {
        Eigen::VectorXd next = lower * cols.col(p - 1);
        cols.col(p) = next / next.norm();
    }
    return cols;
}

PiBasis build_pi_basis(int n)
{
    require_qubits(n);
    if (n > 12) throw DomainError("PI basis limited to n <= 12");
    PiBasis out;
    out.n = n;
    const std::uint32_t dim = 1u << n;
    SparseR raise = jplus_qubits(n);
    for (int j2 = n; j2 >= j2_min(n); j2 -= 2) {
        const int w = (n - j2) / 2; // number of |1> in the highest weight
        std::vector<std::uint32_t> states, lower;
        for (std::uint32_t s = 0; s < dim; ++s) {
            if (std::popcount(s) == w) states.push_back(s);
        }
        std::vector<int> row_of(dim, -1);
        for (std::uint32_t s = 0; s < dim; ++s)
            if (std::popcount(s) == w - 1) {
                row_of[s] = static_cast<int>(lower.size());
                lower.push_back(s);
            }
        Eigen::MatrixXd hw_space;
        if (lower.empty()) {
            hw_space = Eigen::MatrixXd::Identity(static_cast<int>(states.size()), static_cast<int>(states.size()));
        } else {
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<int>(lower.size()), static_cast<int>(states.size()));
            for (std::size_t c = 0; c < states.size(); ++c)
                for (SparseR::InnerIterator it(raise, states[c]); it; ++it)
                    m(row_of[it.row()], static_cast<int>(c)) += it.value();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            int rank = 0;
            for (int i = 0; i < sv.size(); ++i)
                if (sv(i) > 1e-10) ++rank;
            hw_space = svd.matrixV().rightCols(static_cast<int>(states.size()) - rank);
        }
        if (static_cast<std::uint64_t>(hw_space.cols()) != multiplicity(n, j2))
            throw std::logic_error("PI basis: highest-weight space has wrong dimension");
        auto& list = out.copies[j2];
        for (int a = 0; a < hw_space.cols(); ++a) {
            Eigen::VectorXd hw = Eigen::VectorXd::Zero(dim);
            for (std::size_t c = 0; c < states.size(); ++c) hw(states[c]) = hw_space(static_cast<int>(c), a);
            list.push_back(ladder_from_highest_weight(n, j2, hw));
        }
    }
    return out;
}

JointSpace::JointSpace(int n, int q_max) : n_(n), q_max_(q_max)
{
    require_qubits(n);
    if (q_max < 0) throw DomainError("q_max must be non-negative");
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        const int zeros = n - std::popcount(s);
        for (int k = 0; k + zeros <= q_max; ++k) {
            lookup_[(static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint32_t>(k)] = dim();
            states_.emplace_back(s, k);
        }
    }
}

int JointSpace::index(std::uint32_t s, int k) const
{
    auto it = lookup_.find((static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint32_t>(k));
    return it == lookup_.end() ? -1 : it->second;
}

int JointSpace::charge(int i) const { return states_[i].second + n_ - std::popcount(states_[i].first); }

SparseR JointSpace::htc() const
{
    std::vector<Eigen::Triplet<double>> t;
    for (int c = 0; c < dim(); ++c) {
        auto [s, k] = states_[c];
        if (k == 0) continue;
        // J_+ a : lowers k, clears one set bit
        for (int i = 0; i < n_; ++i) {
            const std::uint32_t b = qubit_mask(n_, i);
            if (!(s & b)) continue;
            int r = index(s & ~b, k - 1);
            double v = std::sqrt(static_cast<double>(k));
            t.emplace_back(r, c, v);
            t.emplace_back(c, r, v);
        }
    }
    SparseR m(dim(), dim());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SparseR JointSpace::jz() const
{
    std::vector<Eigen::Triplet<double>> t;
    for (int c = 0; c < dim(); ++c) t.emplace_back(c, c, 0.5 * n_ - std::popcount(states_[c].first));
    SparseR m(dim(), dim());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SparseR JointSpace::number() const
{
    std::vector<Eigen::Triplet<double>> t;
    for (int c = 0; c < dim(); ++c) t.emplace_back(c, c, states_[c].second);
    SparseR m(dim(), dim());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

Vec JointSpace::embed(const Vec& v, int k) const
{
    Vec out = Vec::Zero(dim());
    for (int s = 0; s < v.size(); ++s) {
        int i = index(static_cast<std::uint32_t>(s), k);
        if (i >= 0) out(i) = v(s);
    }
    return out;
}

} // namespace tcforge
