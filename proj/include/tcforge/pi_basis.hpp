#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include <Eigen/Sparse>

#include "tcforge/types.hpp"

namespace tcforge {

using SparseR = Eigen::SparseMatrix<double>;

// Computational basis of n qubits: qubit 0 is the most significant bit and a
// clear bit is |0>, the m = +1/2 state.
SparseR jplus_qubits(int n);
SparseR jminus_qubits(int n);
SparseR jz_qubits(int n);
SparseR jx_qubits(int n);

// |j, m, alpha> vectors in C^(2^n). For every j2 the list holds one matrix
// per multiplicity copy alpha, columns ordered m = j, j-1, ..., -j.
struct PiBasis {
    int n = 0;
    std::map<int, std::vector<Eigen::MatrixXd>> copies;

    const Eigen::MatrixXd& copy(int j2, int alpha) const { return copies.at(j2).at(alpha); }
};

PiBasis build_pi_basis(int n);

// |Psi->^(n/2-j) (x) |0>^(2j), the highest-weight vector of the fixed
// multiplicity representative.
Eigen::VectorXd representative_highest_weight(int n, int j2);

// Columns J_-^p |hw> normalised, m = j down to -j.
Eigen::MatrixXd ladder_from_highest_weight(int n, int j2, const Eigen::VectorXd& hw);

// Qubits (x) Fock space cut to total charge Q <= q_max. Every charge-
// conserving operator acts exactly on this space.
class JointSpace {
public:
    JointSpace(int n, int q_max);

    int n() const { return n_; }
    int q_max() const { return q_max_; }
    int dim() const { return static_cast<int>(states_.size()); }

    // -1 when (s, k) is outside the space.
    int index(std::uint32_t s, int k) const;
    std::uint32_t qubits(int i) const { return states_[i].first; }
    int level(int i) const { return states_[i].second; }
    int charge(int i) const;

    SparseR htc() const;
    SparseR jz() const;
    SparseR number() const;

    // Embeds |v> (x) |k> where v lives in C^(2^n); components above q_max are
    // dropped.
    Vec embed(const Vec& v, int k) const;

private:
    int n_;
    int q_max_;
    std::vector<std::pair<std::uint32_t, int>> states_;
    std::unordered_map<std::uint64_t, int> lookup_;
};

} // namespace tcforge
