#pragma once

#include "tcforge/types.hpp"

namespace tcforge {

// Eigendecomposition of a Hermitian matrix, reusable for exp(-i t H) at many t.
class HermitianExp {
public:
    HermitianExp() = default;
    explicit HermitianExp(const Mat& h);

    Mat operator()(double t) const;
    int dim() const { return static_cast<int>(values_.size()); }

private:
    Eigen::VectorXd values_;
    Mat vectors_;
};

// exp(-i t H) for Hermitian H.
Mat expm_hermitian(const Mat& h, double t);

double unitarity_residual(const Mat& u);

// ||U - e^{i a} V||_F with a = arg Tr(V^dag U).
double distance_up_to_phase(const Mat& u, const Mat& v);
double best_phase(const Mat& u, const Mat& v);

Mat commutator(const Mat& a, const Mat& b);

bool is_hermitian(const Mat& a, double atol);
bool is_skew_hermitian(const Mat& a, double atol);

} // namespace tcforge
