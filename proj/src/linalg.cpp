#include "tcforge/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace tcforge {

HermitianExp::HermitianExp(const Mat& h)
{
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
}

Mat HermitianExp::operator()(double t) const
{
    Vec phases(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) phases(i) = std::polar(1.0, -t * values_(i));
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Mat expm_hermitian(const Mat& h, double t) { return HermitianExp(h)(t); }

double unitarity_residual(const Mat& u)
{
    return (u.adjoint() * u - Mat::Identity(u.cols(), u.cols())).norm();
}

double best_phase(const Mat& u, const Mat& v)
{
    cplx tr = (v.adjoint() * u).trace();
    return std::abs(tr) > 0 ? std::arg(tr) : 0.0;
}

double distance_up_to_phase(const Mat& u, const Mat& v)
{
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw DomainError("distance_up_to_phase: dimension mismatch");
    return (u - std::polar(1.0, best_phase(u, v)) * v).norm();
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

bool is_hermitian(const Mat& a, double atol)
{
    return a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() <= atol;
}

bool is_skew_hermitian(const Mat& a, double atol)
{
    return a.rows() == a.cols() && (a + a.adjoint()).cwiseAbs().maxCoeff() <= atol;
}

} // namespace tcforge
