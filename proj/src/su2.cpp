#include "tcforge/su2.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_multimin.h>

namespace tcforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat2 sigma(int a)
{
    Mat2 s = Mat2::Zero();
    const cplx i(0, 1);
    if (a == 0) s << 0, 1, 1, 0;
    if (a == 1) s << 0, -i, i, 0;
    if (a == 2) s << 1, 0, 0, -1;
    return s;
}

// u = c I - i v.sigma for u in SU(2)
Vec3 minus_vector(const Mat2& u)
{
    Vec3 v;
    for (int a = 0; a < 3; ++a) v(a) = -((u * sigma(a)).trace() / 2.0).imag();
    return v;
}

double half_trace(const Mat2& u) { return std::clamp((u.trace() / 2.0).real(), -1.0, 1.0); }

std::pair<Vec3, Vec3> perpendicular(const Vec3& r)
{
    Vec3 t = std::abs(r(0)) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    Vec3 e1 = r.cross(t).normalized();
    Vec3 e2 = r.cross(e1);
    return {e1, e2};
}

// u = rot(g, n) rot(g, m); returns (m, n).
std::optional<std::pair<Vec3, Vec3>> two_step_minus(const Mat2& u, double g, double theta)
{
    const double a = std::acos(half_trace(u));
    Vec3 v = minus_vector(u);
    Vec3 r = v.norm() > 1e-14 ? Vec3(v.normalized()) : Vec3(Vec3::UnitX());
    double t = a > 1e-14 ? std::tan(a / 2) / std::tan(g) : 0.0;
    if (std::abs(t) > 1 + 1e-12) return std::nullopt;
    t = std::clamp(t, -1.0, 1.0);
    auto [e1, e2] = perpendicular(r);
    const double s = std::sqrt(1 - t * t);
    Vec3 m = t * r + s * (std::cos(theta) * e1 + std::sin(theta) * e2);
    Mat2 w = u * rot_minus(-g, m);
    if (std::abs(half_trace(w) - std::cos(g)) > 1e-9) return std::nullopt;
    Vec3 n = minus_vector(w) / std::sin(g);
    return std::make_pair(m.normalized(), n.normalized());
}

struct Candidate {
    double raw = kInf;
    DecompositionKind kind = DecompositionKind::TwoStep;
    int k = 1;
    std::vector<Vec3> axes;
    std::vector<EulerParams> params;
};

using AxesOf = std::function<std::optional<std::vector<Vec3>>(double)>;

double chain_cost(const std::optional<std::vector<Vec3>>& axes)
{
    if (!axes) return kInf;
    double c = 0.0;
    best_branches(*axes, &c);
    return c;
}

double gsl_thunk(double x, void* p) { return (*static_cast<std::function<double(double)>*>(p))(x); }

// 64-point grid over the family parameter, then golden-section refinement.
std::optional<double> search_family(const AxesOf& axes_of)
{
    constexpr int kGrid = 64;
    const double h = kTwoPi / kGrid;
    std::function<double(double)> f = [&](double th) { return chain_cost(axes_of(th)); };
    std::vector<double> vals(kGrid);
    int best = -1;
    for (int i = 0; i < kGrid; ++i) {
        vals[i] = f(i * h);
        if (vals[i] < kInf && (best < 0 || vals[i] < vals[best])) best = i;
    }
    if (best < 0) return std::nullopt;
    double x = best * h, fx = vals[best];
    const double lo = x - h, hi = x + h;
    const double flo = f(lo), fhi = f(hi);
    if (fx < flo && fx < fhi) {
        gsl_function F{&gsl_thunk, &f};
        gsl_min_fminimizer* m = gsl_min_fminimizer_alloc(gsl_min_fminimizer_goldensection);
        if (gsl_min_fminimizer_set_with_values(m, &F, x, fx, lo, flo, hi, fhi) == GSL_SUCCESS) {
            for (int it = 0; it < 200; ++it) {
                if (gsl_min_fminimizer_iterate(m) != GSL_SUCCESS) break;
                if (gsl_min_fminimizer_x_upper(m) - gsl_min_fminimizer_x_lower(m) < 1e-12) break;
            }
            if (gsl_min_fminimizer_f_minimum(m) < fx) x = gsl_min_fminimizer_x_minimum(m);
        }
        gsl_min_fminimizer_free(m);
    }
    return x;
}

Mat2 physical_product(const std::vector<Vec3>& axes, double angle)
{
    Mat2 p = Mat2::Identity();
    for (const auto& a : axes) p = rot_minus(angle, a) * p;
    return p;
}

void consider(Candidate& best, const Mat2& target, DecompositionKind kind, int k, std::optional<std::vector<Vec3>> axes)
{
    if (!axes) return;
    if ((physical_product(*axes, k * kDelta) - target).norm() > 1e-9) return;
    double chain = 0.0;
    auto params = best_branches(*axes, &chain);
    const double raw = chain + static_cast<double>(axes->size()) * k * kStepPulse;
    const bool better = raw < best.raw - 1e-12 || (std::abs(raw - best.raw) <= 1e-12 && kind < best.kind);
    if (!better) return;
    best = Candidate{raw, kind, k, *axes, params};
}

void run_family(Candidate& best, const Mat2& target, DecompositionKind kind, int k, const AxesOf& axes_of)
{
    auto th = search_family(axes_of);
    if (th) consider(best, target, kind, k, axes_of(*th));
}

Vec3 sphere_point(double polar, double azimuth)
{
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

// Three steps with the last axis l free on the sphere. Needed when the
// target axis is undefined, e.g. u = -I.
void run_sphere_family(Candidate& best, const Mat2& target)
{
    auto axes_of = [&](const gsl_vector* x) -> std::optional<std::vector<Vec3>> {
        Vec3 l = sphere_point(gsl_vector_get(x, 0), gsl_vector_get(x, 1));
        auto s = two_step_minus(rot_minus(-kDelta, l) * target, kDelta, gsl_vector_get(x, 2));
        if (!s) return std::nullopt;
        return std::vector<Vec3>{s->first, s->second, l};
    };
    std::function<double(const gsl_vector*)> cost = [&](const gsl_vector* x) {
        double c = chain_cost(axes_of(x));
        return c < kInf ? c : 1e6;
    };
    gsl_vector* x = gsl_vector_alloc(3);
    double bestc = kInf;
    double seed[3] = {0, 0, 0};
    constexpr int kG = 16;
    for (int a = 0; a < kG; ++a)
        for (int b = 0; b < kG; ++b)
            for (int c = 0; c < kG; ++c) {
                double p[3] = {0.05 + a * (kPi - 0.1) / (kG - 1), b * kTwoPi / kG, c * kTwoPi / kG};
                for (int i = 0; i < 3; ++i) gsl_vector_set(x, i, p[i]);
                double v = cost(x);
                if (v < bestc) {
                    bestc = v;
                    std::copy(p, p + 3, seed);
                }
            }
    if (bestc >= 1e6) {
        gsl_vector_free(x);
        return;
    }
    for (int i = 0; i < 3; ++i) gsl_vector_set(x, i, seed[i]);
    gsl_vector* step = gsl_vector_alloc(3);
    gsl_vector_set_all(step, 0.1);
    gsl_multimin_function F;
    F.n = 3;
    F.params = &cost;
    F.f = [](const gsl_vector* v, void* p) { return (*static_cast<std::function<double(const gsl_vector*)>*>(p))(v); };
    gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
    gsl_multimin_fminimizer_set(m, &F, x, step);
    for (int it = 0; it < 4000; ++it) {
        if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
        if (gsl_multimin_fminimizer_size(m) < 1e-11) break;
    }
    const gsl_vector* sol = gsl_multimin_fminimizer_minimum(m) < bestc ? gsl_multimin_fminimizer_x(m) : x;
    consider(best, target, DecompositionKind::ThreeStep, 1, axes_of(sol));
    gsl_multimin_fminimizer_free(m);
    gsl_vector_free(step);
    gsl_vector_free(x);
}

} // namespace

Mat2 pauli_dot(const Vec3& v) { return v(0) * sigma(0) + v(1) * sigma(1) + v(2) * sigma(2); }

Mat2 su2_matrix(const AxisAngle& a)
{
    return std::cos(a.angle) * Mat2::Identity() + cplx(0, std::sin(a.angle)) * pauli_dot(a.axis);
}

Mat2 rot_minus(double g, const Vec3& p)
{
    return std::cos(g) * Mat2::Identity() - cplx(0, std::sin(g)) * pauli_dot(p);
}

AxisAngle axis_angle_of(const Mat2& u)
{
    AxisAngle out;
    const double c = half_trace(u);
    Vec3 v = -minus_vector(u); // u = c I + i v.sigma
    const double s = v.norm();
    out.angle = wrap_pi(std::atan2(s, c));
    if (s < 1e-12) {
        out.axis = Vec3::UnitX();
        out.null_axis = true;
    } else {
        out.axis = v / s;
    }
    return out;
}

AxisAngle compose_rotations(double g1, double g2, const Vec3& m, const Vec3& n)
{
    const double c1 = std::cos(g1), s1 = std::sin(g1), c2 = std::cos(g2), s2 = std::sin(g2);
    const double c = c1 * c2 - s1 * s2 * m.dot(n);
    Vec3 v = s1 * c2 * m + c1 * s2 * n - s1 * s2 * m.cross(n);
    AxisAngle out;
    const double s = v.norm();
    out.angle = wrap_pi(std::atan2(s, c));
    if (s < 1e-12) {
        out.null_axis = true;
        out.axis = Vec3::UnitX();
    } else {
        out.axis = v / s;
    }
    return out;
}

TwoStepSolution solve_two_step(const Mat2& target, double gamma, double theta)
{
    TwoStepSolution out;
    auto s = two_step_minus(target, gamma, theta);
    if (!s) return out;
    out.feasible = true;
    out.n1 = -s->first;
    out.n2 = -s->second;
    return out;
}

TwoStepSolution solve_two_step(const AxisAngle& target, double gamma, double theta)
{
    return solve_two_step(su2_matrix(target), gamma, theta);
}

std::array<EulerParams, 4> euler_embed(const Vec3& p)
{
    const double g = std::acos(std::clamp(p(0), -1.0, 1.0)) / 2;
    const double b = std::atan2(p(2), -p(1)) / 2;
    const double r2 = std::sqrt(2.0);
    return {{{2 * g, b / r2}, {2 * g, (b + kPi) / r2}, {-2 * g, (b + kPi / 2) / r2}, {-2 * g, (b - kPi / 2) / r2}}};
}

Vec3 euler_axis(const EulerParams& e)
{
    const double w = 2 * std::sqrt(2.0) * e.theta2;
    return {std::cos(e.theta1), -std::sin(e.theta1) * std::cos(w), std::sin(e.theta1) * std::sin(w)};
}

std::vector<EulerParams> best_branches(const std::vector<Vec3>& axes, double* raw_cost)
{
    const std::size_t n = axes.size();
    if (n == 0) {
        if (raw_cost) *raw_cost = 0.0;
        return {};
    }
    std::vector<std::array<EulerParams, 4>> br(n);
    for (std::size_t i = 0; i < n; ++i) br[i] = euler_embed(axes[i]);
    std::vector<std::array<double, 4>> cost(n);
    std::vector<std::array<int, 4>> from(n);
    for (int b = 0; b < 4; ++b) cost[0][b] = std::abs(br[0][b].theta2);
    for (std::size_t i = 1; i < n; ++i)
        for (int b = 0; b < 4; ++b) {
            cost[i][b] = kInf;
            for (int a = 0; a < 4; ++a) {
                double c = cost[i - 1][a] + std::abs(br[i][b].theta2 - br[i - 1][a].theta2);
                if (c < cost[i][b]) {
                    cost[i][b] = c;
                    from[i][b] = a;
                }
            }
        }
    int last = 0;
    double total = kInf;
    for (int b = 0; b < 4; ++b) {
        double c = cost[n - 1][b] + std::abs(br[n - 1][b].theta2);
        if (c < total) {
            total = c;
            last = b;
        }
    }
    std::vector<EulerParams> out(n);
    for (std::size_t i = n; i-- > 0;) {
        out[i] = br[i][last];
        if (i > 0) last = from[i][last];
    }
    if (raw_cost) *raw_cost = total;
    return out;
}

Circuit step_circuit(const std::vector<EulerParams>& params, int pulse_multiple)
{
    Circuit c;
    c.n = 2;
    double prev = 0.0;
    auto tc = [&](double r) {
        if (r != 0.0) c.then(Gate::tc(r));
    };
    for (const auto& p : params) {
        tc(p.theta2 - prev);
        if (p.theta1 != 0.0) c.then(Gate::rz(p.theta1));
        tc(pulse_multiple * kStepPulse);
        if (p.theta1 != 0.0) c.then(Gate::rz(-p.theta1));
        prev = p.theta2;
    }
    tc(-prev);
    return c;
}

double step_chain_time(const std::vector<EulerParams>& params, int pulse_multiple)
{
    double t = 0.0, prev = 0.0;
    for (const auto& p : params) {
        t += std::abs(p.theta2 - prev) + pulse_multiple * kStepPulse;
        prev = p.theta2;
    }
    return t + std::abs(prev);
}

const char* to_string(DecompositionKind k)
{
    switch (k) {
    case DecompositionKind::TwoStep: return "2-step";
    case DecompositionKind::ThreeStep: return "3-step";
    case DecompositionKind::FourStep: return "4-step";
    }
    return "?";
}

Circuit Decomposition::circuit() const { return step_circuit(euler_params, pulse_multiple); }

Mat2 Decomposition::product() const
{
    Mat2 p = Mat2::Identity();
    for (const auto& a : axes) p = su2_matrix(a) * p;
    return p;
}

Decomposition decompose_fixed_angle(const Mat2& target)
{
    if (std::abs(target.determinant() - cplx(1, 0)) > 1e-10 || (target.adjoint() * target - Mat2::Identity()).norm() > 1e-10)
        throw DomainError("decompose_fixed_angle: target is not in SU(2)");
    gsl_set_error_handler_off();
    Decomposition out;
    if ((target - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-13) return out;

    Candidate best;
    using K = DecompositionKind;
    auto pair_family = [&](const Mat2& u, double g, std::optional<Vec3> pre, std::optional<Vec3> post) -> AxesOf {
        return [=](double th) -> std::optional<std::vector<Vec3>> {
            auto s = two_step_minus(u, g, th);
            if (!s) return std::nullopt;
            std::vector<Vec3> axes;
            if (pre) axes.push_back(*pre);
            axes.push_back(s->first);
            axes.push_back(s->second);
            if (post) axes.push_back(*post);
            return axes;
        };
    };
    run_family(best, target, K::TwoStep, 1, pair_family(target, kDelta, std::nullopt, std::nullopt));
    run_family(best, target, K::FourStep, 2, pair_family(target, 2 * kDelta, std::nullopt, std::nullopt));

    Vec3 v = minus_vector(target);
    if (v.norm() > 1e-9) {
        Vec3 r = v.normalized();
        for (double sgn : {1.0, -1.0}) {
            Vec3 l = sgn * r;
            run_family(best, target, K::ThreeStep, 1, pair_family(rot_minus(-kDelta, l) * target, kDelta, std::nullopt, l));
            run_family(best, target, K::ThreeStep, 1, pair_family(target * rot_minus(-kDelta, l), kDelta, l, std::nullopt));
        }
    }
    if (best.raw == kInf || v.norm() <= 1e-9) run_sphere_family(best, target);
    if (best.raw == kInf) throw std::runtime_error("decompose_fixed_angle: no decomposition found");

    out.kind = best.kind;
    out.pulse_multiple = best.k;
    out.euler_params = best.params;
    for (const auto& p : best.axes) out.axes.push_back(AxisAngle{-p, wrap_pi(best.k * kDelta), false});
    out.tau = best.raw / kTwoPi;
    return out;
}

Decomposition decompose_fixed_angle(const AxisAngle& target) { return decompose_fixed_angle(su2_matrix(target)); }

} // namespace tcforge
