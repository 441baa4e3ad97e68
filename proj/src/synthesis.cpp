#include "tcforge/synthesis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tcforge/circuit_io.hpp"
#include "tcforge/linalg.hpp"

namespace tcforge {

namespace {

const SectorIndex kCharge1{2, 1, 2};

int pulse_multiple(DecompositionKind k) { return k == DecompositionKind::FourStep ? 2 : 1; }

Circuit rz_only(double theta)
{
    Circuit c;
    c.n = 2;
    if (theta != 0.0) c.then(Gate::rz(theta));
    return c;
}

struct Structured {
    Circuit pre;
    double theta = 0.0, theta_prime = 0.0, theta_plus = 0.0;
};

CompiledGate finish(const std::string& name, const Structured& s, const Circuit& a, const std::string& kind,
                    const std::vector<EulerParams>& params)
{
    CompiledGate g;
    g.target = name;
    g.circuit = s.pre;
    g.circuit.then(a);
    if (s.theta_prime != 0.0) g.circuit.then(Gate::rz(s.theta_prime));
    g.tau = g.circuit.interaction_time();
    g.kind = kind;
    g.parameters = {s.theta, s.theta_prime, s.theta_plus};
    for (const auto& p : params) {
        g.parameters.push_back(p.theta1);
        g.parameters.push_back(p.theta2);
    }
    return g;
}

CompiledGate compile_structured(const std::string& name, const Structured& s)
{
    Decomposition d = decompose_fixed_angle(a_target(s.pre, s.theta_plus));
    return finish(name, s, d.circuit(), to_string(d.kind), d.euler_params);
}

Structured structure(const Circuit& f1, double theta, const Circuit& f2, double theta_plus, double theta_prime)
{
    Structured s;
    s.pre.n = 2;
    s.pre.then(f1);
    if (theta != 0.0) s.pre.then(Gate::rz(theta));
    s.pre.then(f2);
    s.theta = theta;
    s.theta_prime = theta_prime;
    s.theta_plus = theta_plus;
    return s;
}

Mat pi_diag(double a00, double apsi, double a11, double asinglet)
{
    // computational order |00>, |01>, |10>, |11>
    Mat u = Mat::Zero(4, 4);
    const cplx p = std::polar(1.0, apsi), s = std::polar(1.0, asinglet);
    u(0, 0) = std::polar(1.0, a00);
    u(3, 3) = std::polar(1.0, a11);
    u(1, 1) = u(2, 2) = 0.5 * (p + s);
    u(1, 2) = u(2, 1) = 0.5 * (p - s);
    return u;
}

} // namespace

double f_phi1() { return 0.5 * std::acos(7.0 / 16.0); }
double f_phi0() { return std::atan(-std::sqrt(23.0) / 3.0) + kPi; }

Circuit f_gate()
{
    const double r = kPi / std::sqrt(6.0);
    Circuit c;
    c.n = 2;
    c.then(Gate::rz(-f_phi0() / 2)).then(Gate::tc(r)).then(Gate::rz(f_phi1())).then(Gate::tc(r));
    c.then(Gate::rz(-f_phi1())).then(Gate::tc(r)).then(Gate::rz(f_phi0() / 2));
    return c;
}

Circuit f_gate_dagger() { return f_gate().inverse(); }

Mat2 charge1_block(const Circuit& c)
{
    if (c.n != 2) throw DomainError("charge1_block needs a two-qubit circuit");
    return sector_unitary(c, kCharge1);
}

Mat2 a_target(const Circuit& pre, double theta_plus)
{
    Mat2 m = charge1_block(pre);
    const double psi = std::arg(m.determinant()) - theta_plus;
    Mat2 d = Mat2::Zero();
    d(0, 0) = std::polar(1.0, theta_plus);
    d(1, 1) = std::polar(1.0, psi);
    return d * m.inverse();
}

Circuit a_gate(const Mat2& u)
{
    if (std::abs(u.determinant() - cplx(1, 0)) > 1e-10 || (u.adjoint() * u - Mat2::Identity()).norm() > 1e-10)
        throw DomainError("a_gate: target must be special unitary");
    return decompose_fixed_angle(u).circuit();
}

Mat two_qubit_phase_gate(double phi00, double phi_psi_plus, double phi11) { return pi_diag(phi00, phi_psi_plus, phi11, 0.0); }

void evaluate(CompiledGate& g, const Mat& target)
{
    Sandwich s = vacuum_sandwich(apply_circuit(g.circuit, 2));
    g.unitary = s.unitary;
    g.vacuum_residual = s.residual;
    g.residual = distance_up_to_phase(s.unitary, target);
    g.global_phase = wrap_pi(best_phase(s.unitary, target));
}

CompiledGate compile_two_qubit(double phi00, double phi_psi_plus, double phi11)
{
    const Circuit f = f_gate(), fd = f_gate_dagger();
    CompiledGate best;
    best.tau = std::numeric_limits<double>::infinity();
    auto keep = [&](CompiledGate g) {
        if (g.tau < best.tau - 1e-12) best = std::move(g);
    };
    for (const Circuit* f1 : {&f, &fd})
        for (const Circuit* f2 : {&f, &fd})
            for (double b : {0.0, kPi}) {
                const double theta = (phi00 + phi11) / 2 + b;
                const double theta_prime = (phi11 - phi00) / 2 + b;
                keep(compile_structured("phases", structure(*f1, theta, *f2, phi_psi_plus, theta_prime)));
            }
    if (std::abs(wrap_pi(phi00 + phi11)) < 1e-12) {
        // no charge-2 exchange needed
        for (double theta : {0.0, phi11, kPi, phi11 + kPi}) {
            Structured s;
            s.pre = rz_only(theta);
            s.theta = theta;
            s.theta_prime = phi11 - theta;
            s.theta_plus = phi_psi_plus;
            keep(compile_structured("phases", s));
        }
    }
    evaluate(best, two_qubit_phase_gate(phi00, phi_psi_plus, phi11));
    return best;
}

std::vector<std::string> named_gate_list() { return {"cz", "swap", "iswap", "sqrt_iswap", "uzz", "upsiplus"}; }

Mat textbook_gate(const std::string& name, double phi)
{
    const cplx i(0, 1);
    Mat u = Mat::Identity(4, 4);
    if (name == "cz") {
        u(3, 3) = -1;
    } else if (name == "swap") {
        u << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
    } else if (name == "iswap") {
        u << 1, 0, 0, 0, 0, 0, i, 0, 0, i, 0, 0, 0, 0, 0, 1;
    } else if (name == "sqrt_iswap") {
        const double r = 1 / std::sqrt(2.0);
        u << 1, 0, 0, 0, 0, r, i * r, 0, 0, i * r, r, 0, 0, 0, 0, 1;
    } else if (name == "uzz") {
        // exp(-i phi Z (x) Z)
        u = pi_diag(-phi, phi, -phi, phi);
    } else if (name == "upsiplus") {
        // exp(-i phi |Psi+><Psi+|)
        u = pi_diag(0, -phi, 0, 0);
    } else {
        throw UsageError("unknown gate: " + name);
    }
    return u;
}

const std::vector<AGateFixture>& a_gate_fixtures()
{
    using K = DecompositionKind;
    static const std::vector<AGateFixture> f = {
        {"f_dagger", K::TwoStep, 0.833, {1.65858418, 0.05233908, 1.09721596, 0.05232010}},
        {"qubit_osc_swap", K::TwoStep, 0.829, {0.77219211, -0.03972316, 2.36943563, -0.03968950}},
        {"cz", K::FourStep, 1.641, {-0.12147118, -0.02458664, -1.74926322, -0.02483674}},
        {"iswap", K::ThreeStep, 1.321, {-2.45780412, -1.12604357, -1.21165852, -1.41005151, 1.15257779, 0.80892003}},
        {"sqrt_iswap", K::ThreeStep, 1.464, {2.28652854, 0.58015043, 1.69646350, -0.09519097, 2.54885204, 0.07041776}},
        {"swap", K::ThreeStep, 1.273, {2.62219567, 0.05025862, 0.56293308, 0.04976850, 1.59079766, -0.10034647}},
    };
    return f;
}

namespace {

std::vector<EulerParams> as_pairs(const std::vector<double>& v)
{
    std::vector<EulerParams> p;
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) p.push_back({v[i], v[i + 1]});
    return p;
}

Eigen::VectorXd block_residual(const std::vector<double>& x, int k, const Mat2& target)
{
    Mat2 d = charge1_block(step_circuit(as_pairs(x), k).inverse()) - target;
    Eigen::VectorXd r(8);
    for (int i = 0; i < 4; ++i) {
        r(2 * i) = d(i / 2, i % 2).real();
        r(2 * i + 1) = d(i / 2, i % 2).imag();
    }
    return r;
}

} // namespace

Circuit fixture_circuit(const AGateFixture& f) { return step_circuit(as_pairs(f.params), pulse_multiple(f.kind)).inverse(); }

std::optional<Circuit> polish_fixture(const AGateFixture& f, const Mat2& target, double tol)
{
    const int k = pulse_multiple(f.kind);
    std::vector<double> x = f.params;
    Eigen::VectorXd r = block_residual(x, k, target);
    if (r.norm() > tol) return std::nullopt;
    const int np = static_cast<int>(x.size());
    for (int it = 0; it < 30 && r.norm() > 1e-14; ++it) {
        Eigen::MatrixXd jac(8, np);
        for (int p = 0; p < np; ++p) {
            std::vector<double> y = x;
            const double h = 1e-7;
            y[p] += h;
            Eigen::VectorXd rp = block_residual(y, k, target);
            y[p] -= 2 * h;
            jac.col(p) = (rp - block_residual(y, k, target)) / (2 * h);
        }
        Eigen::VectorXd dx = jac.completeOrthogonalDecomposition().solve(-r);
        for (int p = 0; p < np; ++p) x[p] += dx(p);
        r = block_residual(x, k, target);
    }
    return step_circuit(as_pairs(x), k).inverse();
}

CompiledGate named_gate(const std::string& name, double phi)
{
    const Circuit f = f_gate(), fd = f_gate_dagger();
    CompiledGate g;
    if (name == "cz") {
        g = compile_structured(name, structure(fd, kPi / 2, f, 0.0, kPi / 2));
    } else if (name == "swap") {
        Structured s;
        s.pre = rz_only(kPi);
        s.theta = kPi;
        s.theta_plus = kPi;
        g = compile_structured(name, s);
    } else if (name == "iswap") {
        g = compile_structured(name, structure(fd, kPi / 2, f, kPi, 0.0));
    } else if (name == "sqrt_iswap") {
        Structured s = structure(fd, kPi / 4, fd, kPi / 2, 0.0);
        const AGateFixture& fx = a_gate_fixtures()[4];
        auto a = polish_fixture(fx, a_target(s.pre, s.theta_plus));
        g = a ? finish(name, s, *a, to_string(fx.kind), {}) : compile_structured(name, s);
    } else if (name == "uzz") {
        g = compile_structured(name, structure(f, -2 * phi, f, 0.0, 0.0));
    } else if (name == "upsiplus") {
        if (phi == 0.0) phi = -kDelta;
        if (std::abs(phi + kDelta) > 1e-12) throw DomainError("upsiplus is available at phi = -2 pi/sqrt(3) only");
        const double r = kPi / (4 * std::sqrt(2.0));
        g.target = name;
        g.circuit.n = 2;
        g.circuit.then(Gate::tc(r)).then(Gate::rz(-kPi / 2)).then(Gate::tc(kStepPulse)).then(Gate::rz(kPi / 2)).then(Gate::tc(-r));
        g.tau = g.circuit.interaction_time();
        g.kind = "fixed";
    } else {
        throw UsageError("unknown gate: " + name);
    }
    g.target = name;
    evaluate(g, textbook_gate(name, phi));
    return g;
}

Circuit qubit_osc_swap()
{
    const Circuit fd = f_gate_dagger();
    Mat2 my = Mat2::Zero(); // -i sigma_y
    my(0, 1) = -1;
    my(1, 0) = 1;
    Circuit c = fd;
    c.then(a_gate(my * charge1_block(f_gate())));
    return c;
}

Circuit ghz_circuit()
{
    Circuit c;
    c.n = 2;
    c.then(Gate::rx(kPi / 2));
    c.then(named_gate("uzz", kPi / 4).circuit);
    c.then(Gate::rx(-kPi / 2));
    c.then(Gate::rz(-kPi / 4));
    return c;
}

nlohmann::json synthesis_report(const CompiledGate& g)
{
    return {{"target", g.target},   {"tau", g.tau},           {"kind", g.kind},
            {"parameters", g.parameters}, {"residual", g.residual}, {"global_phase", g.global_phase},
            {"vacuum_residual", g.vacuum_residual}, {"circuit", circuit_to_json(g.circuit)}};
}

} // namespace tcforge
