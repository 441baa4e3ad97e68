#include "tcforge/realizability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tcforge/operators.hpp"

namespace tcforge {

namespace {

struct LineFit {
    double alpha = 0.0, beta = 0.0, residual = 0.0;
    std::vector<std::string> worst;
};

// Fit y = alpha + x beta mod 2 pi, seeded on the two smallest x (spaced 1).
// beta is fixed mod 2 pi by the seeds; both lifts into [-2 pi, 2 pi) are tried.
LineFit fit_line(const std::vector<std::pair<double, double>>& pts, const std::vector<std::string>& names)
{
    LineFit best;
    best.residual = 1e300;
    if (pts.empty()) return LineFit{};
    std::vector<double> betas{0.0};
    if (pts.size() >= 2) {
        double b0 = wrap_pi((pts[1].second - pts[0].second) / (pts[1].first - pts[0].first));
        betas = {b0, b0 < 0 ? b0 + kTwoPi : b0 - kTwoPi};
    }
    for (double beta : betas) {
        LineFit f;
        f.beta = beta;
        f.alpha = wrap_pi(pts[0].second - pts[0].first * beta);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double r = std::abs(wrap_pi(pts[i].second - f.alpha - pts[i].first * beta));
            if (r > f.residual + 1e-15) {
                f.residual = r;
                f.worst = {names[i]};
            }
        }
        if (f.residual < best.residual) best = f;
    }
    return best;
}

RealizabilityVerdict verdict_from(const LineFit& f, double tol, const std::string& constraint, const std::string& witness)
{
    RealizabilityVerdict v;
    v.max_residual = f.residual;
    v.realizable = f.residual <= tol;
    v.witness = witness;
    if (v.realizable) {
        v.alpha = f.alpha;
        v.beta_or_theta_z = f.beta;
    } else {
        v.violation = Violation{constraint, f.worst, f.residual};
    }
    return v;
}

} // namespace

nlohmann::json to_json(const RealizabilityVerdict& v)
{
    nlohmann::json j;
    j["realizable"] = v.realizable;
    j["alpha"] = v.alpha ? nlohmann::json(*v.alpha) : nlohmann::json(nullptr);
    j["beta_or_theta_z"] = v.beta_or_theta_z ? nlohmann::json(*v.beta_or_theta_z) : nlohmann::json(nullptr);
    j["witness"] = v.witness;
    j["max_residual"] = v.max_residual;
    if (v.violation)
        j["violation"] = {{"constraint", v.violation->constraint}, {"sectors", v.violation->sectors}, {"residual", v.violation->residual}};
    else
        j["violation"] = nullptr;
    return j;
}

PiU1Target zero_pi_u1(int n)
{
    if (n < 1) throw DomainError("n must be positive");
    PiU1Target t;
    t.n = n;
    for (int j2 = n; j2 >= j2_min(n); j2 -= 2)
        for (int m2 = -j2; m2 <= j2; m2 += 2) t.phases[{j2, m2}] = 0.0;
    return t;
}

PiU1Target cz_target(int n)
{
    PiU1Target t = zero_pi_u1(n);
    t.phases[{n, -n}] = kPi;
    return t;
}

PiU1Target anti_cz_target(int n)
{
    PiU1Target t = zero_pi_u1(n);
    t.phases[{n, n}] = kPi;
    return t;
}

PiU1Target pi_u1_from_sandwich(int n, const Sandwich& s)
{
    PiU1Target t;
    t.n = n;
    for (const auto& [j2, u] : s.blocks)
        for (int p = 0; p <= j2; ++p) t.phases[{j2, j2 - 2 * p}] = std::arg(u(p, p));
    return t;
}

RealizabilityVerdict check_pi_u1(const PiU1Target& target, double tol)
{
    std::vector<std::pair<double, double>> pts;
    std::vector<std::string> names;
    for (int j2 = j2_min(target.n); j2 <= target.n; j2 += 2) {
        auto it = target.phases.find({j2, -j2});
        if (it == target.phases.end()) throw DomainError("PI target is missing phi_{j,-j}");
        pts.emplace_back(0.5 * j2, it->second);
        names.push_back("j=" + half_to_string(j2) + ",m=-" + half_to_string(j2));
    }
    return verdict_from(fit_line(pts, names), tol, "lowest_weight_phase_line", "beta");
}

RealizabilityVerdict check_diagonal(int n, const std::map<int, double>& phi_m, double tol)
{
    std::vector<std::pair<double, double>> pts;
    std::vector<std::string> names;
    // seed on the two largest m <= 0, so x = -m ascends
    for (int m2 = (n % 2 == 0 ? 0 : -1); m2 >= -n; m2 -= 2) {
        auto it = phi_m.find(m2);
        if (it == phi_m.end()) throw DomainError("diagonal target is missing a phase");
        pts.emplace_back(-0.5 * m2, it->second);
        names.push_back("m=" + half_to_string(m2));
    }
    LineFit f = fit_line(pts, names);
    f.beta = -f.beta; // slope in m
    if (f.beta >= kTwoPi) f.beta -= 2 * kTwoPi;
    return verdict_from(f, tol, "diagonal_phase_line", "beta");
}

BlockTarget block_target_from(const BlockUnitary& v)
{
    BlockTarget t;
    t.n = v.n;
    t.q_max = v.q_max;
    for (const auto& idx : enumerate_sectors(v.n, v.q_max)) t.blocks[idx] = v.sector_block(idx).entries;
    return t;
}

RealizabilityVerdict check_block_target(const BlockTarget& target, double tol)
{
    const int n = target.n;
    for (const auto& [idx, b] : target.blocks) {
        require_valid(idx);
        if (idx.n != n) throw DomainError("block target mixes qubit counts");
        const int d = sector_dim(idx);
        if (b.rows() != d || b.cols() != d) throw DomainError("block dimension mismatch at " + to_string(idx));
        if ((b.adjoint() * b - Mat::Identity(d, d)).norm() > 1e-10) throw DomainError("block is not unitary at " + to_string(idx));
    }
    std::map<SectorIndex, double> phase;
    for (const auto& [idx, b] : target.blocks) phase[idx] = std::arg(b.determinant());

    auto find_phase = [&](int q) -> std::optional<double> {
        auto it = phase.find(SectorIndex{n, q, n});
        return it == phase.end() ? std::nullopt : std::optional<double>(it->second);
    };
    const auto t0 = find_phase(0), t1 = find_phase(1);
    std::vector<double> theta_z_candidates{0.0};
    if (t0 && t1) {
        double z0 = wrap_pi(*t1 - 2 * *t0);
        theta_z_candidates = {z0, z0 < 0 ? z0 + kTwoPi : z0 - kTwoPi};
    }

    std::vector<std::pair<SectorIndex, SectorIndex>> pairs;
    for (const auto& pr : accidental_pairs(n, target.q_max))
        if (target.blocks.count(pr.first) && target.blocks.count(pr.second)) pairs.push_back(pr);

    RealizabilityVerdict best;
    best.max_residual = 1e300;
    for (double tz : theta_z_candidates) {
        const double alpha = t0 ? wrap_pi(*t0 + 0.5 * n * tz) : 0.0;
        RealizabilityVerdict v;
        v.witness = "theta_z";
        double worst = 0.0;
        Violation viol;
        for (const auto& [idx, th] : phase) {
            const double tr_jz = 0.5 * static_cast<double>(charge_vector_exact(idx, ChargeKind::Jz));
            double r = std::abs(wrap_pi(th - tr_jz * tz - sector_dim(idx) * alpha));
            if (r > worst) {
                worst = r;
                viol = Violation{"determinant_phase", {to_string(idx)}, r};
            }
        }
        // a broken partner relation is reported ahead of determinant phases
        double partner_worst = 0.0;
        Violation partner_viol;
        for (const auto& [a, b] : pairs) {
            const cplx f = std::polar(1.0, (b.j() - a.j()) * tz);
            double r = (target.blocks.at(a) - f * target.blocks.at(b)).cwiseAbs().maxCoeff();
            if (r > partner_worst) {
                partner_worst = r;
                partner_viol = Violation{"partner_blocks", {to_string(a), to_string(b)}, r};
            }
        }
        if (partner_worst > tol) viol = partner_viol;
        worst = std::max(worst, partner_worst);
        v.max_residual = worst;
        v.realizable = worst <= tol;
        if (v.realizable) {
            v.alpha = alpha;
            v.beta_or_theta_z = tz;
        } else {
            v.violation = viol;
        }
        if (worst < best.max_residual) best = v;
    }
    return best;
}

RealizabilityVerdict check_symmetric_phase_constraint(int n, int q_max, const std::vector<double>& theta_q, double tol)
{
    if (n < 1 || q_max < 0) throw DomainError("invalid symmetric constraint arguments");
    if (static_cast<int>(theta_q.size()) != q_max + 1) throw DomainError("need one phase per charge q = 0..q_max");
    std::vector<double> candidates{0.0};
    if (q_max >= 1) {
        double z0 = wrap_pi(theta_q[1] - 2 * theta_q[0]);
        candidates = {z0, z0 < 0 ? z0 + kTwoPi : z0 - kTwoPi};
    }
    RealizabilityVerdict best;
    best.max_residual = 1e300;
    for (double tz : candidates) {
        const double alpha = wrap_pi(theta_q[0] + 0.5 * n * tz);
        RealizabilityVerdict v;
        v.witness = "theta_z";
        double worst = 0.0;
        int worst_q = 0;
        for (int q = 0; q <= q_max; ++q) {
            const double model = q <= n ? (q + 1) * ((q - n) * tz / 2 + alpha) : (n + 1) * alpha;
            double r = std::abs(wrap_pi(theta_q[q] - model));
            if (r > worst) {
                worst = r;
                worst_q = q;
            }
        }
        v.max_residual = worst;
        v.realizable = worst <= tol;
        if (v.realizable) {
            v.alpha = alpha;
            v.beta_or_theta_z = tz;
        } else {
            v.violation = Violation{"symmetric_determinant_phase", {"q=" + std::to_string(worst_q)}, worst};
        }
        if (worst < best.max_residual) best = v;
    }
    return best;
}

bool state_convertible(const JointSpace& space, const Vec& psi, const Vec& phi, double tol)
{
    for (const Vec* s : {&psi, &phi}) {
        if (s->size() != space.dim()) throw DomainError("state has wrong dimension");
        if (std::abs(s->norm() - 1.0) > 1e-8) throw DomainError("state is not normalised");
        // exchange symmetry of every adjacent pair
        const int n = space.n();
        for (int p = 0; p + 1 < n; ++p) {
            const std::uint32_t a = 1u << (n - 1 - p), b = 1u << (n - 2 - p);
            double dev = 0.0;
            for (int i = 0; i < space.dim(); ++i) {
                std::uint32_t st = space.qubits(i);
                std::uint32_t sw = st & ~(a | b);
                if (st & a) sw |= b;
                if (st & b) sw |= a;
                dev += std::norm((*s)(i) - (*s)(space.index(sw, space.level(i))));
            }
            if (std::sqrt(dev) > 1e-8) throw DomainError("state is not symmetric under qubit exchange");
        }
    }
    std::map<int, double> wp, wf;
    for (int i = 0; i < space.dim(); ++i) {
        wp[space.charge(i)] += std::norm(psi(i));
        wf[space.charge(i)] += std::norm(phi(i));
    }
    for (int q = 0; q <= space.q_max(); ++q)
        if (std::abs(wp[q] - wf[q]) > tol) return false;
    return true;
}

int phase_line_constraint_count(int n)
{
    if (n < 1) throw DomainError("n must be positive");
    std::vector<int> js;
    for (int j2 = j2_min(n); j2 <= n; j2 += 2) js.push_back(j2);
    Eigen::MatrixXd a(js.size(), 2);
    for (std::size_t i = 0; i < js.size(); ++i) a.row(static_cast<int>(i)) << 1.0, 0.5 * js[i];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    return static_cast<int>(js.size()) - static_cast<int>(lu.rank());
}

} // namespace tcforge
