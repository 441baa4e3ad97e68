#include "tcforge/dynamics.hpp"

#include <cmath>

#include "tcforge/linalg.hpp"

namespace tcforge {

std::string to_string(GateKind k)
{
    switch (k) {
    case GateKind::TC: return "tc";
    case GateKind::Rz: return "rz";
    case GateKind::Rx: return "rx";
    }
    return "?";
}

Gate Gate::rz(double theta)
{
    // exp(-i theta J_z) has period 4 pi for half-integer m
    if (theta < -kTwoPi || theta >= kTwoPi) {
        theta = std::fmod(theta + kTwoPi, 2 * kTwoPi);
        if (theta < 0) theta += 2 * kTwoPi;
        theta -= kTwoPi;
    }
    return {GateKind::Rz, theta};
}

Circuit& Circuit::then(const Gate& g)
{
    gates.push_back(g);
    return *this;
}

Circuit& Circuit::then(const Circuit& c)
{
    gates.insert(gates.end(), c.gates.begin(), c.gates.end());
    return *this;
}

Circuit Circuit::inverse() const
{
    Circuit out;
    out.n = n;
    for (auto it = gates.rbegin(); it != gates.rend(); ++it)
        out.gates.push_back(it->kind == GateKind::Rz ? Gate::rz(-it->param) : Gate{it->kind, -it->param});
    return out;
}

bool Circuit::has_rx() const
{
    for (const auto& g : gates)
        if (g.kind == GateKind::Rx) return true;
    return false;
}

double Circuit::interaction_time_raw() const
{
    double t = 0.0;
    for (const auto& g : gates)
        if (g.kind == GateKind::TC) t += std::abs(g.param);
    return t;
}

double interaction_time(const Circuit& c) { return c.interaction_time(); }

SectorMatrix BlockUnitary::sector_block(const SectorIndex& idx) const
{
    if (backend == Backend::ChargeSector) return sectors.at(idx);
    const JSectorOperator& t = towers.at(idx.j2);
    SectorMatrix s;
    s.idx = idx;
    s.labels = basis_labels(idx);
    std::vector<int> pos;
    for (const auto& l : s.labels) {
        if (l.k > t.k_max) throw DomainError("sector outside tower truncation");
        pos.push_back(t.index(l.m2, l.k));
    }
    s.entries.resize(s.dim(), s.dim());
    for (int a = 0; a < s.dim(); ++a)
        for (int b = 0; b < s.dim(); ++b) s.entries(a, b) = t.entries(pos[a], pos[b]);
    return s;
}

double BlockUnitary::max_unitarity_residual() const
{
    double r = 0.0;
    for (const auto& [_, s] : sectors) r = std::max(r, unitarity_residual(s.entries));
    for (const auto& [_, t] : towers) r = std::max(r, unitarity_residual(t.entries));
    return r;
}

namespace {

Mat diag_phase(const Eigen::VectorXd& eigen, double theta)
{
    Vec d(eigen.size());
    for (int i = 0; i < eigen.size(); ++i) d(i) = std::polar(1.0, -theta * eigen(i));
    return d.asDiagonal();
}

Eigen::VectorXd real_diagonal(const Mat& m) { return m.diagonal().real(); }

// Left-multiplies u by the gate; diagonal gates skip the dense product.
void apply_diagonal(Mat& u, const Eigen::VectorXd& eig, double theta)
{
    for (int i = 0; i < u.rows(); ++i) u.row(i) *= std::polar(1.0, -theta * eig(i));
}

Backend resolve(const Circuit& c, Backend b)
{
    if (b == Backend::Auto) return c.has_rx() ? Backend::JTower : Backend::ChargeSector;
    if (b == Backend::ChargeSector && c.has_rx()) throw UsageError("Rx gates need the JTower backend");
    return b;
}

BlockUnitary skeleton(const Circuit& c, int q_max, Backend b)
{
    if (q_max < 0) throw DomainError("q_max must be non-negative");
    if (c.n < 1) throw DomainError("circuit qubit count must be positive");
    BlockUnitary out;
    out.backend = b;
    out.n = c.n;
    out.q_max = q_max;
    out.interaction_time_raw = c.interaction_time_raw();
    if (b == Backend::ChargeSector) {
        for (const auto& idx : enumerate_sectors(c.n, q_max)) out.sectors.emplace(idx, SectorMatrix{idx, basis_labels(idx), Mat()});
    } else {
        for (int j2 = c.n; j2 >= j2_min(c.n); j2 -= 2) {
            if (2 * q_max < c.n - j2) continue;
            JSectorOperator t;
            t.n = c.n;
            t.j2 = j2;
            t.k_max = tower_k_max(c.n, j2, q_max);
            out.towers.emplace(j2, t);
        }
    }
    return out;
}

Mat run_sector(const Circuit& c, const SectorIndex& idx)
{
    const Mat h = htc_block(idx).entries;
    const Eigen::VectorXd jz = real_diagonal(jz_block(idx).entries);
    HermitianExp eh(h);
    Mat u = Mat::Identity(h.rows(), h.cols());
    for (const auto& g : c.gates) {
        if (g.kind == GateKind::TC) u = eh(g.param) * u;
        else apply_diagonal(u, jz, g.param);
    }
    return u;
}

Mat run_tower(const Circuit& c, int j2, int k_max)
{
    const Mat h = htc_tower(c.n, j2, k_max).entries;
    const Eigen::VectorXd jz = real_diagonal(jz_tower(c.n, j2, k_max).entries);
    HermitianExp eh(h);
    HermitianExp ex;
    if (c.has_rx()) ex = HermitianExp(jx_operator(c.n, j2, k_max).entries);
    Mat u = Mat::Identity(h.rows(), h.cols());
    for (const auto& g : c.gates) {
        if (g.kind == GateKind::TC) u = eh(g.param) * u;
        else if (g.kind == GateKind::Rx) u = ex(g.param) * u;
        else apply_diagonal(u, jz, g.param);
    }
    return u;
}

Mat reference_product(const Circuit& c, const Mat& h, const Mat& jz, const Mat& jx)
{
    Mat u = Mat::Identity(h.rows(), h.cols());
    for (const auto& g : c.gates) {
        const Mat& m = g.kind == GateKind::TC ? h : (g.kind == GateKind::Rz ? jz : jx);
        u = expm_hermitian(m, g.param) * u;
    }
    return u;
}

} // namespace

SectorMatrix gate_block(const Gate& g, const SectorIndex& idx)
{
    if (g.kind == GateKind::Rx) throw UsageError("Rx does not preserve charge sectors");
    SectorMatrix s = g.kind == GateKind::TC ? htc_block(idx) : jz_block(idx);
    if (g.kind == GateKind::TC) s.entries = expm_hermitian(s.entries, g.param);
    else s.entries = diag_phase(real_diagonal(s.entries), g.param);
    return s;
}

Mat sector_unitary(const Circuit& c, const SectorIndex& idx)
{
    if (c.has_rx()) throw UsageError("Rx does not preserve charge sectors");
    require_valid(idx);
    return run_sector(c, idx);
}

BlockUnitary apply_circuit(const Circuit& c, int q_max, Backend backend)
{
    BlockUnitary out = skeleton(c, q_max, resolve(c, backend));
    if (out.backend == Backend::ChargeSector) {
        std::vector<SectorMatrix*> work;
        for (auto& [_, s] : out.sectors) work.push_back(&s);
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < work.size(); ++i) work[i]->entries = run_sector(c, work[i]->idx);
    } else {
        std::vector<JSectorOperator*> work;
        for (auto& [_, t] : out.towers) work.push_back(&t);
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < work.size(); ++i) work[i]->entries = run_tower(c, work[i]->j2, work[i]->k_max);
    }
    return out;
}

BlockUnitary apply_circuit_serial(const Circuit& c, int q_max, Backend backend)
{
    BlockUnitary out = skeleton(c, q_max, resolve(c, backend));
    for (auto& [idx, s] : out.sectors)
        s.entries = reference_product(c, htc_block(idx).entries, jz_block(idx).entries, Mat());
    for (auto& [j2, t] : out.towers)
        t.entries = reference_product(c, htc_tower(c.n, j2, t.k_max).entries, jz_tower(c.n, j2, t.k_max).entries,
                                      jx_operator(c.n, j2, t.k_max).entries);
    return out;
}

Mat assemble_pi_operator(const PiBasis& basis, const std::map<int, Mat>& blocks)
{
    const int dim = 1 << basis.n;
    Mat u = Mat::Zero(dim, dim);
    for (const auto& [j2, b] : blocks)
        for (const auto& copy : basis.copies.at(j2)) {
            Mat bc = copy.cast<cplx>();
            u += bc * b * bc.adjoint();
        }
    return u;
}

Sandwich vacuum_sandwich(const BlockUnitary& v, bool assemble)
{
    Sandwich out;
    const int n = v.n;
    for (int j2 = n; j2 >= j2_min(n); j2 -= 2) {
        Mat u = Mat::Zero(j2 + 1, j2 + 1);
        if (v.backend == Backend::ChargeSector) {
            for (int m2 = j2; m2 >= -j2; m2 -= 2) {
                const int q = (m2 + n) / 2;
                auto it = v.sectors.find(SectorIndex{n, q, j2});
                if (it == v.sectors.end()) throw DomainError("vacuum_sandwich needs q_max >= n");
                // |j, m, k=0> is the first label of its sector
                const int p = (j2 - m2) / 2;
                u(p, p) = it->second.entries(0, 0);
            }
        } else {
            auto it = v.towers.find(j2);
            if (it == v.towers.end()) throw DomainError("vacuum_sandwich: missing tower");
            u = it->second.entries.topLeftCorner(j2 + 1, j2 + 1);
        }
        out.blocks.emplace(j2, u);
    }
    if (assemble) {
        out.unitary = assemble_pi_operator(build_pi_basis(n), out.blocks);
        out.residual = unitarity_residual(out.unitary);
    } else {
        double r2 = 0.0;
        for (const auto& [j2, u] : out.blocks) {
            double r = unitarity_residual(u);
            r2 += static_cast<double>(multiplicity(n, j2)) * r * r;
        }
        out.residual = std::sqrt(r2);
    }
    return out;
}

Vec simulate_state(const Circuit& c, const JointSpace& space, const Vec& psi)
{
    if (c.n != space.n()) throw DomainError("circuit and state qubit counts differ");
    if (psi.size() != space.dim()) throw DomainError("state has wrong dimension");
    const int n = c.n;
    BlockUnitary v = apply_circuit(c, space.q_max(), Backend::JTower);
    PiBasis basis = build_pi_basis(n);
    Vec out = Vec::Zero(space.dim());
    for (const auto& [j2, tower] : v.towers) {
        for (const auto& copy : basis.copies.at(j2)) {
            // coordinates of psi on |j, m, alpha> (x) |k>
            Vec coords = Vec::Zero(tower.dim());
            std::vector<Vec> embedded(tower.dim());
            for (int k = 0; k <= tower.k_max; ++k)
                for (int m2 = j2; m2 >= -j2; m2 -= 2) {
                    const int t = tower.index(m2, k);
                    embedded[t] = space.embed(copy.col((j2 - m2) / 2).cast<cplx>(), k);
                    coords(t) = embedded[t].dot(psi);
                }
            Vec evolved = tower.entries * coords;
            for (int t = 0; t < tower.dim(); ++t) out += evolved(t) * embedded[t];
        }
    }
    return out;
}

Vec qubit_part(const JointSpace& space, const Vec& psi, int k)
{
    Vec out = Vec::Zero(1 << space.n());
    for (int i = 0; i < space.dim(); ++i)
        if (space.level(i) == k) out(space.qubits(i)) = psi(i);
    return out;
}

Mat simulate_full(const Circuit& c, const JointSpace& space)
{
    if (c.has_rx()) throw UsageError("simulate_full supports TC and Rz gates only");
    const Mat h = Mat(space.htc().cast<cplx>());
    const Mat jz = Mat(space.jz().cast<cplx>());
    return reference_product(c, h, jz, Mat());
}

} // namespace tcforge
