#include <bit>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcforge/circuit_io.hpp"
#include "tcforge/dynamics.hpp"
#include "tcforge/liealg.hpp"
#include "tcforge/linalg.hpp"
#include "tcforge/operators.hpp"
#include "tcforge/realizability.hpp"
#include "tcforge/synthesis.hpp"

using namespace tcforge;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

struct Config {
    int n = 2;
    int q_max = 4;
    double tol = 1e-8;
    std::string format = "json";
    std::string out;
    bool override_scale = false;
};

struct Output {
    std::string text;
    int code = kExitOk;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_scale(const Config& cfg)
{
    if (cfg.n < 1 || cfg.q_max < 0) throw UsageError("--n must be positive and --qmax non-negative");
    if (cfg.tol <= 0) throw UsageError("--tol must be positive");
    if (!cfg.override_scale && (cfg.n > 6 || cfg.q_max > 12))
        throw UsageError("n <= 6 and qmax <= 12 unless --override-scale is given");
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + item + "'");
        }
    }
    return out;
}

ordered_json matrix_json(const Mat& m)
{
    ordered_json re = ordered_json::array(), im = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json r = ordered_json::array(), c = ordered_json::array();
        for (int k = 0; k < m.cols(); ++k) {
            r.push_back(m(i, k).real());
            c.push_back(m(i, k).imag());
        }
        re.push_back(r);
        im.push_back(c);
    }
    return {{"re", re}, {"im", im}};
}

std::string bits(std::uint32_t s, int n)
{
    std::string b(n, '0');
    for (int i = 0; i < n; ++i)
        if (s >> (n - 1 - i) & 1u) b[i] = '1';
    return b;
}

// "0110" or "0110:2"; qubit 0 is the leftmost character.
std::pair<std::uint32_t, int> parse_state(const std::string& text, int n)
{
    const auto colon = text.find(':');
    const std::string b = text.substr(0, colon);
    if (static_cast<int>(b.size()) != n || b.find_first_not_of("01") != std::string::npos)
        throw UsageError("state must be " + std::to_string(n) + " bits, optionally followed by :k");
    std::uint32_t s = 0;
    for (char c : b) s = s << 1 | static_cast<std::uint32_t>(c == '1');
    int k = 0;
    if (colon != std::string::npos) {
        auto v = parse_list(text.substr(colon + 1));
        if (v.size() != 1 || v[0] < 0 || v[0] != std::floor(v[0])) throw UsageError("oscillator level must be a non-negative integer");
        k = static_cast<int>(v[0]);
    }
    return {s, k};
}

std::string csv_line(const std::vector<std::string>& cells)
{
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    return s + "\n";
}

std::string num(double x)
{
    std::ostringstream ss;
    ss.precision(6);
    ss << std::fixed << x;
    return ss.str();
}

std::string sci(double x)
{
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << x;
    return ss.str();
}

std::string emit(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json as_ordered(const nlohmann::json& j) { return ordered_json::parse(j.dump()); }

ordered_json report_json(const CompiledGate& g)
{
    ordered_json j = as_ordered(synthesis_report(g));
    j["interaction_time"] = g.tau;
    return j;
}

Output cmd_synthesize(const Config& cfg, const std::string& gate, double phi, const std::string& phases, const std::string& circuit_out)
{
    if (gate.empty() == phases.empty()) throw UsageError("give exactly one of --gate or --phases");
    if (cfg.n != 2) throw UsageError("gate synthesis needs n = 2");
    CompiledGate g;
    if (!gate.empty()) {
        g = named_gate(gate, phi);
    } else {
        auto p = parse_list(phases);
        if (p.size() != 3) throw UsageError("--phases takes phi00,phiPsi+,phi11");
        g = compile_two_qubit(p[0], p[1], p[2]);
    }
    if (!circuit_out.empty()) {
        std::ofstream f(circuit_out);
        if (!f) throw UsageError("cannot write " + circuit_out);
        f << dump_circuit(g.circuit) << "\n";
    }
    Output o;
    o.code = g.residual < cfg.tol ? kExitOk : kExitFail;
    if (cfg.format == "csv") {
        o.text = csv_line({"gate", "tau", "kind", "residual"}) + csv_line({g.target, num(g.tau), g.kind, sci(g.residual)});
    } else {
        o.text = emit(report_json(g));
    }
    return o;
}

Output cmd_simulate(Config cfg, const std::string& file, const std::string& state)
{
    Circuit c = parse_circuit(read_file(file));
    cfg.n = c.n;
    ordered_json j;
    j["n"] = c.n;
    j["interaction_time"] = c.interaction_time();
    if (!state.empty()) {
        auto [s, k] = parse_state(state, c.n);
        const int charge = k + static_cast<int>(c.n - std::popcount(s));
        const int q_max = std::max(cfg.q_max, charge);
        JointSpace space(c.n, q_max);
        Vec psi = Vec::Zero(space.dim());
        psi(space.index(s, k)) = 1;
        Vec out = simulate_state(c, space, psi);
        ordered_json amps = ordered_json::array();
        for (int i = 0; i < out.size(); ++i)
            if (std::abs(out(i)) > 1e-12)
                amps.push_back({{"qubits", bits(space.qubits(i), c.n)}, {"k", space.level(i)}, {"re", out(i).real()}, {"im", out(i).imag()}});
        const double stay = qubit_part(space, out, 0).squaredNorm();
        j["q_max"] = q_max;
        j["input"] = state;
        j["amplitudes"] = amps;
        j["vacuum_residual"] = std::max(0.0, 1.0 - stay);
        if (cfg.format == "csv") {
            std::string t = csv_line({"qubits", "k", "re", "im"});
            for (const auto& a : amps) t += csv_line({a["qubits"].get<std::string>(), std::to_string(a["k"].get<int>()), std::to_string(a["re"].get<double>()), std::to_string(a["im"].get<double>())});
            return {t, kExitOk};
        }
        return {emit(j), kExitOk};
    }
    check_scale(cfg);
    BlockUnitary v = apply_circuit(c, cfg.q_max);
    j["q_max"] = cfg.q_max;
    j["backend"] = v.backend == Backend::JTower ? "tower" : "charge";
    ordered_json blocks = ordered_json::array();
    if (v.backend == Backend::JTower) {
        for (const auto& [j2, t] : v.towers) {
            ordered_json b = matrix_json(t.entries);
            b["j"] = half_to_string(j2);
            b["k_max"] = t.k_max;
            blocks.push_back(b);
        }
    } else {
        for (const auto& [idx, s] : v.sectors) {
            ordered_json b = matrix_json(s.entries);
            b["sector"] = to_string(idx);
            blocks.push_back(b);
        }
    }
    j["blocks"] = blocks;
    if (cfg.q_max >= c.n) {
        Sandwich s = vacuum_sandwich(v, c.n <= 10);
        j["vacuum_residual"] = s.residual;
        if (s.unitary.size()) j["sandwich"] = matrix_json(s.unitary);
    }
    j["unitarity_residual"] = v.max_unitarity_residual();
    if (cfg.format == "csv") {
        std::string t = csv_line({"sector", "dim"});
        for (const auto& b : blocks) t += csv_line({b.contains("sector") ? b["sector"].get<std::string>() : "j=" + b["j"].get<std::string>(), std::to_string(b["re"].size())});
        return {t, kExitOk};
    }
    return {emit(j), kExitOk};
}

Output verify_accidental(const Config& cfg)
{
    ordered_json pairs = ordered_json::array();
    bool pass = true;
    for (const auto& [a, b] : accidental_pairs(cfg.n, cfg.q_max)) {
        auto c = compare_partner_blocks(a, b);
        const bool ok = c.dims_equal && c.htc_diff <= cfg.tol && c.jz_shift_diff <= cfg.tol;
        pass &= ok;
        pairs.push_back({{"unfilled", to_string(a)}, {"filled", to_string(b)}, {"htc_diff", c.htc_diff}, {"jz_shift_diff", c.jz_shift_diff}, {"pass", ok}});
    }
    auto var = variance_separation_check(cfg.n, cfg.q_max);
    pass &= var.pass;
    ordered_json j;
    j["suite"] = "accidental";
    j["n"] = cfg.n;
    j["q_max"] = cfg.q_max;
    j["pairs"] = pairs;
    j["variance"] = {{"pairs_checked", var.pairs_checked}, {"non_partner_equal", var.non_partner_equal}, {"partner_unequal", var.partner_unequal}, {"pass", var.pass}};
    if (cfg.n >= 2) {
        auto s = check_S_commutation(cfg.n, cfg.q_max);
        pass &= s.pass;
        j["S"] = {{"pairs", s.pairs}, {"htc_commutator", s.htc_commutator}, {"jz_commutator", s.jz_commutator}, {"involution", s.involution}, {"pass", s.pass}};
    }
    j["pass"] = pass;
    return {emit(j), pass ? kExitOk : kExitFail};
}

Output verify_lie(const Config& cfg)
{
    ordered_json sectors = ordered_json::array();
    bool pass = true;
    for (const auto& idx : enumerate_sectors(cfg.n, cfg.q_max)) {
        auto a = anharmonicity_check(idx);
        ordered_json e{{"sector", to_string(idx)}, {"dim", sector_dim(idx)}, {"anharmonicity_matches", a.matches}};
        bool ok = a.matches;
        if (sector_dim(idx) >= 2) {
            auto r = sector_rank_check(idx);
            e["rank"] = r.rank;
            e["expected"] = r.expected;
            ok &= r.pass;
        }
        e["pass"] = ok;
        pass &= ok;
        sectors.push_back(e);
    }
    ordered_json j{{"suite", "lie"}, {"n", cfg.n}, {"q_max", cfg.q_max}, {"sectors", sectors}, {"pass", pass}};
    return {emit(j), pass ? kExitOk : kExitFail};
}

Output verify_phases(const Config& cfg, const std::string& lowest)
{
    ordered_json j{{"suite", "phases"}, {"n", cfg.n}, {"constraints", phase_line_constraint_count(cfg.n)}};
    bool pass = true;
    if (!lowest.empty()) {
        auto p = parse_list(lowest);
        PiU1Target t = zero_pi_u1(cfg.n);
        std::vector<int> js;
        for (int j2 = j2_min(cfg.n); j2 <= cfg.n; j2 += 2) js.push_back(j2);
        if (p.size() != js.size()) throw UsageError("--lowest needs one phase per j, " + std::to_string(js.size()) + " values");
        for (std::size_t i = 0; i < js.size(); ++i) t.phases[{js[i], -js[i]}] = p[i];
        auto v = check_pi_u1(t, cfg.tol);
        j["target"] = as_ordered(to_json(v));
        pass = v.realizable;
    } else {
        auto cz = check_pi_u1(cz_target(cfg.n), cfg.tol);
        auto anti = check_pi_u1(anti_cz_target(cfg.n), cfg.tol);
        j["cz"] = as_ordered(to_json(cz));
        j["anti_cz"] = as_ordered(to_json(anti));
        pass = cz.realizable == (cfg.n <= 3) && anti.realizable;
    }
    j["pass"] = pass;
    return {emit(j), pass ? kExitOk : kExitFail};
}

Output verify_realizability(const Config& cfg, const std::string& file, int trials)
{
    ordered_json j{{"suite", "realizability"}};
    bool pass = true;
    if (!file.empty()) {
        Circuit c = parse_circuit(read_file(file));
        Config local = cfg;
        local.n = c.n;
        check_scale(local);
        auto v = check_block_target(block_target_from(apply_circuit(c, cfg.q_max)), cfg.tol);
        j["n"] = c.n;
        j["q_max"] = cfg.q_max;
        j["verdict"] = as_ordered(to_json(v));
        pass = v.realizable;
    } else {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> u(-kPi, kPi);
        int accepted = 0;
        for (int t = 0; t < trials; ++t) {
            Circuit c;
            c.n = cfg.n;
            for (int g = 0; g < 20; ++g) c.then(g % 2 ? Gate::rz(u(rng)) : Gate::tc(u(rng)));
            accepted += check_block_target(block_target_from(apply_circuit(c, cfg.q_max)), cfg.tol).realizable;
        }
        j["n"] = cfg.n;
        j["q_max"] = cfg.q_max;
        j["trials"] = trials;
        j["accepted"] = accepted;
        pass = accepted == trials;
    }
    j["pass"] = pass;
    return {emit(j), pass ? kExitOk : kExitFail};
}

Output verify_schwinger(int j2_max, int k_max)
{
    auto r = schwinger_check(j2_max, k_max);
    ordered_json j{{"suite", "schwinger"},
                   {"j_max", half_to_string(j2_max)},
                   {"k_max", k_max},
                   {"tested", r.tested},
                   {"skipped", r.skipped},
                   {"square_residual", r.square_residual},
                   {"invariance_residual", r.invariance_residual},
                   {"preserves_first_mode", r.preserves_first_mode},
                   {"pass", r.pass}};
    return {emit(j), r.pass ? kExitOk : kExitFail};
}

Output cmd_sectors(const Config& cfg)
{
    check_scale(cfg);
    ordered_json list = ordered_json::array();
    std::string csv = csv_line({"q", "j", "dim", "filled", "multiplicity", "partner"});
    for (const auto& idx : enumerate_sectors(cfg.n, cfg.q_max)) {
        auto p = accidental_partner(idx);
        const std::string partner = p ? to_string(*p) : "";
        list.push_back({{"q", idx.q}, {"j", half_to_string(idx.j2)}, {"dim", sector_dim(idx)}, {"filled", is_filled(idx)}, {"multiplicity", multiplicity(idx.n, idx.j2)}, {"partner", p ? ordered_json(partner) : ordered_json(nullptr)}});
        csv += csv_line({std::to_string(idx.q), half_to_string(idx.j2), std::to_string(sector_dim(idx)), is_filled(idx) ? "1" : "0", std::to_string(multiplicity(idx.n, idx.j2)), partner});
    }
    if (cfg.format == "csv") return {csv, kExitOk};
    return {emit(ordered_json{{"n", cfg.n}, {"q_max", cfg.q_max}, {"sectors", list}}), kExitOk};
}

Output cmd_report(const Config& cfg)
{
    struct Row {
        std::string gate;
        double tau;
        double residual;
    };
    std::vector<Row> rows;
    for (const char* name : {"cz", "swap", "iswap", "sqrt_iswap", "upsiplus"}) {
        auto g = named_gate(name);
        rows.push_back({name, g.tau, g.residual});
    }
    rows.push_back({"f", f_gate().interaction_time(), 0.0});
    rows.push_back({"qubit_osc_swap", qubit_osc_swap().interaction_time(), 0.0});
    bool pass = true;
    for (const auto& r : rows) pass &= r.residual < cfg.tol;
    const int code = pass ? kExitOk : kExitFail;
    if (cfg.format == "csv") {
        std::string t = csv_line({"gate", "tau"});
        for (const auto& r : rows) t += csv_line({r.gate, num(r.tau)});
        return {t, code};
    }
    ordered_json list = ordered_json::array();
    for (const auto& r : rows) list.push_back({{"gate", r.gate}, {"tau", r.tau}, {"residual", r.residual}});
    return {emit(ordered_json{{"gates", list}, {"pass", pass}}), code};
}

} // namespace

int main(int argc, char** argv)
{
    if (const char* t = std::getenv("TCFORGE_THREADS")) {
        const int k = std::atoi(t);
        if (k > 0) omp_set_num_threads(k);
    }

    CLI::App app{"Tavis-Cummings circuit simulator, compiler and verifier"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--n", cfg.n, "number of qubits");
    app.add_option("--qmax", cfg.q_max, "largest charge kept");
    app.add_option("--tol", cfg.tol, "pass/fail tolerance");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out, "write output to this file");
    app.add_flag("--override-scale", cfg.override_scale, "allow n > 6 or qmax > 12");

    auto* syn = app.add_subcommand("synthesize", "compile a two-qubit gate");
    std::string gate, phases, circuit_out;
    double phi = 0.0;
    syn->add_option("--gate", gate, "cz, swap, iswap, sqrt_iswap, uzz, upsiplus");
    syn->add_option("--phi", phi, "gate angle for uzz");
    syn->add_option("--phases", phases, "phi00,phiPsi+,phi11 relative to the singlet");
    syn->add_option("--circuit-out", circuit_out, "write the circuit JSON here");

    auto* sim = app.add_subcommand("simulate", "run a circuit file");
    std::string sim_file, state;
    bool unitary = false;
    sim->add_option("circuit", sim_file, "circuit JSON")->required();
    auto* st = sim->add_option("--state", state, "initial basis state, bits[:k]");
    sim->add_flag("--unitary", unitary, "emit sector blocks (default)")->excludes(st);

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string suite, lowest, ver_file;
    int trials = 20, j2_max = 8, k_max = 10;
    ver->add_option("suite", suite, "accidental, lie, phases, realizability, schwinger")
        ->required()
        ->check(CLI::IsMember({"accidental", "lie", "phases", "realizability", "schwinger"}));
    ver->add_option("--lowest", lowest, "phases phi_{j,-j} by increasing j (phases suite)");
    ver->add_option("--circuit", ver_file, "circuit JSON (realizability suite)");
    ver->add_option("--trials", trials, "random circuits (realizability suite)")->check(CLI::PositiveNumber);
    ver->add_option("--j2max", j2_max, "twice the largest j (schwinger suite)")->check(CLI::NonNegativeNumber);
    ver->add_option("--kmax", k_max, "largest oscillator level (schwinger suite)")->check(CLI::NonNegativeNumber);

    auto* sec = app.add_subcommand("sectors", "list charge sectors");
    auto* rep = app.add_subcommand("report", "interaction time table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    Output out;
    try {
        if (syn->parsed()) {
            out = cmd_synthesize(cfg, gate, phi, phases, circuit_out);
        } else if (sim->parsed()) {
            out = cmd_simulate(cfg, sim_file, state);
        } else if (ver->parsed()) {
            if (suite != "schwinger") check_scale(cfg);
            if (suite == "accidental") out = verify_accidental(cfg);
            else if (suite == "lie") out = verify_lie(cfg);
            else if (suite == "phases") out = verify_phases(cfg, lowest);
            else if (suite == "realizability") out = verify_realizability(cfg, ver_file, trials);
            else out = verify_schwinger(j2_max, k_max);
        } else if (sec->parsed()) {
            out = cmd_sectors(cfg);
        } else if (rep->parsed()) {
            out = cmd_report(cfg);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (cfg.out.empty()) {
        std::cout << out.text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "error: cannot write " << cfg.out << "\n";
            return kExitUsage;
        }
        f << out.text;
    }
    return out.code;
}
