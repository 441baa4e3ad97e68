#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "tcforge/circuit_io.hpp"
#include "tcforge/synthesis.hpp"

using namespace tcforge;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    static int counter = 0;
    return fs::temp_directory_path() / ("tcforge_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" + name);
}

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args)
{
    const fs::path tmp = scratch("run.out");
    const std::string cmd = std::string(TCFORGE_CLI) + " " + args + " > " + tmp.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    fs::remove(tmp);
    return r;
}

std::string write_circuit(const std::string& name, const Circuit& c)
{
    const fs::path p = scratch(name + ".json");
    std::ofstream(p) << dump_circuit(c);
    return p.string();
}

} // namespace

TEST(Cli, SynthesizeCz)
{
    CliRun r = run("synthesize --gate cz");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["tau"].get<double>(), 2.866, 0.01);
    EXPECT_LT(j["residual"].get<double>(), 1e-8);
    EXPECT_TRUE(j.contains("circuit"));
}

TEST(Cli, SynthesizeIdentityPhases)
{
    CliRun r = run("synthesize --phases 0,0,0");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["tau"].get<double>(), 0.0);
}

TEST(Cli, SynthesizeUzzWritesCircuit)
{
    const fs::path p = scratch("uzz_circuit.json");
    CliRun r = run("synthesize --gate uzz --phi 0.7 --circuit-out " + p.string());
    ASSERT_EQ(r.code, 0);
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    Circuit c = parse_circuit(ss.str());
    EXPECT_NEAR(c.interaction_time(), nlohmann::json::parse(r.out)["tau"].get<double>(), 1e-12);
    fs::remove(p);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("synthesize --gate toffoli").code, 1);
    EXPECT_EQ(run("synthesize").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("verify accidental --n 7").code, 1);
    EXPECT_EQ(run("verify bogus").code, 1);
    EXPECT_EQ(run("--format xml report").code, 1);

    const fs::path bad = scratch("bad.json");
    std::ofstream(bad) << "{\"n\": 2, \"gates\": [";
    EXPECT_EQ(run("simulate " + bad.string()).code, 1);
    EXPECT_EQ(run("simulate /nonexistent/file.json").code, 1);
    fs::remove(bad);
}

TEST(Cli, SimulateFGate)
{
    const std::string f = write_circuit("f", f_gate());
    CliRun r = run("simulate " + f + " --state 00");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    double weight = 0;
    for (const auto& a : j["amplitudes"])
        if (a["qubits"] == "11" && a["k"] == 2) weight += std::pow(a["re"].get<double>(), 2) + std::pow(a["im"].get<double>(), 2);
    EXPECT_NEAR(weight, 1.0, 1e-9);
    EXPECT_NEAR(j["vacuum_residual"].get<double>(), 1.0, 1e-9);

    CliRun u = run("simulate " + f + " --unitary --qmax 2");
    ASSERT_EQ(u.code, 0);
    EXPECT_EQ(nlohmann::json::parse(u.out)["blocks"].size(), 5u);
}

TEST(Cli, SimulateEmptyAndEntangling)
{
    Circuit empty;
    empty.n = 2;
    CliRun r = run("simulate " + write_circuit("empty", empty) + " --state 01");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["interaction_time"].get<double>(), 0.0);
    ASSERT_EQ(j["amplitudes"].size(), 1u);
    EXPECT_EQ(j["amplitudes"][0]["qubits"], "01");
    EXPECT_NEAR(j["amplitudes"][0]["re"].get<double>(), 1.0, 1e-12);

    Circuit frf = f_gate();
    frf.then(Gate::rz(0.9)).then(f_gate());
    CliRun e = run("simulate " + write_circuit("frf", frf) + " --state 01");
    ASSERT_EQ(e.code, 0);
    // |01> has a Psi+ component, which leaves the oscillator excited
    EXPECT_GT(nlohmann::json::parse(e.out)["vacuum_residual"].get<double>(), 1e-3);
}

TEST(Cli, VerifySuites)
{
    CliRun acc = run("verify accidental --n 6 --qmax 12");
    EXPECT_EQ(acc.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(acc.out)["pass"].get<bool>());
    EXPECT_EQ(run("verify lie --n 2 --qmax 4").code, 0);

    CliRun ph = run("verify phases --n 4");
    ASSERT_EQ(ph.code, 0);
    auto j = nlohmann::json::parse(ph.out);
    EXPECT_FALSE(j["cz"]["realizable"].get<bool>());
    EXPECT_TRUE(j["anti_cz"]["realizable"].get<bool>());

    EXPECT_EQ(run("verify phases --n 4 --lowest 0,0,3.14159").code, 2);
    EXPECT_EQ(run("verify phases --n 4 --lowest 0,0,0").code, 0);
    EXPECT_EQ(run("verify realizability --n 3 --qmax 6 --trials 5").code, 0);
    EXPECT_EQ(run("verify schwinger --j2max 4 --kmax 6").code, 0);
}

TEST(Cli, VerifyRealizabilityOfCircuitFile)
{
    CliRun r = run("verify realizability --qmax 6 --circuit " + write_circuit("cz", named_gate("cz").circuit));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["verdict"]["realizable"].get<bool>());
}

TEST(Cli, SectorsAndReport)
{
    CliRun s = run("sectors --n 3 --qmax 4 --format csv");
    ASSERT_EQ(s.code, 0);
    EXPECT_EQ(s.out.substr(0, s.out.find('\n')), "q,j,dim,filled,multiplicity,partner");

    CliRun r = run("report --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("gate,tau\n"), std::string::npos);
    EXPECT_NE(r.out.find("cz,2.86"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic)
{
    for (const char* args : {"synthesize --phases 0.3,-1.2,2.2", "sectors --n 4 --qmax 6", "verify phases --n 5", "report"}) {
        CliRun a = run(args), b = run(args);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out) << args;
    }
    CliRun t1 = run("synthesize --gate iswap"), t2 = run("synthesize --gate iswap");
    EXPECT_EQ(t1.out, t2.out);
}

TEST(Cli, OutFile)
{
    const fs::path p = scratch("out.json");
    CliRun r = run("--out " + p.string() + " sectors --n 2 --qmax 2");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(p);
    EXPECT_NO_THROW(nlohmann::json::parse(in));
    fs::remove(p);
}
