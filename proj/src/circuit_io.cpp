#include "tcforge/circuit_io.hpp"

namespace tcforge {

nlohmann::json circuit_to_json(const Circuit& c)
{
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : c.gates) gates.push_back({{"kind", to_string(g.kind)}, {"param", g.param}});
    return {{"n", c.n}, {"gates", gates}};
}

Circuit circuit_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("n") || !j.contains("gates")) throw UsageError("circuit JSON needs \"n\" and \"gates\"");
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1) throw UsageError("circuit \"n\" must be a positive integer");
    if (!j["gates"].is_array()) throw UsageError("circuit \"gates\" must be an array");
    Circuit c;
    c.n = j["n"].get<int>();
    for (const auto& g : j["gates"]) {
        if (!g.is_object() || !g.contains("kind") || !g.contains("param") || !g["kind"].is_string() || !g["param"].is_number())
            throw UsageError("each gate needs a string \"kind\" and a numeric \"param\"");
        const std::string kind = g["kind"].get<std::string>();
        const double p = g["param"].get<double>();
        if (kind == "tc") c.gates.push_back(Gate::tc(p));
        else if (kind == "rz") c.gates.push_back(Gate::rz(p));
        else if (kind == "rx") c.gates.push_back(Gate::rx(p));
        else throw UsageError("unknown gate kind: " + kind);
    }
    return c;
}

std::string dump_circuit(const Circuit& c) { return circuit_to_json(c).dump(2); }

Circuit parse_circuit(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("malformed circuit JSON: ") + e.what());
    }
    return circuit_from_json(j);
}

} // namespace tcforge
